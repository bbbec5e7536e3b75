"""sl2 triples attached to strong Lefschetz elements and weight decompositions.

Characteristic zero throughout.  A narrow-sense Lefschetz element makes the
whole algebra an sl2 representation with E the multiplication operator; the
raising/lowering normalisations follow the standard irreducible model, and
weights are recovered by integer eigenvalue search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import operator_matrix
from .checks import degree_one_vector, jordan_type
from .exactmath import FieldSpec, Matrix, QQ, invert, kernel_basis


@dataclass(frozen=True)
class Sl2Triple:
    e: Matrix
    h: Matrix
    f: Matrix

    @property
    def size(self) -> int:
        return self.e.rows


@dataclass(frozen=True)
class WeightDecomposition:
    """Integer weight -> basis of the eigenspace of H."""

    spaces: tuple  # ((weight, (vectors...)), ...) sorted by weight

    def weights(self) -> dict:
        return {w: len(vs) for w, vs in self.spaces}

    def basis(self, weight: int) -> tuple:
        for w, vs in self.spaces:
            if w == weight:
                return vs
        return ()


def _bracket(a: Matrix, b: Matrix) -> Matrix:
    F = a.field
    ab = a.mul(b)
    ba = b.mul(a)
    return Matrix(
        F,
        ab.cols,
        tuple(
            tuple(F.sub(x, y) for x, y in zip(r1, r2))
            for r1, r2 in zip(ab.entries, ba.entries)
        ),
    )


def verify_triple(t: Sl2Triple) -> bool:
    """Exact check of [E,F]=H, [H,E]=2E, [H,F]=-2F."""
    for m in (t.e, t.h, t.f):
        if m.rows != m.cols:
            raise ValueError("triple matrices must be square")
    if not (t.e.rows == t.h.rows == t.f.rows):
        raise ValueError("triple matrices must share one size")
    F = t.e.field
    if F.characteristic != 0:
        raise ValueError("sl2 machinery requires characteristic zero")

    def scaled(m: Matrix, c: int) -> Matrix:
        return Matrix(
            F, m.cols, tuple(tuple(F.mul(F.from_int(c), x) for x in r) for r in m.entries)
        )

    return (
        _bracket(t.e, t.f) == t.h
        and _bracket(t.h, t.e) == scaled(t.e, 2)
        and _bracket(t.h, t.f) == scaled(t.f, -2)
    )


def model_rep(d: int, field: FieldSpec = QQ) -> Sl2Triple:
    """The irreducible representation on binary forms of degree d.

    Operators x d/dy, x d/dx - y d/dy, y d/dx in the basis
    x^d, x^{d-1}y, ..., y^d; the H eigenvalue of x^a y^b is a - b.
    """
    if d < 0:
        raise ValueError("degree must be nonnegative")
    if field.characteristic != 0:
        raise ValueError("sl2 machinery requires characteristic zero")
    n = d + 1
    z = field.zero()
    e = [[z] * n for _ in range(n)]
    f = [[z] * n for _ in range(n)]
    h = [[z] * n for _ in range(n)]
    for i in range(n):  # basis vector x^{d-i} y^i
        h[i][i] = field.from_int(d - 2 * i)
        if i > 0:
            e[i - 1][i] = field.from_int(i)
        if i < d:
            f[i + 1][i] = field.from_int(d - i)
    mk = lambda rows: Matrix(field, n, tuple(tuple(r) for r in rows))
    return Sl2Triple(mk(e), mk(h), mk(f))


def _strand_basis(alg, Lvec) -> list[tuple[int, list[tuple]]]:
    """Jordan strands of multiplication by L on a narrow-sense witness.

    Returns (start degree, chain of global coordinate vectors) per strand;
    chains are v, Lv, L^2 v, ... and the union of all chain vectors is a
    basis.  Valid when strands are centered, which is checked by the caller.
    """
    F = alg.field
    D = alg.socle_degree
    dims = [alg.dim(d) for d in range(D + 1)]
    offsets = [0]
    for nd in dims:
        offsets.append(offsets[-1] + nd)
    total = offsets[-1]

    def embed(d: int, vec) -> tuple:
        out = [F.zero()] * total
        for k, v in enumerate(vec):
            out[offsets[d] + k] = v
        return tuple(out)

    steps = [operator_matrix(alg, 1, Lvec, d) for d in range(D)]
    strands = []
    for i in range(D + 1):
        ni = alg.dim(i)
        if ni == 0:
            continue
        length = D - 2 * i + 1  # centered strand length through degree i
        if length < 1:
            continue
        # new strands start in the kernel of L^length : A_i -> A_{D-i+1}
        if i + length > D:
            power = Matrix(F, ni, ())  # the zero map: everything is kernel
        else:
            power = steps[i]
            for k in range(i + 1, i + length):
                power = steps[k].mul(power)
        for vec in kernel_basis(power):
            chain = [embed(i, vec)]
            cur = vec
            d = i
            while d < D:
                nxt = steps[d].mul_vec(cur)
                if all(F.is_zero(x) for x in nxt):
                    break
                chain.append(embed(d + 1, nxt))
                cur = nxt
                d += 1
            strands.append((i, chain))
    return strands


def triple_from_lefschetz(alg, L) -> Sl2Triple:
    """sl2 triple with E multiplication by a narrow-sense witness.

    Refuses linear forms that are not narrow-sense Lefschetz elements: the
    strand structure is certified centered before H and F are assembled.
    """
    F = alg.field
    if F.characteristic != 0:
        raise ValueError("sl2 machinery requires characteristic zero")
    Lvec = degree_one_vector(alg, L)
    jt = jordan_type(alg, Lvec)
    c = alg.socle_degree
    for start, length in jt.starts:
        if 2 * start + length - 1 != c:
            raise ValueError(
                "element is not a narrow-sense Lefschetz witness: "
                f"strand at degree {start} of length {length} is not centered"
            )
    strands = _strand_basis(alg, Lvec)
    total = sum(alg.dim(d) for d in range(c + 1))
    if sum(len(chain) for _, chain in strands) != total:
        raise ValueError("element is not a narrow-sense Lefschetz witness")

    z = F.zero()
    e_s = [[z] * total for _ in range(total)]
    h_s = [[z] * total for _ in range(total)]
    f_s = [[z] * total for _ in range(total)]
    cols = []
    pos = 0
    for _, chain in strands:
        d = len(chain) - 1
        for j, vec in enumerate(chain):
            cols.append(vec)
            h_s[pos + j][pos + j] = F.from_int(-d + 2 * j)
            if j < d:
                e_s[pos + j + 1][pos + j] = F.one()
            if j > 0:
                f_s[pos + j - 1][pos + j] = F.from_int(j * (d - j + 1))
        pos += len(chain)
    S = Matrix.from_cols(F, cols, nrows=total)
    try:
        S_inv = invert(S)
    except ValueError as exc:
        raise ValueError("element is not a narrow-sense Lefschetz witness") from exc
    mk = lambda rows: Matrix(F, total, tuple(tuple(r) for r in rows))
    conj = lambda m: S.mul(m).mul(S_inv)
    triple = Sl2Triple(conj(mk(e_s)), conj(mk(h_s)), conj(mk(f_s)))
    if not verify_triple(triple):
        raise AssertionError("constructed operators fail the bracket relations")
    return triple


def weight_decomposition(h: Matrix, candidates=None) -> WeightDecomposition:
    """Eigenspaces of H found by integer search over [-size, size].

    candidates restricts the searched eigenvalues (the span check still
    certifies nothing was missed).
    """
    F = h.field
    n = h.rows
    if n != h.cols:
        raise ValueError("H must be square")
    spaces = []
    found = 0
    for lam in candidates if candidates is not None else range(-n, n + 1):
        shifted = Matrix(
            F,
            n,
            tuple(
                tuple(
                    F.sub(x, F.from_int(lam)) if i == j else x
                    for j, x in enumerate(row)
                )
                for i, row in enumerate(h.entries)
            ),
        )
        kern = kernel_basis(shifted)
        if kern:
            spaces.append((lam, tuple(kern)))
            found += len(kern)
    if found != n:
        raise ValueError("eigenspaces do not span: H is not a valid weight operator")
    dims = {w: len(vs) for w, vs in spaces}
    for w, k in dims.items():
        if dims.get(-w, 0) != k:
            raise ValueError("weight multiplicities are not symmetric about 0")
    return WeightDecomposition(tuple(sorted(spaces)))


def irreducible_decomposition(weights: Sequence[int]) -> tuple:
    """Multiset of irreducible dimensions peeled from an H spectrum."""
    from collections import Counter

    pool = Counter(int(w) for w in weights)
    if any(pool[w] != pool[-w] for w in pool):
        raise ValueError("weight multiset is not symmetric about 0")
    dims = []
    while any(pool.values()):
        m = max(w for w, k in pool.items() if k > 0)
        lam = m
        while lam >= -m:
            if pool[lam] <= 0:
                raise ValueError("weight multiset cannot be peeled into strings")
            pool[lam] -= 1
            lam -= 2
        dims.append(m + 1)
    return tuple(sorted(dims, reverse=True))


def slpn_via_weights(alg, L) -> bool:
    """Narrow-sense check through the weight grading of a constructed triple.

    Builds the sl2 triple when the strand structure allows it and verifies
    that the weight spaces recover the grading via weight = 2 deg - c.
    """
    try:
        triple = triple_from_lefschetz(alg, L)
    except ValueError:
        return False
    c = alg.socle_degree
    # strand weights all share the parity of c and live in [-c, c]
    wd = weight_decomposition(triple.h, candidates=range(-c, c + 1))
    F = alg.field
    dims = [alg.dim(d) for d in range(c + 1)]
    offsets = [0]
    for nd in dims:
        offsets.append(offsets[-1] + nd)
    got = wd.weights()
    expect = {2 * i - c: dims[i] for i in range(c + 1) if dims[i]}
    if got != expect:
        return False
    # each weight space must be the corresponding graded coordinate block
    for i in range(c + 1):
        if dims[i] == 0:
            continue
        basis = wd.basis(2 * i - c)
        for vec in basis:
            for k, x in enumerate(vec):
                inside = offsets[i] <= k < offsets[i + 1]
                if not inside and not F.is_zero(x):
                    return False
    return True
