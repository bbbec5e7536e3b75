"""Weak/strong/narrow Lefschetz deciders, Jordan types, loci and Hessians.

Concrete linear forms give exact verdicts by rank computations.  Generic
verdicts are randomized-with-witness: a sampled form whose maps all reach
full rank is a proof, because rank deficiency is a Zariski-closed condition.
Negative verdicts escalate to fraction-free symbolic ranks over the function
field of the coefficients (characteristic zero) or exhaustive search over a
small finite field.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import GradedAlgebra, operator_matrix
from .exactmath import Matrix, Scalar, det, rank
from .polynomials import (
    DualPoly,
    Poly,
    contract,
    from_ordinary,
    to_ordinary,
)
from .symbolic import (
    generic_rank,
    poly_det,
    poly_gcd_list,
    poly_mat_mul,
    squarefree_part,
)


@dataclass(frozen=True)
class MapRecord:
    i: int
    d: int
    expected: int
    achieved: int

    @property
    def full(self) -> bool:
        return self.achieved == self.expected


@dataclass(frozen=True)
class LefschetzReport:
    mode: str
    maps: tuple
    holds: Optional[bool]
    witness: Optional[dict]
    certification: str
    notes: tuple = ()

    def as_dict(self) -> dict:
        return {
            "mode": self.mode,
            "maps": [
                {
                    "i": m.i,
                    "d": m.d,
                    "expected": m.expected,
                    "achieved": m.achieved,
                    "full": m.full,
                }
                for m in self.maps
            ],
            "verdict": self.holds,
            "witness": self.witness,
            "certification": self.certification,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class GenericityConfig:
    seed: int = 0
    trials: int = 3
    bound: int = 10_000
    certify: bool = False
    symbolic_ambient_limit: int = 6
    symbolic_dim_limit: int = 60
    exhaustive_limit: int = 2048

    def effective_bound(self, alg) -> int:
        # keep the Schwartz-Zippel margin comfortable
        dims = [alg.dim(d) for d in range(alg.socle_degree + 1)]
        need = alg.socle_degree * max(dims + [1]) + 1
        return max(self.bound, need)


@dataclass(frozen=True)
class JordanType:
    parts: tuple
    starts: tuple  # ((start_degree, length), ...) one entry per strand

    def as_dict(self) -> dict:
        return {"parts": list(self.parts), "starts": [list(s) for s in self.starts]}


# ---------------------------------------------------------------------------
# Degree-one coordinates and concrete rank tables
# ---------------------------------------------------------------------------


def degree_one_coordinates(alg) -> list[tuple[str, tuple]]:
    """Coordinates that parametrise candidate Lefschetz elements.

    For quotient algebras these are the weight-one variables (the locus
    lives in their coefficient space); other algebra models fall back to the
    standard basis of the degree-one piece.
    """
    if isinstance(alg, GradedAlgebra):
        out = []
        for j, w in enumerate(alg.ring.weights):
            if w == 1 and alg.socle_degree >= 1:
                out.append((alg.ring.varnames[j], alg.vector(alg.ring.variable(j), 1)))
        return out
    F = alg.field
    n = alg.dim(1)
    return [
        (f"e{j}", tuple(F.one() if k == j else F.zero() for k in range(n)))
        for j in range(n)
    ]


def combine_coordinates(alg, coords, coeffs) -> tuple:
    F = alg.field
    n = alg.dim(1)
    out = [F.zero()] * n
    for (label, vec), c in zip(coords, coeffs):
        c = F.coerce(c)
        for k, v in enumerate(vec):
            out[k] = F.add(out[k], F.mul(c, v))
    return tuple(out)


def degree_one_vector(alg, L) -> tuple:
    """Coerce a linear form (Poly or coordinate vector) into A_1."""
    if isinstance(L, Poly):
        if not isinstance(alg, GradedAlgebra):
            raise TypeError("polynomial linear forms require a quotient algebra")
        if L.is_zero():
            return tuple(alg.field.zero() for _ in range(alg.dim(1)))
        if not alg.ring.is_homogeneous(L) or alg.ring.degree(L) != 1:
            raise ValueError("Lefschetz element must be homogeneous of degree 1")
        return alg.vector(L, 1)
    vec = tuple(alg.field.coerce(c) for c in L)
    if len(vec) != alg.dim(1):
        raise ValueError("coordinate vector has wrong length")
    return vec


def step_matrices(alg, Lvec) -> list[Matrix]:
    """Multiplication by L from each degree i, for i = 0..D-1."""
    return [operator_matrix(alg, 1, Lvec, i) for i in range(alg.socle_degree)]


def power_map_matrix(steps: list[Matrix], d: int, i: int) -> Matrix:
    m = steps[i]
    for k in range(i + 1, i + d):
        m = steps[k].mul(m)
    return m


class RankTable:
    """Ranks of L^d : A_i -> A_{i+d}, memoised."""

    def __init__(self, alg, Lvec):
        self.alg = alg
        self.steps = step_matrices(alg, Lvec)
        self._ranks: dict = {}
        self._mats: dict = {}

    def matrix(self, d: int, i: int) -> Matrix:
        key = (d, i)
        if key not in self._mats:
            self._mats[key] = power_map_matrix(self.steps, d, i)
        return self._mats[key]

    def rank(self, d: int, i: int) -> int:
        D = self.alg.socle_degree
        if i < 0 or i + d > D:
            return 0
        if d == 0:
            return self.alg.dim(i)
        key = (d, i)
        if key not in self._ranks:
            self._ranks[key] = rank(self.matrix(d, i))
        return self._ranks[key]


def _h(alg) -> list[int]:
    return [alg.dim(d) for d in range(alg.socle_degree + 1)]


def _map_list(alg, mode: str) -> list[tuple[int, int]]:
    """The (d, i) pairs a mode must check."""
    c = alg.socle_degree
    if mode == "wlp":
        return [(1, i) for i in range(c)]
    if mode == "slp":
        return [(d, i) for d in range(1, c + 1) for i in range(c - d + 1)]
    if mode == "slpn":
        return [(c - 2 * i, i) for i in range(c // 2 + 1) if c - 2 * i > 0]
    raise ValueError(f"unknown mode {mode!r}")


def _expected(alg, d: int, i: int) -> int:
    return min(alg.dim(i), alg.dim(i + d))


def report_for_element(alg, L, mode: str) -> LefschetzReport:
    Lvec = degree_one_vector(alg, L)
    table = RankTable(alg, Lvec)
    h = _h(alg)
    c = alg.socle_degree
    maps = []
    ok = True
    notes = []
    for d, i in _map_list(alg, mode):
        exp = _expected(alg, d, i)
        got = table.rank(d, i)
        maps.append(MapRecord(i, d, exp, got))
        if got != exp:
            ok = False
        if mode == "slpn" and h[i] != h[c - i]:
            ok = False
    if mode == "slpn":
        if h != list(reversed(h)):
            ok = False
            notes.append("Hilbert function is not symmetric")
    return LefschetzReport(mode, tuple(maps), ok, None, "element", tuple(notes))


def wlp_for_element(alg, L) -> LefschetzReport:
    return report_for_element(alg, L, "wlp")


def slp_for_element(alg, L) -> LefschetzReport:
    return report_for_element(alg, L, "slp")


def slpn_for_element(alg, L) -> LefschetzReport:
    return report_for_element(alg, L, "slpn")


# ---------------------------------------------------------------------------
# Generic verdicts
# ---------------------------------------------------------------------------


def _symbolic_step_matrices(alg, coords) -> list[list[list[Poly]]]:
    """Multiplication by a generic form with indeterminate coefficients.

    Returns, for each degree i, a matrix with entries in QQ?[a_1..a_k] (the
    base field adjoined one variable per degree-one coordinate).
    """
    F = alg.field
    k = len(coords)
    out = []
    for i in range(alg.socle_degree):
        per_coord = [operator_matrix(alg, 1, vec, i) for _, vec in coords]
        nrows = alg.dim(i + 1)
        ncols = alg.dim(i)
        mat = []
        for r in range(nrows):
            row = []
            for cidx in range(ncols):
                mapping = {}
                for j in range(k):
                    coeff = per_coord[j].entries[r][cidx]
                    if not F.is_zero(coeff):
                        mono = tuple(1 if t == j else 0 for t in range(k))
                        mapping[mono] = coeff
                row.append(Poly.make(k, F, mapping))
            mat.append(row)
        out.append(mat)
    return out


def _symbolic_power(sym_steps, d: int, i: int):
    m = sym_steps[i]
    for kk in range(i + 1, i + d):
        m = poly_mat_mul(sym_steps[kk], m)
    return m


def _symbolic_generic_rank(sym_steps, d: int, i: int, expected: int) -> int:
    mat = _symbolic_power(sym_steps, d, i)
    if not mat or not mat[0]:
        return 0
    return generic_rank(mat, stop_at=expected)


def generic_report(alg, mode: str, cfg: GenericityConfig = GenericityConfig()) -> LefschetzReport:
    """Search for a Lefschetz element; certify negatives when feasible.

    A found witness is exact.  In characteristic zero a certified negative
    computes generic ranks over the rational function field; over a small
    finite field the search is exhaustive instead.
    """
    F = alg.field
    coords = degree_one_coordinates(alg)
    h = _h(alg)
    pairs_id = _map_list(alg, mode)
    notes: list[str] = []

    symmetric_needed = mode == "slpn"
    sym_ok = h == list(reversed(h))
    if symmetric_needed and not sym_ok:
        maps = tuple(MapRecord(i, d, _expected(alg, d, i), 0) for d, i in pairs_id)
        return LefschetzReport(
            mode, maps, False, None, "exact", ("Hilbert function is not symmetric",)
        )

    if not coords:
        maps = tuple(MapRecord(i, d, _expected(alg, d, i), 0) for d, i in pairs_id)
        holds = all(m.expected == 0 for m in maps)
        return LefschetzReport(mode, maps, holds, None, "exact", ("A_1 = 0",))

    def element_maps(coeffs):
        Lvec = combine_coordinates(alg, coords, coeffs)
        table = RankTable(alg, Lvec)
        recs = [MapRecord(i, d, _expected(alg, d, i), table.rank(d, i)) for d, i in pairs_id]
        return recs

    def witness_report(coeffs, recs, cert):
        witness = {label: str(cv) for (label, _), cv in zip(coords, coeffs)}
        holds = all(r.full for r in recs)
        if symmetric_needed:
            holds = holds and sym_ok
        return LefschetzReport(mode, tuple(recs), holds, witness, cert, tuple(notes))

    if F.characteristic != 0:
        p = F.characteristic
        if p ** len(coords) <= cfg.exhaustive_limit:
            best: dict = {}
            for coeffs in itertools.product(range(p), repeat=len(coords)):
                if all(x == 0 for x in coeffs):
                    continue
                recs = element_maps(coeffs)
                for r in recs:
                    key = (r.d, r.i)
                    best[key] = max(best.get(key, 0), r.achieved)
                if all(r.full for r in recs):
                    return witness_report(coeffs, recs, "exhaustive")
            maps = tuple(
                MapRecord(i, d, _expected(alg, d, i), best.get((d, i), 0))
                for d, i in pairs_id
            )
            return LefschetzReport(mode, maps, False, None, "exhaustive", tuple(notes))
        notes.append(f"finite field too large to enumerate ({p}^{len(coords)})")

    rng = random.Random(cfg.seed)
    bound = cfg.effective_bound(alg)
    best_recs: dict = {}
    sampled: list[tuple] = []
    for _ in range(max(1, cfg.trials)):
        coeffs = tuple(rng.randint(1, bound) for _ in coords)
        sampled.append(coeffs)
        recs = element_maps(coeffs)
        for r in recs:
            key = (r.d, r.i)
            prev = best_recs.get(key)
            if prev is None or r.achieved > prev.achieved:
                best_recs[key] = r
        if all(r.full for r in recs):
            return witness_report(coeffs, recs, "witness")

    can_symbolic = (
        F.characteristic == 0
        and len(coords) <= cfg.symbolic_ambient_limit
        and sum(h) <= cfg.symbolic_dim_limit
    )
    if F.characteristic == 0 and (cfg.certify or can_symbolic):
        sym_steps = _symbolic_step_matrices(alg, coords)
        maps = []
        all_full = True
        for d, i in pairs_id:
            exp = _expected(alg, d, i)
            cached = best_recs.get((d, i))
            if cached is not None and cached.achieved == exp:
                maps.append(cached)
                continue
            got = _symbolic_generic_rank(sym_steps, d, i, exp)
            maps.append(MapRecord(i, d, exp, got))
            if got != exp:
                all_full = False
        if all_full:
            # a common witness exists over the infinite base field; sample
            # a few more points to exhibit one
            for _ in range(8):
                coeffs = tuple(rng.randint(1, bound) for _ in coords)
                recs = element_maps(coeffs)
                if all(r.full for r in recs):
                    return witness_report(coeffs, recs, "symbolic")
            notes.append("generic ranks are full but no sampled witness; reporting holds")
            return LefschetzReport(mode, tuple(maps), True, None, "symbolic", tuple(notes))
        return LefschetzReport(mode, tuple(maps), False, None, "symbolic", tuple(notes))

    maps = tuple(
        best_recs[(d, i)]
        if (d, i) in best_recs
        else MapRecord(i, d, _expected(alg, d, i), 0)
        for d, i in pairs_id
    )
    notes.append(f"randomized only ({cfg.trials} trials, bound {bound}): negatives are probabilistic")
    return LefschetzReport(mode, maps, False, None, "randomized", tuple(notes))


def wlp_generic(alg, cfg: GenericityConfig = GenericityConfig()) -> LefschetzReport:
    return generic_report(alg, "wlp", cfg)


def slp_generic(alg, cfg: GenericityConfig = GenericityConfig()) -> LefschetzReport:
    return generic_report(alg, "slp", cfg)


def slpn_generic(alg, cfg: GenericityConfig = GenericityConfig()) -> LefschetzReport:
    return generic_report(alg, "slpn", cfg)


# ---------------------------------------------------------------------------
# Jordan types
# ---------------------------------------------------------------------------


def jordan_type(alg, L) -> JordanType:
    """Block partition of multiplication by L, with graded strand starts."""
    Lvec = degree_one_vector(alg, L)
    table = RankTable(alg, Lvec)
    D = alg.socle_degree
    total = sum(_h(alg))

    def r(d: int, i: int) -> int:
        return table.rank(d, i)

    starts = []
    for i in range(D + 1):
        for length in range(1, D - i + 2):
            cnt = (
                r(length - 1, i)
                - r(length, i - 1)
                - r(length, i)
                + r(length + 1, i - 1)
            )
            for _ in range(cnt):
                starts.append((i, length))
    parts = tuple(sorted((length for _, length in starts), reverse=True))
    if sum(parts) != total:
        raise AssertionError("strand bookkeeping lost dimensions")
    return JordanType(parts, tuple(sorted(starts)))


def unimodal(h: Sequence[int]) -> bool:
    seq = list(h)
    if not seq:
        return True
    peak = seq.index(max(seq))
    return all(seq[i] <= seq[i + 1] for i in range(peak)) and all(
        seq[i] >= seq[i + 1] for i in range(peak, len(seq) - 1)
    )


def symmetric(h: Sequence[int]) -> bool:
    seq = list(h)
    return seq == list(reversed(seq))


# ---------------------------------------------------------------------------
# Non-Lefschetz loci
# ---------------------------------------------------------------------------


def nll_conditions(
    alg: GradedAlgebra,
    mode: str = "weak",
    dim_guard: int = 24,
    minor_guard: int = 20_000,
) -> list[Poly]:
    """Divisorial conditions cutting out the non-Lefschetz locus.

    For every map that must reach rank r, the gcd of the r x r minors of the
    symbolic multiplication matrix is taken, made squarefree and monic; the
    union of their vanishing loci is the codimension-one part of the locus.
    Components where a map's minors share no common factor (codimension two
    or more) carry no divisorial condition and contribute nothing here.
    """
    if not isinstance(alg, GradedAlgebra):
        raise TypeError("non-Lefschetz loci are computed for quotient algebras")
    if sum(_h(alg)) > dim_guard:
        raise ValueError(f"algebra dimension exceeds the symbolic guard {dim_guard}")
    modekey = {"weak": "wlp", "strong": "slp"}.get(mode)
    if modekey is None:
        raise ValueError("mode must be 'weak' or 'strong'")
    coords = degree_one_coordinates(alg)
    if not coords:
        return []
    k = len(coords)
    sym_steps = _symbolic_step_matrices(alg, coords)
    out: list[Poly] = []
    seen = set()
    for d, i in _map_list(alg, modekey):
        r = _expected(alg, d, i)
        if r == 0:
            continue
        mat = _symbolic_power(sym_steps, d, i)
        nrows, ncols = len(mat), len(mat[0])
        if math.comb(nrows, r) * math.comb(ncols, r) > minor_guard:
            raise ValueError("too many minors; raise minor_guard to proceed")
        minors = []
        for rsel in itertools.combinations(range(nrows), r):
            for csel in itertools.combinations(range(ncols), r):
                minors.append(poly_det([[mat[a][b] for b in csel] for a in rsel]))
        nz = [m for m in minors if not m.is_zero()]
        if not nz:
            # the map can never reach full rank: the locus is everything
            g = Poly.zero(k, alg.field)
            key = "0"
        else:
            g = poly_gcd_list(nz)
            if alg.field.characteristic == 0:
                g = squarefree_part(g)
            if g.degree() == 0:
                continue
            key = repr(g.terms)
        if key not in seen:
            seen.add(key)
            out.append(g)
    return out


# ---------------------------------------------------------------------------
# Higher Hessians
# ---------------------------------------------------------------------------


def hessian_matrix(alg: GradedAlgebra, i: int) -> list[list[DualPoly]]:
    """Matrix of second contractions b_a b_b . F over the degree-i basis."""
    if alg.field.characteristic != 0:
        raise ValueError("Hessians are computed in characteristic zero")
    F = alg.dual_generator()
    basis = [
        Poly.make(alg.nvars, alg.field, {m: alg.field.one()}) for m in alg.basis(i)
    ]
    return [[contract(ba * bb, F) for bb in basis] for ba in basis]


def hessian_det(alg: GradedAlgebra, i: int) -> DualPoly:
    """Hessian determinant, exact, expanded in the dual variables."""
    mat = hessian_matrix(alg, i)
    if not mat:
        raise ValueError(f"empty basis in degree {i}")
    ordinary = [[to_ordinary(e) for e in row] for row in mat]
    return from_ordinary(poly_det(ordinary))


def hessian_det_at(alg: GradedAlgebra, i: int, point: Sequence) -> Scalar:
    """Evaluate the degree-i Hessian determinant at a coefficient vector."""
    mat = hessian_matrix(alg, i)
    F = alg.field
    rows = [[to_ordinary(e).evaluate(point) for e in row] for row in mat]
    return det(Matrix.from_rows(F, rows, ncols=len(mat)))


def slp_by_hessian(
    alg: GradedAlgebra,
    symbolic_size_limit: int = 10,
    seed: int = 0,
    bound: int = 10_000,
    evaluations: int = 8,
) -> dict:
    """SLP criterion: no Hessian determinant vanishes up to half the socle.

    Sizes above the symbolic guard are decided by seeded random evaluation,
    with the Schwartz-Zippel failure bound recorded.
    """
    if alg.field.characteristic != 0:
        raise ValueError("the Hessian criterion applies in characteristic zero")
    c = alg.socle_degree
    rng = random.Random(seed)
    per_i = []
    holds = True
    for i in range(c // 2 + 1):
        size = alg.dim(i)
        entry: dict = {"i": i, "size": size}
        if size <= symbolic_size_limit:
            vanishes = hessian_det(alg, i).is_zero()
            entry["method"] = "symbolic"
        else:
            vanishes = True
            for _ in range(evaluations):
                point = [rng.randint(1, bound) for _ in range(alg.nvars)]
                if not alg.field.is_zero(hessian_det_at(alg, i, point)):
                    vanishes = False
                    break
            entry["method"] = "randomized"
            degree_bound = size * max(c - 2 * i, 1)
            entry["schwartz_zippel_bound"] = (
                f"<= ({degree_bound}/{bound})^{evaluations}"
            )
        entry["vanishes"] = vanishes
        if vanishes:
            holds = False
        per_i.append(entry)
    return {"slp": holds, "hessians": per_i}


# ---------------------------------------------------------------------------
# f-vector to h-vector
# ---------------------------------------------------------------------------


def h_vector(f: Sequence[int], d: int) -> tuple:
    """Alternating-sum transform of a simplicial f-vector, with f_{-1} = 1."""
    fv = list(f)
    if len(fv) != d:
        raise ValueError(f"expected {d} face counts, got {len(fv)}")

    def fat(j: int) -> int:
        return 1 if j == -1 else fv[j]

    out = []
    for i in range(d + 1):
        acc = 0
        for j in range(i + 1):
            acc += (-1) ** (i - j) * math.comb(d - j, d - i) * fat(j - 1)
        out.append(acc)
    return tuple(out)
