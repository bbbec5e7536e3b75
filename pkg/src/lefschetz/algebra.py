"""Graded artinian quotients of polynomial rings.

Everything is computed degreewise by exact row reduction: no Groebner bases.
A GradedAlgebra stores, for each degree up to the socle degree, the full
monomial basis, the reduced row space of the ideal piece, and the standard
monomials (non-pivot columns under descending grevlex).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .exactmath import FieldSpec, Matrix, RowSpace, Scalar, kernel_basis
from .polynomials import (
    DualPoly,
    Monomial,
    Poly,
    format_dual,
    format_poly,
    mono_degree,
    mono_mul,
    monomials,
    parse_dual,
    parse_element,
    parse_poly,
)


class NotArtinianError(ValueError):
    pass


class NotGorensteinError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """A polynomial ring context: variable names, weights and the field."""

    varnames: tuple
    field: FieldSpec
    weights: tuple = ()

    def __post_init__(self):
        names = tuple(str(v) for v in self.varnames)
        object.__setattr__(self, "varnames", names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name in names:
            if not name or not name[0].islower():
                raise ValueError(f"variable names must start lower-case: {name!r}")
        w = tuple(self.weights) if self.weights else tuple(1 for _ in names)
        if len(w) != len(names) or any(x < 1 for x in w):
            raise ValueError("weights must be positive, one per variable")
        object.__setattr__(self, "weights", w)

    @property
    def nvars(self) -> int:
        return len(self.varnames)

    @property
    def standard_graded(self) -> bool:
        return all(w == 1 for w in self.weights)

    def monomials(self, d: int) -> list[Monomial]:
        return monomials(self.nvars, d, weights=self.weights)

    def variable(self, i: int) -> Poly:
        return Poly.variable(self.nvars, self.field, i)

    def one(self) -> Poly:
        return Poly.constant(self.nvars, self.field, 1)

    def parse(self, text: str) -> Poly:
        return parse_poly(text, self.varnames, self.field)

    def parse_dual(self, text: str) -> DualPoly:
        return parse_dual(text, self.varnames, self.field)

    def parse_element(self, text: str) -> Union[Poly, DualPoly]:
        return parse_element(text, self.varnames, self.field)

    def format(self, p) -> str:
        if isinstance(p, DualPoly):
            return format_dual(p, self.varnames)
        return format_poly(p, self.varnames)

    def degree(self, p) -> int:
        return p.degree(self.weights)

    def is_homogeneous(self, p) -> bool:
        return p.is_homogeneous(self.weights)

    def extended(self, name: str, weight: int = 1) -> "Ring":
        return Ring(self.varnames + (name,), self.field, self.weights + (weight,))

    def joined(self, other: "Ring") -> tuple["Ring", list[str]]:
        """Disjoint union of variables; colliding names on the right get
        a numeric suffix.  Returns the new ring and the renamed right names."""
        if self.field != other.field:
            raise ValueError("field mismatch")
        names = list(self.varnames)
        right = []
        for v in other.varnames:
            new = v
            k = 2
            while new in names or new in right:
                new = f"{v}_{k}"
                k += 1
            right.append(new)
        return (
            Ring(tuple(names + right), self.field, self.weights + other.weights),
            right,
        )


@dataclass(frozen=True)
class Ideal:
    ring: Ring
    generators: tuple

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        for g in gens:
            if g.is_zero():
                raise ValueError("zero ideal generator")
            if not self.ring.is_homogeneous(g):
                raise ValueError(f"inhomogeneous generator: {self.ring.format(g)}")
            if self.ring.degree(g) < 1:
                raise ValueError("degree-0 generator would collapse the algebra")


class _IdealPieces:
    """Degreewise row spaces of a homogeneous ideal, built incrementally."""

    def __init__(self, ring: Ring, generators: Sequence[Poly]):
        self.ring = ring
        self.generators = list(generators)
        self.monos: list[list[Monomial]] = []
        self.index: list[dict[Monomial, int]] = []
        self.spaces: list[RowSpace] = []

    def extend_to(self, d: int) -> None:
        ring = self.ring
        while len(self.spaces) <= d:
            e = len(self.spaces)
            monos = ring.monomials(e)
            idx = {m: i for i, m in enumerate(monos)}
            space = RowSpace(ring.field, len(monos))
            for g in self.generators:
                if ring.degree(g) == e:
                    space.add({idx[m]: c for m, c in g.terms})
            for j, w in enumerate(ring.weights):
                lower = e - w
                if lower < 0 or lower >= len(self.spaces):
                    continue
                lower_monos = self.monos[lower]
                for row in self.spaces[lower].rref_rows():
                    shifted = {}
                    for col, c in row.items():
                        m = lower_monos[col]
                        mm = tuple(x + (1 if i == j else 0) for i, x in enumerate(m))
                        shifted[idx[mm]] = c
                    space.add(shifted)
            self.monos.append(monos)
            self.index.append(idx)
            self.spaces.append(space)

    def h(self, d: int) -> int:
        self.extend_to(d)
        return len(self.monos[d]) - self.spaces[d].rank


def ideal_degree_piece(ideal: Ideal, d: int) -> Matrix:
    """Dense rref basis of the span of I in degree d."""
    pieces = _IdealPieces(ideal.ring, ideal.generators)
    pieces.extend_to(d)
    return pieces.spaces[d].dense_matrix()


def inverse_system(ideal: Ideal, d: int) -> list[DualPoly]:
    """Basis of the perp of I_d inside the degree-d dual, as divided forms."""
    pieces = _IdealPieces(ideal.ring, ideal.generators)
    pieces.extend_to(d)
    monos = pieces.monos[d]
    mat = pieces.spaces[d].dense_matrix()
    if mat.rows == 0:
        mat = Matrix.zero(ideal.ring.field, 1, len(monos))
    out = []
    for v in kernel_basis(mat):
        out.append(DualPoly.make(ideal.ring.nvars, ideal.ring.field, dict(zip(monos, v))))
    return out


class GradedAlgebra:
    """An artinian graded quotient with explicit degreewise bases."""

    def __init__(
        self,
        ring: Ring,
        socle_degree: int,
        monos: list[list[Monomial]],
        spaces: list[RowSpace],
        generators: Optional[tuple] = None,
        dual_generator_poly: Optional[DualPoly] = None,
    ):
        self.ring = ring
        self.socle_degree = socle_degree
        self._monos = monos
        self._index = [{m: i for i, m in enumerate(ms)} for ms in monos]
        self._spaces = spaces
        self.generators = generators
        self._dual_generator = dual_generator_poly
        self._std: list[list[Monomial]] = []
        self._std_index: list[dict[Monomial, int]] = []
        for d in range(socle_degree + 1):
            pivots = set(spaces[d].pivots())
            std = [m for i, m in enumerate(monos[d]) if i not in pivots]
            self._std.append(std)
            self._std_index.append({m: i for i, m in enumerate(std)})
        self._mult_cache: dict = {}

    # -- basic data ----------------------------------------------------------

    @property
    def field(self) -> FieldSpec:
        return self.ring.field

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    def dim(self, d: int) -> int:
        if d < 0 or d > self.socle_degree:
            return 0
        return len(self._std[d])

    def total_dim(self) -> int:
        return sum(self.dim(d) for d in range(self.socle_degree + 1))

    def hilbert_function(self) -> tuple:
        return tuple(self.dim(d) for d in range(self.socle_degree + 1))

    def basis(self, d: int) -> list[Monomial]:
        if d < 0 or d > self.socle_degree:
            return []
        return self._std[d]

    def ideal_space(self, d: int) -> RowSpace:
        """Row space of the ideal piece in degree d (full space beyond D)."""
        if d <= self.socle_degree:
            return self._spaces[d]
        monos = self.ring.monomials(d)
        full = RowSpace(self.field, len(monos))
        one = self.field.one()
        for i in range(len(monos)):
            full.add({i: one})
        return full

    def monomial_basis(self, d: int) -> list[Monomial]:
        if d <= self.socle_degree:
            return self._monos[d]
        return self.ring.monomials(d)

    # -- normal forms ----------------------------------------------------------

    def nf_poly(self, f: Poly) -> Poly:
        """Idempotent normal form supported on standard monomials."""
        acc: dict[Monomial, Scalar] = {}
        weights = self.ring.weights
        degs = {mono_degree(m, weights) for m, _ in f.terms}
        for d in sorted(degs):
            if d > self.socle_degree:
                continue
            comp = {m: c for m, c in f.terms if mono_degree(m, weights) == d}
            idx = self._index[d]
            row = {idx[m]: c for m, c in comp.items()}
            rem = self._spaces[d].reduce(row)
            for col, c in rem.items():
                acc[self._monos[d][col]] = c
        return Poly.make(self.nvars, self.field, acc)

    def vector(self, f: Poly, d: int) -> tuple:
        """Coordinates of the degree-d component of f in the standard basis."""
        F = self.field
        if d < 0 or d > self.socle_degree:
            return ()
        comp = {
            m: c for m, c in f.terms if mono_degree(m, self.ring.weights) == d
        }
        idx = self._index[d]
        rem = self._spaces[d].reduce({idx[m]: c for m, c in comp.items()})
        out = [F.zero()] * self.dim(d)
        sidx = self._std_index[d]
        for col, c in rem.items():
            out[sidx[self._monos[d][col]]] = c
        return tuple(out)

    def poly(self, d: int, vec: Sequence[Scalar]) -> Poly:
        return Poly.make(self.nvars, self.field, dict(zip(self._std[d], vec)))

    def one(self) -> tuple:
        return self.vector(self.ring.one(), 0)

    # -- multiplication --------------------------------------------------------

    def multiply(self, d1: int, v1: Sequence[Scalar], d2: int, v2: Sequence[Scalar]) -> tuple:
        F = self.field
        d = d1 + d2
        if d > self.socle_degree:
            return ()
        out = [F.zero()] * self.dim(d)
        for i, c1 in enumerate(v1):
            if F.is_zero(c1):
                continue
            for j, c2 in enumerate(v2):
                if F.is_zero(c2):
                    continue
                prod = self._basis_product(d1, i, d2, j)
                c = F.mul(c1, c2)
                for k, v in enumerate(prod):
                    if not F.is_zero(v):
                        out[k] = F.add(out[k], F.mul(c, v))
        return tuple(out)

    def _basis_product(self, d1: int, i: int, d2: int, j: int) -> tuple:
        key = (d1, i, d2, j) if (d1, i) <= (d2, j) else (d2, j, d1, i)
        got = self._mult_cache.get(key)
        if got is None:
            a, b, c, dd = key
            m = mono_mul(self._std[a][b], self._std[c][dd])
            got = self.vector(Poly.make(self.nvars, self.field, {m: self.field.one()}), a + c)
            self._mult_cache[key] = got
        return got

    def multiplication_map(self, f: Poly, i: int) -> Matrix:
        """Matrix of multiplication by homogeneous f from degree i."""
        if not self.ring.is_homogeneous(f):
            raise ValueError("multiplication map needs a homogeneous element")
        w = self.ring.degree(f)
        if i < 0 or i + w > self.socle_degree:
            raise ValueError(
                f"degree out of range: map {i} -> {i + w} with socle degree {self.socle_degree}"
            )
        cols = []
        for m in self._std[i]:
            prod = f * Poly.make(self.nvars, self.field, {m: self.field.one()})
            cols.append(self.vector(prod, i + w))
        return Matrix.from_cols(self.field, cols, nrows=self.dim(i + w))

    def maximal_ideal_generators(self) -> list[tuple[int, tuple]]:
        out = []
        for j, w in enumerate(self.ring.weights):
            if w <= self.socle_degree:
                vec = self.vector(self.ring.variable(j), w)
                if any(not self.field.is_zero(c) for c in vec):
                    out.append((w, vec))
        return out

    # -- presentation-facing helpers -------------------------------------------

    def minimal_generators(self) -> list[Poly]:
        """Minimal homogeneous generators of the ideal, degree by degree."""
        ring = self.ring
        F = self.field
        maxw = max(ring.weights)
        out: list[Poly] = []
        for d in range(1, self.socle_degree + maxw + 1):
            monos = self.monomial_basis(d)
            idx = {m: i for i, m in enumerate(monos)}
            span = RowSpace(F, len(monos))
            for j, w in enumerate(ring.weights):
                lower = d - w
                if lower < 0:
                    continue
                lower_monos = self.monomial_basis(lower)
                for row in self.ideal_space(lower).rref_rows():
                    shifted = {}
                    for col, c in row.items():
                        m = lower_monos[col]
                        mm = tuple(x + (1 if k == j else 0) for k, x in enumerate(m))
                        shifted[idx[mm]] = c
                    span.add(shifted)
            for row in self.ideal_space(d).rref_rows():
                if span.add(dict(row)):
                    out.append(
                        Poly.make(self.nvars, F, {monos[c]: v for c, v in row.items()})
                    )
        return out

    def presentation_generators(self) -> list[Poly]:
        if self.generators is not None:
            return list(self.generators)
        return self.minimal_generators()

    # -- duality ----------------------------------------------------------------

    def dual_generator(self) -> DualPoly:
        """Macaulay dual generator spanning the perp of the top ideal piece."""
        if self._dual_generator is not None:
            return self._dual_generator
        D = self.socle_degree
        mat = self._spaces[D].dense_matrix()
        if mat.rows == 0:
            mat = Matrix.zero(self.field, 1, len(self._monos[D]))
        kern = kernel_basis(mat)
        if len(kern) != 1:
            raise NotGorensteinError(
                f"top ideal piece has perp of dimension {len(kern)}, not 1"
            )
        if not is_gorenstein(self):
            raise NotGorensteinError("socle is not one-dimensional")
        v = kern[0]
        F = DualPoly.make(self.nvars, self.field, dict(zip(self._monos[D], v)))
        # normalise so the pairing with the standard monomial of A_D is 1
        c = F.coefficient(self._std[D][0])
        F = F.scale(self.field.inv(c))
        self._dual_generator = F
        return F

    def __repr__(self) -> str:
        return (
            f"GradedAlgebra(vars={','.join(self.ring.varnames)}, field={self.ring.field}, "
            f"H={self.hilbert_function()})"
        )


def from_ideal(ideal: Ideal, max_degree: Optional[int] = None) -> GradedAlgebra:
    """Build the artinian quotient, certifying that the Hilbert function dies.

    Stops after max(weights) consecutive zero dimensions (which forces all
    later pieces to vanish); failing to see that by the cap is an error.
    """
    ring = ideal.ring
    gens = ideal.generators
    maxw = max(ring.weights)
    if max_degree is None:
        if len(gens) >= ring.nvars:
            max_degree = sum(ring.degree(g) - 1 for g in gens) + maxw
        else:
            raise ValueError(
                "fewer generators than variables: supply max_degree to bound the search"
            )
    pieces = _IdealPieces(ring, gens)
    h = [1]
    pieces.extend_to(0)
    if pieces.spaces[0].rank:
        raise ValueError("ideal contains a unit")
    zero_run = 0
    d = 0
    while zero_run < maxw:
        d += 1
        if d > max_degree:
            raise NotArtinianError(
                f"not artinian by degree {max_degree}: h has not vanished"
            )
        hd = pieces.h(d)
        h.append(hd)
        zero_run = zero_run + 1 if hd == 0 else 0
    D = len(h) - 1
    while h[D] == 0:
        D -= 1
    return GradedAlgebra(
        ring,
        D,
        [pieces.monos[d] for d in range(D + 1)],
        [pieces.spaces[d] for d in range(D + 1)],
        generators=gens,
    )


def from_dual_generator(F: DualPoly, ring: Ring) -> GradedAlgebra:
    """Apell construction: the Gorenstein quotient by the annihilator of F."""
    if F.is_zero():
        raise ValueError("dual generator must be nonzero")
    if not F.is_homogeneous(ring.weights):
        raise ValueError("dual generator must be homogeneous")
    if F.nvars != ring.nvars:
        raise ValueError("variable-count mismatch")
    D = F.degree(ring.weights)
    fmap = {m: c for m, c in F.terms}
    monos_all = []
    spaces = []
    for d in range(D + 1):
        monos = ring.monomials(d)
        target = ring.monomials(D - d)
        rows = []
        for t in target:
            rows.append([fmap.get(mono_mul(t, s), ring.field.zero()) for s in monos])
        mat = Matrix.from_rows(ring.field, rows, ncols=len(monos))
        space = RowSpace(ring.field, len(monos))
        for v in kernel_basis(mat):
            space.add({i: c for i, c in enumerate(v) if not ring.field.is_zero(c)})
        monos_all.append(monos)
        spaces.append(space)
    return GradedAlgebra(ring, D, monos_all, spaces, dual_generator_poly=F)


# ---------------------------------------------------------------------------
# Socle, orientations, Poincare pairing (protocol functions: they only use
# dim/multiply/socle_degree/field, so pair and blowup algebras share them)
# ---------------------------------------------------------------------------


def hilbert_function(alg) -> tuple:
    return tuple(alg.dim(d) for d in range(alg.socle_degree + 1))


def hilbert_series_text(alg) -> str:
    parts = []
    for d, h in enumerate(hilbert_function(alg)):
        if h == 0:
            continue
        if d == 0:
            parts.append(str(h))
        elif d == 1:
            parts.append(f"{h}*t" if h != 1 else "t")
        else:
            parts.append(f"{h}*t^{d}" if h != 1 else f"t^{d}")
    return " + ".join(parts) if parts else "0"


def operator_matrix(alg, de: int, ve: Sequence[Scalar], i: int) -> Matrix:
    """Matrix of multiplication by a degree-de element from degree i."""
    F = alg.field
    target = alg.dim(i + de) if i + de <= alg.socle_degree else 0
    cols = []
    for j in range(alg.dim(i)):
        basis_vec = tuple(
            F.one() if k == j else F.zero() for k in range(alg.dim(i))
        )
        if target == 0:
            cols.append(())
        else:
            cols.append(alg.multiply(de, tuple(ve), i, basis_vec))
    return Matrix.from_cols(F, cols, nrows=target)


def _mgens(alg) -> list[tuple[int, tuple]]:
    get = getattr(alg, "maximal_ideal_generators", None)
    if get is not None:
        return get()
    out = []
    F = alg.field
    for w in range(1, alg.socle_degree + 1):
        for j in range(alg.dim(w)):
            out.append(
                (w, tuple(F.one() if k == j else F.zero() for k in range(alg.dim(w))))
            )
    return out


def socle_vectors(alg) -> list[tuple[int, tuple]]:
    """Basis of the annihilator of the maximal ideal, degree by degree."""
    F = alg.field
    gens = _mgens(alg)
    out = []
    for d in range(alg.socle_degree + 1):
        nd = alg.dim(d)
        if nd == 0:
            continue
        stacked: list[tuple] = []
        for w, g in gens:
            if d + w > alg.socle_degree:
                continue
            mat = operator_matrix(alg, w, g, d)
            stacked.extend(mat.entries)
        if not stacked:
            for j in range(nd):
                out.append((d, tuple(F.one() if k == j else F.zero() for k in range(nd))))
            continue
        mat = Matrix(F, nd, tuple(stacked))
        for v in kernel_basis(mat):
            out.append((d, v))
    return out


def is_gorenstein(alg) -> bool:
    return len(socle_vectors(alg)) == 1


def is_level(alg) -> bool:
    return all(d == alg.socle_degree for d, _ in socle_vectors(alg))


@dataclass(frozen=True)
class Orientation:
    """A functional on the top degree, as coefficients over its basis."""

    socle_degree: int
    coeffs: tuple

    def apply(self, field: FieldSpec, vec: Sequence[Scalar]) -> Scalar:
        acc = field.zero()
        for c, v in zip(self.coeffs, vec):
            acc = field.add(acc, field.mul(c, v))
        return acc


def default_orientation(alg) -> Orientation:
    """Sends the leading standard basis vector of the top degree to 1."""
    D = alg.socle_degree
    n = alg.dim(D)
    F = alg.field
    return Orientation(D, tuple(F.one() if i == 0 else F.zero() for i in range(n)))


def orientation_from_socle_element(alg, d: int, vec: Sequence[Scalar]) -> Orientation:
    """The unique orientation with value 1 on the given top-degree element."""
    D = alg.socle_degree
    if d != D:
        raise ValueError("orientation element must live in the top degree")
    if alg.dim(D) != 1:
        raise NotGorensteinError("orientation from an element needs a 1-dimensional top degree")
    c = vec[0]
    if alg.field.is_zero(c):
        raise ValueError("orientation element must be nonzero")
    return Orientation(D, (alg.field.inv(c),))


def integral(alg, omega: Orientation, f_degree: int, vec: Sequence[Scalar]) -> Scalar:
    """Orientation applied to a homogeneous element (0 off the top degree)."""
    if f_degree != alg.socle_degree:
        return alg.field.zero()
    return omega.apply(alg.field, vec)


def pairing_matrix(alg, omega: Orientation, i: int) -> Matrix:
    """Poincare pairing A_i x A_{D-i} -> F against standard bases."""
    F = alg.field
    D = alg.socle_degree
    ni, nj = alg.dim(i), alg.dim(D - i)
    rows = []
    for a in range(ni):
        ea = tuple(F.one() if k == a else F.zero() for k in range(ni))
        row = []
        for b in range(nj):
            eb = tuple(F.one() if k == b else F.zero() for k in range(nj))
            prod = alg.multiply(i, ea, D - i, eb)
            row.append(omega.apply(F, prod))
        rows.append(tuple(row))
    return Matrix(F, nj, tuple(rows))


def same_degreewise_ideal(a: GradedAlgebra, b: GradedAlgebra) -> bool:
    """Equality of Hilbert functions and of every ideal row space."""
    if a.hilbert_function() != b.hilbert_function():
        return False
    if a.ring.varnames != b.ring.varnames or a.ring.weights != b.ring.weights:
        return False
    for d in range(a.socle_degree + 1):
        ra = a.ideal_space(d)
        rb = b.ideal_space(d)
        if ra.rank != rb.rank or ra.pivots() != rb.pivots():
            return False
        for row in ra.rref_rows():
            if not rb.contains(row):
                return False
    return True
