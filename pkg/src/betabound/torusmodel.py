"""Lattice model of polarizations on products of elliptic curves.

The product X = E_0 x ... x E_{g-1} is modelled through its period
lattice.  Factor i carries the lattice basis (1, tau/k_i) where tau is
the imaginary unit and k_i is the factor's isogeny multiplier; the last
factor always has k_{g-1} = 1, giving the basis (1, tau).  Factor i
occupies lattice coordinates 2i and 2i+1.

A class is a nonnegative integer combination of the point divisors
F_0, ..., F_{g-1} (one per factor) and the correspondence divisor G,
the zero locus of (p_0, ..., p_{g-1}) |-> p_{g-1} - sum_{i<g-1} f_i(p_i)
with f_i : E_i -> E_{g-1} the degree-k_i isogeny acting as z |-> k_i z
on the universal cover.  Its first Chern class is the alternating matrix

    E = sum_i a_i * E_{F_i} + c * S^T E_std S,

where E_{F_i} is the standard symplectic block on factor i with sign
convention E(e_{2i}, e_{2i+1}) = +1, E_std is that block on the last
factor, and S is the 2 x 2g lattice matrix of the defining map of G.

The choice tau = i makes the complex structure J rational (blocks
[[0, -1/k_i], [k_i, 0]]), so ampleness is an exact positive-definiteness
test and every invariant below (Euler characteristic, type, the finite
group K(l)) is computed by exact integer linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

from .exactmath import (
    IntMatrix,
    PfaffianCache,
    leading_minors_all_positive,
    smith_normal_form,
)


class DegenerateFormError(ValueError):
    """Raised when an operation needs a nondegenerate alternating form."""


class LatticeInvariantError(AssertionError):
    """Internal invariant violation in the lattice model (a bug, never user input)."""


@dataclass(frozen=True)
class ConstructionSpace:
    """The product X = E_0 x ... x E_{g-1} with isogeny multipliers k.

    ``k`` lists the multipliers of the first g-1 factors; the last factor
    implicitly has multiplier 1.
    """

    g: int
    k: tuple[int, ...]

    def __post_init__(self):
        if self.g < 1:
            raise ValueError("dimension g must be >= 1")
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.k) != self.g - 1:
            raise ValueError("need exactly g-1 isogeny multipliers")
        if any(x < 1 for x in self.k):
            raise ValueError("isogeny multipliers must be >= 1")

    @property
    def k_full(self) -> tuple[int, ...]:
        """Multipliers of all g factors, the last one being 1."""
        return self.k + (1,)

    def tail_sum(self, i: int) -> int:
        """Sum of the multipliers of factors i+1, ..., g-1 (0 for i = g-1)."""
        return sum(self.k_full[i + 1 :])


@dataclass(frozen=True)
class DivisorClass:
    """Class a_0*F_0 + ... + a_{g-1}*F_{g-1} + c*G with nonnegative coefficients."""

    space: ConstructionSpace
    a: tuple[int, ...]
    c: int

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "c", int(self.c))
        if len(self.a) != self.space.g:
            raise ValueError("need one coefficient per factor")
        if any(x < 0 for x in self.a) or self.c < 0:
            raise ValueError("coefficients must be nonnegative")
        if not any(self.a) and not self.c:
            raise ValueError("the zero class is not allowed")


def standard_class(space: ConstructionSpace, a: int, b: int) -> DivisorClass:
    """The distinguished family a*F_0 + F_1 + ... + F_{g-2} + b*F_{g-1} + G."""
    if space.g < 2:
        raise ValueError("standard classes need g >= 2")
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("need a, b >= 0 and not both zero")
    return DivisorClass(space, (a,) + (1,) * (space.g - 2) + (b,), 1)


@dataclass(frozen=True)
class PolarizationType:
    """Type (d_0, ..., d_{g-1}) with the divisibility chain d_0 | d_1 | ..."""

    d: tuple[int, ...]

    def __post_init__(self):
        if not self.d or any(x < 1 for x in self.d):
            raise ValueError("type entries must be positive")
        for prev, nxt in zip(self.d, self.d[1:]):
            if nxt % prev:
                raise ValueError("type entries must form a divisibility chain")

    @property
    def product(self) -> int:
        return reduce(lambda x, y: x * y, self.d, 1)


@dataclass(frozen=True)
class FiniteGroupShape:
    """Elementary-divisor shape of a finite abelian group."""

    divisors: tuple[int, ...]

    def __post_init__(self):
        for prev, nxt in zip(self.divisors, self.divisors[1:]):
            if nxt % prev:
                raise ValueError("divisors must form a divisibility chain")

    @property
    def order(self) -> int:
        return reduce(lambda x, y: x * y, self.divisors, 1)


@dataclass(frozen=True)
class LatticeData:
    """Per-factor bases, isogeny matrices and the complex structure."""

    space: ConstructionSpace
    basis_denominators: tuple[int, ...]
    f_matrices: tuple[IntMatrix, ...]
    j: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class AltForm:
    """Alternating lattice form of a class, with its complex structure.

    ``factor_k`` records the basis denominator of each (kept) factor, so
    restrictions remain self-contained.  The symmetric pairing
    S(x, y) = E(x, Jy) is validated at construction; asymmetry would mean
    the integer form is not compatible with the complex structure, which
    cannot happen for forms built here and therefore signals a bug.
    """

    e: IntMatrix
    j: tuple[tuple[Fraction, ...], ...]
    factor_k: tuple[int, ...]
    space: ConstructionSpace | None = None
    cls: DivisorClass | None = None
    _cache: PfaffianCache | None = field(default=None, compare=False, repr=False)
    _snf_diag: tuple[int, ...] | None = field(default=None, compare=False, repr=False)

    @property
    def g(self) -> int:
        return len(self.factor_k)

    def pfaffian_cache(self) -> PfaffianCache:
        if self._cache is None:
            object.__setattr__(self, "_cache", PfaffianCache(self.e))
        return self._cache

    def snf_diagonal(self) -> tuple[int, ...]:
        if self._snf_diag is None:
            _, s, _ = smith_normal_form(self.e)
            object.__setattr__(self, "_snf_diag", s.diagonal_entries())
        return self._snf_diag


def _complex_structure(factor_k: Sequence[int]) -> tuple[tuple[Fraction, ...], ...]:
    n = 2 * len(factor_k)
    j = [[Fraction(0)] * n for _ in range(n)]
    for i, k in enumerate(factor_k):
        # multiplication by tau = sqrt(-1) in the basis (1, tau/k)
        j[2 * i][2 * i + 1] = Fraction(-1, k)
        j[2 * i + 1][2 * i] = Fraction(k)
    return tuple(tuple(row) for row in j)


def build_lattice_data(space: ConstructionSpace) -> LatticeData:
    """Bases (1, tau/k_i), the isogeny matrices diag(k_i, 1), and J."""
    f_matrices = tuple(IntMatrix.diagonal((k, 1)) for k in space.k)
    return LatticeData(
        space=space,
        basis_denominators=space.k_full,
        f_matrices=f_matrices,
        j=_complex_structure(space.k_full),
    )


def hermitian_pairing(form: AltForm) -> tuple[tuple[Fraction, ...], ...]:
    """The pairing S(x, y) = E(x, Jy), as the matrix product E * J.

    J has two nonzero entries per factor block, so column 2i of S is
    k_i * (column 2i+1 of E) and column 2i+1 is -(column 2i of E) / k_i.
    """
    e = form.e
    n = e.rows
    rows = []
    for u in range(n):
        row = []
        for i, k in enumerate(form.factor_k):
            row.append(Fraction(k * e.at(u, 2 * i + 1)))
            row.append(Fraction(-e.at(u, 2 * i), k))
        rows.append(tuple(row))
    return tuple(rows)


def _scaled_pairing(e: IntMatrix, factor_k: Sequence[int]) -> list[list[int]]:
    """Integer matrix congruent to the pairing E(x, Jy).

    Rescaling the odd basis vector of factor i by k_i clears the
    denominators; a diagonal congruence preserves symmetry and
    definiteness, so this is what the ampleness test runs on.
    """
    n = e.rows
    scale = [1 if u % 2 == 0 else factor_k[u // 2] for u in range(n)]
    rows = []
    for u in range(n):
        du = scale[u]
        row = []
        for i, k in enumerate(factor_k):
            row.append(du * k * e.at(u, 2 * i + 1))
            row.append(-du * e.at(u, 2 * i))
        rows.append(row)
    return rows


def _validated_form(
    e: IntMatrix,
    factor_k: tuple[int, ...],
    space: ConstructionSpace | None,
    cls: DivisorClass | None,
) -> AltForm:
    if not e.is_alternating():
        raise LatticeInvariantError("form matrix is not alternating")
    s = _scaled_pairing(e, factor_k)
    n = len(s)
    for u in range(n):
        for v in range(u + 1, n):
            if s[u][v] != s[v][u]:
                raise LatticeInvariantError("pairing E(x, Jy) is not symmetric")
    return AltForm(e=e, j=_complex_structure(factor_k), factor_k=factor_k, space=space, cls=cls)


def alt_form(cls: DivisorClass) -> AltForm:
    """Alternating matrix of a class on the period lattice."""
    space = cls.space
    g = space.g
    n = 2 * g
    e = [[0] * n for _ in range(n)]
    for i, coeff in enumerate(cls.a):
        e[2 * i][2 * i + 1] += coeff
        e[2 * i + 1][2 * i] -= coeff
    if cls.c:
        # Columns of the 2 x 2g lattice matrix of the defining map of G:
        # -diag(k_i, 1) on factor i < g-1, the identity on the last factor.
        cols: list[tuple[int, int]] = []
        for k in space.k:
            cols.append((-k, 0))
            cols.append((0, -1))
        cols.append((1, 0))
        cols.append((0, 1))
        for u in range(n):
            xu, yu = cols[u]
            for v in range(n):
                xv, yv = cols[v]
                e[u][v] += cls.c * (xu * yv - yu * xv)
    return _validated_form(IntMatrix.from_rows(e), space.k_full, space, cls)


def chi_multilinear(cls: DivisorClass) -> int:
    """Euler characteristic from the intersection numbers of the basis.

    Both F_i and G are abelian subvarieties of codimension one, so their
    self-intersections vanish and the top self-intersection of the class
    is linear in c and multilinear in the a_i:

        chi = prod_i a_i + c * sum_i k_i * prod_{j != i} a_j,

    with k_{g-1} = 1.
    """
    k_full = cls.space.k_full
    prod = 1
    for x in cls.a:
        prod *= x
    mixed = 0
    for i, k in enumerate(k_full):
        p = 1
        for j, x in enumerate(cls.a):
            if j != i:
                p *= x
        mixed += k * p
    return prod + cls.c * mixed


def chi_pfaffian(form: AltForm) -> int:
    """Euler characteristic as the Pfaffian of the alternating form."""
    return form.pfaffian_cache().pfaffian_of(range(form.e.rows))


def _paired_divisors(form: AltForm) -> tuple[int, ...]:
    diag = form.snf_diagonal()
    if any(x == 0 for x in diag):
        raise DegenerateFormError("form is degenerate")
    for i in range(0, len(diag), 2):
        if diag[i] != diag[i + 1]:
            raise LatticeInvariantError("elementary divisors of an alternating form must pair up")
    return diag


def polarization_type(form: AltForm) -> PolarizationType:
    """Type of the class: every second elementary divisor of its form."""
    diag = _paired_divisors(form)
    ptype = PolarizationType(diag[::2])
    if ptype.product != abs(chi_pfaffian(form)):
        raise LatticeInvariantError("type product does not match the Pfaffian")
    return ptype


def k_group(form: AltForm, full: bool = False) -> FiniteGroupShape:
    """Shape of the finite group K(l), the cokernel of E on the lattice.

    By default the trivial elementary divisors are dropped; ``full=True``
    returns the complete doubled list (whose product is chi squared).
    """
    diag = _paired_divisors(form)
    if full:
        return FiniteGroupShape(diag)
    return FiniteGroupShape(tuple(x for x in diag if x > 1))


def is_ample(form: AltForm) -> bool:
    """Ampleness as exact positive definiteness of the pairing E(x, Jy).

    Runs on the integer-rescaled pairing, whose leading principal minors
    are checked by fraction-free elimination.
    """
    return leading_minors_all_positive(_scaled_pairing(form.e, form.factor_k))


def restrict(form: AltForm, keep: Sequence[int]) -> AltForm:
    """Restriction to the subtorus spanned by the kept factors.

    Both E and J restrict to the principal submatrix on the kept
    factors' lattice coordinates.  A restriction of a valid form is
    automatically valid, so no revalidation is needed.
    """
    kept = sorted(set(keep))
    if not kept:
        raise ValueError("cannot restrict to an empty set of factors")
    if kept[0] < 0 or kept[-1] >= form.g:
        raise ValueError("factor index out of range")
    coords = [c for i in kept for c in (2 * i, 2 * i + 1)]
    e_sub = form.e.principal_submatrix(coords)
    factor_k = tuple(form.factor_k[i] for i in kept)
    return AltForm(e=e_sub, j=_complex_structure(factor_k), factor_k=factor_k, space=form.space)


def curve_degrees(form: AltForm) -> tuple[int, ...]:
    """Degrees of the restrictions to the coordinate elliptic curves."""
    return tuple(form.e.at(2 * i, 2 * i + 1) for i in range(form.g))
