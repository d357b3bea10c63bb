"""Exact bounds for the basepoint-freeness threshold beta.

beta itself is never computed, only bounded.  Lower bounds come from the
degree-root inequality beta >= chi^(-1/g) and from restriction to
coordinate elliptic curves, where beta equals the inverse degree.  Upper
bounds come from flags of coordinate subtori: dropping one factor at a
time and comparing the Euler characteristics along the chain gives a
certified upper bound for the specific construction.

Scope bookkeeping keeps the logic auditable: a bound either holds for
the one construction it was computed on ("specific-construction"), for
the general member of the family of that type ("general-member"), or for
every member ("all-members").  The only bridge between scopes is the
semicontinuity rule: an upper bound certified at one construction also
holds for the general member.  Lower bounds never cross scopes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from itertools import permutations
from typing import Iterable, Sequence

from .exactmath import integer_root
from .torusmodel import (
    AltForm,
    ConstructionSpace,
    DivisorClass,
    LatticeInvariantError,
    alt_form,
    curve_degrees,
    is_ample,
    restrict,
)

MAX_FLAG_DIMENSION = 8  # exhaustive permutation search stays trivial up to here


class FlagAmplenessError(ValueError):
    """A restriction along a flag failed the ampleness test."""

    def __init__(self, order: tuple[int, ...], kept: tuple[int, ...]):
        self.order = order
        self.kept = kept
        super().__init__(f"restriction to factors {kept} along flag order {order} is not ample")


class InconsistentBoundsError(ValueError):
    """Lower bound exceeds upper bound; signals a bug upstream."""


class Scope(enum.Enum):
    SPECIFIC = "specific-construction"
    GENERAL = "general-member"
    ALL = "all-members"


@total_ordering
class Bound:
    """A bound value: either an exact rational or an inverse g-th root.

    Inverse roots with perfect-power radicand are normalized to
    rationals, so 9^(-1/2) compares equal to 1/3 structurally.  All
    remaining comparisons are decided exactly by integer power
    comparison, never by radicals.
    """

    __slots__ = ("ratio", "radicand", "degree")

    def __init__(self, ratio: Fraction | None, radicand: int | None, degree: int | None):
        self.ratio = ratio
        self.radicand = radicand
        self.degree = degree

    @classmethod
    def rational(cls, value: Fraction | int) -> "Bound":
        value = Fraction(value)
        if value <= 0:
            raise ValueError("bounds must be positive")
        return cls(value, None, None)

    @classmethod
    def inverse_root(cls, radicand: int, degree: int) -> "Bound":
        if radicand < 1 or degree < 1:
            raise ValueError("need radicand >= 1 and degree >= 1")
        root = integer_root(radicand, degree)
        if root**degree == radicand:
            return cls.rational(Fraction(1, root))
        return cls(None, radicand, degree)

    @property
    def is_rational(self) -> bool:
        return self.ratio is not None

    def _cmp(self, other: "Bound") -> int:
        if self.is_rational and other.is_rational:
            a, b = self.ratio, other.ratio
            return (a > b) - (a < b)
        if self.is_rational:
            # p/q vs d^(-1/g):  p/q > d^(-1/g)  iff  p^g * d > q^g
            p, q = self.ratio.numerator, self.ratio.denominator
            lhs = p**other.degree * other.radicand
            rhs = q**other.degree
            return (lhs > rhs) - (lhs < rhs)
        if other.is_rational:
            return -other._cmp(self)
        # d1^(-1/g1) vs d2^(-1/g2)  iff  d2^g1 vs d1^g2
        lhs = other.radicand ** self.degree
        rhs = self.radicand ** other.degree
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other):
        if not isinstance(other, Bound):
            return NotImplemented
        return self._cmp(other) == 0

    def __lt__(self, other):
        if not isinstance(other, Bound):
            return NotImplemented
        return self._cmp(other) < 0

    def __hash__(self):
        if self.is_rational:
            return hash(("bound", self.ratio))
        return hash(("bound", self.radicand, self.degree))

    def __repr__(self):
        return f"Bound({self})"

    def __str__(self):
        if self.is_rational:
            return str(self.ratio)
        return f"{self.radicand}^(-1/{self.degree})"

    def to_json(self) -> dict:
        if self.is_rational:
            return {"kind": "rational", "value": str(self.ratio)}
        return {
            "kind": "inverse-root",
            "radicand": self.radicand,
            "degree": self.degree,
            "display": str(self),
        }


UNIT = Bound.rational(1)


@dataclass(frozen=True)
class TaggedBound:
    """A one-sided bound with strictness, validity scope, and provenance."""

    value: Bound
    strict: bool
    scope: Scope
    reason: str


@dataclass(frozen=True)
class BetaInterval:
    """Certified two-sided bounds for beta, with a single validity scope."""

    lower: Bound
    lower_strict: bool
    upper: Bound
    upper_strict: bool
    exact: bool
    scope: Scope
    lower_reason: str = ""
    upper_reason: str = ""

    def __post_init__(self):
        if self.upper > UNIT:
            raise InconsistentBoundsError("upper bound exceeds 1")
        if self.lower > self.upper:
            raise InconsistentBoundsError("lower bound exceeds upper bound")
        if self.lower == self.upper and (self.lower_strict or self.upper_strict):
            raise InconsistentBoundsError("equal bounds cannot be strict")
        if self.exact and (self.lower != self.upper or self.lower_strict or self.upper_strict):
            raise InconsistentBoundsError("exact intervals need equal non-strict bounds")

    def to_json(self) -> dict:
        return {
            "lower": self.lower.to_json(),
            "lower_strict": self.lower_strict,
            "lower_by": self.lower_reason,
            "upper": self.upper.to_json(),
            "upper_strict": self.upper_strict,
            "upper_by": self.upper_reason,
            "exact": self.exact,
            "scope": self.scope.value,
        }


def exact_interval(value: Fraction | int, scope: Scope, reason: str = "") -> BetaInterval:
    b = Bound.rational(value)
    return BetaInterval(b, False, b, False, True, scope, reason, reason)


def beta_lower_chi(chi: int, g: int) -> Bound:
    """The lower bound chi^(-1/g), valid for every polarization with that chi."""
    if chi < 1:
        raise ValueError("chi must be positive")
    return Bound.inverse_root(chi, g)


class _FlagEvaluator:
    """Caches restriction data of one form across flag evaluations."""

    def __init__(self, form: AltForm):
        self.form = form
        self.g = form.g
        self._pf = form.pfaffian_cache()
        self._ample: dict[tuple[int, ...], bool] = {}

    def chi(self, kept: tuple[int, ...]) -> int:
        return self._pf.pfaffian_of([c for i in kept for c in (2 * i, 2 * i + 1)])

    def ample(self, kept: tuple[int, ...]) -> bool:
        hit = self._ample.get(kept)
        if hit is None:
            sub = self.form if len(kept) == self.g else restrict(self.form, kept)
            hit = is_ample(sub)
            self._ample[kept] = hit
        return hit

    def evaluate(self, order: tuple[int, ...]) -> tuple[Fraction, tuple[int, ...]]:
        """Bound and chi chain for one drop order; raises on ampleness failure."""
        kept = tuple(range(self.g))
        if not self.ample(kept):
            raise FlagAmplenessError(order, kept)
        chis = [self.chi(kept)]
        for dropped in order[:-1]:
            kept = tuple(i for i in kept if i != dropped)
            if not self.ample(kept):
                raise FlagAmplenessError(order, kept)
            chis.append(self.chi(kept))
        if any(x <= 0 for x in chis):
            raise LatticeInvariantError("ample restriction with nonpositive chi")
        terms = [Fraction(1, chis[-1])]
        for i in range(len(chis) - 1, 0, -1):
            terms.append(Fraction(chis[i], chis[i - 1]))
        return max(terms), tuple(chis)


def _check_order(order: Sequence[int], g: int) -> tuple[int, ...]:
    order = tuple(order)
    if sorted(order) != list(range(g)):
        raise ValueError("order must be a permutation of the factor indices")
    return order


def flag_upper_bound(cls: DivisorClass, order: Sequence[int], form: AltForm | None = None) -> Fraction:
    """Upper bound for beta of this construction along one coordinate flag.

    Factors are dropped in the given order; the bound is the largest of
    1/chi_last and the successive ratios chi_next/chi_prev along the
    chain of restrictions.
    """
    form = form if form is not None else alt_form(cls)
    order = _check_order(order, form.g)
    bound, _ = _FlagEvaluator(form).evaluate(order)
    return bound


def flag_profile(cls: DivisorClass, order: Sequence[int], form: AltForm | None = None) -> tuple[int, ...]:
    """The chain of restriction Euler characteristics along one flag."""
    form = form if form is not None else alt_form(cls)
    order = _check_order(order, form.g)
    _, chis = _FlagEvaluator(form).evaluate(order)
    return chis


def best_flag_bound(
    cls: DivisorClass, form: AltForm | None = None
) -> tuple[Fraction, tuple[int, ...]]:
    """Minimum flag bound over all drop orders, with a witness order.

    Ties are broken by the lexicographically smallest permutation.
    Orders whose flag fails the ampleness check are skipped; it is an
    error only if every order fails.
    """
    form = form if form is not None else alt_form(cls)
    g = form.g
    if g > MAX_FLAG_DIMENSION:
        raise ValueError(f"exhaustive flag search is limited to g <= {MAX_FLAG_DIMENSION}")
    evaluator = _FlagEvaluator(form)
    best: tuple[Fraction, tuple[int, ...]] | None = None
    failure: FlagAmplenessError | None = None
    for order in permutations(range(g)):
        try:
            bound, _ = evaluator.evaluate(order)
        except FlagAmplenessError as exc:
            failure = exc
            continue
        if best is None or bound < best[0]:
            best = (bound, order)
    if best is None:
        raise failure if failure is not None else ValueError("no flag to evaluate")
    return best


def closed_form_bound(space: ConstructionSpace, a: int, b: int) -> Fraction:
    """Closed form of the identity-order flag bound for a standard class.

    With N_i the sum of the multipliers of the factors after the i-th,
    the restriction dropping the first i factors has chi = 1 + b*N_i, so
    the bound is max of the successive ratios and (1 + b*N_1)/d where
    d = a + a*b*N_1 + b*k_1.
    """
    if space.g < 2:
        raise ValueError("closed-form bound needs g >= 2")
    if a < 0 or b < 0 or (a == 0 and b == 0):
        raise ValueError("need a, b >= 0 and not both zero")
    n1 = space.tail_sum(0)
    d = a + a * b * n1 + b * space.k_full[0]
    terms = [Fraction(1 + b * space.tail_sum(i), 1 + b * space.tail_sum(i - 1)) for i in range(1, space.g)]
    terms.append(Fraction(1 + b * n1, d))
    return max(terms)


def flag_lower_bound(cls: DivisorClass, form: AltForm | None = None) -> Fraction:
    """Largest inverse degree over the coordinate elliptic curves.

    Restriction can only decrease beta, and beta of a degree-e bundle on
    an elliptic curve is exactly 1/e, so this is a lower bound for the
    specific construction (not for the general member).
    """
    form = form if form is not None else alt_form(cls)
    if not is_ample(form):
        raise ValueError("lower bound via curves requires an ample class")
    return max(Fraction(1, deg) for deg in curve_degrees(form))


def combine_interval(
    g: int,
    chi: int,
    uppers: Iterable[TaggedBound] = (),
    lowers: Iterable[TaggedBound] = (),
    scope: Scope = Scope.GENERAL,
) -> BetaInterval:
    """Tightest interval from tagged bounds, restricted to one scope.

    A bound participates if its own scope is at least as wide as the
    requested one ("all-members" bounds apply everywhere).  In addition,
    when targeting the general member, upper bounds certified at a
    specific construction are admitted through the semicontinuity rule;
    strictness does not survive that lift.  The baseline bounds
    chi^(-1/g) <= beta <= 1 are always present.
    """
    lower_pool = [TaggedBound(beta_lower_chi(chi, g), False, Scope.ALL, "degree-root")]
    upper_pool = [TaggedBound(UNIT, False, Scope.ALL, "threshold-range")]
    for tb in lowers:
        if tb.scope is Scope.ALL or tb.scope is scope:
            lower_pool.append(tb)
    for tb in uppers:
        if tb.scope is Scope.ALL or tb.scope is scope:
            upper_pool.append(tb)
        elif scope is Scope.GENERAL and tb.scope is Scope.SPECIFIC:
            upper_pool.append(
                TaggedBound(tb.value, False, Scope.GENERAL, tb.reason + "+semicontinuity")
            )
    best_low = max(lower_pool, key=lambda t: (t.value, t.strict))
    best_up = min(upper_pool, key=lambda t: (t.value, not t.strict))
    if best_low.value > best_up.value:
        raise InconsistentBoundsError(
            f"lower bound {best_low.value} ({best_low.reason}) exceeds "
            f"upper bound {best_up.value} ({best_up.reason})"
        )
    if best_low.value == best_up.value and (best_low.strict or best_up.strict):
        raise InconsistentBoundsError("bounds meet but one of them is strict")
    exact = best_low.value == best_up.value
    return BetaInterval(
        lower=best_low.value,
        lower_strict=best_low.strict,
        upper=best_up.value,
        upper_strict=best_up.strict,
        exact=exact,
        scope=scope,
        lower_reason=best_low.reason,
        upper_reason=best_up.reason,
    )
