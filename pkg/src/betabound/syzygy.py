"""Property (N_p) guarantees from threshold bounds and degree arithmetic.

The syzygy properties form an increasing chain: N_{-1} is basepoint
freeness, N_0 is projective normality, N_1 additionally means the
homogeneous ideal is generated by quadrics.  Only p >= -1 is modelled.

Two sources of guarantees are kept apart: a certified strict upper bound
beta < 1/(p+2) forces N_p for the member it was certified on, while the
degree threshold d >= sum_{i=0}^{g} (p+2)^i guarantees N_p for the
general member of type (1, ..., 1, d).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .threshold import BetaInterval, Bound, Scope, TaggedBound

SOURCE_BETA = "beta-bound"
SOURCE_ARITHMETIC = "arithmetic"


def np_threshold(g: int, p: int) -> int:
    """The degree threshold sum_{i=0}^{g} (p+2)^i guaranteeing N_p.

    For p = -1 every summand is 1, so the threshold degenerates to g+1,
    the basepoint-freeness cutoff.
    """
    if g < 1:
        raise ValueError("g must be >= 1")
    if p < -1:
        raise ValueError("p must be >= -1")
    base = p + 2
    return sum(base**i for i in range(g + 1))


def max_np_arithmetic(g: int, d: int) -> int | None:
    """Largest p >= -1 with d >= np_threshold(g, p); None if even p = -1 fails."""
    if g < 1 or d < 1:
        raise ValueError("g and d must be >= 1")
    if d < np_threshold(g, -1):
        return None
    p = -1
    while d >= np_threshold(g, p + 1):
        p += 1
    return p


def _certifies(upper: Bound, strict: bool, p: int) -> bool:
    target = Bound.rational(Fraction(1, p + 2))
    return upper < target or (strict and upper == target)


def np_from_beta(interval: BetaInterval) -> int | None:
    """Largest p whose requirement beta < 1/(p+2) the interval certifies.

    The strictness flag is honored exactly: a non-strict upper bound of
    1/2 certifies only p = -1, while a strict one certifies p = 0.
    """
    if not _certifies(interval.upper, interval.upper_strict, -1):
        return None
    p = -1
    while _certifies(interval.upper, interval.upper_strict, p + 1):
        p += 1
    return p


@dataclass(frozen=True)
class LowerBoundRule:
    """A necessary-condition lower bound for beta with its justification."""

    bound: Fraction
    strict: bool
    justification: str
    scope: Scope

    def tagged(self) -> TaggedBound:
        return TaggedBound(Bound.rational(self.bound), self.strict, self.scope, self.justification)


def necessary_lower_bounds(g: int, d: int) -> list[LowerBoundRule]:
    """Lower bounds for beta of type-(1, ..., 1, d) classes by contraposition.

    If d <= g the general member is not basepoint free, so its beta is 1.
    If the section count fails the projective-normality necessary
    condition dim Sym^2 H^0 >= dim H^0(2L), i.e. d(d+1)/2 < 2^g * d, no
    member is projectively normal, so beta >= 1/2 for all of them.
    Returned in decreasing order of the bound.
    """
    if g < 1 or d < 1:
        raise ValueError("g and d must be >= 1")
    rules = []
    if d <= g:
        rules.append(
            LowerBoundRule(Fraction(1), False, "not-basepoint-free", Scope.GENERAL)
        )
    if d * (d + 1) // 2 < 2**g * d:
        rules.append(
            LowerBoundRule(Fraction(1, 2), False, "projective-normality-count", Scope.ALL)
        )
    return rules


@dataclass(frozen=True)
class NpCertificate:
    """N_p guarantees for a (g, d) target, and necessary-condition verdicts.

    ``p_beta`` comes from a certified interval (None when no interval was
    supplied or it certifies nothing), ``p_arithmetic`` from the degree
    threshold.  The verdicts describe the general member: basepoint free
    iff d >= g+1, projectively normal iff d >= 2^(g+1) - 1.
    """

    g: int
    d: int
    p_beta: int | None
    p_arithmetic: int | None
    basepoint_free: bool
    projectively_normal: bool

    @property
    def guaranteed_p(self) -> int | None:
        candidates = [p for p in (self.p_beta, self.p_arithmetic) if p is not None]
        return max(candidates) if candidates else None

    @property
    def source(self) -> str | None:
        best = self.guaranteed_p
        if best is None:
            return None
        if self.p_beta is not None and (self.p_arithmetic is None or self.p_beta > self.p_arithmetic):
            return SOURCE_BETA
        return SOURCE_ARITHMETIC

    def to_json(self) -> dict:
        return {
            "g": self.g,
            "d": self.d,
            "guaranteed_p": self.guaranteed_p,
            "source": self.source,
            "p_beta": self.p_beta,
            "p_arithmetic": self.p_arithmetic,
            "basepoint_free_general": self.basepoint_free,
            "projectively_normal_general": self.projectively_normal,
        }


def np_report(g: int, d: int, interval: BetaInterval | None = None) -> NpCertificate:
    """Bundle the N_p guarantees for a dimension-g, degree-d target."""
    return NpCertificate(
        g=g,
        d=d,
        p_beta=np_from_beta(interval) if interval is not None else None,
        p_arithmetic=max_np_arithmetic(g, d),
        basepoint_free=d >= g + 1,
        projectively_normal=d >= 2 ** (g + 1) - 1,
    )
