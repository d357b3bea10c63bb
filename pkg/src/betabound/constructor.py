"""Recipes and searches producing certified constructions of type (1, ..., 1, d).

Two explicit recipes cover every degree once the integer g-th root m of
d is at least 2.  Writing d = (m-1)s + r with 1 <= r <= m-1 and choosing
the multipliers k_1 = s - (m^(g-2) + ... + m + 1)r, k_i = m^(g-i) gives
a standard class with a = r, b = m-1 whose flag bound is at most 1/m
(the "weak" recipe).  If moreover d >= m^g + ... + m + 1, writing
d = ms + r with 1 <= r <= m and taking b = m pushes the bound strictly
below 1/m (the "strict" recipe).

Every construction is certified before it is reported: both Euler
characteristic oracles must agree, the type is recomputed from the
elementary divisors of the lattice form, the finite-group order must be
chi squared, and the flag bound is minimized over all drop orders.  A
disagreement between oracles is a bug and is never swallowed.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .exactmath import integer_root
from .surfacetable import SurfaceRuleResult, surface_beta
from .syzygy import NpCertificate, necessary_lower_bounds, np_report
from .threshold import (
    BetaInterval,
    Bound,
    Scope,
    TaggedBound,
    best_flag_bound,
    combine_interval,
    exact_interval,
    flag_lower_bound,
    flag_profile,
)
from .torusmodel import (
    ConstructionSpace,
    DegenerateFormError,
    DivisorClass,
    FiniteGroupShape,
    alt_form,
    chi_multilinear,
    chi_pfaffian,
    is_ample,
    k_group,
    polarization_type,
)

CASE_RECIPE_WEAK = "recipe-weak"
CASE_RECIPE_STRICT = "recipe-strict"
CASE_EXPLICIT = "explicit"


class OracleDisagreement(RuntimeError):
    """Two independent oracles disagreed; indicates a bug, never swallowed."""


class NotAmpleError(ValueError):
    """The class is not ample, so nothing can be certified for it."""


class NoRecipeError(ValueError):
    """No recipe parameter choice exists for the requested degree."""


@dataclass(frozen=True)
class ConstructionParams:
    """Parameters of one construction: multipliers and coefficients.

    ``middle`` overrides the interior coefficients (default all ones) and
    ``c`` the coefficient of the correspondence divisor (default 1); both
    only differ from the defaults in generalized searches.
    """

    g: int
    k: tuple[int, ...]
    a: int
    b: int
    case: str = CASE_EXPLICIT
    m: int | None = None
    r: int | None = None
    s: int | None = None
    middle: tuple[int, ...] | None = None
    c: int = 1

    def __post_init__(self):
        if self.g < 2:
            raise ValueError("constructions need g >= 2")
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        if len(self.k) != self.g - 1:
            raise ValueError("need exactly g-1 multipliers")
        if self.middle is not None:
            object.__setattr__(self, "middle", tuple(int(x) for x in self.middle))
            if len(self.middle) != self.g - 2:
                raise ValueError("need exactly g-2 interior coefficients")

    def space(self) -> ConstructionSpace:
        return ConstructionSpace(self.g, self.k)

    def coefficients(self) -> tuple[int, ...]:
        middle = self.middle if self.middle is not None else (1,) * (self.g - 2)
        return (self.a,) + middle + (self.b,)

    def divisor_class(self) -> DivisorClass:
        return DivisorClass(self.space(), self.coefficients(), self.c)

    def sort_key(self) -> tuple:
        return (self.a, self.b, self.middle or (), self.c, self.k)

    def to_json(self) -> dict:
        payload = {
            "g": self.g,
            "k": list(self.k),
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "coefficients": list(self.coefficients()),
            "case": self.case,
        }
        if self.m is not None:
            payload.update({"m": self.m, "r": self.r, "s": self.s})
        return payload


@dataclass(frozen=True)
class TrivialBound:
    """Marker returned when only the trivial bound beta <= 1 is available."""

    g: int
    d: int

    @property
    def bound(self) -> Fraction:
        return Fraction(1)


@dataclass(frozen=True)
class Certificate:
    """A construction with all its independently verified invariants."""

    params: ConstructionParams
    chi: int
    ptype: tuple[int, ...]
    kgroup: FiniteGroupShape
    bound: Fraction
    witness_order: tuple[int, ...]
    flag_chis: tuple[int, ...]
    curve_lower: Fraction
    interval: BetaInterval
    np: NpCertificate

    def sort_key(self) -> tuple:
        return (self.bound, self.flag_chis) + self.params.sort_key()

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "chi": {"value": self.chi, "by": "multilinear=pfaffian"},
            "type": {"value": list(self.ptype), "by": "smith-normal-form"},
            "k_group": {"value": list(self.kgroup.divisors), "order": self.kgroup.order, "by": "smith-normal-form"},
            "flag_bound": {"value": str(self.bound), "order": list(self.witness_order), "chis": list(self.flag_chis), "by": "flag-restriction"},
            "curve_lower": {"value": str(self.curve_lower), "by": "curve-degree"},
            "interval": self.interval.to_json(),
            "np": self.np.to_json(),
        }


def _head_sum(m: int, g: int) -> int:
    # 1 + m + ... + m^(g-2)
    return sum(m**j for j in range(g - 1))


def recipe_weak(g: int, d: int) -> ConstructionParams | TrivialBound:
    """Division-with-remainder recipe certifying a bound of at most 1/m.

    m is the integer g-th root of d.  For m = 1 the recipe degenerates
    and the trivial-bound marker is returned instead of parameters.
    """
    if g < 2 or d < 1:
        raise ValueError("need g >= 2 and d >= 1")
    m = integer_root(d, g)
    if m == 1:
        return TrivialBound(g, d)
    r = (d - 1) % (m - 1) + 1
    s = (d - r) // (m - 1)
    k1 = s - _head_sum(m, g) * r
    if k1 < 1:
        raise NoRecipeError(f"degenerate multiplier k1 = {k1} for g={g}, d={d}")
    k = (k1,) + tuple(m ** (g - i) for i in range(2, g))
    return ConstructionParams(g=g, k=k, a=r, b=m - 1, case=CASE_RECIPE_WEAK, m=m, r=r, s=s)


def recipe_strict(g: int, d: int) -> ConstructionParams:
    """Recipe certifying a bound strictly below 1/m.

    m is the largest integer with m^g + ... + m + 1 <= d; no such m
    exists for d <= g, which is an error.
    """
    if g < 2 or d < 1:
        raise ValueError("need g >= 2 and d >= 1")
    if d < g + 1:
        raise NoRecipeError(f"no valid m >= 1 for g={g}, d={d}: requires d >= g+1")
    m = 1
    while sum((m + 1) ** i for i in range(g + 1)) <= d:
        m += 1
    r = (d - 1) % m + 1
    s = (d - r) // m
    k1 = s - _head_sum(m, g) * r
    if k1 < 1:
        raise NoRecipeError(f"degenerate multiplier k1 = {k1} for g={g}, d={d}")
    k = (k1,) + tuple(m ** (g - i) for i in range(2, g))
    return ConstructionParams(g=g, k=k, a=r, b=m, case=CASE_RECIPE_STRICT, m=m, r=r, s=s)


def certify(params: ConstructionParams) -> Certificate:
    """Run every oracle on the construction and bundle the results.

    Raises OracleDisagreement if any cross-check fails, NotAmpleError for
    non-ample classes, DegenerateFormError for degenerate ones.
    """
    cls = params.divisor_class()
    form = alt_form(cls)
    chi_formula = chi_multilinear(cls)
    chi_pf = chi_pfaffian(form)
    if chi_formula != chi_pf:
        raise OracleDisagreement(
            f"chi oracles disagree on {params}: formula {chi_formula}, pfaffian {chi_pf}"
        )
    if chi_pf == 0:
        raise DegenerateFormError(f"class of {params} is degenerate")
    if not is_ample(form):
        raise NotAmpleError(f"class of {params} is not ample")
    ptype = polarization_type(form)
    if ptype.product != chi_pf:
        raise OracleDisagreement(f"type product {ptype.product} != chi {chi_pf} for {params}")
    kgroup = k_group(form)
    if kgroup.order != chi_pf**2:
        raise OracleDisagreement(f"K-group order {kgroup.order} != chi^2 for {params}")
    bound, order = best_flag_bound(cls, form=form)
    chis = flag_profile(cls, order, form=form)
    curve_lower = flag_lower_bound(cls, form=form)
    interval = combine_interval(
        cls.space.g,
        chi_pf,
        uppers=[TaggedBound(Bound.rational(bound), False, Scope.SPECIFIC, "flag-bound")],
        lowers=[TaggedBound(Bound.rational(curve_lower), False, Scope.SPECIFIC, "curve-degree")],
        scope=Scope.SPECIFIC,
    )
    return Certificate(
        params=params,
        chi=chi_pf,
        ptype=ptype.d,
        kgroup=kgroup,
        bound=bound,
        witness_order=order,
        flag_chis=chis,
        curve_lower=curve_lower,
        interval=interval,
        np=np_report(cls.space.g, chi_pf, interval),
    )


@dataclass(frozen=True)
class SearchBox:
    """Coefficient and multiplier limits for the brute-force search."""

    max_a: int
    max_b: int
    max_k: int
    max_c: int = 2


def default_box(g: int, d: int) -> SearchBox:
    limit = 2 * max(integer_root(d, g), 1)
    return SearchBox(max_a=limit, max_b=limit, max_k=d)


def _certify_or_skip(params: ConstructionParams) -> Certificate | None:
    try:
        return certify(params)
    except (NotAmpleError, DegenerateFormError):
        return None


def brute_search(
    g: int,
    d: int,
    box: SearchBox | None = None,
    generalized: bool = False,
    workers: int | None = None,
) -> list[Certificate]:
    """All certified constructions of type (1, ..., 1, d) inside the box.

    The default search sweeps standard classes (interior coefficients 1,
    correspondence coefficient 1); ``generalized=True`` also varies the
    interior coefficients and c.  Results are ranked by flag bound, ties
    by the chi chain along the witness flag, then by parameters, so the
    output order is deterministic.  ``workers`` > 1 evaluates grid points
    in parallel with a deterministic merge.
    """
    if g < 2 or d < 1:
        raise ValueError("need g >= 2 and d >= 1")
    box = box if box is not None else default_box(g, d)
    candidates: list[ConstructionParams] = []
    k_range = range(1, box.max_k + 1)
    if not generalized:
        for a in range(box.max_a + 1):
            for b in range(box.max_b + 1):
                if a == 0 and b == 0:
                    continue
                for k in product(k_range, repeat=g - 1):
                    n1 = sum(k[1:]) + 1
                    if a * (1 + b * n1) + b * k[0] != d:
                        continue
                    candidates.append(ConstructionParams(g=g, k=k, a=a, b=b))
    else:
        coeff_ranges = [range(box.max_a + 1)] + [range(box.max_a + 1)] * (g - 2) + [range(box.max_b + 1)]
        for coeffs in product(*coeff_ranges):
            for c in range(box.max_c + 1):
                if not any(coeffs) and c == 0:
                    continue
                for k in product(k_range, repeat=g - 1):
                    space = ConstructionSpace(g, k)
                    cls = DivisorClass(space, coeffs, c)
                    if chi_multilinear(cls) != d:
                        continue
                    candidates.append(
                        ConstructionParams(
                            g=g, k=k, a=coeffs[0], b=coeffs[-1], middle=coeffs[1:-1], c=c
                        )
                    )
    if workers is not None and workers > 1:
        with multiprocessing.Pool(processes=workers) as pool:
            certified = pool.map(_certify_or_skip, candidates)
    else:
        certified = [_certify_or_skip(p) for p in candidates]
    target = (1,) * (g - 1) + (d,)
    results = [c for c in certified if c is not None and c.ptype == target]
    results.sort(key=Certificate.sort_key)
    return results


@dataclass(frozen=True)
class GeneralBetaReport:
    """Certified interval for the general member of type (1, ..., 1, d).

    ``strictly_below`` records a threshold the upper bound is verified to
    stay strictly under (the strict recipe certifies its bound < 1/m).
    """

    g: int
    d: int
    interval: BetaInterval
    witness: Certificate | None
    certificates: tuple[Certificate, ...]
    surface_rule: SurfaceRuleResult | None = None
    strictly_below: Fraction | None = None

    def to_json(self) -> dict:
        payload = {
            "g": self.g,
            "d": self.d,
            "interval": self.interval.to_json(),
            "witness": self.witness.to_json() if self.witness is not None else None,
        }
        if self.surface_rule is not None:
            payload["surface_rule"] = self.surface_rule.rule
        if self.strictly_below is not None:
            payload["strictly_below"] = str(self.strictly_below)
        return payload


def general_beta(g: int, d: int) -> GeneralBetaReport:
    """Bound beta for the general member of type (1, ..., 1, d).

    Upper bounds come from the recipe constructions (lifted to the
    general member by semicontinuity), lower bounds from the degree root
    and the necessary conditions; for surfaces the rule table supplies
    the sharper published values.
    """
    if g < 1 or d < 1:
        raise ValueError("need g >= 1 and d >= 1")
    if g == 1:
        return GeneralBetaReport(
            g=1,
            d=d,
            interval=exact_interval(Fraction(1, d), Scope.ALL, "elliptic-degree"),
            witness=None,
            certificates=(),
        )
    certs: list[Certificate] = []
    weak = recipe_weak(g, d)
    if isinstance(weak, ConstructionParams):
        certs.append(certify(weak))
    try:
        certs.append(certify(recipe_strict(g, d)))
    except NoRecipeError:
        pass
    if not certs:
        # Any degree admits the product-like class (a = d, b = 0), whose
        # flag bound is the trivial 1; it keeps the witness constructive.
        certs.append(certify(ConstructionParams(g=g, k=(1,) * (g - 1), a=d, b=0)))
    surface_rule = None
    if g == 2:
        surface_rule = surface_beta(d)
        interval = surface_rule.interval
        strictly_below = surface_rule.strictly_below
    else:
        uppers = [
            TaggedBound(Bound.rational(c.bound), False, Scope.SPECIFIC, f"flag-bound:{c.params.case}")
            for c in certs
        ]
        lowers = [rule.tagged() for rule in necessary_lower_bounds(g, d)]
        interval = combine_interval(g, d, uppers=uppers, lowers=lowers, scope=Scope.GENERAL)
        strictly_below = None
        for cert in certs:
            if cert.params.case == CASE_RECIPE_STRICT:
                threshold = Fraction(1, cert.params.m)
                if cert.bound < threshold and interval.upper <= Bound.rational(cert.bound):
                    strictly_below = threshold
    matching = [c for c in certs if Bound.rational(c.bound) == interval.upper]
    witness = min(matching, key=Certificate.sort_key) if matching else None
    return GeneralBetaReport(
        g=g,
        d=d,
        interval=interval,
        witness=witness,
        certificates=tuple(sorted(certs, key=Certificate.sort_key)),
        surface_rule=surface_rule,
        strictly_below=strictly_below,
    )
