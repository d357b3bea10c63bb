"""Exact polarization invariants and basepoint-freeness threshold bounds
on products of elliptic curves."""

from .constructor import (
    Certificate,
    ConstructionParams,
    GeneralBetaReport,
    NoRecipeError,
    NotAmpleError,
    OracleDisagreement,
    SearchBox,
    TrivialBound,
    brute_search,
    certify,
    default_box,
    general_beta,
    recipe_strict,
    recipe_weak,
)
from .exactmath import (
    IntMatrix,
    integer_root,
    is_positive_definite,
    pfaffian,
    smith_normal_form,
)
from .surfacetable import SurfaceRuleResult, generate_table, surface_beta
from .syzygy import (
    NpCertificate,
    max_np_arithmetic,
    necessary_lower_bounds,
    np_from_beta,
    np_report,
    np_threshold,
)
from .threshold import (
    BetaInterval,
    Bound,
    Scope,
    TaggedBound,
    best_flag_bound,
    beta_lower_chi,
    closed_form_bound,
    combine_interval,
    flag_lower_bound,
    flag_profile,
    flag_upper_bound,
)
from .torusmodel import (
    AltForm,
    ConstructionSpace,
    DegenerateFormError,
    DivisorClass,
    FiniteGroupShape,
    PolarizationType,
    alt_form,
    build_lattice_data,
    chi_multilinear,
    chi_pfaffian,
    curve_degrees,
    hermitian_pairing,
    is_ample,
    k_group,
    polarization_type,
    restrict,
    standard_class,
)

__version__ = "0.1.0"

__all__ = [
    "AltForm",
    "BetaInterval",
    "Bound",
    "Certificate",
    "ConstructionParams",
    "ConstructionSpace",
    "DegenerateFormError",
    "DivisorClass",
    "FiniteGroupShape",
    "GeneralBetaReport",
    "IntMatrix",
    "NoRecipeError",
    "NotAmpleError",
    "NpCertificate",
    "OracleDisagreement",
    "PolarizationType",
    "Scope",
    "SearchBox",
    "SurfaceRuleResult",
    "TaggedBound",
    "TrivialBound",
    "alt_form",
    "best_flag_bound",
    "beta_lower_chi",
    "brute_search",
    "build_lattice_data",
    "certify",
    "chi_multilinear",
    "chi_pfaffian",
    "closed_form_bound",
    "combine_interval",
    "curve_degrees",
    "default_box",
    "flag_lower_bound",
    "flag_profile",
    "flag_upper_bound",
    "general_beta",
    "generate_table",
    "hermitian_pairing",
    "integer_root",
    "is_ample",
    "is_positive_definite",
    "k_group",
    "max_np_arithmetic",
    "necessary_lower_bounds",
    "np_from_beta",
    "np_report",
    "np_threshold",
    "pfaffian",
    "polarization_type",
    "recipe_strict",
    "recipe_weak",
    "restrict",
    "smith_normal_form",
    "standard_class",
    "surface_beta",
]
