"""Exact-arithmetic enumeration and K-stability classification of Fano
weighted hypersurfaces whose weights divide the degree."""

from .core import (
    InequalityCheck,
    InequalityReport,
    StarCase,
    ValidationReport,
    WeightSystem,
    check_lemma_ineq,
    minimal_triple_gap,
    semigroup_decomposition,
    semigroup_representable,
    star_case,
    threshold_c,
    triple_gap,
    validate,
)
from .enumeration import (
    CatalogError,
    CatalogMismatch,
    EnumerationQuery,
    EnumerationResult,
    enumerate_bruteforce,
    enumerate_systems,
    load_catalog,
    render_table,
    save_catalog,
)
from .monomial import (
    CoordinatePointError,
    CoverPlan,
    CoverStep,
    Monomial,
    Support,
    SupportError,
    apply_cover,
    fermat_support,
    load_support,
    move_coordinate_points,
    plan_cover_for_support,
    plan_cover_universal,
    save_support,
    star_condition,
    star_condition_at,
    substitute,
    universal_star_at,
)
from .stability import (
    ALPHA_ALL_GE2,
    ALPHA_GENERIC,
    ALPHA_STAR,
    COVER_ASSUMPTION,
    MEMBER_ANY,
    MEMBER_CLASSES,
    MEMBER_FERMAT,
    MEMBER_GENERAL,
    AlphaBound,
    BatchSummary,
    FermatStability,
    StabilityReport,
    TraceEntry,
    Verdict,
    alpha_lower_bound,
    aut_finite,
    batch_classify,
    classify,
    fermat_k_stability,
    join_verdicts,
    recompute_entry,
    register_criterion,
    registered_criteria,
    report_to_json,
    summary_to_json,
)

__version__ = "0.1.0"

__all__ = [
    "ALPHA_ALL_GE2",
    "ALPHA_GENERIC",
    "ALPHA_STAR",
    "COVER_ASSUMPTION",
    "MEMBER_ANY",
    "MEMBER_CLASSES",
    "MEMBER_FERMAT",
    "MEMBER_GENERAL",
    "AlphaBound",
    "BatchSummary",
    "CatalogError",
    "CatalogMismatch",
    "CoordinatePointError",
    "CoverPlan",
    "CoverStep",
    "EnumerationQuery",
    "EnumerationResult",
    "FermatStability",
    "InequalityCheck",
    "InequalityReport",
    "Monomial",
    "StabilityReport",
    "StarCase",
    "Support",
    "SupportError",
    "TraceEntry",
    "ValidationReport",
    "Verdict",
    "WeightSystem",
    "alpha_lower_bound",
    "apply_cover",
    "aut_finite",
    "batch_classify",
    "check_lemma_ineq",
    "classify",
    "enumerate_bruteforce",
    "enumerate_systems",
    "fermat_k_stability",
    "fermat_support",
    "join_verdicts",
    "load_catalog",
    "load_support",
    "minimal_triple_gap",
    "move_coordinate_points",
    "plan_cover_for_support",
    "plan_cover_universal",
    "recompute_entry",
    "register_criterion",
    "registered_criteria",
    "render_table",
    "report_to_json",
    "save_catalog",
    "save_support",
    "semigroup_decomposition",
    "semigroup_representable",
    "star_case",
    "star_condition",
    "star_condition_at",
    "substitute",
    "summary_to_json",
    "threshold_c",
    "triple_gap",
    "universal_star_at",
    "validate",
]
