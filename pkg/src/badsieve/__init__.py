"""Exact construction and verification of badly approximable shift vectors
for the weighted two-variable linear form with exponents (2/3, 1/3)."""

from .bestapprox import (
    BestApproxSequence,
    BestApproxVector,
    audit_growth,
    audit_minkowski,
    enumerate_best_approx,
    export_sequence_lines,
    is_best_approximation,
    parse_sequence_lines,
    sequence_fingerprint,
    type_window,
)
from .catalog import CatalogEntry, catalog_names, get_entry
from .errors import (
    BadSieveError,
    ConfigError,
    DegenerateForm,
    IncompleteSequence,
    InvariantViolation,
    NoBaseFound,
    NoSurvivor,
    PrecisionExhausted,
)
from .journal import (
    certificate_json,
    journal_text,
    parse_certificate,
    parse_journal,
)
from .rationals import (
    ThetaForm,
    dist_to_nearest_int,
    form_value,
    parse_rational,
    format_rational,
    theta_fingerprint,
    validate_precision,
    weighted_height_sq,
)
from .sieve import (
    Certificate,
    Rectangle,
    RunJournal,
    SieveConfig,
    dangerous_children,
    gap_condition,
    rect_clear,
    run_sieve,
    select_base,
    sieve_step,
    subdivide,
)
from .verify import (
    ScoreReport,
    bad_alpha_beta_score,
    bad_theta_score,
    brute_best_approx,
    grid_dangerous_children,
    linear_form_score,
)

__version__ = "0.1.0"

__all__ = [
    "BadSieveError",
    "BestApproxSequence",
    "BestApproxVector",
    "CatalogEntry",
    "Certificate",
    "ConfigError",
    "DegenerateForm",
    "IncompleteSequence",
    "InvariantViolation",
    "NoBaseFound",
    "NoSurvivor",
    "PrecisionExhausted",
    "Rectangle",
    "RunJournal",
    "ScoreReport",
    "SieveConfig",
    "ThetaForm",
    "audit_growth",
    "audit_minkowski",
    "bad_alpha_beta_score",
    "bad_theta_score",
    "brute_best_approx",
    "catalog_names",
    "certificate_json",
    "dangerous_children",
    "dist_to_nearest_int",
    "enumerate_best_approx",
    "export_sequence_lines",
    "form_value",
    "format_rational",
    "gap_condition",
    "get_entry",
    "grid_dangerous_children",
    "is_best_approximation",
    "journal_text",
    "linear_form_score",
    "parse_certificate",
    "parse_journal",
    "parse_rational",
    "parse_sequence_lines",
    "rect_clear",
    "run_sieve",
    "select_base",
    "sequence_fingerprint",
    "sieve_step",
    "subdivide",
    "theta_fingerprint",
    "type_window",
    "validate_precision",
    "weighted_height_sq",
]
