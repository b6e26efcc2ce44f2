"""Exact q-series engine and congruence laboratory for MacMahon-type sums of divisors."""

from .qseries import (
    EXACT,
    CoefficientRing,
    NonUnitError,
    RingMismatchError,
    TruncatedSeries,
    TruncationError,
    first_difference,
    make,
    modular,
)
from .etaquotients import (
    EtaQuotient,
    FAMILY_QUOTIENTS,
    FamilyName,
    PREFACTOR_QUOTIENTS,
    chi3,
    expand_f,
    expand_quotient,
    extract,
    family_series,
    parse_eta_quotient,
    prefactor_series,
    theta_legendre3,
    theta_phi,
    theta_triangular_alt,
    theta_x,
)
from .mo import (
    MOParams,
    SUPPORTED_A,
    c_closed,
    c_rational_oracle,
    c_table,
    mo_coefficient,
    prefactor_generic,
    sigma,
    u_series,
    u_series_definition,
    u_series_identity,
    u_series_identity_generic,
)
from .congruences import (
    CANDIDATE_LABEL,
    CSV_HEADER,
    CongruenceClaim,
    IdentityCheck,
    SearchResult,
    THEOREM_CATALOG,
    VerificationReport,
    appendix_identity_suite,
    catalog_lookup,
    default_budgets,
    is_prime,
    lucas_binom,
    search,
    verify_catalog,
    verify_claim,
)
from .cache import CacheKey, cache_get, cache_path, cache_put

__all__ = [
    "CANDIDATE_LABEL",
    "CSV_HEADER",
    "CacheKey",
    "CoefficientRing",
    "CongruenceClaim",
    "EXACT",
    "EtaQuotient",
    "FAMILY_QUOTIENTS",
    "FamilyName",
    "IdentityCheck",
    "MOParams",
    "NonUnitError",
    "PREFACTOR_QUOTIENTS",
    "RingMismatchError",
    "SUPPORTED_A",
    "SearchResult",
    "THEOREM_CATALOG",
    "TruncatedSeries",
    "TruncationError",
    "VerificationReport",
    "appendix_identity_suite",
    "c_closed",
    "c_rational_oracle",
    "c_table",
    "cache_get",
    "cache_path",
    "cache_put",
    "catalog_lookup",
    "chi3",
    "default_budgets",
    "expand_f",
    "expand_quotient",
    "extract",
    "family_series",
    "first_difference",
    "is_prime",
    "lucas_binom",
    "make",
    "mo_coefficient",
    "modular",
    "parse_eta_quotient",
    "prefactor_generic",
    "prefactor_series",
    "search",
    "sigma",
    "theta_legendre3",
    "theta_phi",
    "theta_triangular_alt",
    "theta_x",
    "u_series",
    "u_series_definition",
    "u_series_identity",
    "u_series_identity_generic",
    "verify_catalog",
    "verify_claim",
]
