"""Explicit Neumann counting-function remainder bounds for snowflake domains."""

from ._core import (
    BoundReport,
    ConstantRange,
    ConstantsLedger,
    SnowflakeDomain,
    WellCoveredCertificate,
    WhitneyCover,
    a_omega,
    bracketing_defect,
    build_cover,
    build_snowflake,
    build_whitney,
    c_E_rohde,
    content_upper_koch,
    count_cube,
    count_rectangle,
    koch_ledger,
    lapidus_pearse_tube_koch,
    m_frak_koch,
    make_bound_report,
    minkowski_dimension,
    neumann_eigenvalues,
    richardson,
    scale_interval,
    scale_report,
    snowflake_area_exact,
    snowflake_diameter,
    weinberger_upper,
    weyl_constant,
)

__all__ = [
    "BoundReport",
    "ConstantRange",
    "ConstantsLedger",
    "SnowflakeDomain",
    "WellCoveredCertificate",
    "WhitneyCover",
    "a_omega",
    "bracketing_defect",
    "build_cover",
    "build_snowflake",
    "build_whitney",
    "c_E_rohde",
    "content_upper_koch",
    "count_cube",
    "count_rectangle",
    "koch_ledger",
    "lapidus_pearse_tube_koch",
    "m_frak_koch",
    "make_bound_report",
    "minkowski_dimension",
    "neumann_eigenvalues",
    "richardson",
    "scale_interval",
    "scale_report",
    "snowflake_area_exact",
    "snowflake_diameter",
    "weinberger_upper",
    "weyl_constant",
]

__version__ = "1.0.0"
