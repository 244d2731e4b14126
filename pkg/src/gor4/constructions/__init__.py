"""Structured formats and the catalogue of named curve families."""

from .families import (
    CURVE_VARS,
    REGISTRY,
    RETRY_BUDGET,
    FamilyDef,
    FamilyInstance,
    GenericityError,
    NonGeneralSection,
    build_family,
    family_names,
    get_family,
    linear_section,
    rolling_factors_quartic,
)
from .matrices import (
    CramerFormat,
    SkewMatrix,
    cramer_ideal,
    determinant,
    maximal_pfaffians,
    minors,
    pfaffian,
    sub_pfaffian,
)
from .tables import DEGREE_TABLE, betti_names, identify, named_table

__all__ = [
    "CURVE_VARS", "REGISTRY", "RETRY_BUDGET", "FamilyDef", "FamilyInstance", "GenericityError",
    "NonGeneralSection", "build_family", "family_names", "get_family", "linear_section",
    "rolling_factors_quartic", "CramerFormat", "SkewMatrix", "cramer_ideal", "determinant",
    "maximal_pfaffians", "minors", "pfaffian", "sub_pfaffian", "DEGREE_TABLE", "betti_names",
    "identify", "named_table",
]
