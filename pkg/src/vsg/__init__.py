"""Gauss codes for virtual graph diagrams: realization, moves and invariants."""

from vsg.code import (
    Edge,
    Passage,
    ValidationError,
    ValidationReport,
    VsgCode,
    arrow_sets,
    canonical_form,
    canonical_serialize,
    parse_code,
    shadow,
    validate,
)
from vsg.laurent import LaurentPoly

__all__ = [
    "Edge",
    "LaurentPoly",
    "Passage",
    "ValidationError",
    "ValidationReport",
    "VsgCode",
    "arrow_sets",
    "canonical_form",
    "canonical_serialize",
    "parse_code",
    "shadow",
    "validate",
]
