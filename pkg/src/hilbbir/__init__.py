"""Birational involutions of Hilbert schemes of points on Picard-rank-one K3 surfaces."""

from .ambiguity import AmbiguityReport, ambiguity, fm_partner_count
from .classify import (
    BirClassification,
    Generator,
    classify,
    conjecture_check,
    congruence_case,
    family_t,
    moduli_components,
    nonnatural_generators,
    same_component,
)
from .cones import ChamberDecomposition, decompose, is_n_irregular, movable_cone, n3_class_counts, scan_irregular
from .exceptions import (
    HilbBirError,
    InvariantViolation,
    NotApplicable,
    ParameterViolation,
    SquareRadicand,
    ZeroClass,
)
from .nslattice import DivisorClass, HilbParams, bbf_square, divisibility, involution_matrix, reflection_fix_axis
from .pell import PellEquation, PellSolution, fundamental_solutions, fundamental_unit, negative_pell, solve_skew

__all__ = [
    "AmbiguityReport", "BirClassification", "ChamberDecomposition", "DivisorClass", "Generator",
    "HilbBirError", "HilbParams", "InvariantViolation", "NotApplicable", "ParameterViolation",
    "PellEquation", "PellSolution", "SquareRadicand", "ZeroClass",
    "ambiguity", "bbf_square", "classify", "congruence_case", "conjecture_check", "decompose",
    "divisibility", "family_t", "fm_partner_count", "fundamental_solutions", "fundamental_unit",
    "involution_matrix", "is_n_irregular", "moduli_components", "movable_cone", "n3_class_counts",
    "negative_pell", "nonnatural_generators", "reflection_fix_axis", "same_component",
    "scan_irregular", "solve_skew",
]
