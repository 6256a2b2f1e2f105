"""Exact rational homology of toric varieties and of links of toric orbits."""

from .bundle import Check, ProjectionResult, euler_class_kernel_rank, gysin_check, project_boundary_fan
from .cells import CellPoset, link_base_poset, variety_poset
from .errors import (
    ConeError,
    ConsistencyError,
    FanAxiomViolation,
    ParseError,
    SignAssignmentError,
    ToricLinkError,
)
from .fan import Cone, Fan, f_vector, face_lattice, validate_fan
from .formats import parse_fan_file
from .homology import BettiTable, betti, build_link_complex, build_variety_complex, link_betti, variety_betti
from .invariants import (
    LinkReport,
    extract_b2,
    h_vector_oracle,
    intersection_space_betti,
    singular_components,
    verify_link_formulas,
)

__all__ = [
    "BettiTable", "CellPoset", "Check", "Cone", "ConeError", "ConsistencyError", "Fan",
    "FanAxiomViolation", "LinkReport", "ParseError", "ProjectionResult", "SignAssignmentError",
    "ToricLinkError", "betti", "build_link_complex", "build_variety_complex",
    "euler_class_kernel_rank", "extract_b2", "f_vector", "face_lattice", "gysin_check",
    "h_vector_oracle", "intersection_space_betti", "link_base_poset", "link_betti",
    "parse_fan_file", "project_boundary_fan", "singular_components", "validate_fan",
    "variety_betti", "variety_poset", "verify_link_formulas",
]
