"""Mass-action reaction networks with exact arithmetic: classification,
realizability, the translate/scale/add construction calculus, and numerics
for steady states and trajectories."""

__version__ = "0.1.0"

from .algebra import Polynomial, PolyVector, format_polynomial, parse_polynomial, poly_eval
from .network import MassActionSystem, ReactionNetwork, load_system, system_from_dict, system_to_dict
from .classify import (
    classification_report,
    deficiency,
    is_endotactic,
    is_strongly_endotactic,
    is_weakly_reversible,
    siphons,
)
from .realize import canonical_realization, is_dynamically_equivalent, newton_polytope_candidates, wr_realizable_on
from .transform import ScalarPolynomial, add_systems, construct_full_unit, scalar_multiply, simplify, translate

__all__ = [
    "MassActionSystem",
    "Polynomial",
    "PolyVector",
    "ReactionNetwork",
    "ScalarPolynomial",
    "add_systems",
    "canonical_realization",
    "classification_report",
    "construct_full_unit",
    "deficiency",
    "format_polynomial",
    "is_dynamically_equivalent",
    "is_endotactic",
    "is_strongly_endotactic",
    "is_weakly_reversible",
    "load_system",
    "newton_polytope_candidates",
    "parse_polynomial",
    "poly_eval",
    "scalar_multiply",
    "simplify",
    "siphons",
    "system_from_dict",
    "system_to_dict",
    "translate",
    "wr_realizable_on",
]
