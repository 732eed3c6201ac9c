"""Exact proportional division of a one-dimensional cake among families."""

from .allocation import Allocation, Piece, Verdict, canonicalize, comp, validate_partition
from .errors import (
    DomainError,
    FamcakeError,
    InfeasibleTargetError,
    InstanceError,
    MalformedPieceError,
    MeasureError,
    SearchLimitExceeded,
    UnsupportedCombinationError,
)
from .exact import ExactCutPlan, exact_division, exact_ratio_cut, min_cut_exact_search
from .fairness import FairnessReport, evaluate, nonadditivity_witness, w_avg, w_med, w_min
from .instance import Family, Instance, gen_preset, gen_random
from .measure import ValueMeasure, average_measure, common_refinement
from .oracle import OracleResult, min_components, positivity_lower_bound, positivity_min_components
from .protocols import (
    ProtocolResult,
    divide,
    divide_average,
    divide_democratic_k,
    divide_democratic_two,
    divide_unanimous,
)

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "Piece",
    "Verdict",
    "canonicalize",
    "comp",
    "validate_partition",
    "DomainError",
    "FamcakeError",
    "InfeasibleTargetError",
    "InstanceError",
    "MalformedPieceError",
    "MeasureError",
    "SearchLimitExceeded",
    "UnsupportedCombinationError",
    "ExactCutPlan",
    "exact_division",
    "exact_ratio_cut",
    "min_cut_exact_search",
    "FairnessReport",
    "evaluate",
    "nonadditivity_witness",
    "w_avg",
    "w_med",
    "w_min",
    "Family",
    "Instance",
    "gen_preset",
    "gen_random",
    "ValueMeasure",
    "average_measure",
    "common_refinement",
    "OracleResult",
    "min_components",
    "positivity_lower_bound",
    "positivity_min_components",
    "ProtocolResult",
    "divide",
    "divide_average",
    "divide_democratic_k",
    "divide_democratic_two",
    "divide_unanimous",
]
