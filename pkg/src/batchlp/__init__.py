"""Batched dense LP solving with a two-phase simplex tableau and oracles."""

from .batch import (
    BatchConfig,
    BatchReport,
    BatchTooLarge,
    ChunkPlan,
    HeterogeneousBatch,
    batch_solve,
    lp_memory_bytes,
    plan_chunks,
)
from .boxlp import BoxLP, BoxSolution, InvalidBox, solve_box, solve_box_batch
from .generate import gen_random_lps
from .model import (
    GeneralLP,
    InfeasibleBounds,
    Relation,
    Sense,
    SolveOutcome,
    StandardFormLP,
    Status,
    VariableMap,
    standard_form,
    standardize,
    validate,
)
from .mps import MpsModel, ParseError, UnsupportedFeature, lower_to_general, parse_mps
from .oracle import (
    Certificate,
    OracleBudget,
    check_certificate,
    corner_enumerate,
    vertex_enumerate,
    vertex_enumerate_general,
)
from .simplex import SolverLimits, solve
from .tableau import (
    DegeneratePivot,
    PivotChoice,
    Tableau,
    build_tableau,
    choose_entering,
    choose_entering_bland,
    choose_leaving,
    pivot,
)

__all__ = [
    "BatchConfig", "BatchReport", "BatchTooLarge", "BoxLP", "BoxSolution",
    "Certificate", "ChunkPlan", "DegeneratePivot", "GeneralLP",
    "HeterogeneousBatch", "InfeasibleBounds", "InvalidBox", "MpsModel",
    "OracleBudget", "ParseError", "PivotChoice", "Relation", "Sense",
    "SolveOutcome", "SolverLimits", "StandardFormLP", "Status", "Tableau",
    "UnsupportedFeature", "VariableMap", "batch_solve", "build_tableau",
    "check_certificate", "choose_entering", "choose_entering_bland",
    "choose_leaving", "corner_enumerate", "gen_random_lps", "lower_to_general",
    "lp_memory_bytes", "parse_mps", "pivot", "plan_chunks", "solve",
    "solve_box", "solve_box_batch", "standard_form", "standardize",
    "validate", "vertex_enumerate", "vertex_enumerate_general",
]

__version__ = "0.1.0"
