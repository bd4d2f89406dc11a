"""Explainable-planning decision support engine.

Pipeline: parse PDDL -> ground -> plan / top-k / recognize / explain ->
renderer-independent documents -> session service.
"""

from .errors import XaiplanError
from .model import (
    GOAL,
    INIT,
    CausalLink,
    CausalLinkSet,
    DomainModel,
    GroundAction,
    GroundedTask,
    Plan,
    ProblemInstance,
    ValidationReport,
    build_task,
    extract_causal_links,
    ground,
    make_plan,
    validate_plan,
)
from .pddl import parse_domain, parse_problem
from .recognition import (
    BeliefState,
    GoalHypothesis,
    GoalHypothesisSet,
    HypothesisBelief,
    ObservationSequence,
    RecognitionConfig,
    compile_observations,
    goal_posterior,
    provenance_plan,
    update_belief,
)
from .reconcile import (
    EditKind,
    Explanation,
    ModelEditUnit,
    RelevanceReport,
    apply_edits,
    empty_model,
    mce,
    model_diff,
    relevance,
)
from .search import (
    HeuristicKind,
    SearchResult,
    compute_heuristic,
    solve_optimal,
    solve_satisficing,
)
from .topk import TopKResult, forbid_plan, surface_plan, top_k

__version__ = "0.1.0"

__all__ = [
    "XaiplanError",
    "DomainModel", "ProblemInstance", "GroundedTask", "GroundAction",
    "Plan", "ValidationReport", "CausalLink", "CausalLinkSet", "INIT", "GOAL",
    "parse_domain", "parse_problem", "ground", "build_task", "make_plan",
    "validate_plan", "extract_causal_links",
    "HeuristicKind", "SearchResult", "compute_heuristic",
    "solve_optimal", "solve_satisficing",
    "TopKResult", "forbid_plan", "top_k", "surface_plan",
    "ObservationSequence", "GoalHypothesis", "GoalHypothesisSet",
    "RecognitionConfig", "BeliefState", "HypothesisBelief",
    "compile_observations", "goal_posterior", "provenance_plan", "update_belief",
    "EditKind", "ModelEditUnit", "Explanation", "RelevanceReport",
    "empty_model", "model_diff", "apply_edits", "mce", "relevance",
]
