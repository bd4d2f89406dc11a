"""Goal recognition by observation compilation.

Observed ground actions are compiled into the planning task as ordered
"explained" copies: observation i gets a copy of its action that may only
fire after observations 0..i-1 are explained, and the complying goal requires
all observations explained. Comparing the complying optimal cost c(G,O)
against the unconstrained optimal cost c(G) per goal hypothesis yields a
Boltzmann-style posterior over hypotheses:

    delta(G,O) = c(G,O) - c(G)
    P(O|G)     = 1 / (1 + exp(beta * delta))
    P(G|O)     ∝ P(O|G) * P(G)

An infinite complying cost forces likelihood 0; when every hypothesis has
likelihood 0 the belief falls back to the priors and is flagged degenerate
so interactive loops stay live.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .errors import NoComplyingPlanError, NoHypothesesError, UnknownActionError
from .model import (
    DomainModel,
    GroundedTask,
    Plan,
    ProblemInstance,
    build_task,
    ground,
)
from .search import solve_optimal, solve_satisficing
from .topk import MARKER, surface_plan

INFINITY = math.inf


@dataclass(frozen=True)
class ObservationSequence:
    """Ground action labels in observed order, optionally timestamped."""

    obs: tuple[str, ...] = ()
    timestamps: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.timestamps is not None:
            if len(self.timestamps) != len(self.obs):
                raise ValueError("one timestamp per observation required")
            if any(b < a for a, b in zip(self.timestamps, self.timestamps[1:])):
                raise ValueError("timestamps must be monotone")

    def extended(self, label: str, t: int | None = None) -> "ObservationSequence":
        if self.timestamps is None and t is None:
            return ObservationSequence(self.obs + (label,))
        stamps = self.timestamps or (0,) * len(self.obs)
        return ObservationSequence(self.obs + (label,),
                                   stamps + (stamps[-1] if t is None and stamps else (t or 0),))

    def __len__(self) -> int:
        return len(self.obs)


@dataclass(frozen=True)
class GoalHypothesis:
    id: str
    goal: frozenset[str]  # fact labels
    prior: float


@dataclass(frozen=True)
class GoalHypothesisSet:
    """Goal hypotheses over a shared domain, object and init base.

    Each hypothesis is grounded to its own task at construction time; the
    grounded action universe is identical across hypotheses since pruning
    depends only on the shared initial state.
    """

    domain: DomainModel
    base: ProblemInstance  # carries the shared objects and init; goal empty
    hypotheses: tuple[GoalHypothesis, ...]
    _tasks: dict[str, GroundedTask] = field(
        default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        ids = [h.id for h in self.hypotheses]
        if len(ids) != len(set(ids)):
            raise ValueError("hypothesis ids must be unique")
        if self.hypotheses:
            total = sum(h.prior for h in self.hypotheses)
            if abs(total - 1.0) > 1e-9:
                raise ValueError(f"priors sum to {total}, expected 1")
        if not self._tasks:
            tasks = {}
            for h in self.hypotheses:
                instance = replace(self.base, goal=h.goal)
                tasks[h.id] = ground(self.domain, instance)
            object.__setattr__(self, "_tasks", tasks)

    def task(self, hypothesis_id: str) -> GroundedTask:
        return self._tasks[hypothesis_id]

    def hypothesis(self, hypothesis_id: str) -> GoalHypothesis:
        for h in self.hypotheses:
            if h.id == hypothesis_id:
                return h
        raise KeyError(hypothesis_id)

    @property
    def action_labels(self) -> frozenset[str]:
        if not self.hypotheses:
            return frozenset()
        first = self._tasks[self.hypotheses[0].id]
        return frozenset(a.label for a in first.actions)


@dataclass(frozen=True)
class RecognitionConfig:
    """beta scales how sharply extra complying cost penalises a hypothesis."""

    beta: float = 1.0
    optimal: bool = True  # satisficing mode voids posterior exactness

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")


@dataclass(frozen=True)
class HypothesisBelief:
    id: str
    posterior: float
    complying_cost: int | float
    unconstrained_cost: int | float
    provenance: Plan | None

    @property
    def delta(self) -> int | float:
        if self.complying_cost is INFINITY:
            return INFINITY
        if self.unconstrained_cost is INFINITY:
            return -INFINITY
        return self.complying_cost - self.unconstrained_cost


@dataclass(frozen=True)
class BeliefState:
    """Normalized posterior over hypotheses plus per-hypothesis provenance.

    `degenerate` marks the all-zero-likelihood fallback to the priors;
    `exact` is cleared when costs came from the satisficing planner.
    """

    entries: tuple[HypothesisBelief, ...]
    observation_count: int
    degenerate: bool = False
    exact: bool = True

    def entry(self, hypothesis_id: str) -> HypothesisBelief:
        for e in self.entries:
            if e.id == hypothesis_id:
                return e
        raise KeyError(hypothesis_id)

    @property
    def distribution(self) -> dict[str, float]:
        return {e.id: e.posterior for e in self.entries}


def compile_observations(task: GroundedTask, observations: ObservationSequence) -> GroundedTask:
    """Extend `task` with ordered observation copies.

    Adds facts explained_0..explained_n (explained_0 initially true) and, for
    observation i of action a, a copy of a that additionally consumes
    explained_{i-1} and produces explained_i at unchanged cost. Original
    actions are retained; the complying goal is goal ∪ {explained_n}.
    """
    n = len(observations.obs)
    explained = [f"{MARKER}obs:explained{i}" for i in range(n + 1)]
    facts = list(task.facts) + explained
    actions: list[tuple[str, list[str], list[str], list[str], int]] = [
        (a.label, list(task.labels_of(a.pre)), list(task.labels_of(a.add)),
         list(task.labels_of(a.delete)), a.cost)
        for a in task.actions
    ]
    for i, label in enumerate(observations.obs, start=1):
        act = task.action(label)  # raises UnknownActionError
        actions.append((
            f"{label}{MARKER}obs{i}",
            [*task.labels_of(act.pre), explained[i - 1]],
            [*task.labels_of(act.add), explained[i]],
            [*task.labels_of(act.delete), explained[i - 1]],
            act.cost,
        ))
    return build_task(
        facts=facts,
        actions=actions,
        init=[*task.init_labels, explained[0]],
        goal=[*task.goal_labels, explained[n]],
    )


def _solve(task: GroundedTask, cfg: RecognitionConfig):
    return solve_optimal(task) if cfg.optimal else solve_satisficing(task)


def _likelihood(complying: int | float, unconstrained: int | float, beta: float) -> float:
    if complying is INFINITY:
        return 0.0
    if unconstrained is INFINITY:
        return 1.0
    x = beta * (complying - unconstrained)
    if x >= 0:
        e = math.exp(-x)
        return e / (1.0 + e)
    return 1.0 / (1.0 + math.exp(x))


def goal_posterior(hs: GoalHypothesisSet, observations: ObservationSequence,
                   cfg: RecognitionConfig = RecognitionConfig()) -> BeliefState:
    """Posterior over hypotheses given the full observation sequence."""
    if not hs.hypotheses:
        raise NoHypothesesError("hypothesis set is empty")
    weights = []
    entries = []
    for h in hs.hypotheses:
        task = hs.task(h.id)
        unconstrained = _solve(task, cfg)
        c_g = unconstrained.plan.cost if unconstrained.plan else INFINITY
        compiled = compile_observations(task, observations)
        complying = _solve(compiled, cfg)
        if complying.plan is not None:
            c_go = complying.plan.cost
            provenance = surface_plan(task, complying.plan)
        else:
            c_go = INFINITY
            provenance = None
        like = _likelihood(c_go, c_g, cfg.beta)
        weights.append(like * h.prior)
        entries.append(HypothesisBelief(
            id=h.id, posterior=0.0, complying_cost=c_go,
            unconstrained_cost=c_g, provenance=provenance))

    total = sum(weights)
    degenerate = total <= 0.0
    final = []
    for h, w, entry in zip(hs.hypotheses, weights, entries):
        posterior = h.prior if degenerate else w / total
        final.append(replace(entry, posterior=posterior))
    return BeliefState(
        entries=tuple(final),
        observation_count=len(observations),
        degenerate=degenerate,
        exact=cfg.optimal,
    )


def provenance_plan(hs: GoalHypothesisSet, hypothesis_id: str,
                    observations: ObservationSequence,
                    cfg: RecognitionConfig = RecognitionConfig()) -> Plan:
    """The complying optimal plan for one hypothesis, in original labels."""
    task = hs.task(hypothesis_id)
    compiled = compile_observations(task, observations)
    result = _solve(compiled, cfg)
    if result.plan is None:
        raise NoComplyingPlanError(
            f"no plan for {hypothesis_id!r} explains the observations")
    return surface_plan(task, result.plan)


def update_belief(hs: GoalHypothesisSet, observations: ObservationSequence,
                  label: str, cfg: RecognitionConfig = RecognitionConfig(),
                  t: int | None = None) -> tuple[ObservationSequence, BeliefState]:
    """Append one observation and recompute the posterior from scratch.

    Recompute-from-scratch keeps belief exactly equal to goal_posterior over
    the accumulated sequence; there is no approximate incremental update.
    """
    if label not in hs.action_labels:
        raise UnknownActionError(f"no action labelled {label!r} in this environment")
    extended = observations.extended(label, t)
    return extended, goal_posterior(hs, extended, cfg)
