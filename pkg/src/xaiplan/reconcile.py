"""Model reconciliation: minimally complete explanations and relevance.

An explanation is the smallest set of model conditions (action
preconditions/effects and initial facts) that, inserted into a sparser
model, makes a given plan both valid and optimal there. Specialized to the
empty model -- all action conditions stripped, empty initial state, goal
preserved -- the explanation classifies every condition of the source model
as relevant (the explanation itself) or ignorable (everything else), which
drives graying in plan visualizations.

The search enumerates candidate subsets of the model difference in
ascending cardinality, returning the first completing subset in canonical
unit order. Each candidate costs one cheap validation and, only when the
plan validates, one optimal-planner call; validation outcomes are memoized
on the units that can actually affect the plan's execution. A planner-call
budget (default 10,000) bounds the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum

from .errors import (
    BudgetExceededError,
    IncompatibleModelsError,
    PlanNotOptimalError,
    UnknownActionError,
)
from .model import GroundedTask, Plan, build_task, validate_plan
from .search import solve_optimal

DEFAULT_BUDGET = 10_000


class EditKind(Enum):
    PRE = "PRE"
    ADD = "ADD"
    DEL = "DEL"
    INIT = "INIT"


_KIND_RANK = {EditKind.PRE: 0, EditKind.ADD: 1, EditKind.DEL: 2, EditKind.INIT: 3}


@dataclass(frozen=True)
class ModelEditUnit:
    """One atomic model condition: a precondition, add/delete effect of a
    named action, or an initial fact (action is None for INIT)."""

    kind: EditKind
    action: str | None
    fact: str

    def sort_key(self) -> tuple[int, str, str]:
        return (_KIND_RANK[self.kind], self.action or "", self.fact)

    def __str__(self) -> str:
        owner = self.action or "-"
        return f"{self.kind.value} {owner} {self.fact}"


def canonical(units) -> tuple[ModelEditUnit, ...]:
    """Units in canonical order: kind, then action label, then fact label."""
    return tuple(sorted(units, key=ModelEditUnit.sort_key))


@dataclass(frozen=True)
class Explanation:
    """A minimally complete explanation plus search accounting."""

    units: tuple[ModelEditUnit, ...]
    planner_calls: int

    @property
    def cardinality(self) -> int:
        return len(self.units)


@dataclass(frozen=True)
class RelevanceReport:
    """Partition of the whole model difference into explanation (relevant)
    and complement (grayed)."""

    relevant: tuple[ModelEditUnit, ...]
    grayed: tuple[ModelEditUnit, ...]

    @property
    def total(self) -> int:
        return len(self.relevant) + len(self.grayed)

    def is_grayed(self, unit: ModelEditUnit) -> bool:
        return unit in set(self.grayed)


def empty_model(task: GroundedTask) -> GroundedTask:
    """Copy of `task` with all action conditions stripped and empty init;
    labels, costs, the fact table and the goal are preserved."""
    return build_task(
        facts=task.facts,
        actions=[(a.label, [], [], [], a.cost) for a in task.actions],
        init=[],
        goal=task.goal_labels,
    )


def model_diff(source: GroundedTask, target: GroundedTask) -> tuple[ModelEditUnit, ...]:
    """All condition units present in `source` and absent in `target`,
    canonically ordered. Requires identical action label sets and goals."""
    source_labels = {a.label for a in source.actions}
    target_labels = {a.label for a in target.actions}
    if source_labels != target_labels:
        raise IncompatibleModelsError("models declare different action label sets")
    if source.goal_labels != target.goal_labels:
        raise IncompatibleModelsError("models declare different goals")

    units = []
    for act in source.actions:
        other = target.action(act.label)
        for kind, mine, theirs in (
            (EditKind.PRE, act.pre, other.pre),
            (EditKind.ADD, act.add, other.add),
            (EditKind.DEL, act.delete, other.delete),
        ):
            for fact in source.labels_of(mine) - target.labels_of(theirs):
                units.append(ModelEditUnit(kind, act.label, fact))
    for fact in source.init_labels - target.init_labels:
        units.append(ModelEditUnit(EditKind.INIT, None, fact))
    return canonical(units)


def apply_edits(model: GroundedTask, units) -> GroundedTask:
    """Insert each unit into the corresponding condition set or the init."""
    pre: dict[str, set[str]] = {}
    add: dict[str, set[str]] = {}
    delete: dict[str, set[str]] = {}
    for act in model.actions:
        pre[act.label] = set(model.labels_of(act.pre))
        add[act.label] = set(model.labels_of(act.add))
        delete[act.label] = set(model.labels_of(act.delete))
    init = set(model.init_labels)
    facts = set(model.facts)

    for unit in units:
        facts.add(unit.fact)
        if unit.kind is EditKind.INIT:
            init.add(unit.fact)
            continue
        if unit.action not in pre:
            raise UnknownActionError(f"edit references unknown action {unit.action!r}")
        {EditKind.PRE: pre, EditKind.ADD: add, EditKind.DEL: delete}[unit.kind][unit.action].add(unit.fact)

    return build_task(
        facts=facts,
        actions=[(a.label, pre[a.label], add[a.label], delete[a.label], a.cost)
                 for a in model.actions],
        init=init,
        goal=model.goal_labels,
    )


def mce(source: GroundedTask, target: GroundedTask, pi: Plan,
        budget: int = DEFAULT_BUDGET) -> Explanation:
    """Minimum-cardinality unit set E ⊆ diff(source, target) such that `pi`
    is valid and cost-optimal in apply_edits(target, E).

    `pi` must already be valid and optimal (cost equal to the minimum) in
    `source`. Enumeration ascends in cardinality and, within a cardinality,
    follows lexicographic order over canonical unit tuples, so the result is
    deterministic. E = full diff always completes, guaranteeing termination.
    """
    calls = 0

    def solve_counted(task: GroundedTask):
        nonlocal calls
        calls += 1
        if calls > budget:
            raise BudgetExceededError(calls, budget)
        return solve_optimal(task)

    report = validate_plan(source, pi)
    if not report.valid:
        raise PlanNotOptimalError(
            f"plan is invalid in the source model (fails at step {report.failure_step})")
    best = solve_counted(source)
    if best.plan is None or best.plan.cost != pi.cost:
        raise PlanNotOptimalError(
            f"plan costs {pi.cost} but the source optimum is "
            f"{best.plan.cost if best.plan else 'unsolvable'}")

    delta = model_diff(source, target)
    plan_actions = set(pi.steps)
    # Units on actions outside the plan cannot change whether pi executes,
    # only what alternative plans cost -- validation memoizes on the rest.
    relevant_for_validity = frozenset(
        u for u in delta if u.kind is EditKind.INIT or u.action in plan_actions)
    validity_cache: dict[frozenset[ModelEditUnit], bool] = {}

    for size in range(len(delta) + 1):
        for subset in itertools.combinations(delta, size):
            key = frozenset(subset) & relevant_for_validity
            known = validity_cache.get(key)
            if known is False:
                continue
            candidate = apply_edits(target, subset)
            if known is None:
                known = validate_plan(candidate, pi).valid
                validity_cache[key] = known
                if not known:
                    continue
            # a candidate equal to the source reuses the initial planner call
            result = best if candidate == source else solve_counted(candidate)
            if result.plan is not None and result.plan.cost == pi.cost:
                return Explanation(units=canonical(subset), planner_calls=calls)
    raise AssertionError("unreachable: the full diff restores the source model")


def relevance(source: GroundedTask, pi: Plan,
              budget: int = DEFAULT_BUDGET) -> RelevanceReport:
    """Split every condition of `source` into plan-relevant (the empty-model
    explanation) and ignorable (grayed in visualizations)."""
    target = empty_model(source)
    explanation = mce(source, target, pi, budget=budget)
    relevant = set(explanation.units)
    delta = model_diff(source, target)
    grayed = canonical(u for u in delta if u not in relevant)
    return RelevanceReport(relevant=explanation.units, grayed=grayed)
