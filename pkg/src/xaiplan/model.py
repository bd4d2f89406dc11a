"""Core planning model: STRIPS tasks, plans, validation, causal links.

A :class:`DomainModel` / :class:`ProblemInstance` pair (usually produced by
:mod:`xaiplan.pddl`) grounds into a :class:`GroundedTask` -- a propositional
STRIPS task over an indexed fact table. Tasks are immutable and safe to share
across threads; every operation here is a pure function of its inputs.

Labels are the stable identity of facts and actions: a fact prints as
``(pred arg1 arg2)`` and a ground action as ``(name arg1 arg2)``. Fact and
action indices are assigned after sorting labels lexicographically, so equal
inputs always produce identical indexed tasks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import (
    ConflictingEffectsError,
    InvalidPlanError,
    PddlTypeError,
    UnknownActionError,
)

# Pseudo-endpoints for causal links.
INIT = "init"
GOAL = "goal"

# Root of every type hierarchy.
OBJECT_TYPE = "object"


def fact_label(predicate: str, args: Sequence[str]) -> str:
    """Printed form of a ground atom, e.g. ``(at truck depot)``."""
    return "(" + " ".join((predicate, *args)) + ")"


def action_label(name: str, args: Sequence[str]) -> str:
    """Printed form of a ground action, identical convention to facts."""
    return "(" + " ".join((name, *args)) + ")"


# -- lifted model -------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    """A predicate applied to parameter or object names."""

    predicate: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return fact_label(self.predicate, self.args)


@dataclass(frozen=True)
class ActionSchema:
    """Lifted action: typed parameters, positive preconditions, add/delete effects."""

    name: str
    parameters: tuple[tuple[str, str], ...]  # (variable, type)
    precondition: frozenset[Literal]
    add: frozenset[Literal]
    delete: frozenset[Literal]
    cost: int = 1


@dataclass(frozen=True)
class DomainModel:
    """Parsed domain: type hierarchy, predicate signatures, action schemas."""

    name: str
    types: Mapping[str, str]  # type -> parent (OBJECT_TYPE is its own parent)
    predicates: Mapping[str, tuple[str, ...]]  # name -> parameter types
    schemas: tuple[ActionSchema, ...]

    def schema(self, name: str) -> ActionSchema:
        for s in self.schemas:
            if s.name == name:
                return s
        raise KeyError(name)

    def is_subtype(self, sub: str, sup: str) -> bool:
        """True when `sub` equals `sup` or descends from it."""
        seen = set()
        t = sub
        while t not in seen:
            if t == sup:
                return True
            seen.add(t)
            t = self.types.get(t, OBJECT_TYPE)
        return False


@dataclass(frozen=True)
class ProblemInstance:
    """Typed objects plus ground initial state and goal."""

    name: str
    domain_name: str
    objects: tuple[tuple[str, str], ...]  # (name, type)
    init: frozenset[str]  # fact labels
    goal: frozenset[str]


# -- grounded model ------------------------------------------------------------

@dataclass(frozen=True)
class GroundAction:
    """Propositional action over fact indices."""

    label: str
    pre: frozenset[int]
    add: frozenset[int]
    delete: frozenset[int]
    cost: int


@dataclass(frozen=True)
class GroundedTask:
    """Indexed STRIPS task.

    `facts` maps index -> label (sorted); actions are sorted by label and
    reference facts by index. Use :func:`build_task` to construct one from
    label-space data -- it sorts, indexes and enforces the invariants
    (unique labels, goal within the fact table, add/delete disjoint).
    """

    facts: tuple[str, ...]
    actions: tuple[GroundAction, ...]
    init: frozenset[int]
    goal: frozenset[int]
    _fact_index: dict[str, int] = field(
        default_factory=dict, repr=False, compare=False, hash=False)
    _action_index: dict[str, int] = field(
        default_factory=dict, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if not self._fact_index:
            object.__setattr__(self, "_fact_index",
                               {f: i for i, f in enumerate(self.facts)})
        if not self._action_index:
            object.__setattr__(self, "_action_index",
                               {a.label: i for i, a in enumerate(self.actions)})

    # label/index translation ------------------------------------------------

    def fact(self, label: str) -> int:
        return self._fact_index[label]

    def labels_of(self, indices: Iterable[int]) -> frozenset[str]:
        return frozenset(self.facts[i] for i in indices)

    def action(self, label: str) -> GroundAction:
        try:
            return self.actions[self._action_index[label]]
        except KeyError:
            raise UnknownActionError(f"no action labelled {label!r}") from None

    def has_action(self, label: str) -> bool:
        return label in self._action_index

    @property
    def init_labels(self) -> frozenset[str]:
        return self.labels_of(self.init)

    @property
    def goal_labels(self) -> frozenset[str]:
        return self.labels_of(self.goal)


def build_task(
    facts: Iterable[str],
    actions: Iterable[tuple[str, Iterable[str], Iterable[str], Iterable[str], int]],
    init: Iterable[str],
    goal: Iterable[str],
) -> GroundedTask:
    """Construct a GroundedTask from label-space data.

    `actions` yields (label, pre, add, delete, cost) tuples. Facts referenced
    anywhere are required to be in `facts`; an action adding and deleting the
    same fact is rejected.
    """
    fact_list = sorted(set(facts))
    index = {f: i for i, f in enumerate(fact_list)}

    def to_indices(labels: Iterable[str], context: str) -> frozenset[int]:
        out = set()
        for lbl in labels:
            if lbl not in index:
                raise ValueError(f"{context}: fact {lbl!r} not in fact table")
            out.add(index[lbl])
        return frozenset(out)

    ground_actions = []
    seen_labels = set()
    for label, pre, add, delete, cost in actions:
        if label in seen_labels:
            raise ValueError(f"duplicate action label {label!r}")
        seen_labels.add(label)
        if cost < 0:
            raise ValueError(f"negative cost on {label!r}")
        add_idx = to_indices(add, label)
        del_idx = to_indices(delete, label)
        clash = add_idx & del_idx
        if clash:
            facts_str = ", ".join(sorted(fact_list[i] for i in clash))
            raise ConflictingEffectsError(
                f"action {label!r} both adds and deletes: {facts_str}")
        ground_actions.append(GroundAction(
            label=label,
            pre=to_indices(pre, label),
            add=add_idx,
            delete=del_idx,
            cost=cost,
        ))
    ground_actions.sort(key=lambda a: a.label)
    return GroundedTask(
        facts=tuple(fact_list),
        actions=tuple(ground_actions),
        init=to_indices(init, "init"),
        goal=to_indices(goal, "goal"),
    )


# -- grounding -----------------------------------------------------------------

def _objects_by_type(dm: DomainModel, pi: ProblemInstance) -> dict[str, list[str]]:
    by_type: dict[str, list[str]] = {t: [] for t in dm.types}
    by_type.setdefault(OBJECT_TYPE, [])
    for obj, typ in pi.objects:
        for t in by_type:
            if dm.is_subtype(typ, t):
                by_type[t].append(obj)
    for names in by_type.values():
        names.sort()
    return by_type


def _instantiate(lit: Literal, binding: Mapping[str, str]) -> str:
    return fact_label(lit.predicate, [binding.get(a, a) for a in lit.args])


def ground(dm: DomainModel, pi: ProblemInstance) -> GroundedTask:
    """Instantiate all type-consistent actions, then prune to the
    delete-relaxed reachable core.

    Pruning is conservative: an action is kept iff its precondition is
    reachable when deletes are ignored, so no valid plan of the unpruned
    task is lost. Goal facts stay in the fact table even when unreachable
    (the task is then simply unsolvable).

    A schema that adds and deletes the same literal is a modeling error and
    raises ConflictingEffectsError. A conflict that only arises from
    parameter aliasing (e.g. a move action instantiated with equal source
    and destination) drops that instantiation instead: such an action is a
    strict no-op, so no solution is lost.
    """
    if pi.domain_name != dm.name:
        raise PddlTypeError(
            f"problem {pi.name!r} is bound to domain {pi.domain_name!r}, "
            f"not {dm.name!r}")
    by_type = _objects_by_type(dm, pi)

    candidates: list[tuple[str, frozenset[str], frozenset[str], frozenset[str], int]] = []
    for schema in dm.schemas:
        schema_clash = schema.add & schema.delete
        if schema_clash:
            raise ConflictingEffectsError(
                f"action {schema.name!r} both adds and deletes: "
                + ", ".join(sorted(str(l) for l in schema_clash)))
        pools = []
        for _, typ in schema.parameters:
            pools.append(by_type.get(typ, []))
        for combo in itertools.product(*pools):
            binding = {var: obj for (var, _), obj in zip(schema.parameters, combo)}
            label = action_label(schema.name, combo)
            pre = frozenset(_instantiate(l, binding) for l in schema.precondition)
            add = frozenset(_instantiate(l, binding) for l in schema.add)
            dele = frozenset(_instantiate(l, binding) for l in schema.delete)
            if add & dele:
                continue  # aliasing made this instantiation a no-op
            candidates.append((label, pre, add, dele, schema.cost))

    # Delete-relaxed reachability fixpoint from init.
    reachable = set(pi.init)
    pending = candidates
    changed = True
    applicable: list[tuple[str, frozenset[str], frozenset[str], frozenset[str], int]] = []
    while changed:
        changed = False
        rest = []
        for cand in pending:
            if cand[1] <= reachable:
                applicable.append(cand)
                if not cand[2] <= reachable:
                    reachable |= cand[2]
                    changed = True
            else:
                rest.append(cand)
        pending = rest

    facts = reachable | set(pi.goal)
    actions = [
        (label, pre, add, dele & reachable, cost)
        for label, pre, add, dele, cost in applicable
    ]
    return build_task(facts, actions, pi.init, pi.goal)


# -- plans and validation --------------------------------------------------------

@dataclass(frozen=True)
class Plan:
    """Ordered action labels with their summed cost. Empty plan costs 0."""

    steps: tuple[str, ...]
    cost: int

    def __len__(self) -> int:
        return len(self.steps)


def make_plan(task: GroundedTask, steps: Sequence[str]) -> Plan:
    """Build a Plan whose cost is the sum of the referenced actions' costs."""
    return Plan(tuple(steps), sum(task.action(s).cost for s in steps))


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of stepwise plan simulation.

    When valid, `state_trace` holds |steps| + 1 label-space states. When
    invalid, `failure_step` is the first failing step (or len(steps) when the
    final state misses the goal) and `missing_facts` the unmet facts there.
    """

    valid: bool
    cost: int
    failure_step: int | None = None
    missing_facts: frozenset[str] = frozenset()
    state_trace: tuple[frozenset[str], ...] = ()


def validate_plan(task: GroundedTask, plan: Plan | Sequence[str]) -> ValidationReport:
    """Simulate `plan` from the initial state under STRIPS semantics.

    s' = (s \\ delete) ∪ add; adding a held fact and deleting an absent one
    are no-ops. Valid iff every step's precondition holds and the final
    state satisfies the goal. Raises UnknownActionError for foreign labels.
    """
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    actions = [task.action(lbl) for lbl in steps]
    total_cost = sum(a.cost for a in actions)

    state = set(task.init)
    trace = [frozenset(state)]
    for i, act in enumerate(actions):
        missing = act.pre - state
        if missing:
            return ValidationReport(
                valid=False, cost=total_cost, failure_step=i,
                missing_facts=task.labels_of(missing))
        state -= act.delete
        state |= act.add
        trace.append(frozenset(state))
    missing_goal = task.goal - state
    if missing_goal:
        return ValidationReport(
            valid=False, cost=total_cost, failure_step=len(steps),
            missing_facts=task.labels_of(missing_goal))
    return ValidationReport(
        valid=True, cost=total_cost,
        state_trace=tuple(task.labels_of(s) for s in trace))


# -- causal links ------------------------------------------------------------------

@dataclass(frozen=True)
class CausalLink:
    """producer supplies `fact` to consumer; endpoints are step indices,
    INIT, or GOAL."""

    producer: int | str
    consumer: int | str
    fact: str


@dataclass(frozen=True)
class CausalLinkSet:
    links: frozenset[CausalLink]


def extract_causal_links(task: GroundedTask, plan: Plan | Sequence[str]) -> CausalLinkSet:
    """Link every step precondition and goal fact to its latest producer.

    The producer of fact f consumed at step i is the greatest j < i whose
    action adds f, or INIT when no step does. Validity of the plan guarantees
    no intervening step deletes f (otherwise f would not hold at i).
    """
    report = validate_plan(task, plan)
    if not report.valid:
        raise InvalidPlanError(
            f"cannot extract links: plan fails at step {report.failure_step}")
    steps = plan.steps if isinstance(plan, Plan) else tuple(plan)
    actions = [task.action(lbl) for lbl in steps]

    links = set()
    last_adder: dict[int, int] = {}  # fact index -> latest producing step
    for i, act in enumerate(actions):
        for f in act.pre:
            producer = last_adder.get(f, INIT)
            links.add(CausalLink(producer, i, task.facts[f]))
        for f in act.add:
            last_adder[f] = i
    for f in task.goal:
        producer = last_adder.get(f, INIT)
        links.add(CausalLink(producer, GOAL, task.facts[f]))
    return CausalLinkSet(frozenset(links))
