"""Top-K planning by iterative plan forbidding.

Each round reformulates the task so that exactly one plan -- the one just
found -- stops being a solution, then reruns the optimal planner. Bookkeeping
facts and action copies use a ``|`` marker that cannot appear in parsed
labels, so copies surface back to their original label by cutting at the
first marker; pure-bookkeeping actions (the zero-cost finish actions) carry
no origin and are dropped from surfaced plans.

The reformulation tracks progress through the forbidden plan pi with facts
``f_0..f_n`` and a deviation fact ``d``: "follow" copies advance f_i while
replaying pi, "deviate" copies of every other applicable action (and of
every action once pi is exhausted) set ``d``, and "free" copies allow
arbitrary continuation after deviating. Zero-cost finish actions convert
(goal ∧ d) or (goal ∧ f_i, i < n) into the new goal fact, so the solutions
of the reformulation are exactly the original solutions minus pi itself,
with costs preserved.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import InvalidPlanError
from .model import GroundedTask, Plan, build_task, make_plan, validate_plan
from .search import solve_optimal

MARKER = "|"

_ROUND_RE = re.compile(r"^\|(\d+):")

DEFAULT_MAX_ROUNDS = 25


@dataclass(frozen=True)
class TopKResult:
    """Cost-ordered distinct plans. `exhausted` is set when the plan space
    ran out before k plans were found."""

    plans: tuple[Plan, ...]
    k: int
    exhausted: bool


def surface_label(label: str) -> str | None:
    """Original-task label of a (possibly multiply-copied) action, or None
    for pure bookkeeping actions."""
    head = label.split(MARKER, 1)[0]
    return head or None


def surface_plan(task: GroundedTask, raw: Plan) -> Plan:
    """Map a plan of a reformulated task back to original labels, dropping
    bookkeeping actions; cost is recomputed in `task`."""
    steps = []
    for lbl in raw.steps:
        origin = surface_label(lbl)
        if origin is not None:
            steps.append(origin)
    return make_plan(task, steps)


def _fresh_round(task: GroundedTask) -> int:
    rounds = [0]
    for f in task.facts:
        m = _ROUND_RE.match(f)
        if m:
            rounds.append(int(m.group(1)))
    return max(rounds) + 1


def forbid_plan(task: GroundedTask, pi: Plan) -> GroundedTask:
    """Reformulate `task` so its solutions are exactly the original
    solutions minus the single sequence `pi`, costs preserved."""
    report = validate_plan(task, pi)
    if not report.valid:
        raise InvalidPlanError(
            f"cannot forbid an invalid plan (fails at step {report.failure_step})")

    r = _fresh_round(task)
    n = len(pi.steps)
    progress = [f"{MARKER}{r}:progress{i}" for i in range(n + 1)]
    deviated = f"{MARKER}{r}:deviated"
    done = f"{MARKER}{r}:done"

    facts = list(task.facts) + progress + [deviated, done]
    goal_labels = task.goal_labels
    actions: list[tuple[str, list[str], list[str], list[str], int]] = []

    # the state reached after following pi[0..i-1], in label space
    trace = report.state_trace

    for i in range(n):
        followed = task.action(pi.steps[i])
        actions.append((
            f"{followed.label}{MARKER}follow@{r}:{i}",
            [*task.labels_of(followed.pre), progress[i]],
            [*task.labels_of(followed.add), progress[i + 1]],
            [*task.labels_of(followed.delete), progress[i]],
            followed.cost,
        ))
        for act in task.actions:
            if act.label == pi.steps[i]:
                continue
            if not task.labels_of(act.pre) <= trace[i]:
                continue  # cannot be the first deviation here
            actions.append((
                f"{act.label}{MARKER}deviate@{r}:{i}",
                [*task.labels_of(act.pre), progress[i]],
                [*task.labels_of(act.add), deviated],
                [*task.labels_of(act.delete), progress[i]],
                act.cost,
            ))

    # past the end of pi, any further action is a deviation
    for act in task.actions:
        if not task.labels_of(act.pre) <= trace[n]:
            continue
        actions.append((
            f"{act.label}{MARKER}deviate@{r}:{n}",
            [*task.labels_of(act.pre), progress[n]],
            [*task.labels_of(act.add), deviated],
            [*task.labels_of(act.delete), progress[n]],
            act.cost,
        ))

    # once deviated, the task continues unrestricted
    for act in task.actions:
        actions.append((
            f"{act.label}{MARKER}free@{r}",
            [*task.labels_of(act.pre), deviated],
            list(task.labels_of(act.add)),
            list(task.labels_of(act.delete)),
            act.cost,
        ))

    # finish actions delete their enabling fact, so they are terminal and
    # every solution of the reformulation has exactly one raw form
    actions.append((f"{MARKER}{r}:finish-dev", [*goal_labels, deviated],
                    [done], [deviated], 0))
    for i in range(n):
        actions.append((f"{MARKER}{r}:finish@{i}", [*goal_labels, progress[i]],
                        [done], [progress[i]], 0))

    return build_task(
        facts=facts,
        actions=actions,
        init=[*task.init_labels, progress[0]],
        goal=[done],
    )


def top_k(task: GroundedTask, k: int,
          max_rounds: int = DEFAULT_MAX_ROUNDS) -> TopKResult:
    """The k cheapest distinct plans of `task`, non-decreasing in cost.

    Iterates solve_optimal + forbid_plan, surface-mapping each round's raw
    plan back to original labels. Stops early with exhausted=True when the
    reformulation becomes unsolvable; `max_rounds` caps reformulation depth
    to bound task growth.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    plans: list[Plan] = []
    current = task
    rounds = 0
    while len(plans) < k:
        result = solve_optimal(current)
        if result.plan is None:
            return TopKResult(tuple(plans), k, exhausted=True)
        plans.append(surface_plan(task, result.plan))
        if len(plans) == k or rounds >= max_rounds:
            break
        current = forbid_plan(current, result.plan)
        rounds += 1
    return TopKResult(tuple(plans), k, exhausted=False)
