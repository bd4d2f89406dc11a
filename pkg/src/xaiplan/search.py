"""Forward state-space search over grounded tasks.

States are bitmasks over fact indices (Python ints), giving cheap
applicability tests, successor generation and duplicate detection.
:func:`solve_optimal` runs A* with an admissible heuristic (h^max by
default) and guarantees minimal cost; :func:`solve_satisficing` runs greedy
best-first with h^add and guarantees only validity.

Determinism: the open list orders by (f, h, insertion counter) -- lower f,
then lower h, then FIFO -- and successors are generated in action-index
order, so two runs on the same task return the identical plan.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .model import GroundedTask, Plan

INFINITY = math.inf


class HeuristicKind(Enum):
    HMAX = "hmax"
    HADD = "hadd"
    BLIND = "blind"


ADMISSIBLE = {HeuristicKind.HMAX, HeuristicKind.BLIND}


@dataclass(frozen=True)
class SearchResult:
    """Outcome of one search. `plan is None` marks UNSOLVABLE; the
    `optimal` flag declares whether minimal cost is guaranteed."""

    plan: Plan | None
    expanded: int
    generated: int
    optimal: bool

    @property
    def solvable(self) -> bool:
        return self.plan is not None


class _Relaxation:
    """Delete-relaxation fact costs under max (h^max) or sum (h^add)
    aggregation, computed by a Dijkstra-style sweep per evaluation."""

    def __init__(self, task: GroundedTask, aggregate_max: bool):
        self.task = task
        self.aggregate_max = aggregate_max
        self.nfacts = len(task.facts)
        # per fact: which actions have it as precondition
        self.consumers: list[list[int]] = [[] for _ in range(self.nfacts)]
        for ai, act in enumerate(task.actions):
            for f in act.pre:
                self.consumers[f].append(ai)

    def value(self, state: Iterable[int]) -> int | float:
        task = self.task
        if not task.goal:
            return 0
        cost: list[int | float] = [INFINITY] * self.nfacts
        done = [False] * self.nfacts
        heap: list[tuple[int | float, int]] = []
        for f in state:
            cost[f] = 0
            heap.append((0, f))
        heapq.heapify(heap)

        unsat = []
        agg: list[int | float] = []
        for act in task.actions:
            unsat.append(len(act.pre))
            agg.append(0)
        # actions with no preconditions fire immediately
        for ai, act in enumerate(task.actions):
            if unsat[ai] == 0:
                for g in act.add:
                    if act.cost < cost[g]:
                        cost[g] = act.cost
                        heapq.heappush(heap, (cost[g], g))

        goal_pending = set(task.goal)
        while heap and goal_pending:
            c, f = heapq.heappop(heap)
            if done[f] or c > cost[f]:
                continue
            done[f] = True
            goal_pending.discard(f)
            for ai in self.consumers[f]:
                unsat[ai] -= 1
                if self.aggregate_max:
                    if c > agg[ai]:
                        agg[ai] = c
                else:
                    agg[ai] = agg[ai] + c
                if unsat[ai] == 0:
                    act = self.task.actions[ai]
                    new_cost = agg[ai] + act.cost
                    for g in act.add:
                        if new_cost < cost[g]:
                            cost[g] = new_cost
                            heapq.heappush(heap, (new_cost, g))

        goal_costs = [cost[g] for g in task.goal]
        if any(c is INFINITY for c in goal_costs):
            return INFINITY
        if self.aggregate_max:
            return max(goal_costs, default=0)
        return sum(goal_costs)


def compute_heuristic(kind: HeuristicKind, task: GroundedTask,
                      state: Iterable[int]) -> int | float:
    """Heuristic value of `state` (a set of fact indices).

    h^max/h^add are delete-relaxation fixpoints (max/sum aggregation over
    preconditions) and return ∞ iff the goal is unreachable ignoring
    deletes. BLIND returns 0 on goal states and the minimum action cost
    otherwise.
    """
    state_set = frozenset(state)
    if kind is HeuristicKind.BLIND:
        if task.goal <= state_set:
            return 0
        return min((a.cost for a in task.actions), default=0)
    return _Relaxation(task, kind is HeuristicKind.HMAX).value(state_set)


def _bits_of(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


class _Masks:
    """Bitmask view of a task, built once per search."""

    def __init__(self, task: GroundedTask):
        self.task = task

        def to_mask(indices) -> int:
            m = 0
            for i in indices:
                m |= 1 << i
            return m

        self.init = to_mask(task.init)
        self.goal = to_mask(task.goal)
        self.pre = [to_mask(a.pre) for a in task.actions]
        self.add = [to_mask(a.add) for a in task.actions]
        self.delete = [to_mask(a.delete) for a in task.actions]
        self.cost = [a.cost for a in task.actions]


def _reconstruct(task: GroundedTask, parents, state: int, cost: int) -> Plan:
    steps: list[str] = []
    while True:
        entry = parents[state]
        if entry is None:
            break
        prev, ai = entry
        steps.append(task.actions[ai].label)
        state = prev
    steps.reverse()
    return Plan(tuple(steps), cost)


def solve_optimal(task: GroundedTask,
                  heuristic: HeuristicKind = HeuristicKind.HMAX) -> SearchResult:
    """A* with an admissible heuristic; the returned cost is minimal.

    Duplicate detection keys on state bits with reopening on cheaper g, so
    zero-cost actions and cycles terminate. Returns the UNSOLVABLE marker
    (plan=None) when no plan exists.
    """
    if heuristic not in ADMISSIBLE:
        raise ValueError(f"{heuristic.value} is inadmissible; optimal search "
                         f"needs hmax or blind")
    masks = _Masks(task)
    relax = _Relaxation(task, True) if heuristic is HeuristicKind.HMAX else None

    def h_of(state_mask: int) -> int | float:
        if relax is None:
            if masks.goal & state_mask == masks.goal:
                return 0
            return min(masks.cost, default=0)
        return relax.value(_bits_of(state_mask))

    counter = itertools.count()
    g_best: dict[int, int] = {masks.init: 0}
    parents: dict[int, tuple[int, int] | None] = {masks.init: None}
    h0 = h_of(masks.init)
    expanded = generated = 0
    heap: list[tuple[int | float, int | float, int, int]] = []
    if h0 is not INFINITY:
        heap.append((h0, h0, next(counter), masks.init))

    n_actions = len(task.actions)
    while heap:
        f, h, _, state = heapq.heappop(heap)
        g = g_best[state]
        if f - h > g:  # stale entry: state was reopened cheaper
            continue
        if masks.goal & state == masks.goal:
            return SearchResult(
                plan=_reconstruct(task, parents, state, g),
                expanded=expanded, generated=generated, optimal=True)
        expanded += 1
        for ai in range(n_actions):
            pre = masks.pre[ai]
            if state & pre != pre:
                continue
            succ = (state & ~masks.delete[ai]) | masks.add[ai]
            ng = g + masks.cost[ai]
            old = g_best.get(succ)
            if old is not None and old <= ng:
                continue
            hs = h_of(succ)
            if hs is INFINITY:
                continue
            g_best[succ] = ng
            parents[succ] = (state, ai)
            generated += 1
            heapq.heappush(heap, (ng + hs, hs, next(counter), succ))
    return SearchResult(plan=None, expanded=expanded, generated=generated,
                        optimal=True)


def solve_satisficing(task: GroundedTask,
                      heuristic: HeuristicKind = HeuristicKind.HADD) -> SearchResult:
    """Greedy best-first search; the plan is valid but carries no
    optimality guarantee."""
    masks = _Masks(task)
    if heuristic is HeuristicKind.BLIND:
        def h_of(state_mask: int) -> int | float:
            if masks.goal & state_mask == masks.goal:
                return 0
            return min(masks.cost, default=0)
    else:
        relax = _Relaxation(task, heuristic is HeuristicKind.HMAX)

        def h_of(state_mask: int) -> int | float:
            return relax.value(_bits_of(state_mask))

    counter = itertools.count()
    g_best: dict[int, int] = {masks.init: 0}
    parents: dict[int, tuple[int, int] | None] = {masks.init: None}
    closed: set[int] = set()
    expanded = generated = 0
    heap: list[tuple[int | float, int, int]] = []
    h0 = h_of(masks.init)
    if h0 is not INFINITY:
        heap.append((h0, next(counter), masks.init))

    n_actions = len(task.actions)
    while heap:
        _, _, state = heapq.heappop(heap)
        if state in closed:
            continue
        closed.add(state)
        if masks.goal & state == masks.goal:
            return SearchResult(
                plan=_reconstruct(task, parents, state, g_best[state]),
                expanded=expanded, generated=generated, optimal=False)
        expanded += 1
        for ai in range(n_actions):
            pre = masks.pre[ai]
            if state & pre != pre:
                continue
            succ = (state & ~masks.delete[ai]) | masks.add[ai]
            if succ in closed or succ in g_best:
                continue
            g_best[succ] = g_best[state] + masks.cost[ai]
            parents[succ] = (state, ai)
            hs = h_of(succ)
            if hs is INFINITY:
                continue
            generated += 1
            heapq.heappush(heap, (hs, next(counter), succ))
    return SearchResult(plan=None, expanded=expanded, generated=generated,
                        optimal=False)
