"""Forward state-space search over a (learned or true) operator set.

Lazy greedy best-first search with duplicate detection.  Ground operators
are first pruned to those backward-relevant to the goal.  Two heuristics are
available: ``"goal-count"`` and ``"ff"`` (relaxed-plan length with negative
literals compiled into extra facts).  Under ``"ff"`` the relaxed plan also
supplies helpful actions, which order and, in the first search phase,
restrict the successors.
"""
from __future__ import annotations

import heapq
import math
import random
import time
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .relcore import CompiledModel, GroundAction, Literal, Operator, Task, compile_model
from .relcore.grounding import GroundOp, iter_bits
from .simulator import Simulator, Transition

INF = math.inf


@dataclass(frozen=True)
class SearchBudget:
    max_expansions: int = 50_000
    max_length: int = 80
    time_limit: Optional[float] = None  # seconds; None keeps runs reproducible

    def __post_init__(self):
        if self.max_expansions <= 0 or self.max_length <= 0:
            raise ValueError("budget values must be positive")
        if self.time_limit is not None and self.time_limit <= 0:
            raise ValueError("time limit must be positive")


@dataclass
class Plan:
    steps: list[GroundAction]
    trajectory: list[frozenset]
    expansions: int = 0

    def __len__(self):
        return len(self.steps)


@dataclass
class Execution:
    completed: bool
    diverged_at: Optional[int]
    transitions: list[Transition] = field(default_factory=list)

    @property
    def final_state(self) -> Optional[frozenset]:
        return self.transitions[-1].next_state if self.transitions else None


class _Relaxation:
    """Relevant ground operators and the fact numbering used by h^FF."""

    def __init__(self, model: CompiledModel, goal_pos: int, goal_neg: int):
        ops = model.ground_ops
        adders, deleters = model.adders, model.deleters
        rel_pos, rel_neg = set(iter_bits(goal_pos)), set(iter_bits(goal_neg))
        agenda = [(i, True) for i in rel_pos] + [(i, False) for i in rel_neg]
        relevant: set[int] = set()
        while agenda:
            i, pos = agenda.pop()
            for j in (adders if pos else deleters).get(i, ()):
                if j in relevant:
                    continue
                relevant.add(j)
                g = ops[j]
                for k in iter_bits(g.pre):
                    if k not in rel_pos:
                        rel_pos.add(k)
                        agenda.append((k, True))
                for k in iter_bits(g.neg):
                    if k not in rel_neg:
                        rel_neg.add(k)
                        agenda.append((k, False))
        self.ops: list[GroundOp] = [ops[j] for j in sorted(relevant)]
        self.actions = sorted({g.action for g in self.ops})
        # facts: positive atom i -> id, negated atom i -> id
        self.pos_ids = {i: k for k, i in enumerate(sorted(rel_pos))}
        off = len(self.pos_ids)
        self.neg_ids = {i: off + k for k, i in enumerate(sorted(rel_neg))}
        self.nfacts = off + len(self.neg_ids)
        self.pre: list[tuple[int, ...]] = []
        self.eff: list[tuple[int, ...]] = []
        self.watch: list[list[int]] = [[] for _ in range(self.nfacts)]
        for j, g in enumerate(self.ops):
            pre = tuple([self.pos_ids[i] for i in iter_bits(g.pre)]
                        + [self.neg_ids[i] for i in iter_bits(g.neg)])
            eff = tuple([self.pos_ids[i] for i in iter_bits(g.add) if i in self.pos_ids]
                        + [self.neg_ids[i] for i in iter_bits(g.dele) if i in self.neg_ids])
            self.pre.append(pre)
            self.eff.append(eff)
            for f in pre:
                self.watch[f].append(j)
        self.goal = [self.pos_ids[i] for i in iter_bits(goal_pos)] + \
                    [self.neg_ids[i] for i in iter_bits(goal_neg)]
        self._pos_bits = [(1 << i, f) for i, f in self.pos_ids.items()]
        self._neg_bits = [(1 << i, f) for i, f in self.neg_ids.items()]
        self._zero_pre = [j for j, p in enumerate(self.pre) if not p]

    def ff(self, state: int) -> tuple[float, set[int]]:
        """Relaxed plan length and the actions of its first layer."""
        level = [-1] * self.nfacts
        frontier = []
        for bit, f in self._pos_bits:
            if state & bit:
                level[f] = 0
                frontier.append(f)
        for bit, f in self._neg_bits:
            if not state & bit:
                level[f] = 0
                frontier.append(f)
        goals = self.goal
        if all(level[f] == 0 for f in goals):
            return 0, set()
        count = [len(p) for p in self.pre]
        achiever = [-1] * self.nfacts
        op_level = [-1] * len(self.ops)
        pending = set(f for f in goals if level[f] != 0)
        fired = list(self._zero_pre)
        lvl = 0
        while True:
            for f in frontier:
                for j in self.watch[f]:
                    count[j] -= 1
                    if count[j] == 0:
                        fired.append(j)
            if not fired:
                return INF, set()
            nxt = []
            for j in fired:
                op_level[j] = lvl
                for f in self.eff[j]:
                    if level[f] < 0:
                        level[f] = lvl + 1
                        achiever[f] = j
                        nxt.append(f)
                        pending.discard(f)
            fired = []
            if not pending:
                break
            frontier = nxt
            lvl += 1
        chosen: set[int] = set()
        stack = [f for f in goals if level[f] > 0]
        done = set()
        while stack:
            f = stack.pop()
            if f in done:
                continue
            done.add(f)
            j = achiever[f]
            if j in chosen:
                continue
            chosen.add(j)
            for p in self.pre[j]:
                if level[p] > 0 and p not in done:
                    stack.append(p)
        helpful = {self.ops[j].action for j in chosen if op_level[j] == 0}
        return len(chosen), helpful


def _goal_test(state: int, pos: int, neg: int) -> bool:
    return state & pos == pos and not state & neg


def _gbfs(model: CompiledModel, s0: int, gpos: int, gneg: int, relax: "_Relaxation",
          h_fn, limit: int, max_length: int, rng: random.Random, helpful_only: bool,
          deadline: Optional[float]):
    """Lazy greedy best-first search; returns (action path or None, expansions)."""
    parent: dict[int, Optional[tuple[int, int]]] = {s0: None}
    counter = 0
    heap = [(0, 0, 0, 0.0, counter, s0)]
    expansions = 0
    by_action = model.by_action
    noop_ambiguity = model.ambiguity == "noop"
    while heap:
        _, _, g, _, _, s = heapq.heappop(heap)
        h, helpful = h_fn(s)
        if h == INF:
            continue
        expansions += 1
        if expansions > limit:
            return None, limit
        if deadline is not None and expansions % 64 == 0 and time.monotonic() > deadline:
            return None, expansions
        if g >= max_length:
            continue
        actions = sorted(helpful) if helpful_only else relax.actions
        for a in actions:
            chosen = None
            n = 0
            for op in by_action[a]:
                if s & op.pre == op.pre and not s & op.neg:
                    n += 1
                    if chosen is None:
                        chosen = op
                        if not noop_ambiguity:
                            break
            if chosen is None or (n > 1 and noop_ambiguity):
                continue
            ns = (s & ~chosen.dele) | chosen.add
            if ns == s or ns in parent:
                continue
            parent[ns] = (s, a)
            if _goal_test(ns, gpos, gneg):
                path = []
                while parent[ns] is not None:
                    prev, act = parent[ns]
                    path.append((act, ns))
                    ns = prev
                path.reverse()
                return path, expansions
            counter += 1
            heapq.heappush(heap, (h, 0 if a in helpful else 1, g + 1, rng.random(), counter, ns))
    return None, expansions


def _heuristic(name: str, relax: "_Relaxation", gpos: int, gneg: int):
    if name == "ff":
        return relax.ff
    if name == "goal-count":
        def h_fn(state):
            return (bin(gpos & ~state).count("1") + bin(gneg & state).count("1")), ()
        return h_fn
    raise ValueError(f"unknown heuristic {name!r}")


def plan(
    ops: Iterable[Operator],
    task: Task,
    start: frozenset,
    goal: Iterable[Literal],
    budget: SearchBudget = SearchBudget(),
    rng: Optional[random.Random] = None,
    heuristic: str = "ff",
    model: Optional[CompiledModel] = None,
) -> Optional[Plan]:
    """Search for a plan reaching ``goal`` from ``start``; None on failure.

    An already satisfied goal yields the empty plan.  With the ``ff``
    heuristic the search first follows helpful actions only, then tries the
    goal literals one at a time, and finally runs an unrestricted search;
    all phases share the expansion budget.
    """
    rng = rng or random.Random(0)
    if heuristic not in ("ff", "goal-count"):
        raise ValueError(f"unknown heuristic {heuristic!r}")
    model = model or compile_model(ops, task)
    index = model.index
    masks = index.goal_masks(goal)
    if masks is None:
        return None
    gpos, gneg = masks
    s0 = index.mask(start)
    if _goal_test(s0, gpos, gneg):
        return Plan([], [start])
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    relax = _Relaxation(model, gpos, gneg)
    left = budget.max_expansions
    used_total = 0

    def run(s, pos, neg, rel, helpful_only, max_length):
        nonlocal left, used_total
        path, used = _gbfs(model, s, pos, neg, rel, _heuristic(heuristic, rel, pos, neg),
                           left, max_length, rng, helpful_only, deadline)
        left -= used
        used_total += used
        return path

    phases = ["helpful", "serial", "full"] if heuristic == "ff" else ["full"]
    for phase in phases:
        if left <= 0:
            break
        if phase == "serial":
            path = _serialized(model, s0, gpos, gneg, budget.max_length, run)
        else:
            path = run(s0, gpos, gneg, relax, phase == "helpful", budget.max_length)
        if path is not None:
            return _to_plan(model, s0, path, used_total)
    return None


def _serialized(model: CompiledModel, s0: int, gpos: int, gneg: int, max_length: int, run):
    """Achieve the goal literals one at a time, keeping those already reached."""
    path: list[tuple[int, int]] = []
    s = s0
    while not _goal_test(s, gpos, gneg):
        held_pos, held_neg = gpos & s, gneg & ~s
        open_lits = [(1 << i, 0) for i in iter_bits(gpos & ~s)] + \
                    [(0, 1 << i) for i in iter_bits(gneg & s)]
        # cheapest open literal first, by its own relaxed plan length
        scored = []
        for p, n in open_lits:
            h, _ = _Relaxation(model, p, n).ff(s)
            scored.append((h, p, n))
        scored.sort()
        h, p, n = scored[0]
        if h == INF:
            return None
        pos, neg = held_pos | p, held_neg | n
        rel = _Relaxation(model, pos, neg)
        step = run(s, pos, neg, rel, True, max_length - len(path))
        if step is None:
            step = run(s, pos, neg, rel, False, max_length - len(path))
        if step is None:
            return None
        path += step
        s = step[-1][1]
    return path


def _to_plan(model: CompiledModel, s0: int, path, expansions: int) -> Plan:
    steps = [model.actions[a] for a, _ in path]
    traj = [model.index.state(s0)] + [model.index.state(s) for _, s in path]
    return Plan(steps, traj, expansions)


def relaxed_reachable(model: CompiledModel, start: frozenset, goal: Iterable[Literal]) -> bool:
    masks = model.index.goal_masks(goal)
    if masks is None:
        return False
    relax = _Relaxation(model, *masks)
    h, _ = relax.ff(model.index.mask(start))
    return h != INF


def execute_plan(p: Plan, simulator: Simulator, start: Optional[frozenset] = None) -> Execution:
    """Run the plan in the simulator, halting at the first divergence."""
    state = p.trajectory[0] if start is None else start
    out = Execution(True, None)
    for i, action in enumerate(p.steps):
        t = simulator.step(state, action)
        out.transitions.append(t)
        if t.next_state != p.trajectory[i + 1]:
            out.completed = False
            out.diverged_at = i
            return out
        state = t.next_state
    return out


def validate_plan(p: Plan, ops: Sequence[Operator], task: Task, goal: Iterable[Literal]) -> bool:
    """True iff the plan reaches ``goal`` under the model's own predictions."""
    from .learner import predict
    from .relcore import holds

    state = p.trajectory[0]
    for i, a in enumerate(p.steps):
        state = predict(ops, state, a, task)
        if state != p.trajectory[i + 1]:
            return False
    return holds(state, goal)


def plan_to_text(p: Plan) -> str:
    return "".join(str(a) + "\n" for a in p.steps)


def parse_plan_text(text: str) -> list[GroundAction]:
    out = []
    for line in text.splitlines():
        line = line.split(";", 1)[0].strip()
        if not line:
            continue
        parts = line.strip("()").lower().split()
        out.append(GroundAction(parts[0], tuple(parts[1:])))
    return out
