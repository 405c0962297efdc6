"""Oracle guidance toward transitions that fix learned preconditions.

A learned operator is compared with the true operator that has the same
lifted effects.  Literals only the learned side requires are *stronger*;
literals only the true side requires are *weaker*.  Goals that satisfy one
side while violating some of those literals elicit a transition the learned
model mispredicts.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from ..learner import canonicalize, operator_signature
from ..planner import Plan, SearchBudget, plan, relaxed_reachable
from ..relcore import GroundAction, Literal, Operator, Task, compile_model
from ..simulator import Signal
from .base import ExplorationPolicy


class UnmatchedOperatorError(ValueError):
    pass


@dataclass(frozen=True)
class PreconditionDiff:
    operator: str  # learned operator name
    truth: str  # matched ground-truth operator name
    stronger: frozenset  # canonical literals only the learned operator requires
    weaker: frozenset  # canonical literals only the true operator requires

    @property
    def dissonance(self) -> int:
        return len(self.stronger) + len(self.weaker)


def precondition_diff(learned: Operator, gt: Operator) -> PreconditionDiff:
    if operator_signature(learned) != operator_signature(gt):
        raise UnmatchedOperatorError(f"{learned.name} and {gt.name} have different effects")
    lp = canonicalize(learned).preconditions
    gp = canonicalize(gt).preconditions
    return PreconditionDiff(learned.name, gt.name, frozenset(lp - gp), frozenset(gp - lp))


def match_operators(learned: Sequence[Operator], gt: Sequence[Operator]) -> list[tuple[Operator, Operator]]:
    """Pair each learned operator with the true one sharing its effects."""
    by_sig = {operator_signature(g): g for g in gt}
    out = []
    for op in learned:
        g = by_sig.get(operator_signature(op))
        if g is None:
            raise UnmatchedOperatorError(f"learned operator {op.name} matches no true operator")
        out.append((op, g))
    return out


def diffs(learned: Sequence[Operator], gt: Sequence[Operator]) -> list[PreconditionDiff]:
    return [precondition_diff(l, g) for l, g in match_operators(learned, gt)]


def total_dissonance(learned: Sequence[Operator], gt: Sequence[Operator]) -> int:
    return sum(d.dissonance for d in diffs(learned, gt))


@dataclass(frozen=True)
class DissonantGoal:
    operator: str
    goal: frozenset  # ground literals
    action: GroundAction
    violated: int
    case: str  # "stronger" or "weaker"


def _consistent(lits: frozenset) -> bool:
    return not any(l.negate() in lits for l in lits)


def dissonant_goals(diff: PreconditionDiff, gt: Operator, learned: Operator, task: Task,
                    rng: random.Random, attempted=frozenset(), max_k: int = 3) -> list[DissonantGoal]:
    """Ranked ground goals for one operator: more violated literals first,
    ties in random order, attempted goals left out."""
    op = canonicalize(learned)
    gpre = canonicalize(gt).preconditions
    families = []
    if diff.stronger:
        families.append(("stronger", gpre, sorted(diff.stronger)))
    if diff.weaker:
        families.append(("weaker", op.preconditions, sorted(diff.weaker)))
    pools = [task.objects_of_type(t) for _, t in op.parameters]
    names = [v for v, _ in op.parameters]
    buckets: dict[int, list[DissonantGoal]] = {}
    for combo in itertools.product(*pools):
        sub = dict(zip(names, combo))
        action = op.ground_action(sub)
        for case, base, lits in families:
            for k in range(min(max_k, len(lits)), 0, -1):
                for subset in itertools.combinations(lits, k):
                    goal = frozenset(l.substitute(sub) for l in base)
                    goal |= {l.negate().substitute(sub) for l in subset}
                    if not _consistent(goal):
                        continue
                    g = DissonantGoal(learned.name, goal, action, k, case)
                    if (g.operator, g.goal) in attempted:
                        continue
                    buckets.setdefault(k, []).append(g)
    out = []
    for k in sorted(buckets, reverse=True):
        group = buckets[k]
        rng.shuffle(group)
        out.extend(group)
    return out


class PrecondTargetingPolicy(ExplorationPolicy):
    """Plan (with the true operators) to a dissonant goal, apply the target
    operator, then ask for a reset.  Operators whose goals cannot be reached
    from the current state are deferred until the episode ends; when every
    dissonant operator is deferred the policy acts at random."""

    name = "oracle_pt"

    def __init__(self, rng: random.Random, gt_ops: Sequence[Operator], horizon: int,
                 budget: SearchBudget = SearchBudget(max_expansions=5000),
                 max_plans: int = 5, max_checks: int = 400, max_k: int = 3):
        super().__init__(rng)
        self.gt_ops = tuple(gt_ops)
        self.horizon = horizon
        self.budget = budget
        self.max_plans = max_plans
        self.max_checks = max_checks
        self.max_k = max_k
        self.attempted: set = set()
        self.converged = False
        self._queue: list[GroundAction] = []
        self._target: Optional[DissonantGoal] = None
        self._deferred: set = set()
        self._used = 0
        self._reset_next = False

    def start_episode(self, task, state):
        super().start_episode(task, state)
        self._queue, self._target, self._reset_next = [], None, False
        self._deferred = set()
        self._used = 0

    def observe(self, transition):
        self._used += 1

    def choose(self, state):
        if self._queue:
            self.note(stage="plan", remaining=len(self._queue))
            return self._queue.pop(0)
        if self._target is not None:
            target, self._target = self._target, None
            self.attempted.add((target.operator, target.goal))
            self._reset_next = True
            self.note(stage="target", operator=target.operator, case=target.case,
                      violated=target.violated)
            return target.action
        if self._reset_next:
            self._reset_next = False
            return Signal.RESET
        ds = diffs(self.ops, self.gt_ops)
        total = sum(d.dissonance for d in ds)
        self.note(dissonance=total)
        if total == 0:
            self.converged = True
            return Signal.CONVERGED
        room = self.horizon - 1 - self._used
        if room >= 0:
            found = self._find(state, ds, room)
            if found is not None:
                goal, p = found
                self._queue = list(p.steps)
                self._target = goal
                self.note(goal=sorted(str(l) for l in goal.goal), plan_length=len(p))
                return self.choose(state)
        return self.random_action(state)

    def _find(self, state, ds, room):
        learned = {op.name: op for op in self.ops}
        truth = {g.name: g for g in self.gt_ops}
        model = compile_model(self.gt_ops, self.task)
        budget = SearchBudget(self.budget.max_expansions, max(1, room), self.budget.time_limit)
        while True:
            open_ = [d for d in ds if d.dissonance > 0 and d.operator not in self._deferred]
            if not open_:
                return None
            d = open_[self.rng.randrange(len(open_))]
            goals = dissonant_goals(d, truth[d.truth], learned[d.operator], self.task,
                                    self.rng, self.attempted, self.max_k)
            plans = 0
            for g in goals[:self.max_checks]:
                if not relaxed_reachable(model, state, g.goal):
                    continue
                p = plan(self.gt_ops, self.task, state, g.goal, budget, self.rng, model=model)
                if p is not None and len(p) <= room:
                    return g, p
                plans += 1
                if plans >= self.max_plans:
                    break
            self._deferred.add(d.operator)
            self.note(deferred=sorted(self._deferred))
