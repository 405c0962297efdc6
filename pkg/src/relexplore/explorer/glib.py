"""Goal babbling with lifted goals of at most two literals (GLIB_L2)."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from ..planner import Plan, SearchBudget, plan
from ..relcore import Domain, GroundAction, Literal, Task
from .base import ExplorationPolicy


@dataclass(frozen=True)
class GoalActionPair:
    goal: tuple[Literal, ...]  # lifted, positive
    action: str
    action_args: tuple[str, ...]  # variables; goal variables or fresh ones
    types: tuple[tuple[str, str], ...]  # variable -> type, in numbering order

    @property
    def key(self) -> tuple:
        return canonical_key(self.goal, self.action, self.action_args)


def canonical_key(goal: Sequence[Literal], action: str, action_args: Sequence[str]) -> tuple:
    """Renaming-invariant form: variables numbered by first appearance,
    minimised over the order of the goal literals."""
    best = None
    for order in itertools.permutations(goal):
        ren: dict[str, str] = {}
        for lit in order:
            for a in lit.args:
                ren.setdefault(a, f"?g{len(ren)}")
        for a in action_args:
            ren.setdefault(a, f"?g{len(ren)}")
        lits = tuple(sorted(l.substitute(ren) for l in order))
        key = (lits, action, tuple(ren[a] for a in action_args))
        if best is None or key < best:
            best = key
    return best


def _goals(domain: Domain, max_literals: int):
    """Canonical lifted goals; each literal has distinct arguments."""
    preds = sorted(domain.predicates.values(), key=lambda p: p.name)
    seen = set()
    out = []

    def emit(lits, types):
        key = canonical_key(lits, "", ())
        if key not in seen:
            seen.add(key)
            out.append((tuple(lits), dict(types)))

    for p in preds:
        args = tuple(f"?v{i}" for i in range(p.arity))
        emit([Literal(p.name, args)], zip(args, p.types))
    if max_literals < 2:
        return out
    for p1, p2 in itertools.combinations_with_replacement(preds, 2):
        a1 = tuple(f"?v{i}" for i in range(p1.arity))
        types1 = dict(zip(a1, p1.types))
        # each argument of the second literal: a shared variable or a fresh one
        pools = []
        for j, t in enumerate(p2.types):
            pools.append([v for v in a1 if types1[v] == t] + [f"?w{j}"])
        for combo in itertools.product(*pools):
            if len(set(combo)) < len(combo):
                continue
            l1, l2 = Literal(p1.name, a1), Literal(p2.name, combo)
            if l1 == l2:
                continue
            types = dict(types1)
            types.update((v, t) for v, t in zip(combo, p2.types) if v not in types)
            emit([l1, l2], types)
    return out


@lru_cache(maxsize=8)
def goal_action_pairs(domain: Domain, max_literals: int = 2) -> tuple[GoalActionPair, ...]:
    """Every canonical (goal, action) pair; action arguments bind injectively
    to goal variables of the same type or to fresh variables."""
    pairs = []
    seen = set()
    for lits, types in _goals(domain, max_literals):
        for name in sorted(domain.actions):
            schema = domain.actions[name]
            pools = []
            for j, (_, t) in enumerate(schema.parameters):
                pools.append([v for v in types if types[v] == t] + [f"?f{j}"])
            for combo in itertools.product(*pools):
                if len(set(combo)) < len(combo):
                    continue
                key = canonical_key(lits, name, combo)
                if key in seen:
                    continue
                seen.add(key)
                all_types = dict(types)
                all_types.update((v, t) for v, (_, t) in zip(combo, schema.parameters)
                                 if v not in all_types)
                pairs.append(GoalActionPair(lits, name, combo, tuple(sorted(all_types.items()))))
    pairs.sort(key=lambda p: p.key)
    return tuple(pairs)


class Exhausted(Exception):
    pass


class NoveltyStore:
    """Pairs handed out so far in one run; sampling is without replacement."""

    def __init__(self, pairs: Sequence[GoalActionPair]):
        self.pairs = pairs
        self._order: Optional[list[int]] = None
        self.used: set = set()

    def __len__(self):
        return len(self.used)

    def __contains__(self, pair: GoalActionPair) -> bool:
        return pair.key in self.used

    def remaining(self) -> int:
        return len(self.pairs) - len(self.used)

    def sample(self, rng: random.Random) -> GoalActionPair:
        # a lazily drawn random permutation gives uniform sampling without replacement
        if self._order is None:
            self._order = list(range(len(self.pairs)))
            self._next = 0
        while self._next < len(self._order):
            i = self._next
            j = rng.randrange(i, len(self._order))
            self._order[i], self._order[j] = self._order[j], self._order[i]
            self._next += 1
            pair = self.pairs[self._order[i]]
            if pair.key not in self.used:
                self.used.add(pair.key)
                return pair
        raise Exhausted


def glib_sample(store: NoveltyStore, rng: random.Random) -> GoalActionPair:
    """Draw a pair not handed out before; raises :class:`Exhausted`."""
    return store.sample(rng)


def ground_pair(pair: GoalActionPair, task: Task, rng: random.Random):
    """Random injective grounding of the pair; None if the task lacks objects."""
    used: set = set()
    sub = {}
    for v, t in pair.types:
        pool = [o for o in task.objects_of_type(t) if o not in used]
        if not pool:
            return None
        sub[v] = pool[rng.randrange(len(pool))]
        used.add(sub[v])
    goal = frozenset(l.substitute(sub) for l in pair.goal)
    return goal, GroundAction(pair.action, tuple(sub[a] for a in pair.action_args))


class GlibPolicy(ExplorationPolicy):
    """Babble a novel lifted goal, plan to it with the learned model, run the
    plan, then take the paired action.  After ``attempts`` failed babbles a
    random action is taken; once every pair is used, actions stay random."""

    name = "glib_l2"

    def __init__(self, rng: random.Random, domain: Domain, attempts: int = 10,
                 budget: SearchBudget = SearchBudget(max_expansions=200, max_length=40),
                 max_literals: int = 2):
        super().__init__(rng)
        self.store = NoveltyStore(goal_action_pairs(domain, max_literals))
        self.attempts = attempts
        self.budget = budget
        self.exhausted = False
        self._plan: Optional[Plan] = None
        self._pos = 0
        self._follow: Optional[GroundAction] = None

    def start_episode(self, task, state):
        super().start_episode(task, state)
        self._abort()

    def _abort(self):
        self._plan, self._pos, self._follow = None, 0, None

    def choose(self, state):
        if self._plan is not None:
            if self._pos < len(self._plan):
                self._pos += 1
                self.note(stage="plan", step=self._pos, plan_length=len(self._plan))
                return self._plan.steps[self._pos - 1]
            follow = self._follow
            self._abort()
            self.note(stage="follow")
            return follow
        if not self.exhausted:
            for i in range(self.attempts):
                try:
                    pair = glib_sample(self.store, self.rng)
                except Exhausted:
                    self.exhausted = True
                    break
                grounded = ground_pair(pair, self.task, self.rng)
                if grounded is None:
                    continue
                goal, follow = grounded
                p = plan(self.ops, self.task, state, goal, self.budget, self.rng)
                if p is None:
                    continue
                self.note(goal=sorted(str(l) for l in goal), babbles=i + 1)
                self._plan, self._pos, self._follow = p, 0, follow
                return self.choose(state)
            self.note(babbles=self.attempts)
        return self.random_action(state)

    def observe(self, transition):
        if self._plan is not None and 0 < self._pos <= len(self._plan):
            if transition.next_state != self._plan.trajectory[self._pos]:
                self.note(diverged_at=self._pos - 1)
                self._abort()
