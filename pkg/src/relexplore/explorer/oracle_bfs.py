"""Oracle exploration that seeks states where the learned model is wrong.

Each step runs three stages:

1. if some action in the current state is mispredicted, take one at random;
2. otherwise search breadth-first under the true model, at most two steps
   deep and sampling at most ``fanout`` successors per expanded state, for a
   state with a mispredicted action and take the first step toward it;
3. otherwise act at random.
"""
from __future__ import annotations

import random
from collections import deque
from functools import lru_cache
from typing import Optional

from ..relcore import CompiledModel, Task, compile_model
from ..relcore.grounding import iter_bits
from .base import ExplorationPolicy


def _fires(lst, state: int):
    for g in lst:
        if state & g.pre == g.pre and not state & g.neg:
            return g
    return None


def _next(lst, state: int) -> int:
    g = _fires(lst, state)
    return state if g is None else (state & ~g.dele) | g.add


class MismatchScanner:
    """Compares a learned model with the true one inside a task.

    Only actions whose groundings differ between the models can ever be
    mispredicted; an index from atoms to those actions lets a successor's
    mismatches be derived from its parent's.
    """

    def __init__(self, learned: CompiledModel, truth: CompiledModel):
        self.learned, self.truth = learned, truth
        n = len(truth.actions)
        self.diff = []
        for a in range(n):
            lk = [(g.pre, g.neg, g.add, g.dele) for g in learned.by_action[a]]
            tk = [(g.pre, g.neg, g.add, g.dele) for g in truth.by_action[a]]
            if lk != tk:
                self.diff.append(a)
        self.touch: dict[int, list[int]] = {}
        self.relevant: dict[int, int] = {}
        for a in self.diff:
            mask = 0
            for g in learned.by_action[a] + truth.by_action[a]:
                mask |= g.pre | g.neg | g.add | g.dele
            self.relevant[a] = mask
            for i in iter_bits(mask):
                self.touch.setdefault(i, []).append(a)
        # the outcome only depends on the relevant atoms of the action
        self._memo: dict[tuple[int, int], bool] = {}
        self._affected: dict[int, tuple[int, ...]] = {}
        self.gt_touch: dict[int, list[int]] = {}
        self.gt_actions = [a for a in range(n) if truth.by_action[a]]
        for a in self.gt_actions:
            mask = 0
            for g in truth.by_action[a]:
                mask |= g.pre | g.neg
            for i in iter_bits(mask):
                self.gt_touch.setdefault(i, []).append(a)

    def mismatch(self, state: int, a: int) -> bool:
        key = (a, state & self.relevant[a])
        hit = self._memo.get(key)
        if hit is None:
            s = key[1]
            hit = _next(self.learned.by_action[a], s) != _next(self.truth.by_action[a], s)
            self._memo[key] = hit
        return hit

    def mismatches(self, state: int) -> list[int]:
        return [a for a in self.diff if self.mismatch(state, a)]

    def affected(self, g) -> tuple[int, ...]:
        """Mispredictable actions whose outcome ground op ``g`` can change."""
        out = self._affected.get(id(g))
        if out is None:
            seen: dict[int, None] = {}
            for i in iter_bits(g.add | g.dele):
                for a in self.touch.get(i, ()):
                    seen[a] = None
            out = self._affected[id(g)] = tuple(seen)
        return out

    def applicable(self, state: int) -> list[int]:
        """Actions that change the state under the true model."""
        return [a for a in self.gt_actions if _fires(self.truth.by_action[a], state) is not None]

    def applicable_after(self, parent: int, parent_app: list[int], child: int) -> list[int]:
        touched = set()
        for i in iter_bits(parent ^ child):
            touched.update(self.gt_touch.get(i, ()))
        keep = [a for a in parent_app if a not in touched]
        keep += [a for a in touched if _fires(self.truth.by_action[a], child) is not None]
        keep.sort()
        return keep


@lru_cache(maxsize=16)
def _scanner(ops: frozenset, task: Task) -> MismatchScanner:
    return MismatchScanner(compile_model(ops, task),
                           compile_model(task.domain.operators, task, ambiguity="noop"))


def mismatch_scanner(ops, task: Task) -> MismatchScanner:
    return _scanner(frozenset(ops), task)


def bfs_mismatch(scanner: MismatchScanner, state: int, rng: random.Random,
                 depth: int = 2, fanout: int = 50) -> Optional[tuple[int, ...]]:
    """Action path (under the true model) to the first state found with a
    mismatch; ``()`` if the start state has one, None if none is found."""
    if scanner.mismatches(state):
        return ()
    truth = scanner.truth
    mismatch = scanner.mismatch
    frontier = deque([(state, scanner.applicable(state), ())])
    seen = {state}
    while frontier:
        s, app, path = frontier.popleft()
        if len(path) >= depth:
            continue
        picks = rng.sample(app, min(fanout, len(app)))
        for a in picks:
            g = _fires(truth.by_action[a], s)
            child = (s & ~g.dele) | g.add
            if child in seen:
                continue
            seen.add(child)
            if any(mismatch(child, b) for b in scanner.affected(g)):
                return path + (a,)
            if len(path) + 1 < depth:
                frontier.append((child, scanner.applicable_after(s, app, child), path + (a,)))
    return None


class OracleBFSPolicy(ExplorationPolicy):
    name = "oracle_bfs"

    def __init__(self, rng: random.Random, depth: int = 2, fanout: int = 50):
        super().__init__(rng)
        self.depth = depth
        self.fanout = fanout

    def choose(self, state):
        scanner = mismatch_scanner(self.ops, self.task)
        mask = scanner.truth.index.mask(state)
        here = scanner.mismatches(mask)
        if here:
            self.note(stage="mismatch", candidates=len(here))
            return scanner.truth.actions[here[self.rng.randrange(len(here))]]
        path = bfs_mismatch(scanner, mask, self.rng, self.depth, self.fanout)
        if path:
            self.note(stage="bfs", distance=len(path))
            return scanner.truth.actions[path[0]]
        return self.random_action(state)
