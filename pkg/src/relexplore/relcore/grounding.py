"""Bitmask compilation of operator sets over a task.

Atoms are numbered in sorted order; a state is an ``int`` whose bit ``i`` is
set iff atom ``i`` holds.  Compiled models back the planner, the simulator
and the mismatch scans of the exploration oracles.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Optional

from .structs import GroundAction, Literal, Operator, Task


class AtomIndex:
    def __init__(self, task: Task):
        self.atoms = task.ground_atoms
        self.index = {a: i for i, a in enumerate(self.atoms)}

    def __len__(self):
        return len(self.atoms)

    def mask(self, atoms: Iterable[Literal]) -> int:
        m = 0
        for a in atoms:
            m |= 1 << self.index[a]
        return m

    def goal_masks(self, literals: Iterable[Literal]) -> Optional[tuple[int, int]]:
        """(positive mask, negative mask); None if a positive literal is ill-typed."""
        pos = neg = 0
        for lit in literals:
            i = self.index.get(lit.atom)
            if i is None:
                if lit.positive:
                    return None
                continue
            if lit.positive:
                pos |= 1 << i
            else:
                neg |= 1 << i
        return pos, neg

    def state(self, mask: int) -> frozenset:
        atoms = self.atoms
        out = []
        while mask:
            low = mask & -mask
            out.append(atoms[low.bit_length() - 1])
            mask ^= low
        return frozenset(out)


@lru_cache(maxsize=32)
def atom_index(task: Task) -> AtomIndex:
    return AtomIndex(task)


class GroundOp(NamedTuple):
    op: Operator
    binding: tuple[tuple[str, str], ...]
    action: int
    pre: int
    neg: int
    add: int
    dele: int
    size: int  # number of precondition literals

    def applicable(self, state: int) -> bool:
        return state & self.pre == self.pre and not state & self.neg

    def apply(self, state: int) -> int:
        return (state & ~self.dele) | self.add


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CompiledModel:
    """An operator set grounded over one task.

    ``ambiguity`` selects what happens when several groundings for the same
    action are applicable: ``"noop"`` (simulator semantics) or ``"largest"``
    (learned-model semantics: the grounding with most preconditions wins,
    ties broken by operator name).
    """

    def __init__(self, ops: Iterable[Operator], task: Task, ambiguity: str = "largest"):
        self.task = task
        self.ops = tuple(sorted(ops, key=lambda o: o.name))
        self.ambiguity = ambiguity
        self.index = atom_index(task)
        self.actions: tuple[GroundAction, ...] = task.ground_actions
        self.action_index = {a: i for i, a in enumerate(self.actions)}
        self.by_action: list[list[GroundOp]] = [[] for _ in self.actions]
        self.ground_ops: list[GroundOp] = []
        for op in self.ops:
            for g in self._ground(op):
                self.by_action[g.action].append(g)
                self.ground_ops.append(g)
        for lst in self.by_action:
            lst.sort(key=lambda g: (-g.size, g.op.name))

    def _ground(self, op: Operator):
        idx = self.index.index
        schema = self.task.domain.actions.get(op.action)
        if schema is None:
            return
        extra = op.extra_parameters
        extra_pools = [self.task.objects_of_type(t) for _, t in extra]
        for i, act in enumerate(self.actions):
            if act.name != op.action:
                continue
            base = dict(zip(op.action_args, act.args))
            if any(not self._type_ok(base[v], op.param_types[v]) for v in op.action_args):
                continue
            for combo in itertools.product(*extra_pools):
                sub = dict(base)
                sub.update(zip((v for v, _ in extra), combo))
                pre = neg = add = dele = 0
                ok = True
                for lit in op.preconditions:
                    j = idx.get(lit.atom.substitute(sub))
                    if j is None:
                        if lit.positive:
                            ok = False
                            break
                        continue
                    if lit.positive:
                        pre |= 1 << j
                    else:
                        neg |= 1 << j
                if not ok or pre & neg:
                    continue
                for lit in op.add_effects:
                    j = idx.get(lit.substitute(sub))
                    if j is None:
                        ok = False
                        break
                    add |= 1 << j
                for lit in op.delete_effects:
                    j = idx.get(lit.substitute(sub))
                    if j is not None:
                        dele |= 1 << j
                if not ok:
                    continue
                yield GroundOp(op, tuple(sorted(sub.items())), i, pre, neg, add, dele,
                               len(op.preconditions))

    @cached_property
    def adders(self) -> dict[int, list[int]]:
        """Atom id -> positions in ``ground_ops`` of the operators adding it."""
        out: dict[int, list[int]] = {}
        for j, g in enumerate(self.ground_ops):
            for i in iter_bits(g.add):
                out.setdefault(i, []).append(j)
        return out

    @cached_property
    def deleters(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for j, g in enumerate(self.ground_ops):
            for i in iter_bits(g.dele):
                out.setdefault(i, []).append(j)
        return out

    def _type_ok(self, obj: str, t: str) -> bool:
        ot = self.task.objects.get(obj)
        return ot is not None and self.task.domain.is_subtype(ot, t)

    def choose(self, state: int, action: int) -> tuple[Optional[GroundOp], int]:
        """The grounding that fires for ``action`` and the number applicable."""
        chosen = None
        n = 0
        for g in self.by_action[action]:
            if state & g.pre == g.pre and not state & g.neg:
                n += 1
                if chosen is None:
                    chosen = g
        if n > 1 and self.ambiguity == "noop":
            return None, n
        return chosen, n

    def successor(self, state: int, action: int) -> int:
        g, _ = self.choose(state, action)
        return state if g is None else (state & ~g.dele) | g.add

    def applicable_ops(self, state: int) -> list[GroundOp]:
        out = []
        for i, lst in enumerate(self.by_action):
            if lst:
                g, _ = self.choose(state, i)
                if g is not None:
                    out.append(g)
        return out


@lru_cache(maxsize=64)
def _compiled(ops: frozenset, task: Task, ambiguity: str) -> CompiledModel:
    return CompiledModel(ops, task, ambiguity)


def compile_model(ops: Iterable[Operator], task: Task, ambiguity: str = "largest") -> CompiledModel:
    return _compiled(frozenset(ops), task, ambiguity)
