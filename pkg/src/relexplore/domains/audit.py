"""Exhaustive audits of a domain over the reachable states of one task.

Used to check authored domains: a literal over an operator's parameters
that holds in every reachable state where the operator applies can never be
refuted by data, so it has to be part of the stated preconditions.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from ..relcore import Literal, Operator, Task, compile_model
from ..relcore.grounding import iter_bits


def reachable_states(task: Task, limit: int = 2_000_000) -> list[int]:
    """Bitmask states reachable from the task's initial state (BFS order)."""
    model = compile_model(task.domain.operators, task, ambiguity="noop")
    s0 = model.index.mask(task.init)
    seen = {s0}
    queue = deque([s0])
    order = []
    while queue:
        s = queue.popleft()
        order.append(s)
        if len(order) > limit:
            raise RuntimeError(f"more than {limit} reachable states")
        for g in model.ground_ops:
            if s & g.pre == g.pre and not s & g.neg:
                ns = (s & ~g.dele) | g.add
                if ns not in seen:
                    seen.add(ns)
                    queue.append(ns)
    return order


@dataclass
class OperatorAudit:
    operator: str
    applications: int = 0
    # lifted positive literals true in every reachable state where it applies
    always_true: set = field(default_factory=set)
    unstated: set = field(default_factory=set)  # always_true minus stated preconditions
    # the observed effects differ from the stated ones in some application
    partial_effects: bool = False


def _lift(atom: Literal, inverse: dict[str, list[str]]):
    choices = [inverse.get(a) for a in atom.args]
    if any(c is None for c in choices):
        return []
    out = [()]
    for c in choices:
        out = [p + (v,) for p in out for v in c]
    return [Literal(atom.predicate, args, True) for args in out]


def audit_operators(task: Task, states: Optional[list[int]] = None) -> dict[str, OperatorAudit]:
    states = reachable_states(task) if states is None else states
    model = compile_model(task.domain.operators, task, ambiguity="noop")
    atoms = model.index.atoms
    audits = {op.name: OperatorAudit(op.name) for op in task.domain.operators}
    for s in states:
        for g in model.ground_ops:
            if not (s & g.pre == g.pre and not s & g.neg):
                continue
            a = audits[g.op.name]
            a.applications += 1
            ns = (s & ~g.dele) | g.add
            if ns & ~s != g.add or s & ~ns != g.dele:
                a.partial_effects = True
            binding = dict(g.binding)
            # repeated objects are skipped: they lift ambiguously
            if len(set(binding.values())) < len(binding):
                continue
            inverse = {o: [v] for v, o in binding.items()}
            lifted = set()
            for i in iter_bits(s):
                lifted.update(_lift(atoms[i], inverse))
            if a.applications == 1:
                a.always_true = lifted
            else:
                a.always_true &= lifted
    for op in task.domain.operators:
        a = audits[op.name]
        a.unstated = a.always_true - {l for l in op.preconditions if l.positive}
    return audits
