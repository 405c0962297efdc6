"""Operator induction from deterministic transition data.

Transitions are grouped by action and canonical lifted effects.  Each group
yields one operator whose preconditions are the intersection of the lifted
contexts of its members, then strengthened with negative literals until no
recorded counterexample (a no-op or a different outcome of the same action)
would still fire it.
"""
from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .relcore import Domain, GroundAction, Literal, Operator, Task, compile_model, is_variable
from .simulator import Transition


def var(i: int) -> str:
    return f"?x{i}"


@dataclass(frozen=True)
class LiftedTransition:
    transition: Transition
    binding: tuple[tuple[str, str], ...]  # variable -> object, parameter order
    types: tuple[tuple[str, str], ...]  # variable -> type
    lifted_context: frozenset
    lifted_add: frozenset
    lifted_delete: frozenset

    @property
    def signature(self) -> tuple:
        return effect_signature(self.transition.action.name, self.lifted_add, self.lifted_delete)

    @property
    def is_noop(self) -> bool:
        return not self.lifted_add and not self.lifted_delete

    def unlift(self) -> Transition:
        sub = dict(self.binding)
        add = {l.substitute(sub) for l in self.lifted_add}
        dele = {l.substitute(sub) for l in self.lifted_delete}
        s = self.transition.state
        return Transition(s, self.transition.action, (s - dele) | add)


def effect_signature(action: str, add: Iterable[Literal], delete: Iterable[Literal]) -> tuple:
    return (action, tuple(sorted(add)), tuple(sorted(delete)))


def _lift_effects(action_vars: dict, extra: Sequence[str], add, dele):
    sub = dict(action_vars)
    sub.update((o, var(len(action_vars) + i)) for i, o in enumerate(extra))
    return (frozenset(l.substitute(sub) for l in add),
            frozenset(l.substitute(sub) for l in dele))


_LIFT_CACHE: "weakref.WeakKeyDictionary[Transition, LiftedTransition]" = weakref.WeakKeyDictionary()


def lift_transition(t: Transition, domain: Domain) -> LiftedTransition:
    """Canonical lifting of a transition.

    Action arguments become ``?x0..?xk`` in order.  Objects that only appear
    in the effects get the following variables, ordered so that the lifted
    effects are lexicographically smallest.
    """
    cached = _LIFT_CACHE.get(t)
    if cached is not None:
        return cached
    schema = domain.actions[t.action.name]
    obj_to_var: dict[str, str] = {}
    binding: list[tuple[str, str]] = []
    types: list[tuple[str, str]] = []
    for i, (obj, (_, ptype)) in enumerate(zip(t.action.args, schema.parameters)):
        v = var(i)
        obj_to_var.setdefault(obj, v)
        binding.append((v, obj))
        types.append((v, ptype))
    add, dele = t.added, t.deleted
    extra = sorted({a for l in itertools.chain(add, dele) for a in l.args} - set(obj_to_var))
    if extra:
        best = None
        for perm in itertools.permutations(extra):
            la, ld = _lift_effects(obj_to_var, perm, add, dele)
            key = (sorted(la), sorted(ld))
            if best is None or key < best[0]:
                best = (key, perm, la, ld)
        _, order, lifted_add, lifted_delete = best
        for j, obj in enumerate(order):
            v = var(len(binding))
            obj_to_var[obj] = v
            binding.append((v, obj))
            types.append((v, _object_type(obj, add | dele, domain)))
    else:
        lifted_add, lifted_delete = _lift_effects(obj_to_var, (), add, dele)
    lt = LiftedTransition(
        t, tuple(binding), tuple(types),
        _lift_context(t.state, binding), lifted_add, lifted_delete)
    _LIFT_CACHE[t] = lt
    return lt


def _object_type(obj: str, atoms, domain: Domain) -> str:
    for l in sorted(atoms):
        for a, ty in zip(l.args, domain.predicates[l.predicate].types):
            if a == obj:
                return ty
    return "object"


def _lift_context(state: frozenset, binding: Sequence[tuple[str, str]]) -> frozenset:
    """All lifted literals over the bound variables that ground into ``state``."""
    vars_of: dict[str, list[str]] = {}
    for v, o in binding:
        vars_of.setdefault(o, []).append(v)
    out = []
    for a in state:
        try:
            choices = [vars_of[o] for o in a.args]
        except KeyError:
            continue
        for combo in itertools.product(*choices):
            out.append(Literal(a.predicate, combo, True))
    return frozenset(out)


@dataclass
class EffectCluster:
    action: str
    signature: tuple
    positives: list[LiftedTransition] = field(default_factory=list)
    negatives: list[LiftedTransition] = field(default_factory=list)

    @property
    def lifted_add(self) -> frozenset:
        return frozenset(self.signature[1])

    @property
    def lifted_delete(self) -> frozenset:
        return frozenset(self.signature[2])


def cluster_by_effects(dataset: Iterable[Transition], domain: Domain) -> list[EffectCluster]:
    by_action: dict[str, list[LiftedTransition]] = {}
    for t in dataset:
        by_action.setdefault(t.action.name, []).append(lift_transition(t, domain))
    clusters = []
    for action in sorted(by_action):
        members = by_action[action]
        sigs: dict[tuple, EffectCluster] = {}
        for lt in members:
            if lt.is_noop:
                continue
            sig = lt.signature
            if sig not in sigs:
                sigs[sig] = EffectCluster(action, sig)
            sigs[sig].positives.append(lt)
        for sig in sorted(sigs):
            c = sigs[sig]
            c.negatives = [lt for lt in members if lt.is_noop or lt.signature != sig]
            clusters.append(c)
    return clusters


def _ground(lit: Literal, sub: Mapping[str, str]) -> Literal:
    return Literal(lit.predicate, tuple(sub.get(a, a) for a in lit.args), True)


def _holds_lifted(lit: Literal, sub: Mapping[str, str], state: frozenset) -> bool:
    return (_ground(lit, sub) in state) == lit.positive


def _fires(pre: Iterable[Literal], lt: LiftedTransition, nparams: int,
           extra_types: Sequence[tuple[str, str]]) -> Optional[dict]:
    """A binding under which ``pre`` holds in the member's state, or None.

    Action variables are fixed by the member's action; other parameters are
    searched over objects of the state.
    """
    sub = dict(lt.binding[:len(lt.transition.action.args)])
    state = lt.transition.state
    if not extra_types:
        return sub if all(_holds_lifted(l, sub, state) for l in pre) else None
    objs = sorted({a for at in state for a in at.args} | set(lt.transition.action.args))
    for combo in itertools.product(objs, repeat=len(extra_types)):
        s = dict(sub)
        s.update(zip((v for v, _ in extra_types), combo))
        if all(_holds_lifted(l, s, state) for l in pre):
            return s
    return None


def _candidate_atoms(types: Sequence[tuple[str, str]], domain: Domain) -> list[Literal]:
    out = []
    names = [v for v, _ in types]
    vtype = dict(types)
    for pred in sorted(domain.predicates.values(), key=lambda p: p.name):
        pools = []
        for t in pred.types:
            pools.append([v for v in names
                          if domain.is_subtype(vtype[v], t) or domain.is_subtype(t, vtype[v])])
        for combo in itertools.product(*pools):
            out.append(Literal(pred.name, combo, True))
    return out


def induce_preconditions(cluster: EffectCluster, domain: Domain, name: Optional[str] = None) -> Operator:
    if not cluster.positives:
        raise ValueError("cluster has no positive members")
    first = cluster.positives[0]
    types = first.types
    params = {v for v, _ in types}
    nact = len(first.transition.action.args)
    extra_types = types[nact:]
    pre = frozenset.intersection(*(p.lifted_context for p in cluster.positives))
    pre = frozenset(l for l in pre if all(a in params for a in l.args))

    conflict = False
    firing = [(n, b) for n in cluster.negatives
              if (b := _fires(pre, n, len(types), extra_types)) is not None]
    if firing:
        candidates = []
        for a in _candidate_atoms(types, domain):
            neg = a.negate()
            if neg in pre:
                continue
            if all(_ground(a, dict(p.binding)) not in p.transition.state for p in cluster.positives):
                candidates.append(neg)
        while firing:
            best, best_score = None, 0
            for lit in candidates:
                score = sum(1 for n, b in firing if not _holds_lifted(lit, b, n.transition.state))
                if score > best_score:
                    best, best_score = lit, score
            if best is None:
                conflict = True
                break
            pre = pre | {best}
            candidates.remove(best)
            firing = [(n, nb) for n, _ in firing
                      if (nb := _fires(pre, n, len(types), extra_types)) is not None]

    return Operator(
        name or cluster.action,
        tuple(types),
        pre,
        cluster.lifted_add,
        cluster.lifted_delete,
        cluster.action,
        tuple(v for v, _ in types[:nact]),
        conflict,
    )


def learn_operators(dataset: Iterable[Transition], domain: Domain) -> tuple[Operator, ...]:
    clusters = cluster_by_effects(dataset, domain)
    counts: dict[str, int] = {}
    ops = []
    for c in clusters:
        k = counts.get(c.action, 0)
        counts[c.action] = k + 1
        ops.append(induce_preconditions(c, domain, c.action if k == 0 else f"{c.action}--{k}"))
    return tuple(ops)


def canonical_renaming(op: Operator) -> dict[str, str]:
    """Variable renaming that maps ``op`` onto its canonical effect signature."""
    ren = {v: var(i) for i, v in enumerate(op.action_args)}
    extra = [v for v, _ in op.extra_parameters]
    best = None
    for perm in itertools.permutations(extra):
        sub = dict(ren)
        sub.update((v, var(len(ren) + i)) for i, v in enumerate(perm))
        la = frozenset(l.substitute(sub) for l in op.add_effects)
        ld = frozenset(l.substitute(sub) for l in op.delete_effects)
        key = effect_signature(op.action, la, ld)
        if best is None or key < best[0]:
            best = (key, sub)
    return best[1]


def operator_signature(op: Operator) -> tuple:
    """Canonical (action, add, delete) key, comparable with lifted transitions."""
    sub = canonical_renaming(op)
    return effect_signature(op.action,
                            (l.substitute(sub) for l in op.add_effects),
                            (l.substitute(sub) for l in op.delete_effects))


def canonicalize(op: Operator) -> Operator:
    sub = canonical_renaming(op)
    return Operator(
        op.name,
        tuple(sorted(((sub[v], t) for v, t in op.parameters), key=lambda p: int(p[0][2:]))),
        frozenset(l.substitute(sub) for l in op.preconditions),
        frozenset(l.substitute(sub) for l in op.add_effects),
        frozenset(l.substitute(sub) for l in op.delete_effects),
        op.action,
        tuple(sub[v] for v in op.action_args),
        op.conflict,
    )


def _ground_predict(ops: Iterable[Operator], state: frozenset, action: GroundAction):
    applicable = []
    for op in ops:
        if op.action != action.name or len(op.action_args) != len(action.args):
            continue
        base = dict(zip(op.action_args, action.args))
        extra = op.extra_parameters
        pools = [sorted({a for at in state for a in at.args})] * len(extra)
        for combo in itertools.product(*pools):
            sub = dict(base)
            sub.update(zip((v for v, _ in extra), combo))
            if all(_holds_lifted(l, sub, state) for l in op.preconditions):
                applicable.append((op, sub))
    return applicable


def predict(ops: Iterable[Operator], state: frozenset, action: GroundAction,
            task: Optional[Task] = None, detail: bool = False):
    """Next state under a learned model (the state itself when nothing fires).

    With several applicable groundings, the one with most preconditions wins
    (ties by operator name); ``detail=True`` also returns that count.
    """
    if task is not None:
        model = compile_model(ops, task)
        a = model.action_index[action]
        g, n = model.choose(model.index.mask(state), a)
        if g is None:
            nxt = state
        else:
            _, add, dele = g.op.ground(dict(g.binding))
            nxt = (state - dele) | add
        return (nxt, n) if detail else nxt
    applicable = _ground_predict(ops, state, action)
    if not applicable:
        return (state, 0) if detail else state
    applicable.sort(key=lambda p: (-len(p[0].preconditions), p[0].name))
    op, sub = applicable[0]
    _, add, dele = op.ground(sub)
    nxt = (state - dele) | add
    return (nxt, len(applicable)) if detail else nxt


def classify(t: Transition, ops: Sequence[Operator], domain: Domain) -> str:
    """Dataset taxonomy of a transition relative to an operator set.

    ``"type1"``: unseen lifted effects; ``"type2"``: contradicts the model's
    prediction; ``"noop"``: correctly predicted no-op; ``"correct"``
    otherwise.
    """
    lt = lift_transition(t, domain)
    known = {operator_signature(op) for op in ops}
    if not lt.is_noop and lt.signature not in known:
        return "type1"
    if predict(ops, t.state, t.action) != t.next_state:
        return "type2"
    return "noop" if lt.is_noop else "correct"
