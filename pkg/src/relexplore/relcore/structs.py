"""Relational vocabulary shared by every other module.

Terms are plain strings; a term starting with ``?`` is a variable, anything
else is an object.  States are frozensets of positive ground literals under
the closed-world assumption.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional


def is_variable(term: str) -> bool:
    return term.startswith("?")


class Literal(NamedTuple):
    predicate: str
    args: tuple[str, ...]
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.predicate, self.args, not self.positive)

    @property
    def atom(self) -> "Literal":
        """The positive literal with the same predicate and arguments."""
        return self if self.positive else Literal(self.predicate, self.args, True)

    @property
    def is_ground(self) -> bool:
        return not any(is_variable(a) for a in self.args)

    def substitute(self, sub: Mapping[str, str]) -> "Literal":
        return Literal(self.predicate, tuple(sub.get(a, a) for a in self.args), self.positive)

    def __str__(self) -> str:
        inner = "(" + " ".join((self.predicate,) + self.args) + ")"
        return inner if self.positive else f"(not {inner})"


def atom(predicate: str, *args: str) -> Literal:
    return Literal(predicate, tuple(args), True)


State = frozenset  # frozenset[Literal], positive ground atoms only


class GroundAction(NamedTuple):
    name: str
    args: tuple[str, ...]

    def __str__(self) -> str:
        return "(" + " ".join((self.name,) + self.args) + ")"


@dataclass(frozen=True)
class PredicateSchema:
    name: str
    types: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.types)


@dataclass(frozen=True)
class ActionSchema:
    name: str
    parameters: tuple[tuple[str, str], ...]  # (variable, type)

    def __post_init__(self):
        names = [v for v, _ in self.parameters]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate parameter in action {self.name}")

    @property
    def arity(self) -> int:
        return len(self.parameters)


@dataclass(frozen=True)
class Operator:
    """A lifted STRIPS operator tied to an action schema.

    ``action_args`` lists the parameters passed to the action, in the
    action's argument order.  The remaining parameters only occur in
    preconditions or effects.
    """

    name: str
    parameters: tuple[tuple[str, str], ...]
    preconditions: frozenset
    add_effects: frozenset
    delete_effects: frozenset
    action: str
    action_args: tuple[str, ...]
    conflict: bool = field(default=False, compare=False)

    def __post_init__(self):
        params = {v for v, _ in self.parameters}
        for lit in itertools.chain(self.preconditions, self.add_effects, self.delete_effects):
            for a in lit.args:
                if is_variable(a) and a not in params:
                    raise ValueError(f"operator {self.name}: variable {a} not a parameter")
        if self.add_effects & self.delete_effects:
            raise ValueError(f"operator {self.name}: add and delete effects overlap")
        if len(set(self.action_args)) != len(self.action_args):
            raise ValueError(f"operator {self.name}: action binding is not injective")
        if not set(self.action_args) <= params:
            raise ValueError(f"operator {self.name}: action argument is not a parameter")

    @cached_property
    def param_types(self) -> dict[str, str]:
        return dict(self.parameters)

    @cached_property
    def extra_parameters(self) -> tuple[tuple[str, str], ...]:
        bound = set(self.action_args)
        return tuple(p for p in self.parameters if p[0] not in bound)

    def ground(self, sub: Mapping[str, str]):
        """Return (preconditions, add, delete) with ``sub`` applied."""
        return (
            frozenset(l.substitute(sub) for l in self.preconditions),
            frozenset(l.substitute(sub) for l in self.add_effects),
            frozenset(l.substitute(sub) for l in self.delete_effects),
        )

    def ground_action(self, sub: Mapping[str, str]) -> GroundAction:
        return GroundAction(self.action, tuple(sub[v] for v in self.action_args))

    def __str__(self) -> str:
        from .pddl import operator_to_pddl

        return operator_to_pddl(self)


@dataclass
class Domain:
    name: str
    types: dict[str, Optional[str]]  # type -> parent (None for roots)
    predicates: dict[str, PredicateSchema]
    actions: dict[str, ActionSchema]
    operators: tuple[Operator, ...] = ()
    requirements: tuple[str, ...] = (":strips", ":typing")

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    def is_subtype(self, t: str, ancestor: str) -> bool:
        while t is not None:
            if t == ancestor:
                return True
            t = self.types.get(t)
        return ancestor == "object"

    def action_schema(self, name: str) -> ActionSchema:
        return self.actions[name]


@dataclass
class Task:
    name: str
    domain: Domain
    objects: dict[str, str]  # object -> type
    init: frozenset
    goal: frozenset

    def __hash__(self):
        return id(self)

    def __eq__(self, other):
        return self is other

    @cached_property
    def _by_type(self) -> dict[str, tuple[str, ...]]:
        out: dict[str, list[str]] = {}
        types = set(self.domain.types) | set(self.objects.values()) | {"object"}
        for t in types:
            out[t] = sorted(o for o, ot in self.objects.items() if self.domain.is_subtype(ot, t))
        return {t: tuple(v) for t, v in out.items()}

    def objects_of_type(self, t: str) -> tuple[str, ...]:
        return self._by_type.get(t, ())

    @cached_property
    def ground_actions(self) -> tuple[GroundAction, ...]:
        return tuple(enumerate_ground_actions(self))

    @cached_property
    def ground_atoms(self) -> tuple[Literal, ...]:
        """Every type-consistent ground atom, sorted."""
        out = []
        for pred in sorted(self.domain.predicates.values(), key=lambda p: p.name):
            pools = [self.objects_of_type(t) for t in pred.types]
            for combo in itertools.product(*pools):
                out.append(Literal(pred.name, combo, True))
        return tuple(out)


def groundings(params: Iterable[tuple[str, str]], task: Task) -> Iterator[dict[str, str]]:
    """All type-consistent substitutions for ``params`` (repeats allowed)."""
    params = list(params)
    pools = [task.objects_of_type(t) for _, t in params]
    names = [v for v, _ in params]
    for combo in itertools.product(*pools):
        yield dict(zip(names, combo))


def enumerate_ground_actions(task: Task) -> list[GroundAction]:
    out = []
    for name in sorted(task.domain.actions):
        schema = task.domain.actions[name]
        pools = [task.objects_of_type(t) for _, t in schema.parameters]
        for combo in itertools.product(*pools):
            out.append(GroundAction(name, combo))
    return out


def holds(state: frozenset, literals: Iterable[Literal]) -> bool:
    """Closed-world conjunction test."""
    for lit in literals:
        if not lit.is_ground:
            raise ValueError(f"non-ground literal {lit}")
        if lit.positive:
            if lit not in state:
                return False
        elif lit.atom in state:
            return False
    return True
