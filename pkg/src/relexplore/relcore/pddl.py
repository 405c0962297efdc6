"""Parser and canonical serializer for a small PDDL subset.

Supported requirements are ``:strips``, ``:typing`` and
``:negative-preconditions``.  Every ``:action`` becomes both an action schema
and the ground-truth operator for that action.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .structs import (
    ActionSchema,
    Domain,
    Literal,
    Operator,
    PredicateSchema,
    Task,
    is_variable,
)

SUPPORTED_REQUIREMENTS = {":strips", ":typing", ":negative-preconditions"}


class PDDLError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None, col: Optional[int] = None):
        self.line = line
        self.col = col
        where = f" (line {line}, column {col})" if line is not None else ""
        super().__init__(message + where)


@dataclass
class Token:
    text: str
    line: int
    col: int


class SExpr(list):
    """A parenthesised list that remembers where it started."""

    line = 0
    col = 0


Node = Union[Token, SExpr]

_TOKEN_RE = re.compile(r"\(|\)|[^\s()]+")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split(";", 1)[0]
        for m in _TOKEN_RE.finditer(line):
            tokens.append(Token(m.group(0).lower(), lineno, m.start() + 1))
    return tokens


def _read(text: str) -> SExpr:
    tokens = _tokenize(text)
    if not tokens:
        raise PDDLError("empty input")
    stack: list[SExpr] = []
    root: Optional[SExpr] = None
    for tok in tokens:
        if tok.text == "(":
            node = SExpr()
            node.line, node.col = tok.line, tok.col
            if stack:
                stack[-1].append(node)
            elif root is not None:
                raise PDDLError("unexpected content after top-level expression", tok.line, tok.col)
            else:
                root = node
            stack.append(node)
        elif tok.text == ")":
            if not stack:
                raise PDDLError("unbalanced ')'", tok.line, tok.col)
            stack.pop()
        else:
            if not stack:
                raise PDDLError(f"unexpected token {tok.text!r}", tok.line, tok.col)
            stack[-1].append(tok)
    if stack:
        raise PDDLError("unbalanced '(' opened here", stack[-1].line, stack[-1].col)
    return root


def _where(node: Node) -> tuple[int, int]:
    return node.line, node.col


def _word(node: Node, what: str) -> str:
    if not isinstance(node, Token):
        raise PDDLError(f"expected {what}, found a list", *_where(node))
    return node.text


def _typed_list(nodes: list[Node], default: str = "object") -> list[tuple[str, str, Token]]:
    """Parse ``a b - t c`` into [(a, t), (b, t), (c, object)]."""
    out: list[tuple[str, str, Token]] = []
    pending: list[Token] = []
    i = 0
    while i < len(nodes):
        tok = nodes[i]
        if not isinstance(tok, Token):
            raise PDDLError("nested list in typed list", *_where(tok))
        if tok.text == "-":
            if i + 1 >= len(nodes) or not isinstance(nodes[i + 1], Token):
                raise PDDLError("missing type after '-'", tok.line, tok.col)
            t = nodes[i + 1].text
            out.extend((p.text, t, p) for p in pending)
            pending = []
            i += 2
            continue
        pending.append(tok)
        i += 1
    out.extend((p.text, default, p) for p in pending)
    return out


def _sections(root: SExpr, kind: str) -> tuple[str, list[SExpr]]:
    if len(root) < 2 or not isinstance(root[0], Token) or root[0].text != "define":
        raise PDDLError("expected (define ...)", *_where(root))
    header = root[1]
    if not isinstance(header, SExpr) or len(header) != 2 or _word(header[0], kind) != kind:
        raise PDDLError(f"expected ({kind} <name>)", *_where(header))
    name = _word(header[1], "name")
    sections = []
    for node in root[2:]:
        if not isinstance(node, SExpr) or not node or not isinstance(node[0], Token):
            raise PDDLError("expected a section", *_where(node))
        sections.append(node)
    return name, sections


def _literal(node: Node, predicates: dict[str, PredicateSchema], scope: dict[str, str],
             allow_negative: bool) -> Literal:
    if not isinstance(node, SExpr) or not node:
        raise PDDLError("expected a literal", *_where(node))
    head = _word(node[0], "predicate")
    if head == "not":
        if not allow_negative:
            raise PDDLError("negative literal not allowed here", *_where(node))
        if len(node) != 2:
            raise PDDLError("'not' takes one argument", *_where(node))
        return _literal(node[1], predicates, scope, False).negate()
    if head not in predicates:
        raise PDDLError(f"undeclared predicate {head!r}", *_where(node))
    pred = predicates[head]
    args = tuple(_word(a, "term") for a in node[1:])
    if len(args) != pred.arity:
        raise PDDLError(
            f"arity mismatch for {head!r}: expected {pred.arity}, got {len(args)}", *_where(node))
    for a, tok in zip(args, node[1:]):
        if a not in scope:
            kind = "variable" if is_variable(a) else "object"
            raise PDDLError(f"unknown {kind} {a!r}", *_where(tok))
    return Literal(head, args, True)


def _conjunction(node: Node, predicates, scope, allow_negative) -> list[Literal]:
    if isinstance(node, SExpr) and node and isinstance(node[0], Token) and node[0].text == "and":
        out = []
        for child in node[1:]:
            out.extend(_conjunction(child, predicates, scope, allow_negative))
        return out
    if isinstance(node, SExpr) and not node:
        return []
    return [_literal(node, predicates, scope, allow_negative)]


def _check_types(lit: Literal, node: Node, predicates, scope, domain: Domain):
    pred = predicates[lit.predicate]
    for a, t in zip(lit.args, pred.types):
        if not domain.is_subtype(scope[a], t):
            raise PDDLError(f"type mismatch: {a!r} is {scope[a]!r}, {lit.predicate!r} expects {t!r}",
                            *_where(node))


def parse_domain(text: str) -> Domain:
    root = _read(text)
    name, sections = _sections(root, "domain")
    requirements: list[str] = [":strips"]
    types: dict[str, Optional[str]] = {"object": None}
    predicates: dict[str, PredicateSchema] = {}
    action_nodes: list[SExpr] = []
    for sec in sections:
        key = sec[0].text
        if key == ":requirements":
            requirements = [_word(r, "requirement") for r in sec[1:]]
            for r, tok in zip(requirements, sec[1:]):
                if r not in SUPPORTED_REQUIREMENTS:
                    raise PDDLError(f"unsupported requirement {r}", tok.line, tok.col)
        elif key == ":types":
            for t, parent, tok in _typed_list(list(sec[1:])):
                if t in types and t != "object" and types[t] != parent:
                    raise PDDLError(f"type {t!r} declared with two parents", tok.line, tok.col)
                types[t] = None if t == "object" else parent
            for t, parent in list(types.items()):
                if parent is not None and parent not in types:
                    types[parent] = "object" if parent != "object" else None
        elif key == ":predicates":
            for node in sec[1:]:
                if not isinstance(node, SExpr) or not node:
                    raise PDDLError("expected predicate declaration", *_where(node))
                pname = _word(node[0], "predicate name")
                if pname in predicates:
                    raise PDDLError(f"duplicate predicate {pname!r}", *_where(node))
                params = _typed_list(list(node[1:]))
                for _, t, tok in params:
                    if t not in types:
                        raise PDDLError(f"undeclared type {t!r}", tok.line, tok.col)
                predicates[pname] = PredicateSchema(pname, tuple(t for _, t, _ in params))
        elif key == ":action":
            action_nodes.append(sec)
        else:
            raise PDDLError(f"unsupported section {key}", *_where(sec))

    domain = Domain(name, types, predicates, {}, (), tuple(requirements))
    negative_ok = ":negative-preconditions" in requirements
    operators = []
    for sec in action_nodes:
        aname = _word(sec[1], "action name") if len(sec) > 1 else None
        if aname is None:
            raise PDDLError("action without a name", *_where(sec))
        if aname in domain.actions:
            raise PDDLError(f"duplicate action {aname!r}", *_where(sec))
        fields: dict[str, Node] = {}
        i = 2
        while i < len(sec):
            k = _word(sec[i], "action keyword")
            if i + 1 >= len(sec):
                raise PDDLError(f"missing value for {k}", *_where(sec[i]))
            fields[k] = sec[i + 1]
            i += 2
        params_node = fields.get(":parameters", SExpr())
        if not isinstance(params_node, SExpr):
            raise PDDLError("parameters must be a list", *_where(params_node))
        params = _typed_list(list(params_node))
        for _, t, tok in params:
            if t not in types:
                raise PDDLError(f"undeclared type {t!r}", tok.line, tok.col)
        parameters = tuple((v, t) for v, t, _ in params)
        try:
            schema = ActionSchema(aname, parameters)
        except ValueError as e:
            raise PDDLError(str(e), *_where(sec)) from None
        scope = dict(parameters)
        pre = _conjunction(fields.get(":precondition", SExpr()), predicates, scope, negative_ok)
        eff = _conjunction(fields.get(":effect", SExpr()), predicates, scope, True)
        for lit in pre + eff:
            _check_types(lit, sec, predicates, scope, domain)
        adds = frozenset(l for l in eff if l.positive)
        dels = frozenset(l.atom for l in eff if not l.positive) - adds
        domain.actions[aname] = schema
        operators.append(Operator(aname, parameters, frozenset(pre), adds, dels, aname,
                                  tuple(v for v, _ in parameters)))
    domain.operators = tuple(operators)
    return domain


def parse_problem(text: str, domain: Domain) -> Task:
    root = _read(text)
    name, sections = _sections(root, "problem")
    objects: dict[str, str] = {}
    init_nodes: list[Node] = []
    goal_node: Node = SExpr()
    for sec in sections:
        key = sec[0].text
        if key == ":domain":
            dname = _word(sec[1], "domain name")
            if dname != domain.name:
                raise PDDLError(f"problem is for domain {dname!r}, not {domain.name!r}", *_where(sec))
        elif key == ":objects":
            for o, t, tok in _typed_list(list(sec[1:])):
                if t not in domain.types:
                    raise PDDLError(f"unknown object type {t!r}", tok.line, tok.col)
                if o in objects:
                    raise PDDLError(f"duplicate object {o!r}", tok.line, tok.col)
                objects[o] = t
        elif key == ":init":
            init_nodes = list(sec[1:])
        elif key == ":goal":
            goal_node = sec[1] if len(sec) > 1 else SExpr()
        elif key == ":requirements":
            continue
        else:
            raise PDDLError(f"unsupported section {key}", *_where(sec))
    init = []
    for node in init_nodes:
        lit = _literal(node, domain.predicates, objects, False)
        _check_types(lit, node, domain.predicates, objects, domain)
        init.append(lit)
    goal = _conjunction(goal_node, domain.predicates, objects, True)
    for lit in goal:
        _check_types(lit, goal_node, domain.predicates, objects, domain)
    return Task(name, domain, objects, frozenset(init), frozenset(goal))


# ---------------------------------------------------------------- serializer

def _typed(pairs) -> str:
    return " ".join(f"{v} - {t}" for v, t in pairs)


def _conj(lits, indent: str) -> str:
    lits = sorted(lits, key=lambda l: (l.predicate, l.args, not l.positive))
    if not lits:
        return "(and)"
    body = ("\n" + indent + "     ").join(str(l) for l in lits)
    return f"(and {body})"


def operator_to_pddl(op: Operator, name: Optional[str] = None) -> str:
    effects = list(op.add_effects) + [l.negate() for l in op.delete_effects]
    return (
        f"  (:action {name or op.name}\n"
        f"    :parameters ({_typed(op.parameters)})\n"
        f"    :precondition {_conj(op.preconditions, '    ')}\n"
        f"    :effect {_conj(effects, '    ')})"
    )


def serialize_domain(domain: Domain, operators=None) -> str:
    operators = domain.operators if operators is None else operators
    reqs = set(domain.requirements) | {":strips", ":typing"}
    if any(not l.positive for op in operators for l in op.preconditions):
        reqs.add(":negative-preconditions")
    type_lines = []
    for t in sorted(domain.types):
        if t == "object":
            continue
        type_lines.append(f"{t} - {domain.types[t] or 'object'}")
    preds = []
    for p in sorted(domain.predicates):
        schema = domain.predicates[p]
        args = " ".join(f"?a{i} - {t}" for i, t in enumerate(schema.types))
        preds.append(f"({p}{' ' + args if args else ''})")
    parts = [
        f"(define (domain {domain.name})",
        f"  (:requirements {' '.join(sorted(reqs))})",
        f"  (:types {' '.join(type_lines)})",
        "  (:predicates " + "\n               ".join(preds) + ")",
    ]
    for op in sorted(operators, key=lambda o: o.name):
        parts.append(operator_to_pddl(op))
    return "\n".join(parts) + ")\n"


def serialize_problem(task: Task) -> str:
    by_type: dict[str, list[str]] = {}
    for o, t in task.objects.items():
        by_type.setdefault(t, []).append(o)
    objs = "\n            ".join(f"{' '.join(sorted(v))} - {t}" for t, v in sorted(by_type.items()))
    init = "\n         ".join(str(l) for l in sorted(task.init))
    return (
        f"(define (problem {task.name})\n"
        f"  (:domain {task.domain.name})\n"
        f"  (:objects {objs})\n"
        f"  (:init {init})\n"
        f"  (:goal {_conj(task.goal, '  ')}))\n"
    )
