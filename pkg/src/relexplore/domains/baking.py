"""Generator for the Baking and Baking-Large bundles.

The domain text is assembled from the operator table below.  Task initial
states are produced by replaying ground-truth actions from a fresh kitchen,
so every initial state is reachable and internally consistent.  Run
``python3 -m relexplore.domains.baking`` to rewrite the bundled files.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Optional, Sequence

from ..relcore import GroundAction, Literal, Task, atom, parse_domain, serialize_problem
from ..simulator import Simulator

TYPES = ("oven", "egg", "flour", "sugar", "milk", "butter", "bowl", "pan")

INGREDIENTS = ("flour", "sugar", "milk")

# bowl flags; an empty bowl carries every no-X flag
BOWL_FLAGS = ("egg", "flour", "sugar", "milk", "butter", "whites")

PREDICATES = [
    ("egg-whole", ("egg",)),
    ("egg-in", ("egg", "bowl")),
    ("whites-in", ("egg", "bowl")),
    *[(f"{i}-avail", (i,)) for i in INGREDIENTS],
    *[(f"{i}-in", (i, "bowl")) for i in INGREDIENTS],
    ("butter-hard", ("butter",)),
    ("butter-soft", ("butter",)),
    ("butter-in", ("butter", "bowl")),
    ("greased-with", ("pan", "butter")),
    *[(f"no-{f}", ("bowl",)) for f in BOWL_FLAGS],
    *[(f"has-{f}", ("bowl",)) for f in BOWL_FLAGS],
    ("whisked-whites", ("bowl",)),
    ("has-cake-batter", ("bowl",)),
    ("has-souffle-base", ("bowl",)),
    ("has-souffle-batter", ("bowl",)),
    ("pan-ungreased", ("pan",)),
    ("pan-greased", ("pan",)),
    ("pan-empty", ("pan",)),
    ("pan-cake-batter", ("pan",)),
    ("pan-souffle-batter", ("pan",)),
    ("pan-cake", ("pan",)),
    ("pan-souffle", ("pan",)),
    ("on-counter", ("pan",)),
    ("oven-cold", ("oven",)),
    ("oven-hot", ("oven",)),
    ("oven-empty", ("oven",)),
    ("in-oven", ("pan", "oven")),
]


@dataclass(frozen=True)
class OpSpec:
    name: str
    params: tuple  # ((var, type), ...)
    pre: tuple  # literal strings
    add: tuple
    delete: tuple


def _add_ingredient(kind: str) -> OpSpec:
    return OpSpec(
        f"add-{kind}", (("?i", kind), ("?b", "bowl")),
        (f"({kind}-avail ?i)", f"(no-{kind} ?b)"),
        (f"({kind}-in ?i ?b)", f"(has-{kind} ?b)"),
        (f"({kind}-avail ?i)", f"(no-{kind} ?b)"),
    )


OPERATORS = [
    OpSpec("preheat-oven", (("?o", "oven"),),
           ("(oven-cold ?o)",), ("(oven-hot ?o)",), ("(oven-cold ?o)",)),
    OpSpec("crack-egg", (("?e", "egg"), ("?b", "bowl")),
           ("(egg-whole ?e)", "(no-egg ?b)"),
           ("(egg-in ?e ?b)", "(has-egg ?b)"),
           ("(egg-whole ?e)", "(no-egg ?b)")),
    OpSpec("separate-egg", (("?e", "egg"), ("?b", "bowl")),
           ("(egg-whole ?e)", "(no-egg ?b)", "(no-whites ?b)"),
           ("(whites-in ?e ?b)", "(has-whites ?b)"),
           ("(egg-whole ?e)", "(no-whites ?b)")),
    *[_add_ingredient(k) for k in INGREDIENTS],
    OpSpec("soften-butter", (("?u", "butter"),),
           ("(butter-hard ?u)",), ("(butter-soft ?u)",), ("(butter-hard ?u)",)),
    OpSpec("add-butter", (("?u", "butter"), ("?b", "bowl")),
           ("(butter-soft ?u)", "(no-butter ?b)"),
           ("(butter-in ?u ?b)", "(has-butter ?b)"),
           ("(butter-soft ?u)", "(no-butter ?b)")),
    OpSpec("whisk-whites", (("?b", "bowl"),),
           ("(has-whites ?b)",), ("(whisked-whites ?b)",), ("(has-whites ?b)",)),
    OpSpec("mix-cake-batter", (("?b", "bowl"),),
           ("(has-egg ?b)", "(has-flour ?b)", "(has-sugar ?b)", "(has-butter ?b)"),
           ("(has-cake-batter ?b)",),
           ("(has-egg ?b)", "(has-flour ?b)", "(has-sugar ?b)", "(has-butter ?b)")),
    OpSpec("mix-souffle-base", (("?b", "bowl"),),
           ("(has-egg ?b)", "(has-flour ?b)", "(has-milk ?b)", "(has-sugar ?b)", "(no-whites ?b)"),
           ("(has-souffle-base ?b)",),
           ("(has-egg ?b)", "(has-flour ?b)", "(has-milk ?b)", "(has-sugar ?b)")),
    # no-whites on the base bowl cannot be undone after mixing, so it is stated
    OpSpec("fold-whites", (("?w", "bowl"), ("?b", "bowl")),
           ("(whisked-whites ?w)", "(has-souffle-base ?b)", "(no-whites ?b)"),
           ("(has-souffle-batter ?b)",),
           ("(whisked-whites ?w)", "(has-souffle-base ?b)")),
    # an ungreased pan is always empty, so pan-empty is stated
    OpSpec("grease-pan", (("?p", "pan"), ("?u", "butter")),
           ("(pan-ungreased ?p)", "(pan-empty ?p)", "(butter-soft ?u)"),
           ("(pan-greased ?p)", "(greased-with ?p ?u)"),
           ("(pan-ungreased ?p)",)),
    OpSpec("pour-cake-batter", (("?b", "bowl"), ("?p", "pan")),
           ("(has-cake-batter ?b)", "(pan-empty ?p)", "(pan-greased ?p)", "(on-counter ?p)"),
           ("(pan-cake-batter ?p)",),
           ("(has-cake-batter ?b)", "(pan-empty ?p)")),
    OpSpec("pour-souffle-batter", (("?b", "bowl"), ("?p", "pan")),
           ("(has-souffle-batter ?b)", "(no-whites ?b)", "(pan-empty ?p)", "(pan-greased ?p)",
            "(on-counter ?p)"),
           ("(pan-souffle-batter ?p)",),
           ("(has-souffle-batter ?b)", "(pan-empty ?p)")),
    OpSpec("put-in-oven", (("?p", "pan"), ("?o", "oven")),
           ("(on-counter ?p)", "(oven-empty ?o)"),
           ("(in-oven ?p ?o)",),
           ("(on-counter ?p)", "(oven-empty ?o)")),
    # batter only ever reaches greased pans, so pan-greased is stated
    OpSpec("bake-cake", (("?p", "pan"), ("?o", "oven")),
           ("(pan-cake-batter ?p)", "(pan-greased ?p)", "(in-oven ?p ?o)", "(oven-hot ?o)"),
           ("(pan-cake ?p)",), ("(pan-cake-batter ?p)",)),
    OpSpec("bake-souffle", (("?p", "pan"), ("?o", "oven")),
           ("(pan-souffle-batter ?p)", "(pan-greased ?p)", "(in-oven ?p ?o)", "(oven-hot ?o)"),
           ("(pan-souffle ?p)",), ("(pan-souffle-batter ?p)",)),
    OpSpec("remove-from-oven", (("?p", "pan"), ("?o", "oven")),
           ("(in-oven ?p ?o)",),
           ("(on-counter ?p)", "(oven-empty ?o)"),
           ("(in-oven ?p ?o)",)),
]

# the small variant keeps only the cake recipe
SMALL_OPERATORS = (
    "preheat-oven", "crack-egg", "add-flour", "add-sugar", "soften-butter", "add-butter",
    "mix-cake-batter", "grease-pan", "pour-cake-batter", "put-in-oven", "bake-cake",
    "remove-from-oven",
)


def domain_text(name: str, operators: Sequence[OpSpec]) -> str:
    used = set()
    for op in operators:
        for lit in op.pre + op.add + op.delete:
            used.add(lit.strip("()").split()[0])
    types = {t for op in operators for _, t in op.params}
    lines = [
        f"; {name}: kitchen tasks built from {len(operators)} operators.",
        "; Generated by relexplore.domains.baking; edit the generator, not this file.",
        f"(define (domain {name})",
        "  (:requirements :strips :typing)",
        "  (:types " + " ".join(t for t in TYPES if t in types) + ")",
        "  (:predicates",
    ]
    for pred, args in PREDICATES:
        if pred in used:
            params = " ".join(f"?{chr(97 + i)} - {t}" for i, t in enumerate(args))
            lines.append(f"    ({pred} {params})")
    lines[-1] += ")"
    for op in operators:
        effects = list(op.add) + [f"(not {d})" for d in op.delete]
        lines += [
            f"  (:action {op.name}",
            "    :parameters (" + " ".join(f"{v} - {t}" for v, t in op.params) + ")",
            "    :precondition (and " + " ".join(op.pre) + ")",
            "    :effect (and " + " ".join(effects) + "))",
        ]
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


@dataclass
class Kitchen:
    """Object counts of one task."""

    ovens: int = 1
    eggs: int = 2
    flour: int = 1
    sugar: int = 1
    milk: int = 1
    butter: int = 1
    bowls: int = 2
    pans: int = 1

    def objects(self) -> dict[str, str]:
        names = {"oven": self.ovens, "egg": self.eggs, "flour": self.flour, "sugar": self.sugar,
                 "milk": self.milk, "butter": self.butter, "bowl": self.bowls, "pan": self.pans}
        return {f"{t}{i}": t for t, n in names.items() for i in range(1, n + 1)}

    def ground_actions(self) -> int:
        o, e, f, s, m, u, b, p = (self.ovens, self.eggs, self.flour, self.sugar, self.milk,
                                  self.butter, self.bowls, self.pans)
        return o + 2 * e * b + (f + s + m) * b + u + u * b + 3 * b + b * b + p * u + 2 * b * p + 4 * p * o


def fresh_state(objects: dict[str, str]) -> frozenset:
    out = []
    for o, t in objects.items():
        if t == "oven":
            out += [atom("oven-cold", o), atom("oven-empty", o)]
        elif t == "egg":
            out.append(atom("egg-whole", o))
        elif t in INGREDIENTS:
            out.append(atom(f"{t}-avail", o))
        elif t == "butter":
            out.append(atom("butter-hard", o))
        elif t == "bowl":
            out += [atom(f"no-{f}", o) for f in BOWL_FLAGS]
        elif t == "pan":
            out += [atom("pan-ungreased", o), atom("pan-empty", o), atom("on-counter", o)]
    return frozenset(out)


def _parse_lit(text: str) -> Literal:
    text = text.strip()
    if text.startswith("(not "):
        return _parse_lit(text[5:-1]).negate()
    parts = text.strip("()").split()
    return Literal(parts[0], tuple(parts[1:]), True)


def _parse_action(text: str) -> GroundAction:
    parts = text.strip("()").split()
    return GroundAction(parts[0], tuple(parts[1:]))


@dataclass
class TaskSpec:
    name: str
    kitchen: Kitchen
    goal: tuple  # literal strings
    setup: tuple = ()  # ground actions replayed from the fresh kitchen
    note: str = ""
    target: Optional[str] = None  # operator the task is meant to exercise


def build_task(spec: TaskSpec, domain) -> Task:
    objects = spec.kitchen.objects()
    state = frozenset(a for a in fresh_state(objects) if a.predicate in domain.predicates)
    task = Task(spec.name, domain, objects, state, frozenset(_parse_lit(g) for g in spec.goal))
    sim = Simulator(task)
    for text in spec.setup:
        t = sim.step(state, _parse_action(text))
        if t.is_noop:
            raise ValueError(f"{spec.name}: setup action {text} does not apply")
        state = t.next_state
    return Task(spec.name, domain, objects, state, task.goal)


def problem_text(spec: TaskSpec, domain) -> str:
    head = f"; {spec.note}\n" if spec.note else ""
    return head + serialize_problem(build_task(spec, domain))


# ------------------------------------------------------------- task suites

TRAIN_LARGE = Kitchen(ovens=2, eggs=20, flour=8, sugar=8, milk=8, butter=10, bowls=16, pans=8)
TEST_LARGE = Kitchen(ovens=3, eggs=20, flour=9, sugar=9, milk=9, butter=9, bowls=19, pans=11)
TEST_SMALL = Kitchen(ovens=1, eggs=4, flour=2, sugar=2, milk=2, butter=2, bowls=4, pans=2)

_CAKE_BOWL = ("(crack-egg egg1 bowl1)", "(add-flour flour1 bowl1)", "(add-sugar sugar1 bowl1)",
              "(soften-butter butter1)", "(add-butter butter1 bowl1)")
_SOUFFLE_BASE = ("(crack-egg egg2 bowl2)", "(add-flour flour2 bowl2)", "(add-milk milk2 bowl2)",
                 "(add-sugar sugar2 bowl2)", "(mix-souffle-base bowl2)")
_WHITES = ("(separate-egg egg3 bowl3)", "(whisk-whites bowl3)")

# kitchens without spare objects, so the target configuration is the only route
_TIGHT_CAKE = Kitchen(ovens=1, eggs=1, flour=1, sugar=1, milk=1, butter=1, bowls=1, pans=1)
_TIGHT_SOUFFLE = Kitchen(ovens=1, eggs=3, flour=1, sugar=1, milk=1, butter=1, bowls=2, pans=1)
_CAKE1 = ("(crack-egg egg1 bowl1)", "(add-flour flour1 bowl1)", "(add-sugar sugar1 bowl1)",
          "(soften-butter butter1)", "(grease-pan pan1 butter1)", "(add-butter butter1 bowl1)")
_BASE1 = ("(crack-egg egg1 bowl1)", "(add-flour flour1 bowl1)", "(add-milk milk1 bowl1)",
          "(add-sugar sugar1 bowl1)", "(mix-souffle-base bowl1)")


def large_operator_tasks() -> list[TaskSpec]:
    """One task per operator, each starting away from the demonstration states."""
    k = TEST_SMALL
    t = [
        TaskSpec("op-preheat-oven", k, ("(oven-hot oven1)",),
                 ("(put-in-oven pan1 oven1)",), "preheat an oven that already holds a pan",
                 "preheat-oven"),
        TaskSpec("op-crack-egg", k, ("(has-egg bowl1)",),
                 ("(add-flour flour1 bowl1)", "(add-milk milk1 bowl1)", "(separate-egg egg2 bowl1)"),
                 "crack an egg into a bowl holding flour, milk and whites", "crack-egg"),
        TaskSpec("op-separate-egg", k, ("(has-whites bowl1)",),
                 ("(add-sugar sugar1 bowl1)", "(add-milk milk1 bowl1)"),
                 "separate an egg into a bowl holding sugar and milk", "separate-egg"),
        TaskSpec("op-add-flour", k, ("(has-flour bowl1)",),
                 ("(crack-egg egg1 bowl1)", "(add-milk milk1 bowl1)"),
                 "add flour to a bowl holding egg and milk", "add-flour"),
        TaskSpec("op-add-sugar", k, ("(has-sugar bowl1)",),
                 ("(add-flour flour1 bowl1)", "(separate-egg egg1 bowl1)"),
                 "add sugar to a bowl holding flour and whites", "add-sugar"),
        TaskSpec("op-add-milk", k, ("(has-milk bowl1)",),
                 ("(crack-egg egg1 bowl1)", "(add-sugar sugar1 bowl1)"),
                 "add milk to a bowl holding egg and sugar", "add-milk"),
        TaskSpec("op-soften-butter", k, ("(butter-soft butter2)",),
                 ("(soften-butter butter1)", "(grease-pan pan1 butter1)"),
                 "soften a second stick of butter", "soften-butter"),
        TaskSpec("op-add-butter", k, ("(has-butter bowl1)",),
                 ("(crack-egg egg1 bowl1)", "(add-flour flour1 bowl1)", "(soften-butter butter1)"),
                 "add butter to a bowl holding egg and flour", "add-butter"),
        TaskSpec("op-whisk-whites", k, ("(whisked-whites bowl1)",),
                 ("(separate-egg egg1 bowl1)", "(crack-egg egg2 bowl1)", "(add-sugar sugar1 bowl1)"),
                 "whisk whites sharing a bowl with egg and sugar", "whisk-whites"),
        TaskSpec("op-mix-cake-batter", k, ("(has-cake-batter bowl1)",),
                 _CAKE_BOWL + ("(add-milk milk1 bowl1)",),
                 "mix a cake batter that also holds milk", "mix-cake-batter"),
        TaskSpec("op-mix-souffle-base", k, ("(has-souffle-base bowl1)",),
                 ("(crack-egg egg1 bowl1)", "(add-flour flour1 bowl1)", "(add-milk milk1 bowl1)",
                  "(add-sugar sugar1 bowl1)", "(soften-butter butter1)", "(add-butter butter1 bowl1)"),
                 "mix a souffle base that also holds butter", "mix-souffle-base"),
        TaskSpec("op-fold-whites", _TIGHT_SOUFFLE, ("(has-souffle-batter bowl1)",),
                 _BASE1 + ("(separate-egg egg2 bowl2)", "(crack-egg egg3 bowl2)", "(whisk-whites bowl2)"),
                 "fold the only whites, which share their bowl with a cracked egg", "fold-whites"),
        TaskSpec("op-grease-pan", k, ("(pan-greased pan1)",),
                 ("(preheat-oven oven1)", "(put-in-oven pan1 oven1)", "(soften-butter butter1)"),
                 "grease a pan standing in a hot oven", "grease-pan"),
        TaskSpec("op-pour-cake-batter", _TIGHT_CAKE, ("(pan-cake-batter pan1)",),
                 _CAKE1 + ("(add-milk milk1 bowl1)", "(mix-cake-batter bowl1)"),
                 "pour the only batter, which also holds milk", "pour-cake-batter"),
        TaskSpec("op-pour-souffle-batter", _TIGHT_SOUFFLE, ("(pan-souffle-batter pan1)",),
                 _BASE1 + ("(separate-egg egg2 bowl2)", "(whisk-whites bowl2)", "(soften-butter butter1)",
                           "(grease-pan pan1 butter1)", "(add-butter butter1 bowl1)",
                           "(fold-whites bowl2 bowl1)"),
                 "pour the only souffle batter, which also holds butter", "pour-souffle-batter"),
        TaskSpec("op-put-in-oven", _TIGHT_CAKE, ("(in-oven pan1 oven1)",),
                 _CAKE1 + ("(mix-cake-batter bowl1)",
                           "(pour-cake-batter bowl1 pan1)", "(preheat-oven oven1)"),
                 "put the only pan, filled, into a hot oven", "put-in-oven"),
        TaskSpec("op-bake-cake", k, ("(pan-cake pan1)",),
                 _CAKE_BOWL[:3] + ("(soften-butter butter1)", "(grease-pan pan1 butter1)",
                                   "(add-butter butter1 bowl1)", "(mix-cake-batter bowl1)",
                                   "(pour-cake-batter bowl1 pan1)", "(preheat-oven oven1)",
                                   "(put-in-oven pan1 oven1)"),
                 "bake a cake that is already in a hot oven", "bake-cake"),
        TaskSpec("op-bake-souffle", k, ("(pan-souffle pan1)",),
                 _SOUFFLE_BASE + _WHITES + ("(fold-whites bowl3 bowl2)", "(soften-butter butter1)",
                                            "(grease-pan pan1 butter1)",
                                            "(pour-souffle-batter bowl2 pan1)",
                                            "(put-in-oven pan1 oven1)", "(preheat-oven oven1)"),
                 "bake a souffle placed in a cold oven", "bake-souffle"),
        TaskSpec("op-remove-from-oven", _TIGHT_CAKE, ("(on-counter pan1)",),
                 _CAKE1 + ("(mix-cake-batter bowl1)",
                           "(pour-cake-batter bowl1 pan1)", "(preheat-oven oven1)",
                           "(put-in-oven pan1 oven1)", "(bake-cake pan1 oven1)"),
                 "take the only pan, holding a baked cake, out of the oven", "remove-from-oven"),
    ]
    return t


def large_long_tasks() -> list[TaskSpec]:
    k = TEST_LARGE
    done = ("(on-counter pan1)", "(on-counter pan2)")
    return [
        TaskSpec("long-two-souffles", k,
                 ("(pan-souffle pan1)", "(pan-souffle pan2)") + done, (),
                 "two souffles from scratch", None),
        TaskSpec("long-cake-and-souffle", Kitchen(ovens=1, eggs=6, flour=3, sugar=3, milk=3,
                                                  butter=3, bowls=6, pans=3),
                 ("(pan-cake pan1)", "(pan-souffle pan2)") + done, (),
                 "one cake and one souffle from scratch", None),
        TaskSpec("long-two-cakes", Kitchen(ovens=1, eggs=5, flour=3, sugar=3, milk=3,
                                           butter=3, bowls=5, pans=3),
                 ("(pan-cake pan1)", "(pan-cake pan2)") + done, (),
                 "two cakes from scratch", None),
    ]


def large_train_tasks() -> list[TaskSpec]:
    k = TRAIN_LARGE
    k2 = Kitchen(ovens=2, eggs=18, flour=8, sugar=8, milk=8, butter=9, bowls=16, pans=8)
    return [
        TaskSpec("train-1", k, ("(pan-cake pan1)",), (), "bake a cake", None),
        TaskSpec("train-2", k, ("(pan-souffle pan1)",), (), "bake a souffle", None),
        TaskSpec("train-3", k2, ("(pan-cake pan1)", "(pan-souffle pan2)"), (),
                 "bake a cake and a souffle", None),
    ]


def small_tasks() -> tuple[list[TaskSpec], list[TaskSpec]]:
    k = Kitchen(ovens=1, eggs=3, flour=2, sugar=2, milk=0, butter=2, bowls=3, pans=2)
    train = [
        TaskSpec("train-1", k, ("(pan-cake pan1)",), (), "bake a cake", None),
        TaskSpec("train-2", Kitchen(ovens=2, eggs=4, flour=3, sugar=3, milk=0, butter=3, bowls=4,
                                    pans=3),
                 ("(pan-cake pan2)",), (), "bake a cake", None),
    ]
    test = [
        TaskSpec("test-batter", k, ("(has-cake-batter bowl1)",), (), "mix a cake batter", None),
        TaskSpec("test-greased", k, ("(pan-greased pan1)", "(has-butter bowl2)"), (),
                 "grease a pan and butter a bowl", None),
        TaskSpec("test-bake", k, ("(pan-cake pan1)",),
                 _CAKE_BOWL[:3] + ("(soften-butter butter1)", "(grease-pan pan1 butter1)",
                                   "(add-butter butter1 bowl1)", "(mix-cake-batter bowl1)"),
                 "bake a mixed batter", None),
        TaskSpec("test-cake", k, ("(pan-cake pan1)", "(on-counter pan1)"), (),
                 "bake a cake from scratch", None),
    ]
    return train, test


# ------------------------------------------------------------ file output

def _manifest(lines: dict) -> str:
    return "".join(f"{k} = {v}\n" for k, v in lines.items())


def write_bundle(root: Path, name: str, operators: Sequence[OpSpec], train, test, manifest: dict):
    root.mkdir(parents=True, exist_ok=True)
    (root / "train").mkdir(exist_ok=True)
    (root / "test").mkdir(exist_ok=True)
    text = domain_text(name, operators)
    (root / "domain.pddl").write_text(text)
    domain = parse_domain(text)
    for sub, specs in (("train", train), ("test", test)):
        for old in (root / sub).glob("*.pddl"):
            old.unlink()
        for spec in specs:
            (root / sub / f"{spec.name}.pddl").write_text(problem_text(spec, domain))
    (root / "manifest.txt").write_text(_manifest(manifest))


def generate(data_dir: Path) -> None:
    op_tasks = large_operator_tasks()
    write_bundle(
        data_dir / "baking-large", "baking-large", OPERATORS, large_train_tasks(),
        op_tasks + large_long_tasks(),
        {
            "name": "baking-large",
            "horizon": 40,
            "budget": 5000,
            "eval_interval": 100,
            "stand_in": "no",
            "expect.operators": 19,
            "expect.max_ground_actions": 2523,
            "expect.train_atoms": "1400 1800",
            "expect.long_tasks": "long-two-souffles long-cake-and-souffle long-two-cakes",
            "expect.long_min_length": 22,
            "expect.two_souffle_task": "long-two-souffles",
            "expect.two_souffle_min_length": 26,
            "expect.operator_tasks": " ".join(f"{s.name}:{s.target}" for s in op_tasks),
        },
    )
    small = [op for op in OPERATORS if op.name in SMALL_OPERATORS]
    train, test = small_tasks()
    write_bundle(
        data_dir / "baking", "baking", small, train, test,
        {
            "name": "baking",
            "horizon": 20,
            "budget": 1500,
            "eval_interval": 50,
            "stand_in": "yes",
            "expect.operators": 12,
        },
    )


if __name__ == "__main__":
    generate(Path(__file__).parent / "data")
