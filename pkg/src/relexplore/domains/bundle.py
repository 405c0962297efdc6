"""Domain bundles: a domain file, training and test problems, and a manifest.

The manifest is plain text, one ``key = value`` pair per line; ``#`` starts
a comment.  Recognised keys:

``name``, ``horizon``, ``budget``, ``eval_interval``
    run defaults for the bundle
``stand_in``
    ``yes`` when the domain stands in for an unnamed one
``expect.operators``
    number of ground-truth operators
``expect.max_ground_actions``
    ground actions of the largest test task
``expect.train_atoms``
    inclusive ``low high`` band for training-task ground-atom counts
``expect.long_tasks`` / ``expect.long_min_length``
    long-horizon test tasks and their minimum plan length
``expect.two_souffle_task`` / ``expect.two_souffle_min_length``
    one task with a stricter length floor
``expect.operator_tasks``
    ``task:operator`` pairs; the task must need that operator
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from ..learner import operator_signature
from ..planner import SearchBudget, plan, relaxed_reachable
from ..relcore import Domain, Task, compile_model, parse_domain, parse_problem

DATA_DIR = Path(__file__).parent / "data"


class BundleError(ValueError):
    pass


def read_manifest(text: str) -> dict[str, str]:
    out = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BundleError(f"manifest line {n}: expected 'key = value'")
        key, value = line.split("=", 1)
        out[key.strip()] = value.strip()
    return out


@dataclass
class DomainBundle:
    name: str
    root: Path
    domain: Domain
    train: list[Task]
    test: list[Task]
    manifest: dict[str, str] = field(default_factory=dict)

    @property
    def horizon(self) -> int:
        return int(self.manifest.get("horizon", 8))

    @property
    def budget(self) -> int:
        return int(self.manifest.get("budget", 500))

    @property
    def eval_interval(self) -> int:
        return int(self.manifest.get("eval_interval", 25))

    def test_task(self, name: str) -> Task:
        for t in self.test:
            if t.name == name:
                return t
        raise KeyError(name)


def _load_tasks(folder: Path, domain: Domain) -> list[Task]:
    tasks = []
    for f in sorted(folder.glob("*.pddl")):
        task = parse_problem(f.read_text(), domain)
        tasks.append(task)
    return tasks


_CACHE: dict[Path, DomainBundle] = {}


def load_bundle(ref: Union[str, Path]) -> DomainBundle:
    """Load a bundle by directory path or by the name of a bundled domain."""
    root = Path(ref)
    if not root.is_dir():
        root = DATA_DIR / str(ref)
    if not root.is_dir():
        raise BundleError(f"no bundle at {ref}")
    root = root.resolve()
    if root in _CACHE:
        return _CACHE[root]
    domain = parse_domain((root / "domain.pddl").read_text())
    manifest_file = root / "manifest.txt"
    manifest = read_manifest(manifest_file.read_text()) if manifest_file.exists() else {}
    bundle = DomainBundle(
        manifest.get("name", root.name), root, domain,
        _load_tasks(root / "train", domain), _load_tasks(root / "test", domain), manifest)
    if not bundle.train:
        raise BundleError(f"bundle {bundle.name} has no training tasks")
    _CACHE[root] = bundle
    return bundle


def bundled_names() -> list[str]:
    return sorted(p.name for p in DATA_DIR.iterdir() if (p / "domain.pddl").exists())


# -------------------------------------------------------------- validation

@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""

    def __str__(self):
        return f"[{'ok' if self.ok else 'FAIL'}] {self.name}: {self.detail}"


@dataclass
class ValidationReport:
    bundle: str
    checks: list[Check] = field(default_factory=list)
    plan_lengths: dict[str, Optional[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, ok, detail))

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.ok]

    def __str__(self):
        return "\n".join([f"bundle {self.bundle}"] + [str(c) for c in self.checks])


def _solve(ops, task: Task, budget: SearchBudget) -> Optional[int]:
    p = plan(ops, task, task.init, task.goal, budget, random.Random(0))
    return None if p is None else len(p)


def needs_operator(ops, task: Task, name: str, budget: SearchBudget) -> bool:
    """True if the task becomes unsolvable once operator ``name`` is removed."""
    rest = [op for op in ops if op.name != name]
    if not relaxed_reachable(compile_model(rest, task), task.init, task.goal):
        return True
    return _solve(rest, task, budget) is None


def validate_bundle(bundle: DomainBundle, budget: SearchBudget = SearchBudget()) -> ValidationReport:
    report = ValidationReport(bundle.name)
    m = bundle.manifest
    ops = bundle.domain.operators

    if "expect.operators" in m:
        want = int(m["expect.operators"])
        report.add("operator count", len(ops) == want, f"{len(ops)} (expected {want})")

    sigs = {}
    for op in ops:
        sigs.setdefault(operator_signature(op), []).append(op.name)
    dupes = [names for names in sigs.values() if len(names) > 1]
    report.add("distinct effect signatures", not dupes, f"shared by {dupes}" if dupes else "")

    for op in ops:
        pos = {l for l in op.preconditions if l.positive}
        ok = op.delete_effects <= pos and not (op.add_effects & pos)
        if not ok:
            report.add(f"observable effects of {op.name}", False,
                       "delete effects must be preconditions and add effects must not")

    if "expect.max_ground_actions" in m:
        want = int(m["expect.max_ground_actions"])
        sizes = {t.name: len(t.ground_actions) for t in bundle.test}
        top = max(sizes.values())
        report.add("largest test task", top == want,
                   f"{top} ground actions in {max(sizes, key=sizes.get)} (expected {want})")

    if "expect.train_atoms" in m:
        lo, hi = (int(x) for x in m["expect.train_atoms"].split())
        counts = {t.name: len(t.ground_atoms) for t in bundle.train}
        bad = {k: v for k, v in counts.items() if not lo <= v <= hi}
        report.add("training ground atoms", not bad,
                   f"{counts} (band {lo}..{hi})")

    for task in bundle.train + bundle.test:
        report.plan_lengths[task.name] = _solve(ops, task, budget)
    unsolved = [k for k, v in report.plan_lengths.items() if v is None]
    report.add("all tasks solvable", not unsolved,
               f"unsolved: {unsolved}" if unsolved else f"{len(report.plan_lengths)} tasks")

    if "expect.long_tasks" in m:
        floor = int(m.get("expect.long_min_length", 0))
        for name in m["expect.long_tasks"].split():
            n = report.plan_lengths.get(name)
            report.add(f"long task {name}", n is not None and n >= floor,
                       f"plan length {n} (minimum {floor})")
    if "expect.two_souffle_task" in m:
        name = m["expect.two_souffle_task"]
        floor = int(m.get("expect.two_souffle_min_length", 0))
        n = report.plan_lengths.get(name)
        report.add(f"two-souffle task {name}", n is not None and n >= floor,
                   f"plan length {n} (minimum {floor})")

    if "expect.operator_tasks" in m:
        pairs = [p.split(":") for p in m["expect.operator_tasks"].split()]
        covered = {op for _, op in pairs}
        missing = sorted({op.name for op in ops} - covered)
        report.add("every operator has a task", not missing, f"missing: {missing}" if missing else "")
        for task_name, op_name in pairs:
            try:
                task = bundle.test_task(task_name)
            except KeyError:
                report.add(f"operator task {task_name}", False, "task not found")
                continue
            report.add(f"operator task {task_name}", needs_operator(ops, task, op_name, budget),
                       f"requires {op_name}")
    else:
        # every operator must be exercised by at least one test task
        for op in ops:
            used = any(needs_operator(ops, t, op.name, budget) for t in bundle.test)
            if not used:
                report.add(f"operator {op.name} exercised", False, "no test task needs it")
    return report


def require_valid(bundle: DomainBundle, budget: SearchBudget = SearchBudget()) -> ValidationReport:
    report = validate_bundle(bundle, budget)
    if not report.ok:
        raise BundleError("; ".join(str(c) for c in report.failures()))
    return report
