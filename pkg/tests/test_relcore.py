import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relexplore.domains import DATA_DIR, bundled_names, load_bundle
from relexplore.relcore import (
    GroundAction,
    Literal,
    PDDLError,
    atom,
    compile_model,
    enumerate_ground_actions,
    holds,
    parse_domain,
    parse_problem,
    serialize_domain,
    serialize_problem,
)

GRIPPER = (DATA_DIR / "gripper" / "domain.pddl").read_text()


def test_gripper_domain_has_three_schemas(gripper):
    assert sorted(gripper.domain.actions) == ["drop", "move", "pick"]
    assert len(gripper.domain.operators) == 3


def test_baking_large_has_19_operators(baking_large):
    assert len(baking_large.domain.operators) == 19


def test_arity_mismatch_is_rejected():
    bad = GRIPPER.replace("(free ?gripper))\n    :effect (and (carry",
                          "(free ?gripper ?room))\n    :effect (and (carry")
    with pytest.raises(PDDLError, match="arity|argument"):
        parse_domain(bad)


def test_syntax_error_reports_position():
    with pytest.raises(PDDLError) as e:
        parse_domain(GRIPPER.replace("(:types room ball gripper)", "(:types room ball gripper"))
    assert "line" in str(e.value)


def test_undeclared_predicate_in_goal():
    domain = parse_domain(GRIPPER)
    text = """(define (problem p) (:domain gripper)
      (:objects r1 - room) (:init (at-robby r1)) (:goal (and (shiny r1))))"""
    with pytest.raises(PDDLError):
        parse_problem(text, domain)


def test_unknown_object_type():
    domain = parse_domain(GRIPPER)
    text = """(define (problem p) (:domain gripper)
      (:objects r1 - kitchen) (:init) (:goal (and)))"""
    with pytest.raises(PDDLError):
        parse_problem(text, domain)


def test_problem_object_count(gripper):
    task = gripper.test_task("test-1")
    # 2 rooms, 2 balls, 2 grippers; the robot is implicit in this encoding
    assert len(task.objects) == 6


def test_baking_large_training_atoms(baking_large):
    for task in baking_large.train:
        assert 1400 <= len(task.ground_atoms) <= 1800


def test_empty_goal_always_holds():
    domain = parse_domain(GRIPPER)
    task = parse_problem("""(define (problem p) (:domain gripper)
      (:objects r1 - room) (:init (at-robby r1)) (:goal (and)))""", domain)
    assert task.goal == frozenset()
    assert holds(frozenset(), task.goal) and holds(task.init, task.goal)


def _two_room_task():
    domain = parse_domain(GRIPPER)
    return parse_problem("""(define (problem p) (:domain gripper)
      (:objects r1 r2 - room) (:init (at-robby r1)) (:goal (and)))""", domain)


def test_move_between_two_rooms_has_four_groundings():
    task = _two_room_task()
    moves = [a for a in enumerate_ground_actions(task) if a.name == "move"]
    assert len(moves) == 4


def test_missing_type_gives_no_groundings():
    task = _two_room_task()
    assert [a for a in enumerate_ground_actions(task) if a.name == "pick"] == []


def test_largest_baking_large_task(baking_large):
    assert max(len(t.ground_actions) for t in baking_large.test) == 2523


def test_ground_action_order_is_lexicographic(gripper):
    actions = gripper.test[0].ground_actions
    assert list(actions) == sorted(actions, key=lambda a: (a.name, a.args))


@pytest.mark.parametrize("name", bundled_names())
def test_ground_action_count_matches_product_formula(name):
    bundle = load_bundle(name)
    for task in bundle.train + bundle.test:
        counts = {}
        for t in task.objects.values():
            counts[t] = counts.get(t, 0) + 1
        expected = sum(math.prod(counts.get(t, 0) for _, t in s.parameters)
                       for s in bundle.domain.actions.values())
        assert len(task.ground_actions) == expected


def test_holds_examples():
    s = frozenset({atom("at-robby", "r1"), atom("free", "left")})
    assert holds(s, {atom("at-robby", "r1")})
    assert holds(s, {Literal("cracked", ("egg1",), False)})
    assert not holds(s, {atom("ontop", "bowl1", "table1")})


def test_holds_rejects_lifted_literals():
    with pytest.raises(ValueError):
        holds(frozenset(), {atom("free", "?g")})


ATOMS = [atom("p", str(i)) for i in range(8)]


@given(st.sets(st.sampled_from(ATOMS)), st.sets(st.sampled_from(ATOMS)), st.sets(st.sampled_from(ATOMS)))
def test_holds_is_monotone_for_positive_goals(goal, base, extra):
    s = frozenset(base)
    if holds(s, goal):
        assert holds(s | extra, goal)


def _files():
    for name in bundled_names():
        root = DATA_DIR / name
        yield name, root / "domain.pddl", sorted((root / "train").glob("*.pddl")) + sorted(
            (root / "test").glob("*.pddl"))


@pytest.mark.parametrize("name,domain_file,problems", list(_files()), ids=lambda x: getattr(x, "name", None) or str(x)[:12])
def test_round_trip(name, domain_file, problems):
    d1 = parse_domain(domain_file.read_text())
    d2 = parse_domain(serialize_domain(d1))
    assert d1.predicates == d2.predicates
    assert d1.actions == d2.actions
    assert set(d1.operators) == set(d2.operators)
    for f in problems:
        t1 = parse_problem(f.read_text(), d1)
        t2 = parse_problem(serialize_problem(t1), d1)
        assert (t1.name, t1.objects, t1.init, t1.goal) == (t2.name, t2.objects, t2.init, t2.goal)


def _direct_successor(ops, state, action):
    """Reference semantics straight from the operator definitions."""
    fired = []
    for op in ops:
        if op.action != action.name:
            continue
        sub = dict(zip(op.action_args, action.args))
        pre, add, dele = op.ground(sub)
        if holds(state, pre):
            fired.append((add, dele))
    if len(fired) != 1:
        return state
    add, dele = fired[0]
    return (state - dele) | add


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_compiled_model_matches_direct_application(rnd):
    bundle = load_bundle(rnd.choice(["gripper", "blocks", "baking"]))
    task = rnd.choice(bundle.test)
    model = compile_model(bundle.domain.operators, task, ambiguity="noop")
    atoms = task.ground_atoms
    state = frozenset(a for a in atoms if rnd.random() < 0.3) | task.init
    for action in rnd.sample(task.ground_actions, min(40, len(task.ground_actions))):
        got = model.index.state(model.successor(model.index.mask(state), model.action_index[action]))
        assert got == _direct_successor(bundle.domain.operators, state, action)


def test_ground_action_str():
    assert str(GroundAction("pick", ("ball1", "rooma", "left"))) == "(pick ball1 rooma left)"
