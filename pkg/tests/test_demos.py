import random

import pytest

from relexplore.explorer import UnreachableOperatorError, generate_demos
from relexplore.learner import lift_transition, operator_signature
from relexplore.relcore import parse_problem
from relexplore.simulator import Simulator

SIZES = {"gripper": 3, "blocks": 4, "baking": 12, "baking-large": 19}


@pytest.fixture(scope="module", params=sorted(SIZES))
def bundle_demos(request):
    from relexplore.domains import load_bundle

    bundle = load_bundle(request.param)
    return bundle, generate_demos(bundle.domain.operators, bundle.train, random.Random(0))


def test_one_demo_per_operator(bundle_demos):
    bundle, demos = bundle_demos
    assert len(demos) == SIZES[bundle.name] == len(bundle.domain.operators)


def test_demos_biject_onto_operators(bundle_demos):
    bundle, demos = bundle_demos
    by_sig = {operator_signature(op): op.name for op in bundle.domain.operators}
    got = [by_sig[lift_transition(t, bundle.domain).signature] for t in demos]
    assert sorted(got) == sorted(by_sig.values())
    assert got == demos.operators


def test_demos_are_real_transitions(bundle_demos):
    bundle, demos = bundle_demos
    tasks = {t.name: t for t in bundle.train}
    for t, name in zip(demos, demos.tasks):
        assert not t.is_noop
        assert Simulator(tasks[name]).step(t.state, t.action) == t


def test_same_seed_same_demos(gripper):
    a = generate_demos(gripper.domain.operators, gripper.train, random.Random(3))
    b = generate_demos(gripper.domain.operators, gripper.train, random.Random(3))
    assert a.transitions == b.transitions


def test_operator_without_a_reachable_state(gripper):
    # no balls, so pick and drop can never apply
    task = parse_problem("""(define (problem empty) (:domain gripper)
      (:objects rooma roomb - room left - gripper)
      (:init (at-robby rooma) (free left)) (:goal (and)))""", gripper.domain)
    with pytest.raises(UnreachableOperatorError, match="drop"):
        generate_demos(gripper.domain.operators, [task], random.Random(0))
