"""Exploration policies."""
from .base import ExplorationPolicy, RandomPolicy, random_policy
from .demos import DemoSet, UnreachableOperatorError, generate_demos
from .glib import (
    Exhausted,
    GlibPolicy,
    GoalActionPair,
    NoveltyStore,
    canonical_key,
    glib_sample,
    goal_action_pairs,
    ground_pair,
)
from .oracle_bfs import MismatchScanner, OracleBFSPolicy, bfs_mismatch, mismatch_scanner
from .targeting import (
    DissonantGoal,
    PreconditionDiff,
    PrecondTargetingPolicy,
    UnmatchedOperatorError,
    diffs,
    dissonant_goals,
    match_operators,
    precondition_diff,
    total_dissonance,
)

__all__ = [
    "DemoSet",
    "DissonantGoal",
    "Exhausted",
    "ExplorationPolicy",
    "GlibPolicy",
    "GoalActionPair",
    "MismatchScanner",
    "NoveltyStore",
    "OracleBFSPolicy",
    "PreconditionDiff",
    "PrecondTargetingPolicy",
    "RandomPolicy",
    "UnmatchedOperatorError",
    "UnreachableOperatorError",
    "bfs_mismatch",
    "canonical_key",
    "diffs",
    "dissonant_goals",
    "generate_demos",
    "glib_sample",
    "goal_action_pairs",
    "ground_pair",
    "match_operators",
    "mismatch_scanner",
    "precondition_diff",
    "random_policy",
    "total_dissonance",
]
