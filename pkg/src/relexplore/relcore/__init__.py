from .grounding import CompiledModel, GroundOp, atom_index, compile_model
from .pddl import (
    PDDLError,
    parse_domain,
    parse_problem,
    serialize_domain,
    serialize_problem,
)
from .structs import (
    ActionSchema,
    Domain,
    GroundAction,
    Literal,
    Operator,
    PredicateSchema,
    State,
    Task,
    atom,
    enumerate_ground_actions,
    groundings,
    holds,
    is_variable,
)

__all__ = [
    "ActionSchema",
    "CompiledModel",
    "Domain",
    "GroundAction",
    "GroundOp",
    "Literal",
    "Operator",
    "PDDLError",
    "PredicateSchema",
    "State",
    "Task",
    "atom",
    "atom_index",
    "compile_model",
    "enumerate_ground_actions",
    "groundings",
    "holds",
    "is_variable",
    "parse_domain",
    "parse_problem",
    "serialize_domain",
    "serialize_problem",
]
