"""SPARQL subset: parsing, evaluation and the extension registry."""

from .evaluator import QueryEvaluationError, evaluate, evaluate_expression, join
from .parser import QuerySyntaxError, UnsupportedFeatureError, parse_query
from .registry import AggregateSpec, FunctionRegistry, FunctionSpec, RegistrationError
from .values import ExprError

__all__ = [
    "AggregateSpec",
    "ExprError",
    "FunctionRegistry",
    "FunctionSpec",
    "QueryEvaluationError",
    "QuerySyntaxError",
    "RegistrationError",
    "UnsupportedFeatureError",
    "evaluate",
    "evaluate_expression",
    "join",
    "parse_query",
]
