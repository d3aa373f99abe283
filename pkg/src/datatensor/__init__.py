"""Embedded RDF store and SPARQL subset engine with native data-tensor literals."""

from .lexical import (
    BOOLEAN_DATATENSOR,
    NUMERIC_DATATENSOR,
    IllTypedLiteralError,
    parse_tensor_literal,
    serialize_tensor,
    validate,
)
from .tensor import DataTensor, Dtype

__all__ = [
    "BOOLEAN_DATATENSOR",
    "DataTensor",
    "Dtype",
    "IllTypedLiteralError",
    "NUMERIC_DATATENSOR",
    "parse_tensor_literal",
    "serialize_tensor",
    "validate",
]

__version__ = "0.1.0"
