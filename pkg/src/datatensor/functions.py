"""The ``dtf:`` extension functions and ``dta:`` aggregates.

Axis-like integer arguments come before tensor arguments, e.g.
``dtf:sum(0, ?t)`` and ``dtf:slice(axis, start, end, ?t)``. Operators lift
plain numeric and boolean literals to rank-0 tensors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import tensor as T
from .sparql import values as V
from .sparql.registry import AggregateSpec, FunctionRegistry, FunctionSpec
from .tensor import DataTensor, Dtype
from .terms import XSD_BOOLEAN, XSD_FLOAT, Literal

DTF = "https://w3id.org/rdf-tensor/functions#"
DTA = "https://w3id.org/rdf-tensor/aggregates#"

TRANSFORMATION = ("abs", "neg", "exp", "log", "sqrt", "cos", "sin", "tan", "sigmoid", "not")
OPERATORS = ("add", "minus", "mul", "div", "pow", "min", "max", "eq", "lt", "gt", "and", "or", "xor")
REDUCTIONS = {
    "sum": "sum",
    "prod": "prod",
    "reduceMin": "min",
    "reduceMax": "max",
    "norm1": "norm1",
    "norm2": "norm2",
}
SIMILARITIES = {
    "cosineSimilarity": "cosine",
    "euclideanDistance": "euclidean",
    "manhattanDistance": "manhattan",
    "dotProduct": "dot",
}
AGGREGATES = ("sum", "avg", "var", "std")


# -- argument conversion ------------------------------------------------------

def _tensor(term) -> DataTensor:
    return V.tensor_of(term)


def _operand(term) -> DataTensor:
    """A tensor literal, or a plain numeric/boolean literal lifted to rank 0."""
    if isinstance(term, Literal) and not term.is_tensor:
        if term.datatype == XSD_BOOLEAN:
            return DataTensor.scalar(Dtype.BOOLEAN, V.ebv(term))
        if V.is_numeric(term):
            value, dt = V.numeric_value(term)
            if dt == V.XSD_INTEGER:
                return DataTensor.scalar(Dtype.INT64, value)
            if dt == XSD_FLOAT:
                return DataTensor.scalar(Dtype.FLOAT32, float(value))
            return DataTensor.scalar(Dtype.FLOAT64, float(value))
    return V.tensor_of(term)


def _integer(term) -> int:
    value, dt = V.numeric_value(term)
    if dt != V.XSD_INTEGER:
        raise V.ExprError(f"expected an integer argument, got {term!r}")
    return value


def _out(t: DataTensor) -> Literal:
    return Literal.from_tensor(t)


# -- function factories -------------------------------------------------------

def _unary(kind):
    return lambda t: _out(T.elementwise_unary(kind, _tensor(t)))


def _binary(kind):
    return lambda a, b: _out(T.elementwise_binary(kind, _operand(a), _operand(b)))


def _reduction(kind):
    return lambda axis, t: _out(T.reduce(kind, _integer(axis), _tensor(t)))


def _similarity(kind):
    return lambda a, b: V.double(T.similarity(kind, _tensor(a), _tensor(b)))


def _get_sub_dt(t, selection):
    x = _tensor(t)
    sel = _tensor(selection)
    if not sel.dtype.is_int or sel.shape != (x.rank, 2):
        raise T.ShapeMismatchError(
            f"selection must be an integer tensor of shape [{x.rank}, 2], got {list(sel.shape)} {sel.dtype.tag}"
        )
    pairs = sel.array.tolist()
    return _out(T.slice_ranges(x, [tuple(p) for p in pairs]))


def _slice(axis, start, end, t):
    return _out(T.slice_axis(_tensor(t), _integer(axis), _integer(start), _integer(end)))


def _concat(axis, a, b):
    return _out(T.concat(_integer(axis), _tensor(a), _tensor(b)))


def function_specs() -> list[FunctionSpec]:
    """The full catalog of extension functions."""
    specs = []
    for name in TRANSFORMATION:
        specs.append(FunctionSpec(DTF + name, "transformation", ("tensor",), _unary(name)))
    for name in OPERATORS:
        specs.append(FunctionSpec(DTF + name, "operator", ("tensor", "tensor"), _binary(name)))
    specs.append(FunctionSpec(DTF + "getSubDT", "indexing", ("tensor", "tensor"), _get_sub_dt))
    specs.append(
        FunctionSpec(DTF + "slice", "indexing", ("integer", "integer", "integer", "tensor"), _slice)
    )
    specs.append(
        FunctionSpec(DTF + "concat", "concatenation", ("integer", "tensor", "tensor"), _concat)
    )
    for name, kind in REDUCTIONS.items():
        specs.append(FunctionSpec(DTF + name, "reduction", ("integer", "tensor"), _reduction(kind)))
    for name, kind in SIMILARITIES.items():
        specs.append(FunctionSpec(DTF + name, "similarity", ("tensor", "tensor"), _similarity(kind)))
    return specs


# -- aggregates ---------------------------------------------------------------

@dataclass
class AggregateState:
    """Streaming state for one group: running sum plus elementwise Welford moments."""

    kind: str
    count: int = 0
    shape: tuple | None = None
    dtype: Dtype | None = None
    total: DataTensor | None = None
    mean: np.ndarray | None = None
    m2: np.ndarray | None = None


def aggregate_step(state: AggregateState, t: DataTensor) -> AggregateState:
    if not t.dtype.is_numeric:
        raise T.TensorTypeError(f"dta:{state.kind} accepts only numeric tensors")
    if state.count == 0:
        state.shape = t.shape
        state.dtype = t.dtype
    elif t.shape != state.shape:
        raise T.ShapeMismatchError(
            f"group member shape {list(t.shape)} differs from {list(state.shape)}"
        )
    else:
        state.dtype = T.promote(state.dtype, t.dtype)
    if state.kind in ("sum", "avg"):
        # Folding with add keeps dtype and rounding identical to dtf:add.
        state.total = t if state.total is None else T.elementwise_binary("add", state.total, t)
    else:
        x = t.array.astype(np.float64)
        if state.count == 0:
            state.mean = np.zeros_like(x)
            state.m2 = np.zeros_like(x)
        n = state.count + 1
        delta = x - state.mean
        state.mean = state.mean + delta / n
        state.m2 = state.m2 + delta * (x - state.mean)
    state.count += 1
    return state


def aggregate_finalize(state: AggregateState) -> DataTensor:
    if state.count == 0:
        raise T.TensorError(f"dta:{state.kind} of an empty group")
    if state.kind == "sum":
        return state.total
    out_dtype = state.dtype if state.dtype.is_float else Dtype.FLOAT64
    if state.kind == "avg":
        values = state.total.array.astype(np.float64) / state.count
    else:
        values = state.m2 / state.count
        if state.kind == "std":
            values = np.sqrt(values)
    with np.errstate(over="ignore"):
        return DataTensor._wrap(out_dtype, np.asarray(values).astype(out_dtype.numpy_dtype))


class TensorAccumulator:
    def __init__(self, kind: str):
        self.state = AggregateState(kind)

    def step(self, term) -> None:
        aggregate_step(self.state, V.tensor_of(term))

    def finalize(self) -> Literal:
        return Literal.from_tensor(aggregate_finalize(self.state))


def aggregate_specs() -> list[AggregateSpec]:
    return [AggregateSpec(DTA + k, lambda k=k: TensorAccumulator(k)) for k in AGGREGATES]


def register_all(registry: FunctionRegistry) -> FunctionRegistry:
    for spec in function_specs():
        registry.register_function(spec)
    for spec in aggregate_specs():
        registry.register_aggregate(spec)
    return registry


def default_registry() -> FunctionRegistry:
    return register_all(FunctionRegistry())
