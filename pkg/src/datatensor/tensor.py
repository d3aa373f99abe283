"""Immutable dense n-dimensional tensors and the operations over them.

Storage is a read-only, C-contiguous numpy array. Arithmetic runs in
float64 or checked 64-bit integer precision and is then narrowed to the
result dtype; integer narrowing that loses information raises
:class:`TensorOverflowError` instead of wrapping.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence

import numpy as np

from . import _kernels


class TensorError(ValueError):
    """Base class for tensor evaluation errors."""


class ShapeMismatchError(TensorError):
    pass


class TensorTypeError(TensorError):
    pass


class TensorOverflowError(TensorError):
    pass


class AxisError(TensorError):
    pass


class Dtype(enum.Enum):
    INT16 = "int16"
    INT32 = "int32"
    INT64 = "int64"
    FLOAT16 = "float16"
    FLOAT32 = "float32"
    FLOAT64 = "float64"
    BOOLEAN = "boolean"

    @property
    def tag(self) -> str:
        return self.value

    @property
    def numpy_dtype(self) -> np.dtype:
        return _NP_DTYPES[self]

    @property
    def is_float(self) -> bool:
        return self in _FLOATS

    @property
    def is_int(self) -> bool:
        return self in _INTS

    @property
    def is_numeric(self) -> bool:
        return self is not Dtype.BOOLEAN

    @classmethod
    def from_tag(cls, tag: str) -> Dtype:
        """Look up a numeric type tag as written in a lexical form."""
        for d in NUMERIC_DTYPES:
            if d.value == tag:
                return d
        raise TensorTypeError(f"unknown numeric type tag {tag!r}")


_INTS = (Dtype.INT16, Dtype.INT32, Dtype.INT64)
_FLOATS = (Dtype.FLOAT16, Dtype.FLOAT32, Dtype.FLOAT64)
NUMERIC_DTYPES = _INTS + _FLOATS

_NP_DTYPES = {
    Dtype.INT16: np.dtype(np.int16),
    Dtype.INT32: np.dtype(np.int32),
    Dtype.INT64: np.dtype(np.int64),
    Dtype.FLOAT16: np.dtype(np.float16),
    Dtype.FLOAT32: np.dtype(np.float32),
    Dtype.FLOAT64: np.dtype(np.float64),
    Dtype.BOOLEAN: np.dtype(np.bool_),
}

INT_BOUNDS = {d: (int(np.iinfo(d.numpy_dtype).min), int(np.iinfo(d.numpy_dtype).max)) for d in _INTS}
FLOAT_MAX = {d: float(np.finfo(d.numpy_dtype).max) for d in _FLOATS}


def element_count(shape: Sequence[int]) -> int:
    n = 1
    for d in shape:
        n *= d
    return n


class DataTensor:
    """A dense tensor value: dtype, shape and row-major payload.

    Construct from a flat sequence of Python scalars (or an array) in
    row-major order::

        >>> DataTensor(Dtype.INT32, [2], [1, 2])
        DataTensor(int32, shape=(2,), data=[1, 2])

    Integer payloads must be integral and in range; float payloads are
    rounded to the dtype (round-to-nearest-even for float16).
    """

    __slots__ = ("_dtype", "_shape", "_array")

    def __init__(self, dtype: Dtype, shape: Iterable[int], data):
        shape = tuple(int(d) for d in shape)
        if any(d < 0 for d in shape):
            raise TensorError(f"negative dimension in shape {list(shape)}")
        flat = _coerce_flat(dtype, data)
        if flat.size != element_count(shape):
            raise ShapeMismatchError(
                f"data length {flat.size} does not match shape {list(shape)}"
            )
        self._init(dtype, flat.reshape(shape))

    @classmethod
    def _wrap(cls, dtype: Dtype, array: np.ndarray) -> DataTensor:
        # Trusted constructor for kernel outputs already in the target dtype.
        t = cls.__new__(cls)
        t._init(dtype, array)
        return t

    def _init(self, dtype: Dtype, array: np.ndarray) -> None:
        # ufuncs return numpy scalars for 0-d inputs.
        array = np.asarray(array)
        # ascontiguousarray would promote 0-d arrays to 1-d.
        if not array.flags.c_contiguous:
            array = array.copy(order="C")
        if array.dtype != dtype.numpy_dtype:
            raise TensorTypeError(f"payload dtype {array.dtype} is not {dtype.tag}")
        if array.base is not None or not array.flags.owndata:
            array = array.copy()
        array.flags.writeable = False
        self._dtype = dtype
        self._shape = tuple(array.shape)
        self._array = array

    @property
    def dtype(self) -> Dtype:
        return self._dtype

    @property
    def shape(self) -> tuple[int, ...]:
        return self._shape

    @property
    def rank(self) -> int:
        return len(self._shape)

    @property
    def size(self) -> int:
        return self._array.size

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the payload with the tensor's shape."""
        return self._array

    @property
    def data(self) -> list:
        """Flat row-major payload as Python scalars."""
        return self._array.reshape(-1).tolist()

    @classmethod
    def scalar(cls, dtype: Dtype, value) -> DataTensor:
        return cls(dtype, (), [value])

    def __eq__(self, other):
        if not isinstance(other, DataTensor):
            return NotImplemented
        return (
            self._dtype is other._dtype
            and self._shape == other._shape
            and np.array_equal(self._array, other._array, equal_nan=self._dtype.is_float)
        )

    def __hash__(self):
        return hash((self._dtype, self._shape, self._array.tobytes()))

    def __repr__(self):
        data = self.data
        if len(data) > 8:
            body = ", ".join(map(repr, data[:8])) + ", ..."
        else:
            body = ", ".join(map(repr, data))
        return f"DataTensor({self._dtype.tag}, shape={self._shape}, data=[{body}])"

    def __reduce__(self):
        return (DataTensor, (self._dtype, self._shape, self.data))


def _coerce_flat(dtype: Dtype, data) -> np.ndarray:
    if isinstance(data, np.ndarray):
        values = data.reshape(-1)
        if dtype is Dtype.BOOLEAN:
            if values.dtype != np.bool_:
                raise TensorTypeError("boolean tensor requires boolean elements")
            return values.copy()
        if values.dtype == np.bool_:
            raise TensorTypeError("numeric tensor cannot hold boolean elements")
        if dtype.is_int:
            if values.dtype.kind not in "iu":
                values = values.tolist()
            else:
                lo, hi = INT_BOUNDS[dtype]
                if values.size and (values.min() < lo or values.max() > hi):
                    raise TensorOverflowError(f"element out of range for {dtype.tag}")
                return values.astype(dtype.numpy_dtype)
        else:
            with np.errstate(over="ignore"):
                return values.astype(dtype.numpy_dtype)
    values = list(data)
    if dtype is Dtype.BOOLEAN:
        if not all(type(v) is bool or type(v) is np.bool_ for v in values):
            raise TensorTypeError("boolean tensor requires boolean elements")
        return np.array(values, dtype=np.bool_)
    if any(type(v) is bool or type(v) is np.bool_ for v in values):
        raise TensorTypeError("numeric tensor cannot hold boolean elements")
    if dtype.is_int:
        lo, hi = INT_BOUNDS[dtype]
        ints = []
        for v in values:
            try:
                iv = int(v)
            except (ValueError, OverflowError, TypeError):
                raise TensorTypeError(f"non-integral element {v!r} for {dtype.tag}") from None
            if iv != v:
                raise TensorTypeError(f"non-integral element {v!r} for {dtype.tag}")
            if iv < lo or iv > hi:
                raise TensorOverflowError(f"element {v!r} out of range for {dtype.tag}")
            ints.append(iv)
        return np.array(ints, dtype=dtype.numpy_dtype)
    with np.errstate(over="ignore"):
        return np.array([float(v) for v in values], dtype=np.float64).astype(dtype.numpy_dtype)


# -- shapes and dtypes --------------------------------------------------------

def broadcast_shapes(a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Right-aligned broadcast of two shapes."""
    n = max(len(a), len(b))
    pa = (1,) * (n - len(a)) + tuple(a)
    pb = (1,) * (n - len(b)) + tuple(b)
    out = []
    for x, y in zip(pa, pb):
        if x == y or y == 1:
            out.append(x)
        elif x == 1:
            out.append(y)
        else:
            raise ShapeMismatchError(
                f"shapes {list(a)} and {list(b)} are not broadcast-compatible"
            )
    return tuple(out)


def promote(a: Dtype, b: Dtype) -> Dtype:
    """Result dtype of a mixed numeric operation: floats dominate, then width."""
    if not (a.is_numeric and b.is_numeric):
        raise TensorTypeError("cannot promote a boolean dtype")
    if a.is_float or b.is_float:
        floats = [d for d in (a, b) if d.is_float]
        return max(floats, key=_FLOATS.index)
    return max((a, b), key=_INTS.index)


def _float_result(a: Dtype, b: Dtype) -> Dtype:
    floats = [d for d in (a, b) if d.is_float]
    if not floats:
        return Dtype.FLOAT64
    return max(floats, key=_FLOATS.index)


def _narrow_int(values: np.ndarray, dtype: Dtype) -> np.ndarray:
    lo, hi = INT_BOUNDS[dtype]
    if values.size and (values.min() < lo or values.max() > hi):
        raise TensorOverflowError(f"integer result does not fit in {dtype.tag}")
    return values.astype(dtype.numpy_dtype)


def _narrow_float(values: np.ndarray, dtype: Dtype) -> np.ndarray:
    with np.errstate(over="ignore", invalid="ignore"):
        return values.astype(dtype.numpy_dtype)


# -- elementwise --------------------------------------------------------------

UNARY_KINDS = ("abs", "neg", "exp", "log", "sqrt", "cos", "sin", "tan", "sigmoid", "not")


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-x))


_UNARY_FLOAT = {
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "cos": np.cos,
    "sin": np.sin,
    "tan": np.tan,
    "sigmoid": _sigmoid,
    "abs": np.abs,
    "neg": np.negative,
}


def elementwise_unary(kind: str, t: DataTensor) -> DataTensor:
    if kind == "not":
        if t.dtype is not Dtype.BOOLEAN:
            raise TensorTypeError("not requires a boolean tensor")
        return DataTensor._wrap(Dtype.BOOLEAN, np.logical_not(t.array))
    if kind not in _UNARY_FLOAT:
        raise TensorError(f"unknown unary operation {kind!r}")
    if not t.dtype.is_numeric:
        raise TensorTypeError(f"{kind} requires a numeric tensor")
    if t.dtype.is_int and kind in ("abs", "neg"):
        # Python ints so abs/neg of the minimum value is caught on narrowing.
        values = t.array.astype(object)
        values = np.abs(values) if kind == "abs" else -values
        return DataTensor._wrap(t.dtype, _narrow_int(values, t.dtype).reshape(t.shape))
    out_dtype = t.dtype if t.dtype.is_float else Dtype.FLOAT64
    with np.errstate(all="ignore"):
        values = _UNARY_FLOAT[kind](t.array.astype(np.float64))
    return DataTensor._wrap(out_dtype, _narrow_float(np.asarray(values), out_dtype))


NUMERIC_BINARY = ("add", "minus", "mul", "div", "pow", "min", "max", "eq", "lt", "gt")
BOOLEAN_BINARY = ("and", "or", "xor")
BINARY_KINDS = NUMERIC_BINARY + BOOLEAN_BINARY

_INT_KERNEL = {
    "add": _kernels.ADD,
    "minus": _kernels.MINUS,
    "mul": _kernels.MUL,
    "min": _kernels.MIN,
    "max": _kernels.MAX,
}

_FLOAT_UFUNC = {
    "add": np.add,
    "minus": np.subtract,
    "mul": np.multiply,
    "div": np.divide,
    "min": np.minimum,
    "max": np.maximum,
}

_COMPARE = {"eq": np.equal, "lt": np.less, "gt": np.greater}
_LOGICAL = {"and": np.logical_and, "or": np.logical_or, "xor": np.logical_xor}


def elementwise_binary(kind: str, a: DataTensor, b: DataTensor) -> DataTensor:
    if kind in _LOGICAL:
        if a.dtype is not Dtype.BOOLEAN or b.dtype is not Dtype.BOOLEAN:
            raise TensorTypeError(f"{kind} requires two boolean tensors")
        shape = broadcast_shapes(a.shape, b.shape)
        out = np.broadcast_to(_LOGICAL[kind](a.array, b.array), shape)
        return DataTensor._wrap(Dtype.BOOLEAN, out)
    if kind not in NUMERIC_BINARY:
        raise TensorError(f"unknown binary operation {kind!r}")
    if not (a.dtype.is_numeric and b.dtype.is_numeric):
        raise TensorTypeError(f"{kind} requires two numeric tensors")
    shape = broadcast_shapes(a.shape, b.shape)
    both_int = a.dtype.is_int and b.dtype.is_int

    if kind in _COMPARE:
        work = np.int64 if both_int else np.float64
        with np.errstate(invalid="ignore"):
            out = _COMPARE[kind](a.array.astype(work), b.array.astype(work))
        return DataTensor._wrap(Dtype.BOOLEAN, np.broadcast_to(out, shape))

    if both_int and kind in _INT_KERNEL:
        out_dtype = promote(a.dtype, b.dtype)
        xa = np.ascontiguousarray(np.broadcast_to(a.array.astype(np.int64), shape)).reshape(-1)
        xb = np.ascontiguousarray(np.broadcast_to(b.array.astype(np.int64), shape)).reshape(-1)
        try:
            out = _kernels.int_binary(_INT_KERNEL[kind], xa, xb)
        except OverflowError as exc:
            raise TensorOverflowError(str(exc)) from None
        return DataTensor._wrap(out_dtype, _narrow_int(out, out_dtype).reshape(shape))

    if kind in ("div", "pow"):
        out_dtype = _float_result(a.dtype, b.dtype)
    else:
        out_dtype = promote(a.dtype, b.dtype)
    if kind == "pow":
        # numpy's SIMD pow is not bit-stable across CPUs; use libm.
        xa = np.ascontiguousarray(np.broadcast_to(a.array.astype(np.float64), shape)).reshape(-1)
        xb = np.ascontiguousarray(np.broadcast_to(b.array.astype(np.float64), shape)).reshape(-1)
        out = _kernels.float_pow(xa, xb).reshape(shape)
    else:
        with np.errstate(all="ignore"):
            out = _FLOAT_UFUNC[kind](a.array.astype(np.float64), b.array.astype(np.float64))
        out = np.broadcast_to(out, shape)
    return DataTensor._wrap(out_dtype, _narrow_float(out, out_dtype))


# -- reductions ---------------------------------------------------------------

REDUCE_KINDS = ("sum", "prod", "min", "max", "norm1", "norm2")

_INT_REDUCE = {
    "sum": _kernels.R_SUM,
    "prod": _kernels.R_PROD,
    "min": _kernels.R_MIN,
    "max": _kernels.R_MAX,
}


def _check_axis(axis: int, rank: int) -> None:
    if isinstance(axis, bool) or not isinstance(axis, (int, np.integer)):
        raise AxisError(f"axis must be an integer, got {axis!r}")
    if not 0 <= axis < rank:
        raise AxisError(f"axis {axis} out of range for rank {rank}")


def reduce(kind: str, axis: int, t: DataTensor) -> DataTensor:
    """Reduce ``t`` along one axis, removing that axis from the shape."""
    if kind not in REDUCE_KINDS:
        raise TensorError(f"unknown reduction {kind!r}")
    if not t.dtype.is_numeric:
        raise TensorTypeError(f"{kind} requires a numeric tensor")
    _check_axis(axis, t.rank)
    n = t.shape[axis]
    rest = t.shape[:axis] + t.shape[axis + 1:]
    if n == 0 and kind in ("min", "max"):
        raise TensorError(f"{kind} over an empty axis")
    # Rows of the moved array are the reduction lanes.
    lanes = np.moveaxis(t.array, axis, -1).reshape(element_count(rest), n)

    if kind in ("norm1", "norm2"):
        out_dtype = t.dtype if t.dtype.is_float else Dtype.FLOAT64
        x = lanes.astype(np.float64)
        with np.errstate(all="ignore"):
            if kind == "norm1":
                out = np.abs(x).sum(axis=1)
            else:
                out = np.sqrt((x * x).sum(axis=1))
        return DataTensor._wrap(out_dtype, _narrow_float(out, out_dtype).reshape(rest))

    if t.dtype.is_int:
        x = np.ascontiguousarray(lanes.astype(np.int64))
        try:
            out = _kernels.int_reduce(_INT_REDUCE[kind], x)
        except OverflowError as exc:
            raise TensorOverflowError(str(exc)) from None
        return DataTensor._wrap(t.dtype, _narrow_int(out, t.dtype).reshape(rest))

    x = lanes.astype(np.float64)
    with np.errstate(all="ignore"):
        if kind == "sum":
            out = x.sum(axis=1)
        elif kind == "prod":
            out = x.prod(axis=1)
        elif kind == "min":
            out = x.min(axis=1)
        else:
            out = x.max(axis=1)
    return DataTensor._wrap(t.dtype, _narrow_float(out, t.dtype).reshape(rest))


# -- structure ----------------------------------------------------------------

def concat(axis: int, a: DataTensor, b: DataTensor) -> DataTensor:
    if a.rank != b.rank:
        raise ShapeMismatchError(f"rank mismatch: {a.rank} vs {b.rank}")
    if a.rank == 0:
        raise AxisError("cannot concatenate rank-0 tensors")
    _check_axis(axis, a.rank)
    if a.dtype.is_numeric != b.dtype.is_numeric:
        raise TensorTypeError("cannot concatenate numeric and boolean tensors")
    for i, (x, y) in enumerate(zip(a.shape, b.shape)):
        if i != axis and x != y:
            raise ShapeMismatchError(
                f"dimension {i} differs: {list(a.shape)} vs {list(b.shape)}"
            )
    out_dtype = promote(a.dtype, b.dtype) if a.dtype.is_numeric else Dtype.BOOLEAN
    xa = a.array
    xb = b.array
    if out_dtype.is_float:
        xa = xa.astype(np.float64)
        xb = xb.astype(np.float64)
    out = np.concatenate([xa, xb], axis=axis).astype(out_dtype.numpy_dtype)
    return DataTensor._wrap(out_dtype, out)


def slice_ranges(t: DataTensor, ranges: Sequence[tuple[int, int]]) -> DataTensor:
    """Copy the half-open index box ``[start, end)`` per axis."""
    if len(ranges) != t.rank:
        raise ShapeMismatchError(f"expected {t.rank} ranges, got {len(ranges)}")
    index = []
    for i, (start, end) in enumerate(ranges):
        dim = t.shape[i]
        if start > end:
            raise AxisError(f"range start {start} exceeds end {end} on axis {i}")
        if start < 0 or end > dim:
            raise AxisError(f"range [{start}, {end}) out of bounds for axis {i} of size {dim}")
        index.append(slice(int(start), int(end)))
    return DataTensor._wrap(t.dtype, t.array[tuple(index)])


def slice_axis(t: DataTensor, axis: int, start: int, end: int) -> DataTensor:
    _check_axis(axis, t.rank)
    ranges = [(0, d) for d in t.shape]
    ranges[axis] = (start, end)
    return slice_ranges(t, ranges)


# -- similarity ---------------------------------------------------------------

SIMILARITY_KINDS = {
    "cosine": _kernels.S_COSINE,
    "euclidean": _kernels.S_EUCLIDEAN,
    "manhattan": _kernels.S_MANHATTAN,
    "dot": _kernels.S_DOT,
}


def similarity(kind: str, a: DataTensor, b: DataTensor) -> float:
    if kind not in SIMILARITY_KINDS:
        raise TensorError(f"unknown similarity {kind!r}")
    if not (a.dtype.is_numeric and b.dtype.is_numeric):
        raise TensorTypeError(f"{kind} requires two numeric tensors")
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shapes differ: {list(a.shape)} vs {list(b.shape)}")
    if a.size == 0:
        raise TensorError(f"{kind} of empty tensors")
    xa = np.ascontiguousarray(a.array, dtype=np.float64).reshape(-1)
    xb = np.ascontiguousarray(b.array, dtype=np.float64).reshape(-1)
    try:
        return float(_kernels.similarity(SIMILARITY_KINDS[kind], xa, xb))
    except ZeroDivisionError as exc:
        raise TensorError(str(exc)) from None


def is_finite(t: DataTensor) -> bool:
    if not t.dtype.is_float:
        return True
    return bool(np.isfinite(t.array).all())


__all__ = [
    "AxisError",
    "DataTensor",
    "Dtype",
    "NUMERIC_DTYPES",
    "ShapeMismatchError",
    "TensorError",
    "TensorOverflowError",
    "TensorTypeError",
    "broadcast_shapes",
    "concat",
    "element_count",
    "elementwise_binary",
    "elementwise_unary",
    "promote",
    "reduce",
    "similarity",
    "slice_axis",
    "slice_ranges",
]
