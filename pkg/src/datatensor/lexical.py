"""JSON lexical forms of tensor literals.

Parsing is strict: RFC 8259 JSON only (no ``NaN``/``Infinity``), no
duplicate or unknown keys, integer tags accept only integer tokens, and
float values that overflow the declared precision are rejected. Output is
canonical: keys ordered ``type``, ``shape``, ``data`` with no whitespace.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .tensor import FLOAT_MAX, INT_BOUNDS, DataTensor, Dtype, NUMERIC_DTYPES, element_count

DT_NS = "https://w3id.org/rdf-tensor/datatypes#"
NUMERIC_DATATENSOR = DT_NS + "NumericDataTensor"
BOOLEAN_DATATENSOR = DT_NS + "BooleanDataTensor"
TENSOR_DATATYPES = (NUMERIC_DATATENSOR, BOOLEAN_DATATENSOR)

_TYPE_TAGS = {d.tag: d for d in NUMERIC_DTYPES}


class IllTypedLiteralError(ValueError):
    """The lexical form violates the tensor datatype's rules."""

    def __init__(self, code: str, message: str, path: str = "$"):
        super().__init__(f"{message} (at {path})")
        self.code = code
        self.message = message
        self.path = path


class NonFiniteValueError(ValueError):
    pass


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    path: str


@dataclass
class ValidationReport:
    issues: list[Issue] = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.issues


class _Object(dict):
    duplicates: tuple = ()


def _object_pairs(pairs):
    obj = _Object()
    dups = []
    for k, v in pairs:
        if k in obj:
            dups.append(k)
        obj[k] = v
    obj.duplicates = tuple(dups)
    return obj


def _reject_constant(name):
    raise ValueError(f"{name} is not valid JSON")


_DECODER = json.JSONDecoder(object_pairs_hook=_object_pairs, parse_constant=_reject_constant)


def is_tensor_datatype(iri: str) -> bool:
    return iri in TENSOR_DATATYPES


def _element_issue(value, dtype: Dtype | None) -> tuple[str, str] | None:
    """Check one ``data`` element; returns (code, message) or None."""
    if dtype is None:
        if type(value) is not bool:
            return "bad-element", f"expected a JSON boolean, got {json.dumps(value)}"
        return None
    if type(value) is bool or type(value) not in (int, float):
        return "bad-element", f"expected a JSON number, got {json.dumps(value)}"
    if dtype.is_int:
        if type(value) is not int:
            return "bad-element", f"{dtype.tag} element must be an integer token, got {value!r}"
        lo, hi = INT_BOUNDS[dtype]
        if not lo <= value <= hi:
            return "out-of-range", f"{value} out of range for {dtype.tag}"
        return None
    try:
        fv = float(value)
    except OverflowError:
        return "out-of-range", f"{value!r} overflows {dtype.tag}"
    if not math.isfinite(fv):
        return "non-finite", f"{value!r} is not a finite float"
    if _overflows(np.array([fv]), dtype):
        return "out-of-range", f"{value!r} overflows {dtype.tag}"
    return None


def _overflows(arr: np.ndarray, dtype: Dtype) -> bool:
    if dtype is Dtype.FLOAT16:
        return bool(arr.size) and float(np.abs(arr).max()) > FLOAT_MAX[dtype]
    # Wider floats overflow only when rounding yields infinity, so the
    # shortest repr of finfo.max (slightly above it) still parses.
    with np.errstate(over="ignore"):
        return not np.isfinite(arr.astype(dtype.numpy_dtype)).all()


def _elements_ok(data: list, dtype: Dtype | None) -> bool:
    """Vectorised fast path; False means 'look closer', not necessarily invalid."""
    if not data:
        return True
    types = set(map(type, data))
    if dtype is None:
        return types == {bool}
    if dtype.is_int:
        if types != {int}:
            return False
        lo, hi = INT_BOUNDS[dtype]
        return lo <= min(data) and max(data) <= hi
    if not types <= {int, float}:
        return False
    try:
        arr = np.array(data, dtype=np.float64)
    except OverflowError:
        return False
    if not np.isfinite(arr).all():
        return False
    return not _overflows(arr, dtype)


def _check(parsed, datatype: str, first_only: bool) -> tuple[list[Issue], Dtype | None, list | None, list | None]:
    issues: list[Issue] = []

    def add(code, message, path="$"):
        issues.append(Issue(code, message, path))
        return first_only

    if datatype not in TENSOR_DATATYPES:
        add("unknown-datatype", f"{datatype} is not a tensor datatype")
        return issues, None, None, None
    numeric = datatype == NUMERIC_DATATENSOR
    if not isinstance(parsed, dict):
        add("not-object", "root of the lexical form must be a JSON object")
        return issues, None, None, None
    for k in parsed.duplicates:
        if add("duplicate-key", f"duplicate key {k!r}", f"$.{k}"):
            return issues, None, None, None
    allowed = ("type", "shape", "data") if numeric else ("shape", "data")
    for k in parsed:
        if k not in allowed:
            if add("unknown-key", f"unexpected key {k!r}", f"$.{k}"):
                return issues, None, None, None

    dtype = None
    if numeric:
        if "type" not in parsed:
            if add("missing-key", "numeric tensor requires a 'type' key"):
                return issues, None, None, None
        else:
            tag = parsed["type"]
            if not isinstance(tag, str) or tag not in _TYPE_TAGS:
                if add("bad-type", f"unknown type tag {json.dumps(tag)}", "$.type"):
                    return issues, None, None, None
            else:
                dtype = _TYPE_TAGS[tag]
    type_ok = not numeric or dtype is not None

    shape = None
    if "shape" not in parsed:
        if add("missing-key", "missing 'shape' key"):
            return issues, None, None, None
    elif not isinstance(parsed["shape"], list):
        if add("bad-shape", "'shape' must be an array", "$.shape"):
            return issues, None, None, None
    else:
        shape_ok = True
        for i, d in enumerate(parsed["shape"]):
            if type(d) is not int or d < 0:
                shape_ok = False
                if add("bad-shape", f"shape entry {json.dumps(d)} is not a non-negative integer", f"$.shape[{i}]"):
                    return issues, None, None, None
        if shape_ok:
            shape = parsed["shape"]

    data = None
    if "data" not in parsed:
        if add("missing-key", "missing 'data' key"):
            return issues, None, None, None
    elif not isinstance(parsed["data"], list):
        if add("bad-data", "'data' must be an array", "$.data"):
            return issues, None, None, None
    else:
        data = parsed["data"]
        elem_dtype = dtype if numeric else None
        if type_ok and not _elements_ok(data, elem_dtype):
            for i, v in enumerate(data):
                problem = _element_issue(v, elem_dtype)
                if problem is not None:
                    if add(problem[0], problem[1], f"$.data[{i}]"):
                        return issues, None, None, None
        if shape is not None and len(data) != element_count(shape):
            if add(
                "length-mismatch",
                f"data length {len(data)} does not equal shape product {element_count(shape)}",
                "$.data",
            ):
                return issues, None, None, None
    return issues, (dtype if numeric else Dtype.BOOLEAN), shape, data


def _decode(lexical: str):
    if not isinstance(lexical, str):
        raise IllTypedLiteralError("json-syntax", "lexical form must be a string")
    try:
        return _DECODER.decode(lexical)
    except (ValueError, RecursionError) as exc:
        raise IllTypedLiteralError("json-syntax", f"invalid JSON: {exc}") from None


def parse_tensor_literal(lexical: str, datatype: str) -> DataTensor:
    """Parse a lexical form into a :class:`DataTensor`.

    Raises :class:`IllTypedLiteralError` naming the first violated rule.
    """
    parsed = _decode(lexical)
    issues, dtype, shape, data = _check(parsed, datatype, first_only=True)
    if issues:
        i = issues[0]
        raise IllTypedLiteralError(i.code, i.message, i.path)
    if dtype is Dtype.BOOLEAN:
        flat = np.array(data, dtype=np.bool_)
    elif dtype.is_int:
        flat = np.array(data, dtype=dtype.numpy_dtype)
    else:
        flat = np.array(data, dtype=np.float64).astype(dtype.numpy_dtype)
    return DataTensor._wrap(dtype, flat.reshape(shape))


def validate(lexical: str, datatype: str) -> ValidationReport:
    """Collect every detectable rule violation instead of stopping at the first."""
    try:
        parsed = _decode(lexical)
    except IllTypedLiteralError as exc:
        return ValidationReport([Issue(exc.code, exc.message, exc.path)])
    issues, _, _, _ = _check(parsed, datatype, first_only=False)
    return ValidationReport(issues)


def _format_float(value, dtype: Dtype) -> str:
    if dtype is Dtype.FLOAT64:
        s = repr(float(value))
    else:
        # numpy's repr is the shortest string that round-trips at this precision
        s = str(dtype.numpy_dtype.type(value))
    if "." not in s and "e" not in s and "n" not in s:
        s += ".0"
    return s


def serialize_tensor(t: DataTensor, target: str | None = None) -> str:
    """Canonical lexical form of ``t``.

    ``target`` defaults to the datatype matching the tensor's dtype class.
    """
    expected = BOOLEAN_DATATENSOR if t.dtype is Dtype.BOOLEAN else NUMERIC_DATATENSOR
    if target is None:
        target = expected
    if target != expected:
        raise ValueError(f"{t.dtype.tag} tensor cannot be written as {target}")
    shape = ",".join(str(d) for d in t.shape)
    flat = t.array.reshape(-1)
    if t.dtype is Dtype.BOOLEAN:
        body = ",".join("true" if v else "false" for v in flat.tolist())
        return '{"shape":[%s],"data":[%s]}' % (shape, body)
    if t.dtype.is_float:
        if not np.isfinite(flat).all():
            raise NonFiniteValueError("NaN and infinity have no JSON lexical form")
        body = ",".join(_format_float(v, t.dtype) for v in flat)
    else:
        body = ",".join(str(v) for v in flat.tolist())
    return '{"type":"%s","shape":[%s],"data":[%s]}' % (t.dtype.tag, shape, body)


def datatype_for(t: DataTensor) -> str:
    return BOOLEAN_DATATENSOR if t.dtype is Dtype.BOOLEAN else NUMERIC_DATATENSOR
