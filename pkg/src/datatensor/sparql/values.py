"""Operator semantics over RDF terms: numerics, booleans, strings and tensors."""

from __future__ import annotations

import math
from decimal import Decimal, InvalidOperation

import numpy as np

from ..lexical import IllTypedLiteralError
from ..tensor import DataTensor, Dtype
from ..terms import (
    RDF_LANGSTRING,
    XSD,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_FLOAT,
    XSD_INTEGER,
    XSD_STRING,
    IRI,
    BlankNode,
    Literal,
)


class ExprError(Exception):
    """An expression evaluation error; never aborts a query."""


_INTEGER_TYPES = {
    XSD + t
    for t in (
        "integer", "int", "long", "short", "byte", "nonNegativeInteger", "positiveInteger",
        "nonPositiveInteger", "negativeInteger", "unsignedLong", "unsignedInt",
        "unsignedShort", "unsignedByte",
    )
}
NUMERIC_TYPES = _INTEGER_TYPES | {XSD_DECIMAL, XSD_FLOAT, XSD_DOUBLE}

# Promotion rank: integer < decimal < float < double.
_RANK = {XSD_INTEGER: 0, XSD_DECIMAL: 1, XSD_FLOAT: 2, XSD_DOUBLE: 3}
_BY_RANK = {v: k for k, v in _RANK.items()}

TRUE = Literal("true", XSD_BOOLEAN)
FALSE = Literal("false", XSD_BOOLEAN)


def boolean(v: bool) -> Literal:
    return TRUE if v else FALSE


def is_numeric(term) -> bool:
    return isinstance(term, Literal) and term.datatype in NUMERIC_TYPES


def _parse_xsd_float(s: str) -> float:
    s = s.strip()
    special = {"INF": math.inf, "+INF": math.inf, "-INF": -math.inf, "NaN": math.nan}
    if s in special:
        return special[s]
    if not s or s.lower().lstrip("+-") in ("inf", "infinity", "nan"):
        raise ValueError(s)
    return float(s)


def numeric_value(term) -> tuple[int | Decimal | float, str]:
    """(Python value, base numeric datatype) of a numeric literal."""
    if not isinstance(term, Literal) or term.datatype not in NUMERIC_TYPES:
        raise ExprError(f"not a numeric literal: {term!r}")
    lex = term.lexical
    try:
        if term.datatype in _INTEGER_TYPES:
            if not lex.strip().lstrip("+-").isdigit():
                raise ValueError(lex)
            return int(lex), XSD_INTEGER
        if term.datatype == XSD_DECIMAL:
            if "e" in lex.lower() or lex.strip().lower().lstrip("+-") in ("inf", "infinity", "nan"):
                raise ValueError(lex)
            return Decimal(lex), XSD_DECIMAL
        return _parse_xsd_float(lex), term.datatype
    except (ValueError, InvalidOperation):
        raise ExprError(f"ill-typed numeric literal {lex!r}") from None


def format_double(v: float) -> str:
    if math.isnan(v):
        return "NaN"
    if math.isinf(v):
        return "INF" if v > 0 else "-INF"
    return repr(float(v))


def format_decimal(v: Decimal) -> str:
    if v == v.to_integral_value():
        return str(int(v)) + ".0"
    s = format(v.normalize(), "f")
    return s


def numeric_literal(value, datatype: str) -> Literal:
    if datatype == XSD_INTEGER:
        return Literal(str(int(value)), XSD_INTEGER)
    if datatype == XSD_DECIMAL:
        return Literal(format_decimal(Decimal(value)), XSD_DECIMAL)
    if datatype == XSD_FLOAT:
        return Literal(format_double(float(np.float32(value))), XSD_FLOAT)
    return Literal(format_double(float(value)), XSD_DOUBLE)


def double(v: float) -> Literal:
    return Literal(format_double(v), XSD_DOUBLE)


def _coerce(value, datatype):
    if datatype == XSD_INTEGER:
        return value
    if datatype == XSD_DECIMAL:
        return Decimal(value)
    if datatype == XSD_FLOAT:
        return float(np.float32(float(value)))
    return float(value)


def arithmetic(op: str, a, b) -> Literal:
    x, tx = numeric_value(a)
    y, ty = numeric_value(b)
    rank = max(_RANK[tx], _RANK[ty])
    if op == "/" and rank == 0:
        rank = 1  # integer division yields decimal
    dt = _BY_RANK[rank]
    x, y = _coerce(x, dt), _coerce(y, dt)
    try:
        if op == "+":
            r = x + y
        elif op == "-":
            r = x - y
        elif op == "*":
            r = x * y
        else:
            if dt in (XSD_DECIMAL, XSD_INTEGER) and y == 0:
                raise ExprError("division by zero")
            if dt in (XSD_FLOAT, XSD_DOUBLE) and y == 0:
                if x == 0 or math.isnan(x):
                    r = math.nan
                else:
                    r = math.copysign(math.inf, x) * math.copysign(1.0, y)
            else:
                r = x / y
    except (ArithmeticError, InvalidOperation) as exc:
        raise ExprError(str(exc)) from None
    return numeric_literal(r, dt)


def ebv(term) -> bool:
    """Effective boolean value."""
    if not isinstance(term, Literal):
        raise ExprError("no effective boolean value for a non-literal")
    if term.datatype == XSD_BOOLEAN:
        if term.lexical in ("true", "1"):
            return True
        if term.lexical in ("false", "0"):
            return False
        raise ExprError("ill-typed boolean")
    if term.datatype in NUMERIC_TYPES:
        v, _ = numeric_value(term)
        if isinstance(v, float) and math.isnan(v):
            return False
        return v != 0
    if term.datatype in (XSD_STRING, RDF_LANGSTRING):
        return len(term.lexical) > 0
    raise ExprError(f"no effective boolean value for datatype {term.datatype}")


def tensor_of(term) -> DataTensor:
    if not isinstance(term, Literal) or not term.is_tensor:
        raise ExprError(f"not a tensor literal: {term!r}")
    try:
        return term.tensor_value()
    except IllTypedLiteralError as exc:
        raise ExprError(str(exc)) from None


def tensors_equal(a: DataTensor, b: DataTensor) -> bool:
    """Value equality: same dtype class and shape, equal elements after promotion."""
    if a.dtype.is_numeric != b.dtype.is_numeric or a.shape != b.shape:
        return False
    if a.dtype is Dtype.BOOLEAN:
        return bool(np.array_equal(a.array, b.array))
    if a.dtype.is_int and b.dtype.is_int:
        return bool(np.array_equal(a.array.astype(np.int64), b.array.astype(np.int64)))
    return bool(np.array_equal(a.array.astype(np.float64), b.array.astype(np.float64)))


def _boolean_value(term) -> bool:
    if term.lexical in ("true", "1"):
        return True
    if term.lexical in ("false", "0"):
        return False
    raise ExprError("ill-typed boolean")


def equals(a, b) -> bool:
    """SPARQL ``=``; raises ExprError where the operands are incomparable."""
    if isinstance(a, Literal) and isinstance(b, Literal):
        if a.datatype in NUMERIC_TYPES and b.datatype in NUMERIC_TYPES:
            return compare(a, b) == 0
        if a.is_tensor and b.is_tensor:
            return tensors_equal(tensor_of(a), tensor_of(b))
        if a.datatype == XSD_BOOLEAN and b.datatype == XSD_BOOLEAN:
            return _boolean_value(a) == _boolean_value(b)
        if a.datatype == XSD_STRING and b.datatype == XSD_STRING:
            return a.lexical == b.lexical
        if a == b:
            return True
        raise ExprError("incomparable literals")
    return a == b


def _num_cmp(x, y) -> int:
    if isinstance(x, float) or isinstance(y, float):
        x, y = float(x), float(y)
        if math.isnan(x) or math.isnan(y):
            raise ExprError("NaN is unordered")
    elif isinstance(x, Decimal) or isinstance(y, Decimal):
        x, y = Decimal(x), Decimal(y)
    return (x > y) - (x < y)


def compare(a, b) -> int:
    """Three-way comparison for ``<``-style operators."""
    if not (isinstance(a, Literal) and isinstance(b, Literal)):
        raise ExprError("only literals are ordered")
    if a.datatype in NUMERIC_TYPES and b.datatype in NUMERIC_TYPES:
        x, _ = numeric_value(a)
        y, _ = numeric_value(b)
        return _num_cmp(x, y)
    if a.datatype == XSD_STRING and b.datatype == XSD_STRING:
        return (a.lexical > b.lexical) - (a.lexical < b.lexical)
    if a.datatype == XSD_BOOLEAN and b.datatype == XSD_BOOLEAN:
        x, y = _boolean_value(a), _boolean_value(b)
        return (x > y) - (x < y)
    raise ExprError("incomparable literals")


def canonical_key(term):
    """Hashable identity used by DISTINCT and GROUP BY; tensors use their canonical form."""
    if isinstance(term, Literal) and term.is_tensor:
        try:
            return Literal.from_tensor(term.tensor_value())
        except ValueError:
            return term
    return term


def order_key(term):
    """Sort key for ORDER BY: unbound < blank nodes < IRIs < literals."""
    if term is None:
        return (0,)
    if isinstance(term, BlankNode):
        return (1, term.label)
    if isinstance(term, IRI):
        return (2, term.value)
    if term.datatype in NUMERIC_TYPES:
        try:
            v, _ = numeric_value(term)
        except ExprError:
            return (4, term.datatype, term.lexical)
        if isinstance(v, float) and math.isnan(v):
            return (3, 1, 0.0, term.lexical)
        return (3, 0, v if not isinstance(v, Decimal) else float(v), term.lexical)
    if term.is_tensor:
        return (5, canonical_key(term).lexical)
    if term.datatype == XSD_STRING:
        return (4, "", term.lexical)
    return (4, term.datatype, term.lexical)
