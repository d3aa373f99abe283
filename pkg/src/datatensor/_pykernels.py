"""Pure-Python implementations of the hot numeric kernels.

Used when the compiled ``_ckernels`` extension is unavailable. Every
function here mirrors the Cython version operation for operation, so both
backends return bit-identical results.
"""

import math

import numpy as np

INT64_MIN = -(2**63)
INT64_MAX = 2**63 - 1

ADD, MINUS, MUL, MIN, MAX = 0, 1, 2, 3, 4
R_SUM, R_PROD, R_MIN, R_MAX = 0, 1, 2, 3
S_COSINE, S_EUCLIDEAN, S_MANHATTAN, S_DOT = 0, 1, 2, 3


def _check(value):
    if value < INT64_MIN or value > INT64_MAX:
        raise OverflowError("integer result does not fit in 64 bits")
    return value


def int_binary(kind, a, b):
    """Elementwise checked int64 arithmetic over two equal-length 1-D arrays."""
    xs = a.tolist()
    ys = b.tolist()
    if kind == ADD:
        out = [_check(x + y) for x, y in zip(xs, ys)]
    elif kind == MINUS:
        out = [_check(x - y) for x, y in zip(xs, ys)]
    elif kind == MUL:
        out = [_check(x * y) for x, y in zip(xs, ys)]
    elif kind == MIN:
        out = [x if x <= y else y for x, y in zip(xs, ys)]
    elif kind == MAX:
        out = [x if x >= y else y for x, y in zip(xs, ys)]
    else:
        raise ValueError(f"unknown kernel op {kind}")
    return np.array(out, dtype=np.int64)


def int_reduce(kind, x):
    """Checked row-wise reduction of a 2-D int64 array; returns one value per row."""
    rows = x.tolist()
    out = []
    for row in rows:
        if kind == R_SUM:
            acc = 0
            for v in row:
                acc = _check(acc + v)
        elif kind == R_PROD:
            acc = 1
            for v in row:
                acc = _check(acc * v)
        elif kind == R_MIN:
            acc = row[0]
            for v in row:
                if v < acc:
                    acc = v
        elif kind == R_MAX:
            acc = row[0]
            for v in row:
                if v > acc:
                    acc = v
        else:
            raise ValueError(f"unknown kernel op {kind}")
        out.append(acc)
    return np.array(out, dtype=np.int64).reshape(x.shape[0])


def similarity(kind, a, b):
    """Similarity or distance between two equal-length float64 vectors."""
    xs = a.tolist()
    ys = b.tolist()
    if kind == S_COSINE:
        dot = 0.0
        na = 0.0
        nb = 0.0
        for x, y in zip(xs, ys):
            dot += x * y
            na += x * x
            nb += y * y
        prod = na * nb
        if prod == 0.0 or math.isinf(prod):
            # product under/overflowed: fall back to separate roots
            denom = math.sqrt(na) * math.sqrt(nb)
        else:
            denom = math.sqrt(prod)
        if denom == 0.0:
            raise ZeroDivisionError("cosine similarity of a zero-norm tensor")
        return dot / denom
    if kind == S_EUCLIDEAN:
        acc = 0.0
        for x, y in zip(xs, ys):
            d = x - y
            acc += d * d
        return math.sqrt(acc)
    if kind == S_MANHATTAN:
        acc = 0.0
        for x, y in zip(xs, ys):
            acc += abs(x - y)
        return acc
    if kind == S_DOT:
        acc = 0.0
        for x, y in zip(xs, ys):
            acc += x * y
        return acc
    raise ValueError(f"unknown kernel op {kind}")


def _odd_integer(y):
    return math.isfinite(y) and y == math.floor(y) and int(y) % 2 == 1


def _pow(x, y):
    # math.pow raises where C pow returns an IEEE special value.
    try:
        return math.pow(x, y)
    except OverflowError:
        return -math.inf if x < 0 and _odd_integer(y) else math.inf
    except ValueError:
        if x == 0.0:
            return math.copysign(math.inf, x) if _odd_integer(y) else math.inf
        return math.nan


def float_pow(a, b):
    """Elementwise libm ``pow`` over two equal-length float64 arrays."""
    return np.array([_pow(x, y) for x, y in zip(a.tolist(), b.tolist())], dtype=np.float64)
