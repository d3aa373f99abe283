"""The compiled and pure-Python kernels must agree bit for bit."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from datatensor import _pykernels as py

try:
    from datatensor import _ckernels as cy
except ImportError:  # extension not built
    cy = None

needs_cython = pytest.mark.skipif(cy is None, reason="compiled kernels not built")

I64 = st.integers(-(2**63), 2**63 - 1)
SMALL = st.integers(-(2**20), 2**20)


def _both(fn, *args):
    results = []
    for mod in (py, cy):
        try:
            results.append(("ok", getattr(mod, fn)(*args)))
        except (OverflowError, ZeroDivisionError) as exc:
            results.append(("err", type(exc)))
    return results


def test_backend_selected():
    from datatensor import _kernels

    assert _kernels.BACKEND in ("cython", "python")
    if cy is not None:
        assert _kernels.BACKEND in ("cython", "python")


def test_python_overflow():
    with pytest.raises(OverflowError):
        py.int_binary(py.ADD, np.array([2**63 - 1]), np.array([1]))
    with pytest.raises(OverflowError):
        py.int_reduce(py.R_PROD, np.array([[2**32, 2**32]]))


@needs_cython
@settings(max_examples=300)
@given(st.sampled_from([py.ADD, py.MINUS, py.MUL, py.MIN, py.MAX]),
       st.lists(st.tuples(st.one_of(I64, SMALL), st.one_of(I64, SMALL)), max_size=20))
def test_int_binary_parity(kind, pairs):
    a = np.array([p[0] for p in pairs], dtype=np.int64)
    b = np.array([p[1] for p in pairs], dtype=np.int64)
    (sa, ra), (sb, rb) = _both("int_binary", kind, a, b)
    assert sa == sb
    if sa == "ok":
        assert ra.dtype == rb.dtype == np.int64 and np.array_equal(ra, rb)
    else:
        assert ra is rb


@needs_cython
@settings(max_examples=300)
@given(st.sampled_from([py.R_SUM, py.R_PROD, py.R_MIN, py.R_MAX]),
       st.integers(1, 4), st.integers(1, 6), st.data())
def test_int_reduce_parity(kind, rows, cols, data):
    values = data.draw(st.lists(st.one_of(I64, SMALL), min_size=rows * cols, max_size=rows * cols))
    x = np.array(values, dtype=np.int64).reshape(rows, cols)
    (sa, ra), (sb, rb) = _both("int_reduce", kind, x)
    assert sa == sb
    if sa == "ok":
        assert np.array_equal(ra, rb)


@needs_cython
def test_int_reduce_empty_rows():
    x = np.zeros((3, 0), dtype=np.int64)
    assert np.array_equal(py.int_reduce(py.R_SUM, x), cy.int_reduce(py.R_SUM, x))
    assert np.array_equal(py.int_reduce(py.R_PROD, x), cy.int_reduce(py.R_PROD, x))


@needs_cython
@settings(max_examples=300)
@given(st.sampled_from([py.S_COSINE, py.S_EUCLIDEAN, py.S_MANHATTAN, py.S_DOT]),
       st.integers(1, 64), st.integers(0, 2**32 - 1))
def test_similarity_parity(kind, n, seed):
    rng = np.random.default_rng(seed)
    a = rng.standard_normal(n) * 10.0 ** rng.integers(-200, 200)
    b = rng.standard_normal(n) * 10.0 ** rng.integers(-200, 200)
    (sa, ra), (sb, rb) = _both("similarity", kind, a, b)
    assert sa == sb
    if sa == "ok":
        assert ra == rb or (np.isnan(ra) and np.isnan(rb))


@needs_cython
def test_cosine_zero_norm_both_raise():
    z = np.zeros(3)
    for mod in (py, cy):
        with pytest.raises(ZeroDivisionError):
            mod.similarity(py.S_COSINE, z, np.ones(3))


SPECIAL = [0.0, -0.0, 1.0, -1.0, 2.0, -2.0, 0.5, -0.5, 3.0, -3.0, 1e308, -1e308, 1e-308,
           float("inf"), float("-inf"), float("nan"), 1023.0, 1024.0, -1075.0]


@needs_cython
def test_float_pow_special_values_parity():
    pairs = [(x, y) for x in SPECIAL for y in SPECIAL]
    a = np.array([p[0] for p in pairs])
    b = np.array([p[1] for p in pairs])
    ra = py.float_pow(a, b)
    rb = cy.float_pow(a, b)
    assert np.array_equal(ra, rb, equal_nan=True)
    real = ~np.isnan(ra)
    assert np.array_equal(np.signbit(ra[real]), np.signbit(rb[real]))


@needs_cython
@settings(max_examples=200)
@given(st.lists(st.tuples(st.floats(), st.floats()), max_size=20))
def test_float_pow_parity(pairs):
    a = np.array([p[0] for p in pairs], dtype=np.float64)
    b = np.array([p[1] for p in pairs], dtype=np.float64)
    assert np.array_equal(py.float_pow(a, b), cy.float_pow(a, b), equal_nan=True)
