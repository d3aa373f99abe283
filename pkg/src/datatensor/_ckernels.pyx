# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Semantics are identical to ``_pykernels``."""

import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs, isinf, pow
from libc.stdint cimport int64_t

cnp.import_array()

cdef extern from *:
    bint __builtin_add_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_sub_overflow(int64_t a, int64_t b, int64_t *res) nogil
    bint __builtin_mul_overflow(int64_t a, int64_t b, int64_t *res) nogil

cdef enum:
    ADD = 0
    MINUS = 1
    MUL = 2
    MIN = 3
    MAX = 4

cdef enum:
    R_SUM = 0
    R_PROD = 1
    R_MIN = 2
    R_MAX = 3

cdef enum:
    S_COSINE = 0
    S_EUCLIDEAN = 1
    S_MANHATTAN = 2
    S_DOT = 3


def int_binary(int kind, const int64_t[::1] a, const int64_t[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    cdef bint overflow = False
    if kind < ADD or kind > MAX:
        raise ValueError(f"unknown kernel op {kind}")
    out = np.empty(n, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        if kind == ADD:
            for i in range(n):
                if __builtin_add_overflow(a[i], b[i], &o[i]):
                    overflow = True
                    break
        elif kind == MINUS:
            for i in range(n):
                if __builtin_sub_overflow(a[i], b[i], &o[i]):
                    overflow = True
                    break
        elif kind == MUL:
            for i in range(n):
                if __builtin_mul_overflow(a[i], b[i], &o[i]):
                    overflow = True
                    break
        elif kind == MIN:
            for i in range(n):
                o[i] = a[i] if a[i] <= b[i] else b[i]
        else:
            for i in range(n):
                o[i] = a[i] if a[i] >= b[i] else b[i]
    if overflow:
        raise OverflowError("integer result does not fit in 64 bits")
    return out


def int_reduce(int kind, const int64_t[:, ::1] x):
    cdef Py_ssize_t rows = x.shape[0]
    cdef Py_ssize_t cols = x.shape[1]
    cdef Py_ssize_t r, c
    cdef int64_t acc
    cdef bint overflow = False
    if kind < R_SUM or kind > R_MAX:
        raise ValueError(f"unknown kernel op {kind}")
    out = np.empty(rows, dtype=np.int64)
    cdef int64_t[::1] o = out
    with nogil:
        for r in range(rows):
            if kind == R_SUM:
                acc = 0
                for c in range(cols):
                    if __builtin_add_overflow(acc, x[r, c], &acc):
                        overflow = True
                        break
            elif kind == R_PROD:
                acc = 1
                for c in range(cols):
                    if __builtin_mul_overflow(acc, x[r, c], &acc):
                        overflow = True
                        break
            elif kind == R_MIN:
                acc = x[r, 0]
                for c in range(cols):
                    if x[r, c] < acc:
                        acc = x[r, c]
            else:
                acc = x[r, 0]
                for c in range(cols):
                    if x[r, c] > acc:
                        acc = x[r, c]
            if overflow:
                break
            o[r] = acc
    if overflow:
        raise OverflowError("integer result does not fit in 64 bits")
    return out


def similarity(int kind, const double[::1] a, const double[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    cdef double acc = 0.0, na = 0.0, nb = 0.0, d, denom, prod
    if kind == S_COSINE:
        with nogil:
            for i in range(n):
                acc += a[i] * b[i]
                na += a[i] * a[i]
                nb += b[i] * b[i]
        prod = na * nb
        if prod == 0.0 or isinf(prod):
            denom = sqrt(na) * sqrt(nb)
        else:
            denom = sqrt(prod)
        if denom == 0.0:
            raise ZeroDivisionError("cosine similarity of a zero-norm tensor")
        return acc / denom
    if kind == S_EUCLIDEAN:
        with nogil:
            for i in range(n):
                d = a[i] - b[i]
                acc += d * d
        return sqrt(acc)
    if kind == S_MANHATTAN:
        with nogil:
            for i in range(n):
                acc += fabs(a[i] - b[i])
        return acc
    if kind == S_DOT:
        with nogil:
            for i in range(n):
                acc += a[i] * b[i]
        return acc
    raise ValueError(f"unknown kernel op {kind}")


def float_pow(const double[::1] a, const double[::1] b):
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    out = np.empty(n, dtype=np.float64)
    cdef double[::1] o = out
    with nogil:
        for i in range(n):
            o[i] = pow(a[i], b[i])
    return out
