# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Semantics are the mirror of ``_pure``; keep both in sync.

Rule codes: 0 = additive-memory, 1 = source-sum, 2 = rescaled.
"""

from cpython cimport array
import array

from libc.math cimport exp

BACKEND = "compiled"

RULE_ADDITIVE = 0
RULE_SOURCE_SUM = 1
RULE_RESCALED = 2

cdef array.array _DOUBLE_TEMPLATE = array.array("d")


def sigmoid(double x, double steepness):
    return 1.0 / (1.0 + exp(-steepness * x))


def step(values, weights, int n, int rule, double steepness, bint include_diagonal, clamped):
    """One synchronous update of all concepts; clamped entries copy through."""
    cdef double[:] v = values
    cdef double[:] w = weights
    cdef signed char[:] c = clamped
    cdef array.array out_arr = array.clone(_DOUBLE_TEMPLATE, n, zero=False)
    cdef double[:] out = out_arr
    cdef int i, j
    cdef double s, a

    for i in range(n):
        if c[i]:
            out[i] = v[i]
            continue
        if rule == 0:
            s = v[i]
        elif rule == 2:
            s = 2.0 * v[i] - 1.0
        else:
            s = 0.0
        for j in range(n):
            if j == i and not include_diagonal:
                continue
            a = 2.0 * v[j] - 1.0 if rule == 2 else v[j]
            s += a * w[j * n + i]
        out[i] = 1.0 / (1.0 + exp(-steepness * s))
    return out_arr


def nhl_sweep(weights, values, int n, double eta, double gamma):
    """One full-matrix Hebbian adaptation pass; zero weights never change."""
    cdef double[:] w = weights
    cdef double[:] a = values
    cdef array.array out_arr = array.array("d", weights)
    cdef double[:] out = out_arr
    cdef int i, j
    cdef double wij, sign, v

    for j in range(n):
        for i in range(n):
            wij = w[j * n + i]
            if wij == 0.0:
                continue
            sign = 1.0 if wij > 0.0 else -1.0
            v = gamma * wij + eta * a[i] * (a[j] - sign * wij * a[i])
            if v > 1.0:
                v = 1.0
            elif v < -1.0:
                v = -1.0
            out[j * n + i] = v
    return out_arr
