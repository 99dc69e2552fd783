"""Pure-Python kernels: the fallback when the compiled extension is absent.

Loop structure and operation order mirror ``_core.pyx`` exactly so both
backends produce the same floating-point results (both call the platform
libm exp, and the extension is compiled without FP contraction).

Rule codes: 0 = additive-memory, 1 = source-sum, 2 = rescaled.
"""

from __future__ import annotations

from array import array
from math import exp

BACKEND = "pure"

RULE_ADDITIVE = 0
RULE_SOURCE_SUM = 1
RULE_RESCALED = 2

# math.exp raises OverflowError above this; C libm returns inf there, making
# the sigmoid saturate to 0. Branch so both backends agree exactly.
_EXP_MAX = 709.782712893384


def sigmoid(x: float, steepness: float) -> float:
    t = -steepness * x
    if t > _EXP_MAX:
        return 0.0
    return 1.0 / (1.0 + exp(t))


def step(
    values: array,
    weights: array,
    n: int,
    rule: int,
    steepness: float,
    include_diagonal: bool,
    clamped: array,
) -> array:
    """One synchronous update of all concepts; clamped entries copy through.

    ``values`` has length n, ``weights`` is the flattened row-major n*n
    matrix (row = source, column = target), ``clamped`` is a length-n byte
    mask.
    """
    out = array("d", values)
    for i in range(n):
        if clamped[i]:
            continue
        if rule == RULE_ADDITIVE:
            s = values[i]
        elif rule == RULE_RESCALED:
            s = 2.0 * values[i] - 1.0
        else:
            s = 0.0
        for j in range(n):
            if j == i and not include_diagonal:
                continue
            a = 2.0 * values[j] - 1.0 if rule == RULE_RESCALED else values[j]
            s += a * weights[j * n + i]
        t = -steepness * s
        out[i] = 0.0 if t > _EXP_MAX else 1.0 / (1.0 + exp(t))
    return out


def nhl_sweep(weights: array, values: array, n: int, eta: float, gamma: float) -> array:
    """One full-matrix Hebbian adaptation pass; zero weights never change.

    For each nonzero w[j][i]:
    ``w <- gamma*w + eta*a_i*(a_j - sgn(w)*w*a_i)``, saturated into [-1, 1].
    """
    out = array("d", weights)
    for j in range(n):
        for i in range(n):
            w = weights[j * n + i]
            if w == 0.0:
                continue
            sign = 1.0 if w > 0.0 else -1.0
            v = gamma * w + eta * values[i] * (values[j] - sign * w * values[i])
            if v > 1.0:
                v = 1.0
            elif v < -1.0:
                v = -1.0
            out[j * n + i] = v
    return out
