"""Fixed-point iteration of a concept map under a configurable update rule.

A state vector holds one activation in [0, 1] per concept. ``run`` applies
the configured step rule synchronously until successive states differ by
less than epsilon (over the configured scope) or the iteration budget is
exhausted, recording every intermediate state. All functions are pure:
identical inputs give bit-identical traces.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass
from enum import Enum
from typing import Sequence

from . import _kernels
from .errors import NumericError
from .model import FcmModel
from .rules import ClampPolicy, ConvergenceScope, RuleConfig, UpdateRule

StateVector = tuple[float, ...]

_RULE_CODES = {
    UpdateRule.ADDITIVE_MEMORY: _kernels.RULE_ADDITIVE,
    UpdateRule.SOURCE_SUM: _kernels.RULE_SOURCE_SUM,
    UpdateRule.RESCALED: _kernels.RULE_RESCALED,
}


class InferenceStatus(str, Enum):
    CONVERGED = "converged"
    MAX_ITERATIONS = "max-iterations"


@dataclass(frozen=True)
class InferenceResult:
    trace: tuple[StateVector, ...]
    status: InferenceStatus
    iterations_used: int

    @property
    def final(self) -> StateVector:
        return self.trace[-1]


def activation(x: float, steepness: float = 1.0) -> float:
    """Sigmoid threshold 1/(1 + exp(-steepness*x)); strictly increasing, f(0) = 0.5."""
    if steepness <= 0:
        raise ValueError(f"steepness must be > 0, got {steepness}")
    return _kernels.sigmoid(x, steepness)


def clamp_indices(model: FcmModel, policy: ClampPolicy) -> frozenset[int]:
    """Concepts held at their initial values under the given policy."""
    if policy is ClampPolicy.NONE:
        return frozenset()
    if policy is ClampPolicy.INPUT_CONCEPTS:
        return frozenset(model.input_indices)
    n = model.n
    frozen = set()
    for i in range(n):
        if all(model.weights[j][i] == 0.0 for j in range(n) if j != i):
            frozen.add(i)  # nothing feeds this concept except (inert) self-weight
    return frozenset(frozen)


def validate_state(state: Sequence[float], model: FcmModel) -> StateVector:
    """Check length and [0, 1] range; returns the state as a tuple."""
    if len(state) != model.n:
        raise ValueError(f"state has {len(state)} values for {model.n} concepts")
    for i, v in enumerate(state):
        if not math.isfinite(v) or not (0.0 <= v <= 1.0):
            raise ValueError(f"state[{i}] = {v!r} outside [0, 1]")
    return tuple(float(v) for v in state)


def _step_tuple(state: Sequence[float], model: FcmModel, cfg: RuleConfig) -> StateVector:
    n = model.n
    values = array("d", state)
    weights = array("d", [w for row in model.weights for w in row])
    clamped = clamp_indices(model, cfg.clamp_policy)
    mask = array("b", (1 if i in clamped else 0 for i in range(n)))
    out = _kernels.step(
        values, weights, n, _RULE_CODES[cfg.rule], cfg.steepness, cfg.include_diagonal, mask
    )
    return tuple(out)


def step_additive(state: Sequence[float], model: FcmModel, cfg: RuleConfig) -> StateVector:
    """One update under the additive-memory rule (previous value kept as a raw term)."""
    if cfg.rule is not UpdateRule.ADDITIVE_MEMORY:
        raise ValueError(f"config selects rule {cfg.rule.value}, not additive-memory")
    return _step_tuple(validate_state(state, model), model, cfg)


def step_source_sum(state: Sequence[float], model: FcmModel, cfg: RuleConfig) -> StateVector:
    """One update under the source-sum rule (no memory term, diagonal excluded)."""
    if cfg.rule is not UpdateRule.SOURCE_SUM:
        raise ValueError(f"config selects rule {cfg.rule.value}, not source-sum")
    return _step_tuple(validate_state(state, model), model, cfg)


def step_rescaled(state: Sequence[float], model: FcmModel, cfg: RuleConfig) -> StateVector:
    """One update under the rescaled rule (activations recentred so 0.5 is inert)."""
    if cfg.rule is not UpdateRule.RESCALED:
        raise ValueError(f"config selects rule {cfg.rule.value}, not rescaled")
    return _step_tuple(validate_state(state, model), model, cfg)


def has_converged(
    prev: Sequence[float],
    curr: Sequence[float],
    cfg: RuleConfig,
    output_indices: Sequence[int] | None = None,
) -> bool:
    """True iff the max componentwise delta over the configured scope is < epsilon."""
    if len(prev) != len(curr):
        raise ValueError(f"state lengths differ: {len(prev)} vs {len(curr)}")
    if cfg.convergence_scope is ConvergenceScope.OUTPUTS_ONLY:
        if output_indices is None:
            raise ValueError("outputs-only scope needs the model's output indices")
        indices: Sequence[int] = output_indices
    else:
        indices = range(len(prev))
    return all(abs(curr[i] - prev[i]) < cfg.epsilon for i in indices)


def run(model: FcmModel, initial: Sequence[float], cfg: RuleConfig | None = None) -> InferenceResult:
    """Iterate to steady state, capturing every intermediate state.

    Non-convergence inside the iteration budget is reported via the result
    status, not an exception; a NaN or infinity in any produced state raises
    NumericError.
    """
    if cfg is None:
        cfg = model.default_rule_config
    if model.n == 0:
        raise ValueError("cannot run an empty model")
    start = validate_state(initial, model)

    n = model.n
    rule_code = _RULE_CODES[cfg.rule]
    weights = array("d", [w for row in model.weights for w in row])
    clamped = clamp_indices(model, cfg.clamp_policy)
    mask = array("b", (1 if i in clamped else 0 for i in range(n)))
    outputs = model.output_indices

    trace: list[StateVector] = [start]
    values = array("d", start)
    for iteration in range(1, cfg.max_iterations + 1):
        new = _kernels.step(
            values, weights, n, rule_code, cfg.steepness, cfg.include_diagonal, mask
        )
        for i in range(n):
            if not math.isfinite(new[i]):
                raise NumericError(
                    f"non-finite value {new[i]!r} at concept {i} on iteration {iteration}"
                )
        trace.append(tuple(new))
        if has_converged(values, new, cfg, outputs):
            return InferenceResult(tuple(trace), InferenceStatus.CONVERGED, iteration)
        values = new
    return InferenceResult(tuple(trace), InferenceStatus.MAX_ITERATIONS, cfg.max_iterations)
