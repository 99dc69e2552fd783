"""Hebbian weight adaptation and the two-region competitive training recipe.

Each training epoch adapts every nonzero weight from the current activation
pattern (zero weights never change, so no new connections appear), then
advances the state one step under the configured update rule. Training stops
when the output concepts stabilize.

Competitive training runs that loop once per class on its ideal exemplar,
averages the per-class matrices, and finally wires mutual inhibition between
the output concepts so a single winner can dominate at inference time.
"""

from __future__ import annotations

import math
from array import array
from dataclasses import dataclass, field, replace
from typing import IO, Mapping, Sequence

from . import _kernels
from .engine import clamp_indices, validate_state, _RULE_CODES
from .errors import NumericError
from .model import FcmModel, wire_competition
from .rules import ClampPolicy, RuleConfig, UpdateRule


def _default_rule_config() -> RuleConfig:
    return RuleConfig(rule=UpdateRule.RESCALED, clamp_policy=ClampPolicy.ZERO_IN_DEGREE)


@dataclass(frozen=True)
class NhlParams:
    """Learning rate, decay, termination tolerance and the concurrent update rule."""

    eta: float = 0.01
    gamma: float = 0.98
    epsilon: float = 0.001
    max_epochs: int = 500
    rule_config: RuleConfig = field(default_factory=_default_rule_config)

    def __post_init__(self) -> None:
        # eta = 0 is allowed: with gamma = 1 it makes training the identity,
        # which the property suite relies on.
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_epochs < 1:
            raise ValueError(f"max_epochs must be >= 1, got {self.max_epochs}")


@dataclass(frozen=True)
class TrainingOutcome:
    model: FcmModel
    epochs_used: int
    terminated: bool
    final_outputs: tuple[tuple[str, float], ...]


def nhl_weight_update(w: float, a_source: float, a_target: float, params: NhlParams) -> float:
    """Adapt one weight from the co-activation of its endpoints.

    ``w <- gamma*w + eta*a_target*(a_source - sgn(w)*w*a_target)`` for nonzero
    w; zero weights stay exactly zero. The result saturates into [-1, 1].
    """
    if w == 0.0:
        return 0.0
    sign = 1.0 if w > 0.0 else -1.0
    v = params.gamma * w + params.eta * a_target * (a_source - sign * w * a_target)
    return min(1.0, max(-1.0, v))


def train_region(
    model: FcmModel,
    exemplar: Sequence[float],
    params: NhlParams,
    progress: IO[str] | None = None,
) -> TrainingOutcome:
    """Adapt the model's weights toward the attractor of one exemplar.

    Per epoch: a full-matrix Hebbian sweep using the current activations,
    then one state update under the new weights. Terminates when every
    output concept moved by less than ``params.epsilon``. When ``progress``
    is given, one CSV row per epoch is written to it (epoch, output-concept
    values, max weight delta).
    """
    state = validate_state(exemplar, model)
    cfg = params.rule_config
    n = model.n

    weights = array("d", [w for row in model.weights for w in row])
    clamped = clamp_indices(model, cfg.clamp_policy)
    mask = array("b", (1 if i in clamped else 0 for i in range(n)))
    rule_code = _RULE_CODES[cfg.rule]
    outputs = model.output_indices
    if progress is not None:
        head = ",".join(model.concepts[i].label for i in outputs)
        progress.write(f"epoch,{head},max_weight_delta\n")

    values = array("d", state)
    epochs = 0
    terminated = False
    for epoch in range(1, params.max_epochs + 1):
        swept = _kernels.nhl_sweep(weights, values, n, params.eta, params.gamma)
        new = _kernels.step(
            values, swept, n, rule_code, cfg.steepness, cfg.include_diagonal, mask
        )
        for i in range(n):
            if not math.isfinite(new[i]):
                raise NumericError(f"non-finite activation at concept {i} in epoch {epoch}")
        if progress is not None:
            w_delta = max(abs(a - b) for a, b in zip(swept, weights))
            outs = ",".join(repr(new[i]) for i in outputs)
            progress.write(f"{epoch},{outs},{w_delta!r}\n")
        epochs = epoch
        delta = max(abs(new[i] - values[i]) for i in outputs) if outputs else 0.0
        weights, values = swept, new
        if delta < params.epsilon:
            terminated = True
            break

    rows = tuple(tuple(weights[j * n : (j + 1) * n]) for j in range(n))
    final = tuple((model.concepts[i].label, values[i]) for i in outputs)
    return TrainingOutcome(replace(model, weights=rows), epochs, terminated, final)


def train_competitive(
    model: FcmModel,
    exemplars: Mapping[str, Sequence[float]],
    params: NhlParams,
    inhibition: float = -1.0,
) -> FcmModel:
    """Train once per output class, average the matrices, wire inhibition.

    ``exemplars`` maps each output-concept label to that class's ideal state
    vector. Averaging keeps the per-class attractors without the drastic
    single-region weight drift; the inhibition links are added last.
    """
    labels = model.output_labels
    missing = [lab for lab in labels if lab not in exemplars]
    if missing:
        raise KeyError(f"missing exemplar(s) for output concept(s): {missing}")
    extra = [lab for lab in exemplars if lab not in labels]
    if extra:
        raise KeyError(f"exemplar(s) for unknown output concept(s): {extra}")

    trained = [train_region(model, exemplars[lab], params).model for lab in labels]
    n = model.n
    count = float(len(trained))
    averaged = tuple(
        tuple(sum(t.weights[j][i] for t in trained) / count for i in range(n))
        for j in range(n)
    )
    return wire_competition(replace(model, weights=averaged), inhibition)
