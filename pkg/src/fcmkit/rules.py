"""Update-rule configuration for map iteration.

Three update rules are supported:

* ``additive-memory`` -- the textbook form: each concept keeps its previous
  value as a raw memory term inside the sigmoid,
  ``A_i <- f(A_i + sum_j A_j * w[j][i])``.
* ``source-sum`` -- memory term dropped, ``A_i <- f(sum_{j!=i} A_j * w[j][i])``.
  This is the variant whose fixed points match the shipped steady-state
  fixtures for the untrained map.
* ``rescaled`` -- activations recentred so 0.5 is neutral before weighting:
  ``A_i <- f((2A_i - 1) + sum_{j!=i} (2A_j - 1) * w[j][i])``. Inactive (0.5)
  concepts contribute nothing, which tolerates missing inputs.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class UpdateRule(str, Enum):
    ADDITIVE_MEMORY = "additive-memory"
    SOURCE_SUM = "source-sum"
    RESCALED = "rescaled"


class ConvergenceScope(str, Enum):
    OUTPUTS_ONLY = "outputs-only"
    ALL_CONCEPTS = "all-concepts"


class ClampPolicy(str, Enum):
    NONE = "none"
    ZERO_IN_DEGREE = "zero-indegree"
    INPUT_CONCEPTS = "input-concepts"


@dataclass(frozen=True)
class RuleConfig:
    """Everything that parameterizes one inference run.

    ``steepness`` is the sigmoid slope; ``epsilon`` the convergence tolerance
    on successive iterations; ``convergence_scope`` selects whether the
    tolerance is checked on output concepts only or on every concept;
    ``clamp_policy`` selects which concepts are held fixed at their initial
    values; ``include_diagonal`` lets the self-weight w[i][i] participate in
    the weighted sum (off by default -- the reproduction rules exclude it).
    """

    rule: UpdateRule = UpdateRule.SOURCE_SUM
    steepness: float = 1.0
    epsilon: float = 0.001
    max_iterations: int = 1000
    convergence_scope: ConvergenceScope = ConvergenceScope.ALL_CONCEPTS
    clamp_policy: ClampPolicy = ClampPolicy.NONE
    include_diagonal: bool = False

    def __post_init__(self) -> None:
        if self.steepness <= 0:
            raise ValueError(f"steepness must be > 0, got {self.steepness}")
        if self.epsilon <= 0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iterations < 1:
            raise ValueError(f"max_iterations must be >= 1, got {self.max_iterations}")
