"""Shared golden data: the printed steady states the engine must reproduce."""

from __future__ import annotations

import pytest

from fcmkit import fixtures

# Converged vector for the untrained diabetes/thyroid map (source-sum rule,
# output-output links removed) started from the ideal diabetes severities.
UNTRAINED_STEADY = (0.89578, 0.91107, 0.66187, 0.57555, 0.62422, 0.50000, 0.50000, 0.58707, 0.59704)

# Converged vectors for the trained map under the rescaled rule with
# zero-indegree clamping.
TRAINED_DIABETES_STEADY = (0.56406, 0.51207, 0.50291, 0.50136, 0.50215, 0.30000, 0.70000, 0.50183, 0.50182)
TRAINED_THYROID_STEADY = (0.49176, 0.66919, 0.50023, 0.50011, 0.50017, 0.40000, 0.80000, 0.50014, 0.50014)

DIABETES_INPUT = (0.0, 0.0, 0.6, 0.8, 0.7, 0.3, 0.7, 0.3, 0.3)
THYROID_INPUT = (0.0, 0.0, 0.8, 0.5, 0.6, 0.4, 0.8, 0.4, 0.5)

STEADY_STATE_TOL = 5e-3


@pytest.fixture(scope="session")
def fcm1_initial():
    return fixtures.model("fcm1_initial")


@pytest.fixture(scope="session")
def fcm1_table2():
    return fixtures.model("fcm1_table2")


@pytest.fixture(scope="session")
def fcm1_trained():
    return fixtures.model("fcm1_trained")


@pytest.fixture(scope="session")
def fcm2_trained():
    return fixtures.model("fcm2_trained")


@pytest.fixture(scope="session")
def fcm3_trained():
    return fixtures.model("fcm3_trained")


@pytest.fixture(scope="session")
def cascade():
    return fixtures.cascade()


def max_abs_diff(a, b) -> float:
    assert len(a) == len(b)
    return max(abs(x - y) for x, y in zip(a, b))
