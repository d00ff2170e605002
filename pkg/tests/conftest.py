"""Shared fixtures and frozen reference values.

The frozen constants below were computed independently (closed forms
where available, otherwise a standalone script using only numpy) before
the package was written; tests compare against them, never the other
way around.
"""

import numpy as np
import pytest

from hypflux import ideal_gas, stiffened_gas

# closed forms at the ideal-gas reference point rho = theta = 1 with
# R = c_v = kappa = tau = 1: r = 3, m = sqrt(5), speeds are the golden
# ratio pair.
GOLDEN_FAST = 1.618033988749895
GOLDEN_SLOW = 0.6180339887498948

# flux threshold at the same point for gamma = lambda + nu = 1:
# max((-C - B) / (A g^2), 2 / g^2) with A = -27, B = -324, C = 2704.
THRESHOLD_SQ = 76.0 / 27.0
WITNESS_Q = 1.7616280348965083

# quartic z^4 - 3 z^2 + a1 z + 1 anchors
DELTA_A1_17 = -761.8667
DELTA_A1_0 = 16.0 * 1.0 * (9.0 - 4.0) ** 2  # C term alone: 400
DELTA_ZERO_EVEN = -27.0  # a0 = a2 = 0, a1 = 1
ROOTS_A1_17 = (
    -1.90194124063623,
    -0.3643432405401701,
    complex(1.133142240588199, -0.3988415440815303),
    complex(1.133142240588199, 0.3988415440815303),
)
IM_A1_17 = 0.3988415440815303

# skew coupling block at (1, -1), xi = e1, q = (1, 2, 3)
Q_BLOCK_SKEW_123 = np.array(
    [[0.0, 2.0, 3.0], [-2.0, 0.0, 0.0], [-3.0, 0.0, 0.0]]
)

# mixed eta0 eigenvector at the ideal reference point, xi = e1, q = e2,
# tangent t = e2 (layout rho, v1, v2, v3, theta, q1, q2, q3)
ETA0_MIXED_REFERENCE = np.array([1.0, 0.0, 1.0, 0.0, -1.0, 0.0, 0.0, 0.0])


@pytest.fixture(scope="session")
def ideal():
    return ideal_gas()


@pytest.fixture(scope="session")
def stiffened():
    return stiffened_gas()


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
