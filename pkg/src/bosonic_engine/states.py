"""Single-mode Gaussian states and the P-representability / classicality machinery.

Natural units throughout: hbar = omega = k_B = 1, so temperatures are
dimensionless and energies are in units of hbar*omega.  All states carry
zero displacement and are fully described by the two covariance-matrix
parameters (n, m).  The squeezing phase is fixed to theta = 0, which keeps
m real and non-negative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Temperature",
    "SqueezedThermalState",
    "CovarianceMatrix",
    "bose_einstein",
    "tau_of_occupancy",
    "covariance_of",
    "is_p_representable",
    "classicality",
    "classicality_nm",
    "critical_squeezing",
    "BOUNDARY_TOL",
]

# |C| below this counts as sitting on the classical/non-classical boundary,
# so that region labelling is deterministic under floating point.
BOUNDARY_TOL = 1e-12

# Slack allowed when checking the symplectic uncertainty relation.
PHYSICALITY_TOL = 1e-12


@dataclass(frozen=True)
class Temperature:
    """Dimensionless temperature tau = k_B*T / (hbar*omega), strictly positive."""

    tau: float

    def __post_init__(self):
        if not (self.tau > 0.0) or not math.isfinite(self.tau):
            raise ValueError(f"temperature must be positive and finite, got tau={self.tau}")


@dataclass(frozen=True)
class SqueezedThermalState:
    """Squeezed thermal state of a single bosonic mode.

    Parametrized by the thermal occupancy n_th >= 0 of the underlying
    thermal state, the squeezing magnitude r >= 0, and the squeezing
    phase theta.  Only theta = 0 is supported; carrying the field keeps
    the general-phase extension point explicit.
    """

    n_th: float
    r: float
    theta: float = 0.0

    def __post_init__(self):
        if not (self.n_th >= 0.0) or not math.isfinite(self.n_th):
            raise ValueError(f"thermal occupancy must be >= 0, got n_th={self.n_th}")
        if not (self.r >= 0.0) or not math.isfinite(self.r):
            raise ValueError(f"squeezing magnitude must be >= 0, got r={self.r}")
        if self.theta != 0.0:
            raise ValueError("only theta = 0 squeezing is supported")


@dataclass(frozen=True)
class CovarianceMatrix:
    """Second moments of a zero-mean single-mode Gaussian state.

    n_cm is the diagonal entry minus 1/2 (the occupancy <a^dag a>) and
    m_cm the off-diagonal coherence parameter -<a^2>, real for theta = 0.
    Physical matrices satisfy (n_cm + 1/2)^2 - m_cm^2 >= 1/4.
    """

    n_cm: float
    m_cm: float

    def matrix(self) -> np.ndarray:
        """Full 2x2 covariance matrix in the (a, a^dag) ordering."""
        d = self.n_cm + 0.5
        return np.array([[d, self.m_cm], [self.m_cm, d]])

    def is_physical(self, tol: float = PHYSICALITY_TOL) -> bool:
        return (self.n_cm + 0.5) ** 2 - self.m_cm**2 >= 0.25 - tol


def _tau(tau: Temperature | float) -> float:
    t = tau.tau if isinstance(tau, Temperature) else float(tau)
    if not (t > 0.0) or not math.isfinite(t):
        raise ValueError(f"temperature must be positive and finite, got tau={t}")
    return t


def bose_einstein(tau: Temperature | float) -> float:
    """Thermal occupancy 1/(e^{1/tau} - 1) of the mode at temperature tau."""
    return 1.0 / math.expm1(1.0 / _tau(tau))


def tau_of_occupancy(n_th: float) -> float:
    """Inverse of :func:`bose_einstein`: tau = 1 / ln(1 + 1/n_th).

    Raises for n_th <= 0 (a zero-occupancy state has no finite inverse
    temperature).
    """
    if not (n_th > 0.0):
        raise ValueError(f"occupancy must be positive to define a temperature, got n_th={n_th}")
    return 1.0 / math.log1p(1.0 / n_th)


def covariance_of(state: SqueezedThermalState) -> CovarianceMatrix:
    """Covariance-matrix parameters of a squeezed thermal state.

    n_cm = (n_th + 1/2) cosh 2r - 1/2 and m_cm = (n_th + 1/2) sinh 2r;
    r = 0 recovers the thermal covariance matrix (n_th, 0).
    """
    half = state.n_th + 0.5
    return CovarianceMatrix(
        n_cm=half * math.cosh(2.0 * state.r) - 0.5,
        m_cm=half * math.sinh(2.0 * state.r),
    )


def is_p_representable(cm: CovarianceMatrix) -> bool:
    """Whether the state admits a proper Glauber-Sudarshan P distribution.

    Positive semidefiniteness of V - I/2 reduces, for this CM shape, to
    the scalar condition n_cm >= |m_cm|.  The boundary n_cm = |m_cm| is
    counted as classical (V - I/2 singular but still PSD).
    """
    if not cm.is_physical():
        raise ValueError(
            f"unphysical covariance matrix (n_cm={cm.n_cm}, m_cm={cm.m_cm}) "
            "violates the symplectic uncertainty relation"
        )
    return cm.n_cm >= abs(cm.m_cm)


def classicality_nm(n_cm: float, m_cm: float) -> float:
    """Classicality C = n_cm - |m_cm| straight from CM parameters."""
    return n_cm - abs(m_cm)


def classicality(state: SqueezedThermalState) -> float:
    """Classicality function C(r, n_th) = (n_th + 1/2) e^{-2r} - 1/2.

    Algebraically identical to n_cm - |m_cm| of the state's covariance
    matrix; C < 0 certifies non-classicality.
    """
    return (state.n_th + 0.5) * math.exp(-2.0 * state.r) - 0.5


def critical_squeezing(tau: Temperature | float) -> float:
    """Squeezing r_c at which the squeezed thermal state turns non-classical.

    r_c = (1/2) ln(2 n_th + 1); classicality vanishes exactly at r = r_c
    and the threshold grows monotonically with temperature.
    """
    return 0.5 * math.log1p(2.0 * bose_einstein(tau))
