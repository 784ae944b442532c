"""Moment dynamics of the mode coupled to a (squeezed) thermal reservoir.

The Lindblad master equation for a squeezed thermal bath closes on the
second moments: with n = <a^dag a> and m = -<a^2> (real for theta = 0),

    dn/dt = gamma * (n_env - n),      dm/dt = gamma * (m_env - m),

where (n_env, m_env) are the covariance parameters of the bath's squeezed
thermal state, n_env = (n_th + 1/2) cosh(2 r_R) - 1/2 and
m_env = (n_th + 1/2) sinh(2 r_R).  Free-rotation (Hamiltonian) terms drop
out in this frame and theta = 0 keeps m real.  Both moments relax
exponentially at rate gamma toward the bath values; the stationary state
is the squeezed thermal (generalized Gibbs) state.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from .errors import PhysicalityError
from .states import SqueezedThermalState, Temperature, bose_einstein, covariance_of

__all__ = [
    "BathSpec",
    "MomentState",
    "MomentTrajectory",
    "moment_derivatives",
    "evolve",
    "steady_state",
    "write_trajectory_csv",
]

PHYSICALITY_SLACK = 1e-9

TRAJECTORY_COLUMNS = ("time", "n", "m", "classicality", "energy")


@dataclass(frozen=True)
class BathSpec:
    """Reservoir parameters: temperature, squeezing and relaxation rate."""

    tau: float
    r_bath: float
    gamma: float

    def __post_init__(self):
        Temperature(self.tau)  # validates tau > 0
        if not (self.r_bath >= 0.0):
            raise ValueError(f"bath squeezing must be >= 0, got {self.r_bath}")
        if not (self.gamma > 0.0):
            raise ValueError(f"relaxation rate must be > 0, got {self.gamma}")


@dataclass(frozen=True)
class MomentState:
    """Instantaneous second moments (n, m) of the mode."""

    n: float
    m: float

    def is_physical(self, slack: float = PHYSICALITY_SLACK) -> bool:
        return (self.n + 0.5) ** 2 - self.m**2 >= 0.25 - slack

    def classicality(self) -> float:
        return self.n - abs(self.m)

    def energy(self) -> float:
        return self.n + 0.5


@dataclass(frozen=True)
class MomentTrajectory:
    """Time series of the moments; times strictly increasing."""

    times: np.ndarray
    n: np.ndarray
    m: np.ndarray

    def __len__(self) -> int:
        return len(self.times)

    def state_at(self, i: int) -> MomentState:
        return MomentState(n=float(self.n[i]), m=float(self.m[i]))

    def terminal(self) -> MomentState:
        return self.state_at(len(self) - 1)


def steady_state(bath: BathSpec) -> SqueezedThermalState:
    """Stationary squeezed thermal state of the bath-contact dynamics."""
    return SqueezedThermalState(n_th=bose_einstein(bath.tau), r=bath.r_bath)


def _fixed_point(bath: BathSpec) -> tuple[float, float]:
    cm = covariance_of(steady_state(bath))
    return cm.n_cm, cm.m_cm


def moment_derivatives(s: MomentState, bath: BathSpec) -> tuple[float, float]:
    """Right-hand side of the closed moment ODEs; zero at the bath CM."""
    n_env, m_env = _fixed_point(bath)
    return bath.gamma * (n_env - s.n), bath.gamma * (m_env - s.m)


def evolve(
    s0: MomentState,
    bath: BathSpec,
    t_final: float,
    dt_max: float,
) -> MomentTrajectory:
    """Classical fixed-step RK4 integration of the moment ODEs.

    The step is t_final/ceil(t_final/dt_max) <= dt_max.  Every accepted
    point is checked against the symplectic uncertainty relation; a
    violation beyond 1e-9 signals integrator misconfiguration and raises
    :class:`PhysicalityError`.  t_final = 0 returns just the initial state.
    """
    if t_final < 0.0:
        raise ValueError(f"t_final must be >= 0, got {t_final}")
    if not (dt_max > 0.0):
        raise ValueError(f"dt_max must be > 0, got {dt_max}")
    if not s0.is_physical():
        raise PhysicalityError(f"initial state {s0} is unphysical")

    if t_final == 0.0:
        return MomentTrajectory(
            times=np.array([0.0]), n=np.array([s0.n]), m=np.array([s0.m])
        )

    steps = max(1, math.ceil(t_final / dt_max))
    dt = t_final / steps
    n_env, m_env = _fixed_point(bath)
    gamma = bath.gamma

    def rhs(y: np.ndarray) -> np.ndarray:
        return gamma * (np.array([n_env, m_env]) - y)

    times = np.linspace(0.0, t_final, steps + 1)
    out = np.empty((steps + 1, 2))
    y = np.array([s0.n, s0.m])
    out[0] = y
    for k in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * dt * k1)
        k3 = rhs(y + 0.5 * dt * k2)
        k4 = rhs(y + dt * k3)
        y = y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if (y[0] + 0.5) ** 2 - y[1] ** 2 < 0.25 - PHYSICALITY_SLACK:
            raise PhysicalityError(
                f"trajectory left the physical region at t={times[k + 1]:.6g} "
                f"(n={y[0]:.6g}, m={y[1]:.6g})"
            )
        out[k + 1] = y

    return MomentTrajectory(times=times, n=out[:, 0], m=out[:, 1])


def write_trajectory_csv(trajectory: MomentTrajectory, path) -> None:
    """Write a trajectory as CSV: time, n, m, classicality, energy."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(TRAJECTORY_COLUMNS)
        for t, n, m in zip(trajectory.times, trajectory.n, trajectory.m):
            writer.writerow(
                [
                    format(t, ".15g"),
                    format(n, ".15g"),
                    format(m, ".15g"),
                    format(n - abs(m), ".15g"),
                    format(n + 0.5, ".15g"),
                ]
            )
