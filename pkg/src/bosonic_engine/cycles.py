"""Stroke ledgers for the Otto cycle and the constant-classicality cycle.

Both cycles run a single mode between a cold thermal bath at tau_cold and a
hot squeezed thermal bath at tau_hot, with the squeezing magnitude as the
work parameter:

* Otto: unitary squeeze 0 -> r at the cold occupancy, relaxation into the
  hot bath (squeezed with the same r) at fixed r, unitary unsqueeze r -> 0,
  relaxation back into the cold bath.  All four strokes have closed forms.
* Generalized: the hot-bath contact follows the iso-classicality path
  (n(r) + 1/2) = (n_cold + 1/2) e^{2(r - r_t)} from r_t up to the bath
  squeezing r_R, so the classicality function stays constant while heat is
  absorbed; work and heat along that stroke come from the path quadrature.

Bath-contact strokes are complete relaxations to the bath steady state
(infinite-time limit of the moment dynamics).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .dynamics import BathSpec, steady_state
from .errors import CycleConsistencyError
from .states import (
    BOUNDARY_TOL,
    SqueezedThermalState,
    Temperature,
    bose_einstein,
    critical_squeezing,
)
from .thermo import (
    DEFAULT_QUAD_TOL,
    ThermoPath,
    internal_energy,
    work_heat_along,
)

__all__ = [
    "CycleKind",
    "EngineConfig",
    "StrokeRecord",
    "ClassicalityTrace",
    "CycleReport",
    "run_otto",
    "run_generalized",
    "otto_efficiency",
    "generalized_r_hot",
    "generalized_efficiency_closed_form",
    "closed_form_terms",
    "carnot_efficiency",
    "classify_region",
    "report_to_json",
]

FIRST_LAW_TOL = 1e-9
TRACE_POINTS_PER_STROKE = 256


class CycleKind(str, Enum):
    OTTO = "otto"
    GENERALIZED = "generalized"


@dataclass(frozen=True)
class EngineConfig:
    """Cycle parameters: bath temperatures, working squeezing, cycle kind.

    r_work is the Otto modulation amplitude r, or the first-stroke target
    r_t of the generalized cycle.  tau_hot = tau_cold is allowed and gives
    a degenerate (zero-heat) cycle.
    """

    tau_cold: float
    tau_hot: float
    r_work: float
    kind: CycleKind = CycleKind.OTTO

    def __post_init__(self):
        Temperature(self.tau_cold)
        Temperature(self.tau_hot)
        if self.tau_hot < self.tau_cold:
            raise ValueError(
                f"tau_hot ({self.tau_hot}) must be >= tau_cold ({self.tau_cold})"
            )
        if not (self.r_work >= 0.0):
            raise ValueError(f"r_work must be >= 0, got {self.r_work}")


@dataclass(frozen=True)
class StrokeRecord:
    """One cycle leg with its endpoint states and energy ledger."""

    label: str
    state_in: SqueezedThermalState
    state_out: SqueezedThermalState
    work_on: float
    heat_in: float


@dataclass(frozen=True)
class ClassicalityTrace:
    """Sampled (r, C) points over the cycle, with stroke label and n_th."""

    stroke: tuple[str, ...]
    r: np.ndarray
    n: np.ndarray
    c: np.ndarray


@dataclass(frozen=True)
class CycleReport:
    strokes: tuple[StrokeRecord, ...]
    w_net_extracted: float
    q_hot_in: float
    q_cold_out: float
    efficiency: float
    classicality_trace: ClassicalityTrace
    region: str


def otto_efficiency(r: float) -> float:
    """Closed-form Otto efficiency 1 - 1/cosh(2r), temperature independent."""
    if r < 0.0:
        raise ValueError(f"squeezing must be >= 0, got {r}")
    return 1.0 - 1.0 / math.cosh(2.0 * r)


def carnot_efficiency(cfg: EngineConfig) -> float:
    """Classical Carnot benchmark 1 - tau_cold/tau_hot."""
    return 1.0 - cfg.tau_cold / cfg.tau_hot


def generalized_r_hot(cfg: EngineConfig) -> float:
    """Hot-bath squeezing r_R that keeps classicality constant.

    r_R = r_t + (1/2) ln((n_hot + 1/2)/(n_cold + 1/2)); equal temperatures
    give r_R = r_t.
    """
    n_cold = bose_einstein(cfg.tau_cold)
    n_hot = bose_einstein(cfg.tau_hot)
    return cfg.r_work + 0.5 * math.log((n_hot + 0.5) / (n_cold + 0.5))


def closed_form_terms(cfg: EngineConfig) -> tuple[float, float]:
    """The printed numerator f and denominator g of the generalized
    efficiency, evaluated verbatim.

    These expressions do NOT reproduce the first-law ledger (g changes
    sign near r_t = 0 and the quotient can exceed 1); they are kept as a
    faithful record of the printed form.  :func:`run_generalized` is the
    authoritative efficiency.
    """
    x1 = 1.0 / (2.0 * cfg.tau_cold)
    x2 = 1.0 / (2.0 * cfg.tau_hot)
    rt = cfg.r_work
    coth1 = 1.0 / math.tanh(x1)
    coth2 = 1.0 / math.tanh(x2)
    f = 4.0 * math.exp(2.0 * rt) * (coth2 - coth1)
    g = (math.exp(4.0 * rt) * math.tanh(x1) * coth2**2 - coth1) * (
        math.exp(4.0 * rt) - 2.0 * math.log(math.tanh(x1) * coth2)
    )
    return f, g


def generalized_efficiency_closed_form(cfg: EngineConfig) -> float:
    """Verbatim 1 - f/g of the printed closed form (see closed_form_terms).

    Returns 1 when f = 0 (equal temperatures).  Not the ledger efficiency.
    """
    f, g = closed_form_terms(cfg)
    if f == 0.0:
        return 1.0
    return 1.0 - f / g


def classify_region(cfg: EngineConfig) -> str:
    """Working-point label against the two critical squeezings.

    'i': classical at both temperatures (r < r_c(tau_cold));
    'ii': non-classical only at tau_cold; 'iii': non-classical at both;
    'boundary': within 1e-12 of either threshold.
    """
    rc_cold = critical_squeezing(cfg.tau_cold)
    rc_hot = critical_squeezing(cfg.tau_hot)
    r = cfg.r_work
    if abs(r - rc_cold) <= BOUNDARY_TOL or abs(r - rc_hot) <= BOUNDARY_TOL:
        return "boundary"
    if r < rc_cold:
        return "i"
    if r < rc_hot:
        return "ii"
    return "iii"


def _check_stroke(record: StrokeRecord) -> StrokeRecord:
    d_e = internal_energy(record.state_out) - internal_energy(record.state_in)
    gap = abs(record.work_on + record.heat_in - d_e)
    if gap > FIRST_LAW_TOL * max(1.0, abs(d_e)):
        raise CycleConsistencyError(
            f"stroke '{record.label}' violates the first law by {gap:.3e}"
        )
    return record


def _assemble_report(cfg: EngineConfig, strokes: list[StrokeRecord],
                     trace: ClassicalityTrace) -> CycleReport:
    for s in strokes:
        _check_stroke(s)
    first, last = strokes[0].state_in, strokes[-1].state_out
    if not (math.isclose(first.n_th, last.n_th, rel_tol=0.0, abs_tol=1e-12)
            and first.r == last.r):
        raise CycleConsistencyError("cycle did not return to its initial state")
    closure = sum(s.work_on + s.heat_in for s in strokes)
    if abs(closure) > FIRST_LAW_TOL:
        raise CycleConsistencyError(f"cycle energy closure off by {closure:.3e}")

    w_net = -sum(s.work_on for s in strokes)
    q_hot = next(s.heat_in for s in strokes if s.label == "hot-contact")
    q_cold = -next(s.heat_in for s in strokes if s.label == "cold-contact")
    efficiency = w_net / q_hot if q_hot > 0.0 else 0.0
    return CycleReport(
        strokes=tuple(strokes),
        w_net_extracted=w_net,
        q_hot_in=q_hot,
        q_cold_out=q_cold,
        efficiency=efficiency,
        classicality_trace=trace,
        region=classify_region(cfg),
    )


def _trace(segments) -> ClassicalityTrace:
    """Sample each (label, r_of_u, n_of_u) segment at 256 uniform points."""
    labels: list[str] = []
    rs: list[np.ndarray] = []
    ns: list[np.ndarray] = []
    u = np.linspace(0.0, 1.0, TRACE_POINTS_PER_STROKE)
    for label, r_of_u, n_of_u in segments:
        labels.extend([label] * len(u))
        rs.append(r_of_u(u))
        ns.append(n_of_u(u))
    r = np.concatenate(rs)
    n = np.concatenate(ns)
    c = (n + 0.5) * np.exp(-2.0 * r) - 0.5
    return ClassicalityTrace(stroke=tuple(labels), r=r, n=n, c=c)


def run_otto(cfg: EngineConfig) -> CycleReport:
    """Four-stroke Otto-like cycle with the squeezing as work parameter.

    All stroke energies are closed-form; the hot bath carries the same
    squeezing r as the mode, so the hot contact changes only the
    occupancy.  Net extracted work is 2 (n_hot - n_cold) sinh^2 r and the
    efficiency reduces to 1 - 1/cosh(2r).
    """
    if cfg.kind is not CycleKind.OTTO:
        raise ValueError(f"run_otto requires kind=otto, got {cfg.kind}")
    r = cfg.r_work
    n1 = bose_einstein(cfg.tau_cold)
    n2 = steady_state(BathSpec(cfg.tau_hot, r_bath=r, gamma=1.0)).n_th
    a, b = n1 + 0.5, n2 + 0.5

    st_a = SqueezedThermalState(n_th=n1, r=0.0)
    st_b = SqueezedThermalState(n_th=n1, r=r)
    st_c = SqueezedThermalState(n_th=n2, r=r)
    st_d = SqueezedThermalState(n_th=n2, r=0.0)

    strokes = [
        StrokeRecord("squeeze", st_a, st_b,
                     work_on=2.0 * a * math.sinh(r) ** 2, heat_in=0.0),
        StrokeRecord("hot-contact", st_b, st_c,
                     work_on=0.0, heat_in=(n2 - n1) * math.cosh(2.0 * r)),
        StrokeRecord("unsqueeze", st_c, st_d,
                     work_on=-2.0 * b * math.sinh(r) ** 2, heat_in=0.0),
        StrokeRecord("cold-contact", st_d, st_a,
                     work_on=0.0, heat_in=n1 - n2),
    ]
    trace = _trace([
        ("squeeze", lambda u: u * r, lambda u: np.full_like(u, n1)),
        ("hot-contact", lambda u: np.full_like(u, r), lambda u: n1 + u * (n2 - n1)),
        ("unsqueeze", lambda u: (1.0 - u) * r, lambda u: np.full_like(u, n2)),
        ("cold-contact", lambda u: np.zeros_like(u), lambda u: n2 + u * (n1 - n2)),
    ])
    return _assemble_report(cfg, strokes, trace)


def run_generalized(cfg: EngineConfig, quad_tol: float = DEFAULT_QUAD_TOL) -> CycleReport:
    """Constant-classicality cycle; the hot contact co-varies (r, n_th).

    The B -> C stroke follows (n(r) + 1/2) = (n_cold + 1/2) e^{2(r - r_t)}
    for r from r_t to r_R, which holds C = (n + 1/2) e^{-2r} - 1/2 fixed;
    its work and heat come from the adaptive path quadrature.
    """
    if cfg.kind is not CycleKind.GENERALIZED:
        raise ValueError(f"run_generalized requires kind=generalized, got {cfg.kind}")
    rt = cfg.r_work
    r_r = generalized_r_hot(cfg)
    delta = r_r - rt
    n1 = bose_einstein(cfg.tau_cold)
    n2 = steady_state(BathSpec(cfg.tau_hot, r_bath=r_r, gamma=1.0)).n_th
    a, b = n1 + 0.5, n2 + 0.5

    st_a = SqueezedThermalState(n_th=n1, r=0.0)
    st_b = SqueezedThermalState(n_th=n1, r=rt)
    st_c = SqueezedThermalState(n_th=n2, r=r_r)
    st_d = SqueezedThermalState(n_th=n2, r=0.0)

    iso = ThermoPath(
        r_of_s=lambda s: rt + s * delta,
        n_of_s=lambda s: a * math.exp(2.0 * s * delta) - 0.5,
        dr_ds=lambda s: delta,
        dn_ds=lambda s: 2.0 * a * delta * math.exp(2.0 * s * delta),
    )
    bc = work_heat_along(iso, quad_tol=quad_tol)

    strokes = [
        StrokeRecord("squeeze", st_a, st_b,
                     work_on=2.0 * a * math.sinh(rt) ** 2, heat_in=0.0),
        StrokeRecord("hot-contact", st_b, st_c,
                     work_on=bc.work_on, heat_in=bc.heat_in),
        StrokeRecord("unsqueeze", st_c, st_d,
                     work_on=-2.0 * b * math.sinh(r_r) ** 2, heat_in=0.0),
        StrokeRecord("cold-contact", st_d, st_a,
                     work_on=0.0, heat_in=n1 - n2),
    ]
    trace = _trace([
        ("squeeze", lambda u: u * rt, lambda u: np.full_like(u, n1)),
        ("hot-contact", lambda u: rt + u * delta,
         lambda u: a * np.exp(2.0 * u * delta) - 0.5),
        ("unsqueeze", lambda u: (1.0 - u) * r_r, lambda u: np.full_like(u, n2)),
        ("cold-contact", lambda u: np.zeros_like(u), lambda u: n2 + u * (n1 - n2)),
    ])
    return _assemble_report(cfg, strokes, trace)


def _state_dict(state: SqueezedThermalState) -> dict:
    return {"n_th": state.n_th, "r": state.r, "theta": state.theta}


def report_to_dict(report: CycleReport) -> dict:
    """JSON-ready dictionary with stable field names."""
    return {
        "strokes": [
            {
                "label": s.label,
                "state_in": _state_dict(s.state_in),
                "state_out": _state_dict(s.state_out),
                "work_on": s.work_on,
                "heat_in": s.heat_in,
            }
            for s in report.strokes
        ],
        "w_net_extracted": report.w_net_extracted,
        "q_hot_in": report.q_hot_in,
        "q_cold_out": report.q_cold_out,
        "efficiency": report.efficiency,
        "region": report.region,
        "classicality_trace": {
            "stroke": list(report.classicality_trace.stroke),
            "r": report.classicality_trace.r.tolist(),
            "n": report.classicality_trace.n.tolist(),
            "classicality": report.classicality_trace.c.tolist(),
        },
    }


def report_to_json(report: CycleReport, indent: int | None = None) -> str:
    return json.dumps(report_to_dict(report), indent=indent)


def cycle_classicality_bounds(report: CycleReport) -> tuple[float, float]:
    """(min, max) of the classicality function over the sampled cycle."""
    return float(report.classicality_trace.c.min()), float(report.classicality_trace.c.max())
