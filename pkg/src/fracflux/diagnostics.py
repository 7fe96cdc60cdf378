"""Quantitative checks behind the qualitative claims: mass accounting,
bound monitoring, steady-state detection and affine-rescaling tests."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

import numpy as np

from .flux import FluxKind

if TYPE_CHECKING:
    from .scenarios import Scenario
    from .solver import Grid


@dataclass
class DiagnosticTrace:
    """Per-step record of a run: times, discrete mass and field extrema.

    All arrays cover the initial state plus one entry per completed step;
    step_change is the max-norm change of each step, aligned with t[1:].
    """

    t: np.ndarray
    mass: np.ndarray
    u_min: np.ndarray
    u_max: np.ndarray
    step_change: np.ndarray


def total_mass(u, grid: "Grid") -> float:
    """Discrete integral of the field over [0, 1]: half-weight end nodes
    (half-size end volumes), full weight in the interior."""
    arr = u.u if hasattr(u, "u") else np.asarray(u, dtype=np.float64)
    dx = grid.dx
    return float(dx * (0.5 * arr[0] + arr[1:-1].sum() + 0.5 * arr[-1]))


@dataclass
class MaxPrincipleReport:
    violated: bool
    first_step: int | None
    first_time: float | None
    lower: float
    upper: float
    tol: float

    def to_dict(self) -> dict:
        return {
            "violated": self.violated,
            "first_step": self.first_step,
            "first_time": self.first_time,
            "lower": self.lower,
            "upper": self.upper,
            "tol": self.tol,
        }


def max_principle_check(trace: DiagnosticTrace, g, tol: float = 1e-6) -> MaxPrincipleReport:
    """Report the first step (if any) that leaves the initial-data bounds.

    The admissible band is [min(g), max(g)] widened by tol; for
    non-negative data with zero boundary values this is the classical
    statement that the solution stays between 0 and the initial maximum.
    Report-only: some flux laws are expected to violate it, and recording
    where that happens is the point.
    """
    g_arr = np.asarray(g, dtype=np.float64)
    lower = float(g_arr.min())
    upper = float(g_arr.max())
    below = trace.u_min < lower - tol
    above = trace.u_max > upper + tol
    bad = np.nonzero(below | above)[0]
    if bad.size == 0:
        return MaxPrincipleReport(False, None, None, lower, upper, tol)
    k = int(bad[0])
    return MaxPrincipleReport(True, k, float(trace.t[k]), lower, upper, tol)


def steady_state_time(trace: DiagnosticTrace, eps: float = 1e-10) -> float | None:
    """First time at which the per-step max-norm change drops below eps."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    idx = np.nonzero(trace.step_change < eps)[0]
    if idx.size == 0:
        return None
    return float(trace.t[int(idx[0]) + 1])


@dataclass
class EquivarianceReport:
    """Deviation of a run from the affine image of another run.

    For initial data g and boundary data mapped through v -> a*v + b, the
    entries are max-norm distances between the transformed-data solution
    and a*u + b at each snapshot time.
    """

    law: FluxKind
    a: float
    b: float
    snapshot_times: tuple[float, ...]
    deviations: tuple[float, ...]
    max_deviation: float


def equivariance_test(
    scenario: "Scenario",
    law: FluxKind,
    a: float,
    b: float,
    *,
    t_end: float | None = None,
    snapshot_times: tuple[float, ...] | None = None,
) -> EquivarianceReport:
    """Run a scenario and its affine-transformed twin, compare snapshots.

    Dirichlet values map to a*v + b and fixed-flux values to a*v (a
    constant offset does not add flux under any of the gradient-built
    laws).  Both runs use a fixed horizon, never the steady-state early
    stop, so snapshots are always taken at identical step counts.
    """
    # Imported here: solver imports this module for its trace type.
    from .solver import BoundarySpec, Dirichlet, Field, FixedFlux, Grid, run

    cfg = scenario.cfg
    eff_t_end = cfg.t_end if t_end is None else float(t_end)
    if snapshot_times is not None:
        snaps = tuple(snapshot_times)
    elif t_end is None and cfg.snapshot_times:
        snaps = cfg.snapshot_times
    else:
        snaps = (eff_t_end,)

    def transform(bc):
        if isinstance(bc, Dirichlet):
            return Dirichlet(a * bc.value + b)
        return FixedFlux(a * bc.value)

    base_cfg = replace(
        cfg, flux=law, t_end=eff_t_end, snapshot_times=snaps, stop_when_steady=False
    )
    mapped_cfg = replace(
        base_cfg, bc=BoundarySpec(transform(cfg.bc.left), transform(cfg.bc.right))
    )

    grid = Grid(base_cfg.n)
    u0 = np.asarray(scenario.initial(grid.x), dtype=np.float64)
    base = run(base_cfg, grid, Field(u=u0.copy(), t=0.0))
    mapped = run(mapped_cfg, grid, Field(u=a * u0 + b, t=0.0))

    deviations = tuple(
        float(np.abs(um - (a * ub + b)).max())
        for ub, um in zip(base.snapshots, mapped.snapshots)
    )
    return EquivarianceReport(
        law=law,
        a=float(a),
        b=float(b),
        snapshot_times=base.snapshot_times,
        deviations=deviations,
        max_deviation=max(deviations),
    )
