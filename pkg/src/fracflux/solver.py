"""Explicit control-volume time stepping of the conserved balance.

The update at every interior node is

    u_i <- u_i + (dt / dx) * (q_{i-1/2} - q_{i+1/2}),

a forward-Euler step of the flux-difference form, so any flux law plugged
in through :mod:`fracflux.flux` inherits the same conservation structure.
End nodes own half-size volumes: under a fixed-flux condition they update
with a factor 2 and the prescribed boundary flux replaces the missing
face; under a Dirichlet condition they are pinned to the boundary value
and no flux is ever evaluated at x = 0 or x = 1.

With fixed-flux conditions at both ends the discrete mass

    M = dx * (u_0 / 2 + u_1 + ... + u_{n-1} + u_n / 2)

changes by exactly dt * (q_left - q_right) per step; the interior flux
differences telescope away.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .diagnostics import DiagnosticTrace, total_mass
from .flux import FaceFluxes, FluxKind, face_fluxes
from .weights import build_table

# Abort threshold for runaway explicit steps, relative to the initial
# magnitude (floored at 1 so an all-zero start still has a usable scale).
_BLOWUP_FACTOR = 1e12


class ConfigurationError(ValueError):
    """Inconsistent or incomplete run configuration."""


class InstabilityError(RuntimeError):
    """The explicit step produced a non-finite or runaway field."""

    def __init__(self, step_index: int, t: float, detail: str):
        self.step_index = step_index
        self.t = t
        super().__init__(f"unstable at step {step_index} (t={t:g}): {detail}")


class StabilityWarning(UserWarning):
    """Advisory: the time step exceeds the recommended ratio."""


@dataclass(frozen=True)
class Grid:
    """n + 1 equispaced nodes on [0, 1]; end volumes have half width."""

    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"grid needs n >= 1, got {self.n}")

    @property
    def dx(self) -> float:
        return 1.0 / self.n

    @property
    def x(self) -> np.ndarray:
        return np.arange(self.n + 1) * self.dx


@dataclass(frozen=True)
class Dirichlet:
    """Fixed boundary value (absorbing when the value is 0)."""

    value: float


@dataclass(frozen=True)
class FixedFlux:
    """Prescribed boundary flux (reflective when the value is 0)."""

    value: float


BoundaryCondition = Dirichlet | FixedFlux


@dataclass(frozen=True)
class BoundarySpec:
    left: BoundaryCondition
    right: BoundaryCondition

    @classmethod
    def reflective(cls) -> "BoundarySpec":
        return cls(FixedFlux(0.0), FixedFlux(0.0))


@dataclass(frozen=True)
class InitialSpec:
    """Named initial profile plus its parameters (see fracflux.scenarios)."""

    profile: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SimConfig:
    """Fully resolved run configuration.

    Snapshot times are rounded to the nearest step multiple at
    construction; duplicates after rounding collapse to one snapshot.
    ``stop_when_steady`` truncates the run once the per-step max-norm
    change drops below ``steady_eps``; later snapshot times then receive
    the frozen final field.
    """

    alpha: float
    n: int
    dt: float
    t_end: float
    snapshot_times: tuple[float, ...]
    flux: FluxKind
    bc: BoundarySpec
    initial: InitialSpec
    stability_warn_ratio: float = 0.5
    kappa: float = 1.0
    stop_when_steady: bool = False
    steady_eps: float = 1e-10
    force_inconsistent_bc: bool = False
    scenario: str | None = None

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigurationError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.n < 1:
            raise ConfigurationError(f"n must be >= 1, got {self.n}")
        if not self.dt > 0.0:
            raise ConfigurationError(f"dt must be positive, got {self.dt}")
        if not self.t_end > 0.0:
            raise ConfigurationError(f"t_end must be positive, got {self.t_end}")
        if self.n_steps < 1:
            raise ConfigurationError("t_end shorter than one time step")
        if not self.steady_eps > 0.0:
            raise ConfigurationError("steady_eps must be positive")
        snapped = []
        for t in self.snapshot_times:
            k = int(round(float(t) / self.dt))
            if k < 0 or k > self.n_steps:
                raise ConfigurationError(
                    f"snapshot time {t} outside [0, {self.t_end}]"
                )
            snapped.append(k * self.dt)
        object.__setattr__(self, "snapshot_times", tuple(sorted(set(snapped))))

    @property
    def n_steps(self) -> int:
        return int(round(self.t_end / self.dt))


@dataclass
class Field:
    """Nodal values at one time level."""

    u: np.ndarray
    t: float


@dataclass
class RunResult:
    """Snapshots plus per-step diagnostics of a completed run."""

    cfg: SimConfig
    grid: Grid
    snapshot_times: tuple[float, ...]
    snapshots: list[np.ndarray]
    trace: DiagnosticTrace
    final: Field
    steps_taken: int
    steady_stop_time: float | None = None
    decomposition: FaceFluxes | None = None  # final-field split, rl law only


def stability_ratio(cfg: SimConfig, grid: Grid) -> float:
    """dt / dx**(1 + alpha), the advisory explicit-step ratio.

    This is calibrated to the fractional laws; it is not a proven bound,
    and the plain gradient law obeys the stricter dt <= dx**2 / 2.
    """
    return cfg.dt / grid.dx ** (1.0 + cfg.alpha)


def step(current: Field, faces: FaceFluxes, cfg: SimConfig, step_index: int = 0) -> Field:
    """Advance one explicit step using precomputed interior face fluxes."""
    u = current.u
    q = faces.q
    if q.size != u.size - 1:
        raise ValueError(f"expected {u.size - 1} face fluxes, got {q.size}")
    dx = 1.0 / cfg.n
    r = cfg.dt / dx

    nxt = np.empty_like(u)
    nxt[1:-1] = u[1:-1] + r * (q[:-1] - q[1:])
    left, right = cfg.bc.left, cfg.bc.right
    if isinstance(left, Dirichlet):
        nxt[0] = left.value
    else:
        nxt[0] = u[0] + 2.0 * r * (left.value - q[0])
    if isinstance(right, Dirichlet):
        nxt[-1] = right.value
    else:
        nxt[-1] = u[-1] + 2.0 * r * (q[-1] - right.value)

    if not np.all(np.isfinite(nxt)):
        raise InstabilityError(step_index, current.t + cfg.dt, "non-finite value produced")
    return Field(u=nxt, t=current.t + cfg.dt)


def _check_dirichlet_consistency(cfg: SimConfig, u0: np.ndarray) -> None:
    for side, bc, val in (("left", cfg.bc.left, u0[0]), ("right", cfg.bc.right, u0[-1])):
        if isinstance(bc, Dirichlet):
            if abs(val - bc.value) > 1e-12 * max(1.0, abs(bc.value)):
                raise ConfigurationError(
                    f"initial value {val!r} at the {side} end does not match the "
                    f"Dirichlet value {bc.value!r}; pass force_inconsistent_bc=True "
                    "to run anyway"
                )


def run(cfg: SimConfig, grid: Grid, initial: Field) -> RunResult:
    """March the configuration forward and collect snapshots and traces.

    Deterministic: identical configurations produce bit-identical results.
    Raises :class:`InstabilityError` if the field turns non-finite or its
    magnitude exceeds 1e12 times the initial scale, and
    :class:`ConfigurationError` for Dirichlet data that contradicts the
    initial profile (unless ``force_inconsistent_bc`` is set).
    """
    if grid.n != cfg.n:
        raise ConfigurationError(f"grid has n={grid.n} but config says n={cfg.n}")
    u0 = np.asarray(initial.u, dtype=np.float64)
    if u0.shape != (cfg.n + 1,):
        raise ConfigurationError(
            f"initial field must have {cfg.n + 1} nodes, got shape {u0.shape}"
        )
    if not np.all(np.isfinite(u0)):
        raise ConfigurationError("initial field contains non-finite values")
    if not cfg.force_inconsistent_bc:
        _check_dirichlet_consistency(cfg, u0)

    ratio = stability_ratio(cfg, grid)
    if ratio > cfg.stability_warn_ratio:
        warnings.warn(
            f"dt/dx^(1+alpha) = {ratio:.3g} exceeds the advisory threshold "
            f"{cfg.stability_warn_ratio:g}; the explicit step may diverge",
            StabilityWarning,
            stacklevel=2,
        )

    table = build_table(cfg.alpha, grid.dx, cfg.n)
    n_steps = cfg.n_steps
    t0 = float(initial.t)
    snap_steps = {int(round(t / cfg.dt)): t for t in cfg.snapshot_times}

    times = np.empty(n_steps + 1)
    mass = np.empty(n_steps + 1)
    u_min = np.empty(n_steps + 1)
    u_max = np.empty(n_steps + 1)
    step_change = np.empty(n_steps)

    times[0] = t0
    mass[0] = total_mass(u0, grid)
    u_min[0] = u0.min()
    u_max[0] = u0.max()

    snapshots: dict[int, np.ndarray] = {}
    if 0 in snap_steps:
        snapshots[0] = u0.copy()

    limit = _BLOWUP_FACTOR * max(np.abs(u0).max(), 1.0)
    current = Field(u=u0.copy(), t=t0)
    steps_taken = n_steps
    steady_time = None

    for k in range(1, n_steps + 1):
        faces = face_fluxes(current.u, cfg.flux, table, kappa=cfg.kappa)
        advanced = step(current, faces, cfg, step_index=k)
        peak = np.abs(advanced.u).max()
        if peak > limit:
            raise InstabilityError(
                k, t0 + k * cfg.dt, f"|u| reached {peak:.3g}, over 1e12 x initial scale"
            )
        change = np.abs(advanced.u - current.u).max()
        current = advanced
        times[k] = t0 + k * cfg.dt
        mass[k] = total_mass(current.u, grid)
        u_min[k] = current.u.min()
        u_max[k] = current.u.max()
        step_change[k - 1] = change
        if k in snap_steps:
            snapshots[k] = current.u.copy()
        if cfg.stop_when_steady and change < cfg.steady_eps:
            steps_taken = k
            steady_time = times[k]
            break

    if steps_taken < n_steps:
        times = times[: steps_taken + 1]
        mass = mass[: steps_taken + 1]
        u_min = u_min[: steps_taken + 1]
        u_max = u_max[: steps_taken + 1]
        step_change = step_change[:steps_taken]
        # Later snapshot times inherit the frozen steady field.
        for k in snap_steps:
            if k > steps_taken:
                snapshots[k] = current.u.copy()

    trace = DiagnosticTrace(
        t=times, mass=mass, u_min=u_min, u_max=u_max, step_change=step_change
    )
    ordered = sorted(snap_steps.items())
    decomposition = None
    if cfg.flux is FluxKind.RIEMANN_LIOUVILLE:
        decomposition = face_fluxes(current.u, cfg.flux, table, kappa=cfg.kappa)
    return RunResult(
        cfg=cfg,
        grid=grid,
        snapshot_times=tuple(t for _, t in ordered),
        snapshots=[snapshots[k] for k, _ in ordered],
        trace=trace,
        final=current,
        steps_taken=steps_taken,
        steady_stop_time=steady_time,
        decomposition=decomposition,
    )
