"""Named experiment setups: initial profiles plus fully resolved configs.

Each scenario pins every numerical parameter, so a single name reproduces
a complete experiment.  The shared defaults are n = 100 (dx = 0.01) and
dt = 0.0005, the desk-scale resolution used throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .flux import FluxKind
from .solver import (
    BoundarySpec,
    ConfigurationError,
    Dirichlet,
    Field,
    Grid,
    InitialSpec,
    SimConfig,
)

_BUMP_AMPLITUDE = 64.0 * np.pi**3 / (np.pi**2 - 4.0)


def triangular_pulse(x):
    """Unit-area triangle: rises from 0.3 to a peak of 5 at 0.5, back to 0 at 0.7."""
    xs = np.asarray(x, dtype=np.float64)
    out = np.where(
        xs < 0.3,
        0.0,
        np.where(
            xs < 0.5,
            25.0 * xs - 7.5,
            np.where(xs < 0.7, -25.0 * xs + 17.5, 0.0),
        ),
    )
    return float(out) if out.ndim == 0 else out


def fig7_bump(x, offset: float = 0.0):
    """Non-negative unit-area bump supported on (0, 0.25), zero elsewhere.

    The quadratic-times-sine shape vanishes with its value (not its slope)
    at both ends of the support; the prefactor normalizes the area to 1.
    An optional constant offset shifts the whole profile.
    """
    xs = np.asarray(x, dtype=np.float64)
    inside = (xs > 0.0) & (xs < 0.25)
    out = (
        np.where(inside, _BUMP_AMPLITUDE * (xs - 0.25) ** 2 * np.sin(4.0 * np.pi * xs), 0.0)
        + offset
    )
    return float(out) if out.ndim == 0 else out


def constant_profile(x, value: float = 0.0):
    xs = np.asarray(x, dtype=np.float64)
    out = np.full_like(xs, float(value))
    return float(out) if out.ndim == 0 else out


PROFILES: dict[str, Callable] = {
    "triangular-pulse": triangular_pulse,
    "fig7-bump": fig7_bump,
    "constant": constant_profile,
}


def build_initial(spec: InitialSpec, grid: Grid) -> Field:
    """Materialize an initial profile on the grid nodes."""
    try:
        profile = PROFILES[spec.profile]
    except KeyError:
        valid = ", ".join(sorted(PROFILES))
        raise ConfigurationError(
            f"unknown initial profile {spec.profile!r}; valid profiles: {valid}"
        ) from None
    values = np.asarray(profile(grid.x, **spec.params), dtype=np.float64)
    return Field(u=values, t=0.0)


@dataclass(frozen=True)
class Scenario:
    """A named, fully parameterized experiment."""

    name: str
    cfg: SimConfig
    initial: Callable  # pure function of the node positions
    expected_qualitative: str

    def initial_field(self, grid: Grid) -> Field:
        return Field(u=np.asarray(self.initial(grid.x), dtype=np.float64), t=0.0)


SCENARIO_NAMES = (
    "pulse-reflective",
    "ice-warsaw",
    "ice-minneapolis",
    "fig7-zero",
    "fig7-shifted",
)

_NOTES = {
    "pulse-reflective": (
        "mass stays at 1; caputo flattens to a line of unit height, rl piles "
        "the conserved quantity against the left wall"
    ),
    "ice-warsaw": "stays identically 0 for every flux law",
    "ice-minneapolis": (
        "caputo/fourier/parsimonious hold 32 forever; rl decays near the left "
        "wall into a non-flat steady profile"
    ),
    "fig7-zero": "rl and caputo solutions coincide pointwise (zero left boundary)",
    "fig7-shifted": (
        "caputo solution is the fig7-zero one displaced by 5; rl dips below "
        "the initial minimum"
    ),
}


def make_scenario(name: str, *, alpha: float = 0.5) -> Scenario:
    """Construct one of the built-in scenarios.

    alpha defaults to 0.5 everywhere and is echoed into the run manifest;
    override it to sweep the fractional order.
    """
    n, dt = 100, 0.0005
    common = dict(alpha=alpha, n=n, dt=dt, scenario=name)

    if name == "pulse-reflective":
        cfg = SimConfig(
            t_end=10.0,
            snapshot_times=(0.01, 0.1, 1.0, 10.0),
            flux=FluxKind.CAPUTO,
            bc=BoundarySpec.reflective(),
            initial=InitialSpec("triangular-pulse"),
            **common,
        )
        generator = triangular_pulse
    elif name == "ice-warsaw":
        cfg = SimConfig(
            t_end=1.0,
            snapshot_times=(0.25, 0.5, 1.0),
            flux=FluxKind.CAPUTO,
            bc=BoundarySpec(Dirichlet(0.0), Dirichlet(0.0)),
            initial=InitialSpec("constant", {"value": 0.0}),
            **common,
        )
        generator = constant_profile
    elif name == "ice-minneapolis":
        cfg = SimConfig(
            t_end=100.0,
            snapshot_times=(100.0,),
            flux=FluxKind.CAPUTO,
            bc=BoundarySpec(Dirichlet(32.0), Dirichlet(32.0)),
            initial=InitialSpec("constant", {"value": 32.0}),
            stop_when_steady=True,
            **common,
        )

        def generator(x):
            return constant_profile(x, value=32.0)

    elif name == "fig7-zero":
        cfg = SimConfig(
            t_end=0.2,
            snapshot_times=(0.01, 0.04, 0.2),
            flux=FluxKind.CAPUTO,
            bc=BoundarySpec(Dirichlet(0.0), Dirichlet(0.0)),
            initial=InitialSpec("fig7-bump", {"offset": 0.0}),
            **common,
        )
        generator = fig7_bump
    elif name == "fig7-shifted":
        cfg = SimConfig(
            t_end=0.2,
            snapshot_times=(0.01, 0.04, 0.2),
            flux=FluxKind.CAPUTO,
            bc=BoundarySpec(Dirichlet(5.0), Dirichlet(5.0)),
            initial=InitialSpec("fig7-bump", {"offset": 5.0}),
            **common,
        )

        def generator(x):
            return fig7_bump(x, offset=5.0)

    else:
        valid = ", ".join(SCENARIO_NAMES)
        raise ConfigurationError(f"unknown scenario {name!r}; valid names: {valid}")

    return Scenario(
        name=name, cfg=cfg, initial=generator, expected_qualitative=_NOTES[name]
    )
