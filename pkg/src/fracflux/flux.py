"""Discrete face fluxes for the four interchangeable flux laws.

All laws produce fluxes at the n interior control-volume faces
x = (i + 1/2) * dx, i = 0..n-1, of a grid with n + 1 nodes on [0, 1].
Boundary faces at x = 0 and x = 1 are never evaluated here; fixed-flux
boundary values are injected by the solver instead.

Sign convention: the flux is minus the (possibly fractional) derivative
of u, and that minus sign is folded into each formula below.  The plain
gradient law therefore already returns -du/dx at the faces.

The four laws:

* ``fourier``        q_i = (u_i - u_{i+1}) / dx, the local gradient law.
* ``rl``             one-sided fractional derivative of u itself,
                     evaluated with shifted Grunwald weights.  Equivalent
                     weighted-gradient form: a cumulative-weight sum of
                     the gradient fluxes at and to the left of the face,
                     minus (W_{i+1} / dx) * u_0.  That trailing term acts
                     like an advection speed proportional to the value at
                     the left end, hence "apparent advection".
* ``caputo``         the same weighted-gradient sum with the boundary
                     term dropped; annihilates constants.
* ``parsimonious``   the rl law applied to u - u(0).  Since the shifted
                     field vanishes at the left end, this coincides with
                     the caputo law by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .weights import GrunwaldTable


class FluxKind(Enum):
    """Selector for the flux law used at control-volume faces."""

    FOURIER = "fourier"
    RIEMANN_LIOUVILLE = "rl"
    CAPUTO = "caputo"
    PARSIMONIOUS = "parsimonious"

    @classmethod
    def from_name(cls, name: str) -> "FluxKind":
        for kind in cls:
            if kind.value == name:
                return kind
        valid = ", ".join(k.value for k in cls)
        raise ValueError(f"unknown flux law {name!r}; valid names: {valid}")


@dataclass
class FaceFluxes:
    """Fluxes at the n interior faces; q[i] sits at x = (i + 0.5) * dx.

    For the weighted Riemann-Liouville form the two addends are kept:
    q = diffusive + advective, where diffusive is the cumulative-weight
    sum of gradients and advective[i] = -(W_{i+1} / dx) * u[0].  Both are
    None for laws without that split.
    """

    q: np.ndarray
    diffusive: np.ndarray | None = None
    advective: np.ndarray | None = None

    def __len__(self) -> int:
        return self.q.size


def _as_field(u, n: int | None = None) -> np.ndarray:
    arr = np.asarray(u, dtype=np.float64)
    if arr.ndim != 1 or arr.size < 2:
        raise ValueError("field must be a 1-D array with at least 2 nodes")
    if n is not None and arr.size - 1 != n:
        raise ValueError(f"field has {arr.size - 1} intervals, table expects {n}")
    return arr


def fourier_faces(u, dx: float) -> FaceFluxes:
    """Local gradient flux q_i = (u_i - u_{i+1}) / dx at the interior faces."""
    arr = _as_field(u)
    if dx <= 0.0:
        raise ValueError(f"dx must be positive, got {dx}")
    return FaceFluxes(q=(arr[:-1] - arr[1:]) / dx)


def _weighted_gradient_sum(arr: np.ndarray, table: GrunwaldTable) -> np.ndarray:
    # q[i] = sum_{j=0..i} W_j * (u[i-j] - u[i+1-j]) / dx, a truncated
    # convolution of the cumulative weights with the gradient fluxes.
    # np.convolve keeps the direct O(n^2) summation in a fixed order.
    n = arr.size - 1
    grad = (arr[:-1] - arr[1:]) / table.dx
    return np.convolve(table.w, grad)[:n]


def caputo_faces(u, table: GrunwaldTable) -> FaceFluxes:
    """Cumulative-weight sum of the gradient fluxes at and left of each face.

    Exactly zero on constant fields: every gradient in the sum vanishes.
    """
    arr = _as_field(u, table.n)
    return FaceFluxes(q=_weighted_gradient_sum(arr, table))


def rl_faces_weighted(u, table: GrunwaldTable) -> FaceFluxes:
    """Weighted-gradient form of the one-sided fractional flux.

    q[i] = sum_{j=0..i} W_j * (u[i-j] - u[i+1-j]) / dx - (W_{i+1} / dx) * u[0].
    The two addends are returned as the diffusive / advective split.
    """
    arr = _as_field(u, table.n)
    diffusive = _weighted_gradient_sum(arr, table)
    advective = -(arr[0] / table.dx) * table.w[1:]
    return FaceFluxes(q=diffusive + advective, diffusive=diffusive, advective=advective)


def rl_faces_grunwald(u, table: GrunwaldTable) -> FaceFluxes:
    """Shifted-Grunwald form of the one-sided fractional flux.

    q[i] = -dx**(-alpha) * sum_{j=0..i+1} g_j * u[i+1-j].  Algebraically
    identical to :func:`rl_faces_weighted`; kept as an independent route
    for cross-checking.
    """
    arr = _as_field(u, table.n)
    coeff = table.dx ** (-table.alpha)
    return FaceFluxes(q=-coeff * np.convolve(table.g, arr)[1 : table.n + 1])


def parsimonious_faces(u, table: GrunwaldTable) -> FaceFluxes:
    """Fractional flux of the shifted field u - u[0].

    Shifting moves the left-end value to zero, which kills the advective
    term, so the result coincides with :func:`caputo_faces` up to rounding.
    """
    arr = _as_field(u, table.n)
    return rl_faces_weighted(arr - arr[0], table)


def face_fluxes(u, kind: FluxKind, table: GrunwaldTable, kappa: float = 1.0) -> FaceFluxes:
    """Evaluate the interior face fluxes under the selected law.

    kappa is a scalar diffusivity multiplier applied uniformly; the
    default of 1 matches the nondimensional form used everywhere else.
    """
    if kind is FluxKind.FOURIER:
        out = fourier_faces(u, table.dx)
    elif kind is FluxKind.RIEMANN_LIOUVILLE:
        out = rl_faces_weighted(u, table)
    elif kind is FluxKind.CAPUTO:
        out = caputo_faces(u, table)
    elif kind is FluxKind.PARSIMONIOUS:
        out = parsimonious_faces(u, table)
    else:
        raise ValueError(f"unknown flux kind: {kind!r}")
    if kappa != 1.0:
        out = FaceFluxes(
            q=kappa * out.q,
            diffusive=None if out.diffusive is None else kappa * out.diffusive,
            advective=None if out.advective is None else kappa * out.advective,
        )
    return out
