"""Shifted Grunwald weight sequences for one-sided fractional-difference fluxes.

Every non-local flux law in this package is assembled from two related
weight sequences.  The raw coefficients follow the one-term recurrence

    g_0 = 1,        g_j = (j - 1 - alpha) / j * g_{j-1},

so g_1 = -alpha and every later coefficient stays non-positive for
0 < alpha <= 1.  The cumulative weights

    W_j = dx**(1 - alpha) * (g_0 + g_1 + ... + g_j)

are non-negative and non-increasing in j; they are the memory kernel that
turns a stack of local gradients into a one-sided fractional derivative.
At alpha = 1 both sequences degenerate, g = (1, -1, 0, ...) and
W = (1, 0, 0, ...), which collapses every flux law built on them to the
plain local gradient.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class GrunwaldTable:
    """Immutable weight table for one (alpha, dx, n) combination.

    The arrays are marked read-only so a cached table can be shared across
    concurrent readers without copying.
    """

    alpha: float
    dx: float
    g: np.ndarray  # raw coefficients g_0..g_n, dimensionless
    w: np.ndarray  # cumulative weights W_0..W_n, units of dx**(1 - alpha)

    @property
    def n(self) -> int:
        return self.g.size - 1


@lru_cache(maxsize=None)
def build_table(alpha: float, dx: float, n: int) -> GrunwaldTable:
    """Build and cache the weight table with entries g_0..g_n and W_0..W_n.

    The recurrence and the cumulative sums run in the widest native float
    available (80-bit extended on x86) before rounding to float64: the
    partial sums decay to zero through near-cancelling terms and benefit
    from the extra headroom.  Flux evaluation never recomputes weights;
    one table per (alpha, dx, n) is built here and reused.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    if not (np.isfinite(dx) and dx > 0.0):
        raise ValueError(f"dx must be positive and finite, got {dx}")
    if n < 1:
        raise ValueError(f"need at least one interior face, got n={n}")

    a = np.longdouble(alpha)
    j = np.arange(1, n + 1, dtype=np.longdouble)
    g_ext = np.empty(n + 1, dtype=np.longdouble)
    g_ext[0] = 1.0
    np.cumprod((j - 1.0 - a) / j, out=g_ext[1:])
    scale = np.longdouble(dx) ** (1.0 - a)
    w_ext = scale * np.cumsum(g_ext)

    g = g_ext.astype(np.float64)
    w = w_ext.astype(np.float64)
    g.flags.writeable = False
    w.flags.writeable = False
    return GrunwaldTable(alpha=float(alpha), dx=float(dx), g=g, w=w)


def partial_g_sum(table: GrunwaldTable, j: int) -> float:
    """Partial sum g_0 + ... + g_j, i.e. W_j with the dx scaling stripped."""
    if not 0 <= j <= table.n:
        raise IndexError(f"index {j} outside the table range 0..{table.n}")
    return float(table.w[j] / table.dx ** (1.0 - table.alpha))
