"""Finite-size scaling fits and the data collapse of the derivative curves.

Two power laws characterize how the derivative dip sharpens with the
effective size N = 2^(n+1):

  * the dip position approaches the critical point, g_m - 1 ~ N^-theta,
  * the dip depth diverges, |dC/dg at g_m| ~ N^theta,

both fitted by least squares on log-log axes.  Rescaling each curve as

    y = (dC/dg|_{g_m} - dC/dg) / N     against    x = N (g - g_m)

(with the exponent of N pinned to 1/nu = 1 from the coupling map, not
refitted) collapses all sizes onto one master curve.  The master shape is
compared against a Lorentzian peak 1/(1 + (x/w)^2): the single width
parameter w is fitted (the curvature of the exact master curve at its peak
corresponds to w = sqrt(6), so a unit width cannot match), and the report
carries the fitted-width and unit-width RMS misfits side by side.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from .flow import derivative_at, find_derivative_minimum

__all__ = [
    "ScalingFit",
    "CollapseReport",
    "fit_power_law",
    "minima_table",
    "collapse",
]


@dataclass(frozen=True)
class ScalingFit:
    """Least-squares power law y = prefactor * N^exponent on log-log axes."""

    exponent: float
    prefactor: float
    r_squared: float
    window: tuple[int, int]

    @property
    def accepted(self) -> bool:
        return self.r_squared >= 0.99


def fit_power_law(points, mode: str = "raw-magnitude", g_c: float = 1.0,
                  unit_prefactor: bool = False) -> ScalingFit:
    """Fit a power law through (N, y) samples.

    Parameters
    ----------
    points : iterable of (N, y)
        Effective sizes and observables, at least four points.
    mode : str
        "raw-magnitude" regresses log y on log N; "offset-from-gc"
        regresses log(y - g_c) on log N (for dip positions approaching the
        critical coupling).
    g_c : float
        Offset subtracted in "offset-from-gc" mode.
    unit_prefactor : bool
        Pin the prefactor to 1 (intercept zero), the form y = N^exponent;
        the default leaves the prefactor free.
    """
    pts = [(float(n), float(y)) for n, y in points]
    if len(pts) < 4:
        raise ValueError(f"need at least 4 points for a power-law fit, got {len(pts)}")
    sizes = np.array([p[0] for p in pts])
    ys = np.array([p[1] for p in pts])
    if len(np.unique(sizes)) < 2:
        raise ValueError("degenerate size set: all N equal")
    if mode == "offset-from-gc":
        ys = ys - g_c
    elif mode != "raw-magnitude":
        raise ValueError(f"unknown fit mode {mode!r}")
    if np.any(ys <= 0.0):
        raise ValueError("nonpositive value under the logarithm")

    x = np.log(sizes)
    y = np.log(ys)
    if unit_prefactor:
        slope = float(np.sum(x * y) / np.sum(x * x))
        intercept = 0.0
    else:
        xm, ym = x.mean(), y.mean()
        slope = float(np.sum((x - xm) * (y - ym)) / np.sum((x - xm) ** 2))
        intercept = float(ym - slope * xm)
    resid = y - (slope * x + intercept)
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid ** 2)) / ss_tot

    n_window = sorted(int(round(math.log2(s))) - 1 for s in sizes)
    return ScalingFit(
        exponent=slope,
        prefactor=math.exp(intercept),
        r_squared=r2,
        window=(n_window[0], n_window[-1]),
    )


def minima_table(steps, bracket: tuple[float, float] = (0.5, 1.5)):
    """Dip position and depth per step: list of (n, N, g_m, dC/dg at g_m)."""
    table = []
    for n in steps:
        g_m, d_min = find_derivative_minimum(n, bracket=bracket)
        table.append((n, 2 ** (n + 1), g_m, d_min))
    return table


@dataclass(frozen=True)
class CollapseReport:
    """Rescaled derivative curves and their collapse quality.

    `deficits` holds the plotted y = (dC/dg|_{g_m} - dC/dg)/N per step
    (zero at x = 0, tending to the negative plateau -|dC/dg|_{g_m}/N);
    `normalized` holds the peak-normalized dip shapes dC/dg / dC/dg|_{g_m}
    that the Lorentzian comparison uses.  Pairwise residuals are sup-norm
    differences of the deficit curves relative to the deeper plateau.
    """

    steps: tuple[int, ...]
    sizes: tuple[int, ...]
    g_m: dict = field(repr=False)
    deriv_min: dict = field(repr=False)
    x: np.ndarray = field(repr=False)
    deficits: dict = field(repr=False)
    normalized: dict = field(repr=False)
    pairwise_residuals: dict
    lorentzian_width: float
    rms_vs_lorentzian: float
    rms_vs_unit_lorentzian: float


def collapse(
    steps,
    x_limit: float = 10.0,
    points_per_curve: int = 401,
    rms_window: float = 2.0,
    g_floor: float = 1e-3,
) -> CollapseReport:
    """Collapse the derivative curves of several steps onto one graph.

    Each step's curve is sampled around its own dip, rescaled to
    (x, y) = (N (g - g_m), (dC/dg|_{g_m} - dC/dg)/N), cubic-interpolated
    onto a common x grid containing x = 0 exactly, and compared pairwise in
    sup norm.  The pooled peak-normalized dip shape on |x| <= rms_window is
    matched against the Lorentzian family 1/(1 + (x/w)^2) with the width
    fitted by regressing 1/y - 1 on x^2; both that misfit and the unit-width
    one are reported.

    Raises ValueError when fewer than 3 steps are given or the admissible
    x ranges (g must stay above g_floor) do not cover the RMS window.
    """
    steps = tuple(sorted(set(int(n) for n in steps)))
    if len(steps) < 3:
        raise ValueError(f"need at least 3 steps for a collapse, got {len(steps)}")

    sizes, g_ms, d_mins = {}, {}, {}
    x_lo = -x_limit
    for n in steps:
        size = 2 ** (n + 1)
        g_m, d_min = find_derivative_minimum(n)
        sizes[n], g_ms[n], d_mins[n] = size, g_m, d_min
        x_lo = max(x_lo, size * (g_floor - g_m))  # keep g = g_m + x/N above the floor
    if x_lo > -rms_window:
        raise ValueError("insufficient x-overlap: curves cannot cover the RMS window")

    half = points_per_curve // 2
    x_common = np.concatenate([np.linspace(x_lo, 0.0, half + 1)[:-1],
                               np.linspace(0.0, x_limit, half + 1)])

    deficits, normalized = {}, {}
    for n in steps:
        size, g_m, d_min = sizes[n], g_ms[n], d_mins[n]
        g_grid = g_m + x_common / size
        if np.min(np.diff(g_grid)) < 8.0 * np.finfo(float).eps * g_m:
            raise ValueError(f"step {n} too deep to resolve the x grid in bare g")
        x_own = size * (g_grid - g_m)
        y_def = np.array([(d_min - derivative_at(g, n)) / size for g in g_grid])
        y_norm = np.array([derivative_at(g, n) / d_min for g in g_grid])
        deficits[n] = CubicSpline(x_own, y_def)(x_common)
        normalized[n] = CubicSpline(x_own, y_norm)(x_common)

    peaks = {n: float(np.max(np.abs(deficits[n]))) for n in steps}
    pairwise = {}
    for a, b in itertools.combinations(steps, 2):
        sup = float(np.max(np.abs(deficits[a] - deficits[b])))
        pairwise[(a, b)] = sup / max(peaks[a], peaks[b])

    window = np.abs(x_common) <= rms_window
    xs = np.concatenate([x_common[window] for _ in steps])
    ys = np.concatenate([normalized[n][window] for n in steps])
    width = math.sqrt(float(np.sum(xs ** 4) / np.sum(xs ** 2 * (1.0 / ys - 1.0))))
    rms_fit = float(np.sqrt(np.mean((ys - 1.0 / (1.0 + (xs / width) ** 2)) ** 2)))
    rms_unit = float(np.sqrt(np.mean((ys - 1.0 / (1.0 + xs ** 2)) ** 2)))

    return CollapseReport(
        steps=steps,
        sizes=tuple(sizes[n] for n in steps),
        g_m=g_ms,
        deriv_min=d_mins,
        x=x_common,
        deficits=deficits,
        normalized=normalized,
        pairwise_residuals=pairwise,
        lorentzian_width=width,
        rms_vs_lorentzian=rms_fit,
        rms_vs_unit_lorentzian=rms_unit,
    )
