"""Iterating the coupling map and the renormalized concurrence curves.

After n blocking steps a chain of N = 2^(n+1) sites is represented by two
effective sites whose field ratio is g_n = g^(2^n).  Iterating g -> g^2
under- or overflows almost immediately, so the flow carries log(g_n), which
the squaring simply doubles:

    log g_{n+1} = 2 * log g_n        (exact in floating point)
    J_{n+1}     = J_n / sqrt(1 + g_n^2)
                = J_n * exp(-softplus(2 log g_n) / 2)

with softplus(x) = log(1 + e^x) evaluated stably.  J underflowing to zero
deep in the paramagnetic flow is benign and recorded as-is.

The block concurrence at log-coupling L = log g_n is

    C = (1 + e^(2L))^(-1/2) = exp(-softplus(2L) / 2)

and its bare-field derivative follows from the chain rule,

    dC_n/dg = C'(g_n) * dg_n/dg = -(2^n / g) * exp(2L - (3/2) softplus(2L)),

which is finite and overflow-free for every step.  Curve evaluation routes
through the two-site pipeline (block state + pure concurrence) whenever g_n
is representable and falls back to the log-domain expression beyond that;
the two agree to well below 1e-10 where both apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .block import Coupling
from .concurrence import block_concurrence

__all__ = [
    "FlowStep",
    "FlowTrace",
    "Curve",
    "flow",
    "concurrence_at_log_coupling",
    "renormalized_concurrence",
    "concurrence_curve",
    "derivative_at",
    "derivative_curve",
    "find_derivative_minimum",
    "PIPELINE_LOG_LIMIT",
]

MAX_STEPS = 60

# exp(L) stays inside double range below this; past it the closed log-domain
# expression takes over.
PIPELINE_LOG_LIMIT = 700.0

_FD_FLOOR = 1e-7
_CBRT_EPS = float(np.finfo(float).eps) ** (1.0 / 3.0)


@dataclass(frozen=True)
class FlowStep:
    """One record of the flow: step index, J_n, log(g_n), effective size."""

    n: int
    j: float
    log_g: float
    size: int


@dataclass(frozen=True)
class FlowTrace:
    """Flow history from the bare couplings (n = 0) up to n = n_max."""

    steps: tuple[FlowStep, ...]

    @property
    def log_g(self) -> np.ndarray:
        return np.array([s.log_g for s in self.steps])

    @property
    def j(self) -> np.ndarray:
        return np.array([s.j for s in self.steps])


@dataclass(frozen=True)
class Curve:
    """Values sampled over an ascending bare-g grid at a fixed step."""

    grid: np.ndarray
    values: np.ndarray
    step: int
    size: int

    def __post_init__(self):
        if len(self.grid) != len(self.values):
            raise ValueError("grid and values lengths differ")
        if np.any(np.diff(self.grid) <= 0.0):
            raise ValueError("grid must be strictly ascending")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("curve values must be finite")


def _softplus(x: float) -> float:
    return float(np.logaddexp(0.0, x))


def flow(c0: Coupling, n_max: int) -> FlowTrace:
    """Iterate the coupling map n_max times, keeping g in log space."""
    if not 0 <= n_max <= MAX_STEPS:
        raise ValueError(f"need 0 <= n_max <= {MAX_STEPS}, got {n_max}")
    log_g = math.log(c0.g) if c0.g > 0.0 else -math.inf
    j = c0.j
    steps = [FlowStep(n=0, j=j, log_g=log_g, size=2)]
    for n in range(1, n_max + 1):
        j = j * math.exp(-0.5 * _softplus(2.0 * log_g))
        log_g = 2.0 * log_g
        steps.append(FlowStep(n=n, j=j, log_g=log_g, size=2 ** (n + 1)))
    return FlowTrace(steps=tuple(steps))


def concurrence_at_log_coupling(log_g: float) -> float:
    """Block concurrence (1 + e^(2 log_g))^(-1/2), safe for any log_g."""
    return math.exp(-0.5 * _softplus(2.0 * log_g))


def _log_gn(g: float, n: int) -> float:
    if g <= 0.0:
        raise ValueError(f"field ratio must be positive, got {g}")
    return (2.0 ** n) * math.log(g)


def renormalized_concurrence(g: float, n: int) -> float:
    """Concurrence of the effective two-site model after n steps, C_n(g).

    Evaluates the block pipeline at the renormalized coupling g_n whenever
    e^(log g_n) is representable (underflow to the g = 0 limit included) and
    the log-domain expression otherwise.
    """
    log_gn = _log_gn(g, n)
    if log_gn <= PIPELINE_LOG_LIMIT:
        return block_concurrence(math.exp(log_gn))
    return concurrence_at_log_coupling(log_gn)


def concurrence_curve(grid, n: int) -> Curve:
    """Sample C_n over an ascending grid of bare field ratios."""
    grid = np.asarray(grid, dtype=float)
    values = np.array([renormalized_concurrence(g, n) for g in grid])
    return Curve(grid=grid, values=values, step=n, size=2 ** (n + 1))


def _chain_rule_derivative(g: float, n: int) -> float:
    log_gn = _log_gn(g, n)
    return -(2.0 ** n / g) * math.exp(2.0 * log_gn - 1.5 * _softplus(2.0 * log_gn))


def _fd_step(g: float, n: int) -> float:
    # The dip in C_n narrows like 2^-n, so the usual cbrt(eps)*g step is
    # shrunk with it; the floor keeps roundoff in the difference harmless.
    return max(_FD_FLOOR, _CBRT_EPS * g / 2.0 ** n)


def derivative_at(g: float, n: int, method: str = "chain-rule", step: float | None = None) -> float:
    """Bare-field derivative dC_n/dg at a single point.

    method "chain-rule" differentiates through the coupling map in log
    space; "finite-difference" applies a central difference with the given
    step (default: feature-scaled, see _fd_step) to the sampled curve.  The
    two agree to better than 1e-5 relative at the derivative minimum for
    every step up to 12.
    """
    if method == "chain-rule":
        return _chain_rule_derivative(g, n)
    if method == "finite-difference":
        h = _fd_step(g, n) if step is None else step
        if g - h <= 0.0:
            raise ValueError(f"finite-difference step {h} does not fit at g={g}")
        return (renormalized_concurrence(g + h, n) - renormalized_concurrence(g - h, n)) / (2.0 * h)
    raise ValueError(f"unknown method {method!r}")


def derivative_curve(grid, n: int, method: str = "chain-rule", step: float | None = None) -> Curve:
    """Sample dC_n/dg over an ascending grid of bare field ratios."""
    grid = np.asarray(grid, dtype=float)
    values = np.array([derivative_at(g, n, method=method, step=step) for g in grid])
    return Curve(grid=grid, values=values, step=n, size=2 ** (n + 1))


_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def find_derivative_minimum(
    n: int,
    bracket: tuple[float, float] = (0.5, 1.5),
    coarse_points: int = 201,
    tol: float = 1e-10,
) -> tuple[float, float]:
    """Locate the minimum of dC_n/dg inside the bracket.

    A coarse scan brackets the dip between grid neighbors; golden-section
    steps then shrink the interval below `tol`.  The derivative has a single
    stationary point in g > 0, so the refinement is safe once the scan finds
    an interior minimum.  Returns (g_m, dC_n/dg at g_m).
    """
    lo, hi = bracket
    if not 0.0 < lo < hi:
        raise ValueError(f"invalid bracket {bracket}")
    gs = np.linspace(lo, hi, coarse_points)
    vals = np.array([_chain_rule_derivative(g, n) for g in gs])
    k = int(np.argmin(vals))
    if k == 0 or k == coarse_points - 1:
        raise ValueError(f"no interior minimum of dC/dg in bracket {bracket} at step {n}")

    a, b = gs[k - 1], gs[k + 1]
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc = _chain_rule_derivative(c, n)
    fd = _chain_rule_derivative(d, n)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = _chain_rule_derivative(c, n)
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = _chain_rule_derivative(d, n)
    g_m = 0.5 * (a + b)
    return g_m, _chain_rule_derivative(g_m, n)
