"""Two-site block physics of the transverse-field Ising chain.

Model and conventions
---------------------
Chain Hamiltonian (periodic, N sites):

    H = -J * sum_i ( sigma^z_i sigma^z_{i+1} + g * sigma^x_i )

with exchange J > 0 and dimensionless field ratio g >= 0.  The chain is cut
into two-site blocks; each block carries

    h_block = -J * ( sigma^z_1 sigma^z_2 + g * sigma^x_1 )

i.e. the full bond plus the field on the block's first site (the second
site's field belongs to the inter-block part).  All operators here are real
in the sigma^z product basis, ordered

    index 0: |up,up>    index 1: |up,down>
    index 2: |down,up>  index 3: |down,down>

where the first arrow is site 1.  h_block is block diagonal in the two
sigma^z_2 sectors {0,2} (sigma^z_2 = +1) and {1,3} (sigma^z_2 = -1); the
ground level -J*sqrt(1+g^2) appears once in each sector, so the ground
space is an exactly degenerate doublet for every g.

Keeping that doublet and projecting the inter-block couplings onto it
renormalizes the couplings in closed form:

    g' = g^2
    J' = J * 2q / (1 + q^2),   q = sqrt(g^2 + 1) + g
       = J / sqrt(1 + g^2)     (same expression, simplified)

The map has stable fixed points at g = 0 and g = infinity and an unstable
one at g = 1 with slope dg'/dg = 2, giving the correlation-length exponent
nu = ln(2)/ln(2) = 1 for two-site blocks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Coupling",
    "GroundDoublet",
    "FixedPoint",
    "CriticalExponents",
    "pauli",
    "block_hamiltonian",
    "diagonalize_symmetric",
    "ground_doublet",
    "rg_map_closed",
    "rg_map_numeric",
    "fixed_points",
    "critical_exponents",
]

_SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]])
_SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]])
_ID2 = np.eye(2)


@dataclass(frozen=True)
class Coupling:
    """Couplings (J, g) of the chain: exchange energy and field ratio."""

    j: float
    g: float

    def __post_init__(self):
        if not (math.isfinite(self.j) and math.isfinite(self.g)):
            raise ValueError(f"coupling must be finite, got (J={self.j}, g={self.g})")
        if self.j <= 0.0:
            raise ValueError(f"exchange J must be positive, got {self.j}")
        if self.g < 0.0:
            raise ValueError(f"field ratio g must be nonnegative, got {self.g}")


@dataclass(frozen=True)
class GroundDoublet:
    """Degenerate two-site ground pair, one member per sigma^z_2 sector.

    psi0 lives in the sigma^z_2 = +1 sector (support on |uu>, |du>), psi1 in
    the -1 sector (support on |ud>, |dd>).  Both are unit-normalized, satisfy
    the eigenvalue equation to 1e-10 relative, are exactly orthogonal
    (disjoint support), and carry a fixed sign gauge: the first nonzero
    amplitude of each state is positive.
    """

    psi0: np.ndarray
    psi1: np.ndarray
    energy: float


@dataclass(frozen=True)
class FixedPoint:
    """Fixed point of the field map g -> g' with its linearized slope."""

    g: float
    stable: bool
    slope: float


@dataclass(frozen=True)
class CriticalExponents:
    """Exponents extracted from the linearized map at the unstable point."""

    nu: float
    block_size: int
    map_slope: float

    @property
    def theta_predicted(self) -> float:
        """Predicted divergence exponent 1/nu of the concurrence derivative."""
        return 1.0 / self.nu


def pauli(axis: str, site: int, n_sites: int) -> np.ndarray:
    """Tensor-product Pauli operator sigma^axis acting on `site` of `n_sites`.

    Sites are labeled 1..n_sites, site 1 being the leftmost tensor factor.
    Only the real axes 'x' and 'z' are provided; sigma^y is imaginary and is
    only ever needed here through the real product sigma^y x sigma^y, exposed
    by the concurrence module as its spin-flip operator.
    """
    if axis == "y":
        raise ValueError(
            "sigma^y is imaginary; use the concurrence module's spin-flip "
            "operator (sigma^y x sigma^y), which is real"
        )
    try:
        factor = {"x": _SIGMA_X, "z": _SIGMA_Z}[axis]
    except KeyError:
        raise ValueError(f"unknown Pauli axis {axis!r}") from None
    if not 1 <= site <= n_sites <= 4:
        raise ValueError(f"need 1 <= site <= n_sites <= 4, got site={site}, n_sites={n_sites}")
    out = np.array([[1.0]])
    for k in range(1, n_sites + 1):
        out = np.kron(out, factor if k == site else _ID2)
    return out


def block_hamiltonian(c: Coupling) -> np.ndarray:
    """4x4 two-site block Hamiltonian -J*(Z1 Z2 + g X1), real symmetric."""
    zz = pauli("z", 1, 2) @ pauli("z", 2, 2)
    return -c.j * zz - c.j * c.g * pauli("x", 1, 2)


def _gauge_fix(vec: np.ndarray) -> np.ndarray:
    """Flip the sign so the first nonzero component is positive."""
    big = np.flatnonzero(np.abs(vec) > 1e-12 * np.max(np.abs(vec)))
    return -vec if vec[big[0]] < 0.0 else vec


def diagonalize_symmetric(m, secondary=None):
    """Eigen-decompose a small real symmetric matrix by cyclic Jacobi sweeps.

    Parameters
    ----------
    m : (n, n) array_like, n <= 4
        Real symmetric matrix.
    secondary : (n,) array_like, optional
        Diagonal quantum numbers (e.g. sigma^z_2 values).  Within any
        degenerate eigenvalue group the eigenvectors are reordered by
        descending expectation value of diag(secondary), which makes the
        output basis deterministic under exact degeneracy.

    Returns
    -------
    list of (eigenvalue, eigenvector) pairs, eigenvalues ascending,
    eigenvectors orthonormal with the first nonzero component positive.

    The sweep stops when the off-diagonal Frobenius norm drops below
    1e-14 times the matrix norm; each rotation annihilates its pivot
    exactly, so entries that start at zero (sector structure) stay zero.
    """
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if n > 4:
        raise ValueError(f"dimension {n} exceeds the small-block limit of 4")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-12 * max(1.0, np.max(np.abs(a)))):
        raise ValueError("matrix is not symmetric")
    a = 0.5 * (a + a.T)

    # work on a max-abs-scaled copy so entries near the double-range limit
    # (huge renormalized couplings) cannot overflow when squared
    amax = float(np.max(np.abs(a)))
    if amax > 0.0:
        a = a / amax

    q = np.eye(n)
    scale = np.linalg.norm(a)
    if scale > 0.0:
        for _ in range(60):
            off = math.sqrt(sum(a[p, r] ** 2 for p in range(n) for r in range(n) if p != r))
            if off <= 1e-14 * scale:
                break
            for p in range(n - 1):
                for r in range(p + 1, n):
                    apr = a[p, r]
                    if apr == 0.0:
                        continue
                    theta = (a[r, r] - a[p, p]) / (2.0 * apr)
                    if abs(theta) > 1e150:
                        t = 1.0 / (2.0 * theta)
                    else:
                        t = (1.0 if theta >= 0.0 else -1.0) / (abs(theta) + math.hypot(1.0, theta))
                    cos = 1.0 / math.sqrt(1.0 + t * t)
                    sin = t * cos
                    ap, ar = a[:, p].copy(), a[:, r].copy()
                    a[:, p] = cos * ap - sin * ar
                    a[:, r] = sin * ap + cos * ar
                    ap, ar = a[p, :].copy(), a[r, :].copy()
                    a[p, :] = cos * ap - sin * ar
                    a[r, :] = sin * ap + cos * ar
                    a[p, r] = a[r, p] = 0.0  # pivot annihilated exactly
                    qp, qr = q[:, p].copy(), q[:, r].copy()
                    q[:, p] = cos * qp - sin * qr
                    q[:, r] = sin * qp + cos * qr

    w = np.diag(a).copy() * amax
    order = np.argsort(w, kind="stable")
    w, q = w[order], q[:, order]

    if secondary is not None:
        sec = np.asarray(secondary, dtype=float)
        tol = 1e-12 * max(1.0, amax * scale)
        start = 0
        while start < n:
            stop = start + 1
            while stop < n and abs(w[stop] - w[start]) <= tol:
                stop += 1
            if stop - start > 1:
                expect = [q[:, k] @ (sec * q[:, k]) for k in range(start, stop)]
                perm = np.argsort([-e for e in expect], kind="stable")
                q[:, start:stop] = q[:, start + perm]
            start = stop

    return [(w[k], _gauge_fix(q[:, k])) for k in range(n)]


def ground_doublet(c: Coupling) -> GroundDoublet:
    """Ground doublet of the two-site block, one state per sigma^z_2 sector.

    For g > 0 each sector is a nondegenerate 2x2 eigenproblem solved by the
    Jacobi routine; embedding the sector vectors leaves exact zeros on the
    other sector's slots, so <psi0|psi1> = 0 holds exactly.  The amplitude
    structure is

        psi0 ~ |uu> + r0 |du>,  r0 = (sqrt(1+g^2) - 1)/g
        psi1 ~ |ud> + r1 |dd>,  r1 = (sqrt(1+g^2) + 1)/g

    and sigma^x_1 sigma^x_2 maps psi0 onto psi1 (spin-flip symmetry).
    """
    if c.g == 0.0:
        # Analytic g -> 0 limit: pure Ising block, doublet {|uu>, |dd>}.
        psi0 = np.array([1.0, 0.0, 0.0, 0.0])
        psi1 = np.array([0.0, 0.0, 0.0, 1.0])
        return GroundDoublet(psi0=psi0, psi1=psi1, energy=-c.j)

    h = block_hamiltonian(c)
    plus = np.ix_([0, 2], [0, 2])    # sigma^z_2 = +1 sector
    minus = np.ix_([1, 3], [1, 3])   # sigma^z_2 = -1 sector
    (e_p, v_p), _ = diagonalize_symmetric(h[plus])
    (e_m, v_m), _ = diagonalize_symmetric(h[minus])
    if abs(e_p - e_m) > 1e-12 * max(1.0, abs(e_p)):
        raise ArithmeticError(f"sector ground energies differ: {e_p} vs {e_m}")

    psi0 = np.zeros(4)
    psi0[[0, 2]] = v_p
    psi1 = np.zeros(4)
    psi1[[1, 3]] = v_m

    for psi in (psi0, psi1):
        if abs(psi @ psi - 1.0) > 1e-12:
            raise ArithmeticError("doublet state lost normalization")
        # scale before the norm: raw residual entries can overflow when squared
        if np.linalg.norm((h @ psi - e_p * psi) / abs(e_p)) > 1e-10:
            raise ArithmeticError("doublet state fails the eigenvalue equation")
    return GroundDoublet(psi0=psi0, psi1=psi1, energy=e_p)


def rg_map_closed(c: Coupling) -> Coupling:
    """Closed-form renormalized couplings (J', g') of the two-site blocking.

    J' is evaluated from the literal expression 2q/(1+q^2) with
    q = sqrt(g^2+1) + g (rearranged as 2/(q + 1/q) so huge g cannot
    overflow) and cross-checked against the simplification J/sqrt(1+g^2);
    g' = g^2 is returned as the bare squaring.  Couplings large enough that
    g^2 overflows are out of range here; the flow module iterates the map in
    log space instead.
    """
    q = math.hypot(1.0, c.g) + c.g
    j_literal = c.j * 2.0 / (q + 1.0 / q)
    j_simplified = c.j / math.hypot(1.0, c.g)
    if abs(j_literal - j_simplified) > 1e-12 * j_simplified:
        raise ArithmeticError(
            f"renormalized J disagrees between forms: {j_literal} vs {j_simplified}"
        )
    return Coupling(j=j_literal, g=c.g * c.g)


def rg_map_numeric(c: Coupling) -> Coupling:
    """Renormalized couplings re-derived by projecting onto the kept doublet.

    Represents sigma^z_1, sigma^z_2 and sigma^x_2 in the {psi0, psi1} basis:
    sigma^z_2 maps to the new sigma^z, sigma^z_1 to b * sigma^z with no
    identity part (enforced to 1e-12; a violation means the doublet gauge is
    broken), and sigma^x_2 to c * sigma^x.  Rescaling the inter-block bond
    and field then gives J' = J*b and g' = g*c/b, which must reproduce the
    closed form.
    """
    d = ground_doublet(c)
    basis = np.column_stack([d.psi0, d.psi1])

    def project(op):
        return basis.T @ op @ basis

    m_z2 = project(pauli("z", 2, 2))
    if np.max(np.abs(m_z2 - np.diag([1.0, -1.0]))) > 1e-12:
        raise ArithmeticError("sigma^z_2 does not project onto the new sigma^z")

    m_z1 = project(pauli("z", 1, 2))
    identity_part = 0.5 * (m_z1[0, 0] + m_z1[1, 1])
    if abs(identity_part) > 1e-12:
        raise ArithmeticError(
            f"projected sigma^z_1 has identity part {identity_part}; doublet gauge is broken"
        )
    if max(abs(m_z1[0, 1]), abs(m_z1[1, 0])) > 1e-12:
        raise ArithmeticError("projected sigma^z_1 is not diagonal")
    b = 0.5 * (m_z1[0, 0] - m_z1[1, 1])

    m_x2 = project(pauli("x", 2, 2))
    if max(abs(m_x2[0, 0]), abs(m_x2[1, 1])) > 1e-12:
        raise ArithmeticError("projected sigma^x_2 has diagonal leakage")
    if abs(m_x2[0, 1] - m_x2[1, 0]) > 1e-12:
        raise ArithmeticError("projected sigma^x_2 is not symmetric")
    c_coef = 0.5 * (m_x2[0, 1] + m_x2[1, 0])

    return Coupling(j=c.j * b, g=c.g * c_coef / b)


def _map_slope(image, x: float, h: float = 0.5) -> float:
    # Second-order stencils are exact for the quadratic field map at any h;
    # h = 0.5 keeps every intermediate exactly representable, so the slopes
    # (and nu = ln 2 / ln slope downstream) come out exact, not just close.
    if x - h < 0.0:
        # one-sided variant never probes g < 0
        return (-3.0 * image(x) + 4.0 * image(x + h) - image(x + 2.0 * h)) / (2.0 * h)
    return (image(x + h) - image(x - h)) / (2.0 * h)


def fixed_points() -> tuple[FixedPoint, ...]:
    """Fixed points of g -> g^2 with stability from the numerical slope.

    Returns (0, stable), (1, unstable) and (inf, stable); the point at
    infinity is probed through the inverse variable u = 1/g, for which the
    map is again u -> u^2.
    """

    def g_image(g):
        return rg_map_closed(Coupling(j=1.0, g=g)).g

    def u_image(u):
        return 0.0 if u == 0.0 else 1.0 / g_image(1.0 / u)

    pts = []
    for g_star in (0.0, 1.0):
        slope = _map_slope(g_image, g_star)
        pts.append(FixedPoint(g=g_star, stable=abs(slope) < 1.0, slope=slope))
    slope_inf = _map_slope(u_image, 0.0)
    pts.append(FixedPoint(g=math.inf, stable=abs(slope_inf) < 1.0, slope=slope_inf))
    return tuple(pts)


def critical_exponents() -> CriticalExponents:
    """Correlation-length exponent from the linearized map at g = 1.

    Each step contracts the lattice by the block size n_B = 2 while
    deviations from the critical point grow by the map slope, so
    nu = ln(n_B) / ln(slope) = 1 exactly.
    """
    unstable = next(p for p in fixed_points() if not p.stable)
    n_block = 2
    return CriticalExponents(
        nu=math.log(n_block) / math.log(unstable.slope),
        block_size=n_block,
        map_slope=unstable.slope,
    )
