"""Two-qubit concurrence and reduced density matrices.

Wootters' measure for a two-qubit density matrix rho:

    C = max(l1 - l2 - l3 - l4, 0)

where l1 >= l2 >= l3 >= l4 are the square roots of the eigenvalues of
R = rho * rho_tilde and rho_tilde = (sigma^y x sigma^y) rho* (sigma^y x sigma^y)
is the spin-flipped matrix.  Every state in this pipeline is real in the
sigma^z product basis (basis order |uu>, |ud>, |du>, |dd> as in the block
module), so rho* = rho and sigma^y x sigma^y is the real symmetric matrix Y
with Y|uu> = -|dd>, Y|ud> = +|du>, Y|du> = +|ud>, Y|dd> = -|uu>.  Complex
states would only require conjugating rho before the flip; that extension
point is deliberately left out here.

Instead of the non-symmetric R, the spectrum {l_k} is obtained as the
singular values of the symmetric matrix S = sqrt(rho) Y sqrt(rho), since
R is similar to S^2.  This keeps every eigenproblem real symmetric.

The renormalized-block state handed to the concurrence is the Z2-even
combination (psi0 + psi1)/sqrt(2) of the degenerate block doublet: a single
sector member is a product state with zero concurrence, while the even (or,
equivalently for this measure, odd) combination is the symmetry-unbroken
block ground state whose concurrence decays from 1 in the ordered phase to
0 in the paramagnet.
"""

from __future__ import annotations

import math

import numpy as np

from .block import Coupling, diagonalize_symmetric, ground_doublet

__all__ = [
    "SPIN_FLIP_OPERATOR",
    "spin_flip",
    "concurrence_spectrum",
    "concurrence_mixed",
    "concurrence_pure",
    "block_pure_state",
    "block_concurrence",
    "partial_trace",
]

# sigma^y x sigma^y in the real sigma^z product basis.
SPIN_FLIP_OPERATOR = np.array(
    [
        [0.0, 0.0, 0.0, -1.0],
        [0.0, 0.0, 1.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
    ]
)

_EIG_FLOOR = -1e-10  # rho eigenvalues below this signal an invalid input


def _check_density_matrix(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=float)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.T)) > 1e-10:
        raise ValueError("density matrix is not symmetric")
    if abs(np.trace(rho) - 1.0) > 1e-12:
        raise ValueError(f"density matrix trace is {np.trace(rho)}, expected 1")
    return 0.5 * (rho + rho.T)


def _check_state(state) -> np.ndarray:
    state = np.asarray(state, dtype=float)
    if state.shape != (4,):
        raise ValueError(f"expected a 4-amplitude state, got shape {state.shape}")
    if abs(state @ state - 1.0) > 1e-12:
        raise ValueError(f"state norm^2 is {state @ state}, expected 1")
    return state


def spin_flip(rho) -> np.ndarray:
    """Spin-flipped density matrix Y rho Y (rho is real, so rho* = rho)."""
    rho = _check_density_matrix(rho)
    return SPIN_FLIP_OPERATOR @ rho @ SPIN_FLIP_OPERATOR


def _sqrt_psd(rho: np.ndarray) -> np.ndarray:
    pairs = diagonalize_symmetric(rho)
    w = np.array([e for e, _ in pairs])
    if np.min(w) < _EIG_FLOOR:
        raise ValueError(
            f"density matrix has eigenvalue {np.min(w)} below {_EIG_FLOOR}; invalid input"
        )
    q = np.column_stack([v for _, v in pairs])
    return q @ (np.sqrt(np.clip(w, 0.0, None))[:, None] * q.T)


def concurrence_spectrum(rho) -> np.ndarray:
    """The four spin-flip singular values l1 >= l2 >= l3 >= l4 >= 0.

    These are the square roots of the eigenvalues of rho * rho_tilde,
    computed as |eigenvalues| of the symmetric S = sqrt(rho) Y sqrt(rho).
    """
    rho = _check_density_matrix(rho)
    root = _sqrt_psd(rho)
    s = root @ SPIN_FLIP_OPERATOR @ root
    lams = np.abs([e for e, _ in diagonalize_symmetric(s)])
    return np.sort(lams)[::-1]


def concurrence_mixed(rho) -> float:
    """Concurrence of a (possibly mixed) two-qubit density matrix."""
    l1, l2, l3, l4 = concurrence_spectrum(rho)
    return max(l1 - l2 - l3 - l4, 0.0)


def concurrence_pure(state) -> float:
    """Concurrence 2|ad - bc| of a normalized real pure state (a, b, c, d)."""
    a, b, c, d = _check_state(state)
    return 2.0 * abs(a * d - b * c)


def block_pure_state(c: Coupling) -> np.ndarray:
    """Z2-even block ground state (psi0 + psi1)/sqrt(2)."""
    d = ground_doublet(c)
    return (d.psi0 + d.psi1) / math.sqrt(2.0)


def block_concurrence(g: float, j: float = 1.0) -> float:
    """Concurrence of the two-site block ground state at field ratio g.

    The value depends only on g; numerically it coincides with
    1/sqrt(1+g^2), strictly decreasing from 1 at g=0 toward 0.
    """
    return concurrence_pure(block_pure_state(Coupling(j=j, g=g)))


def _keep_axes(n_sites: int, keep) -> tuple[int, int]:
    site_a, site_b = keep
    for s in (site_a, site_b):
        if not 1 <= s <= n_sites:
            raise ValueError(f"site {s} out of range 1..{n_sites}")
    if site_a == site_b:
        raise ValueError(f"kept sites must be distinct, got {keep}")
    return site_a, site_b


def partial_trace(state, keep, n_sites: int | None = None) -> np.ndarray:
    """Reduced 4x4 density matrix of two sites of a 2^k-dimensional system.

    Parameters
    ----------
    state : array_like
        Either a state vector of length 2^k or a 2^k x 2^k density matrix,
        bit-coded: site s occupies bit s-1 (bit set means spin up).
    keep : (int, int)
        The two site labels (1-based) to keep, in the order they should
        appear in the output basis |q_a q_b>.
    n_sites : int, optional
        Number of sites; inferred from the array size when omitted.

    Returns
    -------
    (4, 4) ndarray in the basis |uu>, |ud>, |du>, |dd> of the kept pair,
    with unit trace and positive semidefinite up to rounding.
    """
    arr = np.asarray(state, dtype=float)
    if arr.ndim == 1:
        dim = arr.shape[0]
    elif arr.ndim == 2 and arr.shape[0] == arr.shape[1]:
        dim = arr.shape[0]
    else:
        raise ValueError(f"expected a state vector or square density matrix, got {arr.shape}")
    k = dim.bit_length() - 1
    if 2 ** k != dim or k < 2:
        raise ValueError(f"dimension {dim} is not 2^k with k >= 2")
    if n_sites is not None and n_sites != k:
        raise ValueError(f"n_sites={n_sites} disagrees with dimension 2^{k}")
    site_a, site_b = _keep_axes(k, keep)

    if arr.ndim == 1:
        # numpy reshape is big-endian in the bits: axis of site s is k - s.
        tensor = arr.reshape([2] * k)
        tensor = np.moveaxis(tensor, (k - site_a, k - site_b), (0, 1))
        m = tensor.reshape(4, -1)
        rho = m @ m.T
        # axis value 1 means spin up; spin order |uu>..|dd> reverses both axes
        rho = rho.reshape(2, 2, 2, 2)[::-1, ::-1][:, :, ::-1, ::-1].reshape(4, 4)
        return rho

    bit_a, bit_b = site_a - 1, site_b - 1
    env_bits = [b for b in range(k) if b not in (bit_a, bit_b)]
    rho = np.zeros((4, 4))
    # basis index of (spin pair p, environment pattern e); p = 0 is |uu>
    patterns = []
    for p in range(4):
        up_a = 1 - (p >> 1)
        up_b = 1 - (p & 1)
        patterns.append((up_a << bit_a) | (up_b << bit_b))
    for env in range(2 ** len(env_bits)):
        base = 0
        for pos, b in enumerate(env_bits):
            base |= ((env >> pos) & 1) << b
        idx = [base | patterns[p] for p in range(4)]
        rho += arr[np.ix_(idx, idx)]
    return rho
