"""Concurrence operations, the block state, and partial traces."""

import math

import numpy as np
import pytest

from qrg_ising import (
    Coupling,
    block_concurrence,
    block_pure_state,
    concurrence_mixed,
    concurrence_pure,
    concurrence_spectrum,
    ground_doublet,
    partial_trace,
    spin_flip,
)

BELL = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)


def random_pure(rng):
    v = rng.standard_normal(4)
    return v / np.linalg.norm(v)


def random_density(rng):
    a = rng.standard_normal((4, 4))
    rho = a @ a.T
    return rho / np.trace(rho)


def werner(p):
    return p * np.outer(BELL, BELL) + (1.0 - p) / 4.0 * np.eye(4)


def charpoly_concurrence(rho):
    """Brute-force route: characteristic polynomial of R = rho Y rho Y.

    Coefficients from the Faddeev-LeVerrier recursion, roots from the
    companion matrix.  Accurate for generic full-rank inputs; rank-deficient
    rho makes the quartic roots ill-conditioned, so this oracle is applied
    to well-conditioned ensembles only.
    """
    y = np.zeros((4, 4))
    y[0, 3] = y[3, 0] = -1.0
    y[1, 2] = y[2, 1] = 1.0
    r = rho @ y @ rho @ y
    coeffs = [1.0]
    m = np.zeros((4, 4))
    for k in range(1, 5):
        m = r @ m + coeffs[-1] * np.eye(4)
        coeffs.append(-np.trace(r @ m) / k)
    lam = np.sqrt(np.clip(np.roots(coeffs).real, 0.0, None))
    lam = np.sort(lam)[::-1]
    return max(lam[0] - lam[1] - lam[2] - lam[3], 0.0)


def test_spin_flip_bell_invariant():
    rho = np.outer(BELL, BELL)
    assert np.max(np.abs(spin_flip(rho) - rho)) < 1e-14


def test_spin_flip_product_state():
    assert np.array_equal(spin_flip(np.diag([1.0, 0.0, 0.0, 0.0])),
                          np.diag([0.0, 0.0, 0.0, 1.0]))


def test_spin_flip_preserves_trace_and_symmetry():
    rng = np.random.default_rng(3)
    for _ in range(50):
        rho = random_density(rng)
        flipped = spin_flip(rho)
        assert abs(np.trace(flipped) - 1.0) < 1e-12
        assert np.max(np.abs(flipped - flipped.T)) < 1e-12


def test_concurrence_spectrum_descending():
    lams = concurrence_spectrum(werner(0.7))
    assert np.all(np.diff(lams) <= 0.0) and lams[-1] >= 0.0


def test_concurrence_mixed_bell():
    assert abs(concurrence_mixed(np.outer(BELL, BELL)) - 1.0) < 1e-12


def test_concurrence_mixed_product():
    assert concurrence_mixed(np.diag([1.0, 0.0, 0.0, 0.0])) == 0.0


@pytest.mark.parametrize("p", [0.0, 0.25, 1.0 / 3.0, 0.5, 0.8, 0.9, 1.0])
def test_concurrence_mixed_werner_family(p):
    # closed form for this family: max(0, (3p-1)/2)
    assert abs(concurrence_mixed(werner(p)) - max(0.0, (3.0 * p - 1.0) / 2.0)) <= 1e-12


def test_concurrence_mixed_rejects_invalid():
    rho = np.diag([1.1, 0.0, 0.0, -0.1])  # eigenvalue far below the -1e-10 floor
    with pytest.raises(ValueError):
        concurrence_mixed(rho)
    with pytest.raises(ValueError):
        concurrence_mixed(np.eye(4))  # trace 4


def test_concurrence_pure_examples():
    assert abs(concurrence_pure(BELL) - 1.0) < 1e-14
    assert concurrence_pure(np.array([0.0, 1.0, 0.0, 0.0])) == 0.0
    theta = math.pi / 8.0
    tilted = np.array([math.cos(theta), 0.0, 0.0, math.sin(theta)])
    # 2|ad - bc| = 2 cos(pi/8) sin(pi/8) = sin(pi/4)
    assert abs(concurrence_pure(tilted) - math.sin(math.pi / 4.0)) < 1e-14


def test_pure_equals_mixed_on_random_states():
    rng = np.random.default_rng(11)
    for _ in range(1000):
        v = random_pure(rng)
        assert abs(concurrence_pure(v) - concurrence_mixed(np.outer(v, v))) <= 1e-12


def test_mixed_matches_charpoly_bruteforce():
    rng = np.random.default_rng(5)
    for _ in range(200):
        rho = 0.5 * np.outer(*(2 * [random_pure(rng)])) + 0.5 * np.eye(4) / 4.0
        assert abs(concurrence_mixed(rho) - charpoly_concurrence(rho)) <= 1e-10


def test_block_state_ising_limit_is_bell():
    assert np.linalg.norm(block_pure_state(Coupling(1.0, 1e-8)) - BELL) < 1e-8


def test_block_concurrence_values():
    # closed form 1/sqrt(1+g^2), itself validated on a grid below
    assert abs(block_concurrence(1.0) - 1.0 / math.sqrt(2.0)) < 1e-12
    assert abs(block_concurrence(3.0) - 1.0 / math.sqrt(10.0)) < 1e-12


def test_block_concurrence_closed_form_identity():
    for g in np.linspace(0.0, 10.0, 501):
        assert abs(block_concurrence(g) - 1.0 / math.hypot(1.0, g)) <= 1e-10


def test_block_concurrence_strictly_decreasing():
    grid = np.arange(0.0, 10.0 + 1e-9, 1e-2)
    vals = np.array([block_concurrence(g) for g in grid])
    assert np.all(np.diff(vals) < 0.0)


def test_block_concurrence_degeneracy_robustness():
    for g in (0.1, 0.9, 1.0, 2.0, 8.0):
        d = ground_doublet(Coupling(1.0, g))
        even = (d.psi0 + d.psi1) / math.sqrt(2.0)
        odd = (d.psi0 - d.psi1) / math.sqrt(2.0)
        assert abs(concurrence_pure(even) - concurrence_pure(odd)) <= 1e-12


def test_partial_trace_ghz():
    ghz = np.zeros(16)
    ghz[0] = ghz[15] = 1.0 / math.sqrt(2.0)
    rho = partial_trace(ghz, keep=(1, 2))
    assert np.max(np.abs(rho - np.diag([0.5, 0.0, 0.0, 0.5]))) < 1e-14


def test_partial_trace_product_state():
    up = np.zeros(8)
    up[-1] = 1.0  # all bits set = all up
    for pair in [(1, 2), (1, 3), (2, 3), (3, 1)]:
        rho = partial_trace(up, keep=pair)
        assert np.max(np.abs(rho - np.diag([1.0, 0.0, 0.0, 0.0]))) < 1e-14


def brute_force_pair_density(psi, keep, n):
    """Independent double-loop summation over explicit bit patterns."""
    site_a, site_b = keep
    bit_a, bit_b = site_a - 1, site_b - 1
    pair_mask = (1 << bit_a) | (1 << bit_b)

    def with_pattern(env, p):
        return env | ((1 - (p >> 1)) << bit_a) | ((1 - (p & 1)) << bit_b)

    rho = np.zeros((4, 4))
    for p in range(4):
        for q in range(4):
            total = 0.0
            for s in range(2 ** n):
                if s & pair_mask:
                    continue  # one representative per environment pattern
                total += psi[with_pattern(s, p)] * psi[with_pattern(s, q)]
            rho[p, q] = total
    return rho


def test_partial_trace_matches_bruteforce_on_random_states():
    rng = np.random.default_rng(21)
    for keep in [(1, 2), (3, 7), (8, 2), (5, 6)]:
        psi = rng.standard_normal(256)
        psi /= np.linalg.norm(psi)
        fast = partial_trace(psi, keep=keep)
        slow = brute_force_pair_density(psi, keep, 8)
        assert np.max(np.abs(fast - slow)) <= 1e-12


def test_partial_trace_accepts_density_matrix_input():
    rng = np.random.default_rng(8)
    psi = rng.standard_normal(64)
    psi /= np.linalg.norm(psi)
    rho_full = np.outer(psi, psi)
    for keep in [(1, 4), (6, 2)]:
        assert np.max(np.abs(partial_trace(rho_full, keep) - partial_trace(psi, keep))) < 1e-12


def test_partial_trace_output_is_valid_density_matrix():
    rng = np.random.default_rng(13)
    psi = rng.standard_normal(1024)
    psi /= np.linalg.norm(psi)
    rho = partial_trace(psi, keep=(4, 9))
    assert abs(np.trace(rho) - 1.0) < 1e-12
    assert np.min(np.linalg.eigvalsh(rho)) > -1e-12


def test_partial_trace_rejects_bad_indices():
    psi = np.zeros(16)
    psi[0] = 1.0
    with pytest.raises(ValueError):
        partial_trace(psi, keep=(2, 2))
    with pytest.raises(ValueError):
        partial_trace(psi, keep=(0, 3))
    with pytest.raises(ValueError):
        partial_trace(psi, keep=(1, 5))
