"""Two-site block: operators, doublet, coupling map, fixed points."""

import math

import numpy as np
import pytest

from qrg_ising import (
    Coupling,
    block_hamiltonian,
    critical_exponents,
    diagonalize_symmetric,
    fixed_points,
    ground_doublet,
    pauli,
    rg_map_closed,
    rg_map_numeric,
)

UP_UP, UP_DN, DN_UP, DN_DN = np.eye(4)


def test_pauli_z_single_site():
    assert np.array_equal(pauli("z", 1, 1), np.diag([1.0, -1.0]))


def test_pauli_x_flips_first_site():
    assert np.array_equal(pauli("x", 1, 2) @ UP_UP, DN_UP)


def test_pauli_zz_product_diagonal():
    zz = pauli("z", 1, 2) @ pauli("z", 2, 2)
    assert np.array_equal(zz, np.diag([1.0, -1.0, -1.0, 1.0]))


def test_pauli_rejects_y_and_bad_sites():
    with pytest.raises(ValueError):
        pauli("y", 1, 2)
    with pytest.raises(ValueError):
        pauli("z", 3, 2)
    with pytest.raises(ValueError):
        pauli("z", 1, 5)


def test_block_hamiltonian_ising_limit():
    h = block_hamiltonian(Coupling(1.0, 0.0))
    assert np.array_equal(h, np.diag([-1.0, 1.0, 1.0, -1.0]))


def test_block_hamiltonian_ground_energy_g1():
    # oracle: independent dense eigensolver on the 4x4
    h = block_hamiltonian(Coupling(1.0, 1.0))
    w = np.linalg.eigvalsh(h)
    assert abs(w[0] - (-math.sqrt(2.0))) < 1e-14


@pytest.mark.parametrize("g", [0.1, 0.35, 1.0, 2.5, 10.0])
def test_block_ground_level_doubly_degenerate(g):
    j = 1.0
    w = np.linalg.eigvalsh(block_hamiltonian(Coupling(j, g)))
    assert abs(w[0] - (-j * math.hypot(1.0, g))) < 1e-12
    assert w[1] - w[0] < 1e-12          # exact doublet
    assert w[2] - w[1] > 1e-6 * j       # well-separated from the rest


def test_diagonalize_already_diagonal():
    pairs = diagonalize_symmetric(np.diag([3.0, 1.0, 2.0]))
    assert [e for e, _ in pairs] == [1.0, 2.0, 3.0]


def test_diagonalize_block_hamiltonian_doublet():
    pairs = diagonalize_symmetric(block_hamiltonian(Coupling(1.0, 1.0)))
    assert abs(pairs[0][0] - (-math.sqrt(2.0))) < 1e-12
    assert abs(pairs[1][0] - (-math.sqrt(2.0))) < 1e-12


def test_diagonalize_random_reconstruction():
    rng = np.random.default_rng(42)
    for _ in range(200):
        m = rng.standard_normal((4, 4))
        m = 0.5 * (m + m.T)
        pairs = diagonalize_symmetric(m)
        w = np.array([e for e, _ in pairs])
        q = np.column_stack([v for _, v in pairs])
        assert np.max(np.abs(q @ np.diag(w) @ q.T - m)) <= 1e-12
        assert np.max(np.abs(q.T @ q - np.eye(4))) <= 1e-12
        assert np.all(np.diff(w) >= 0.0)


def test_diagonalize_rejects_nonsymmetric():
    with pytest.raises(ValueError):
        diagonalize_symmetric(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_diagonalize_rejects_large_matrices():
    with pytest.raises(ValueError):
        diagonalize_symmetric(np.eye(5))


def test_diagonalize_secondary_sort_orders_degenerate_pair():
    h = block_hamiltonian(Coupling(1.0, 0.7))
    sz2 = np.diag(pauli("z", 2, 2))
    pairs = diagonalize_symmetric(h, secondary=sz2)
    v0, v1 = pairs[0][1], pairs[1][1]
    assert v0 @ (sz2 * v0) > 0.99   # +1 sector listed first
    assert v1 @ (sz2 * v1) < -0.99


def test_doublet_ising_limit():
    d = ground_doublet(Coupling(1.0, 1e-6))
    assert np.linalg.norm(d.psi0 - UP_UP) < 1e-6
    assert np.linalg.norm(d.psi1 - DN_DN) < 1e-6


def test_doublet_amplitude_ratios():
    # by-hand solution of each 2x2 sector eigenproblem
    for g in (0.3, 1.0, 4.0):
        d = ground_doublet(Coupling(1.0, g))
        s = math.hypot(1.0, g)
        assert abs(d.psi0[2] / d.psi0[0] - (s - 1.0) / g) < 1e-10
        assert abs(d.psi1[3] / d.psi1[1] - (s + 1.0) / g) < 1e-10


def test_doublet_g1_explicit():
    d = ground_doublet(Coupling(1.0, 1.0))
    ratio = math.sqrt(2.0) - 1.0
    expected = np.array([1.0, 0.0, ratio, 0.0])
    expected /= np.linalg.norm(expected)
    assert np.linalg.norm(d.psi0 - expected) < 1e-12
    assert abs(d.energy - (-math.sqrt(2.0))) < 1e-12


@pytest.mark.parametrize("g", np.geomspace(0.1, 10.0, 7))
def test_doublet_spin_flip_symmetry(g):
    d = ground_doublet(Coupling(1.0, g))
    flip = pauli("x", 1, 2) @ pauli("x", 2, 2)
    assert np.linalg.norm(flip @ d.psi0 - d.psi1) < 1e-10


def test_doublet_exact_orthogonality_and_gauge():
    for g in (0.0, 0.2, 1.0, 7.0):
        d = ground_doublet(Coupling(1.0, g))
        assert d.psi0 @ d.psi1 == 0.0  # disjoint support, exactly
        assert d.psi0[np.flatnonzero(d.psi0)[0]] > 0.0
        assert d.psi1[np.flatnonzero(d.psi1)[0]] > 0.0


def test_doublet_bitwise_deterministic():
    a = ground_doublet(Coupling(1.0, 0.37))
    b = ground_doublet(Coupling(1.0, 0.37))
    assert np.array_equal(a.psi0, b.psi0)
    assert np.array_equal(a.psi1, b.psi1)


def test_rg_map_closed_ising_fixed_point():
    out = rg_map_closed(Coupling(1.0, 0.0))
    assert out.j == 1.0 and out.g == 0.0


def test_rg_map_closed_field_squares():
    assert rg_map_closed(Coupling(1.0, 2.0)).g == 4.0


def test_rg_map_closed_g_squaring_is_exact():
    for g in np.geomspace(0.05, 20.0, 25):
        assert rg_map_closed(Coupling(1.0, g)).g == g * g  # no drift beyond the squaring


def test_rg_map_closed_j_at_g1():
    assert abs(rg_map_closed(Coupling(1.0, 1.0)).j - 1.0 / math.sqrt(2.0)) < 1e-14


def test_rg_map_closed_literal_equals_simplified():
    for g in np.geomspace(0.05, 20.0, 100):
        j = rg_map_closed(Coupling(1.0, g)).j
        assert abs(j - 1.0 / math.hypot(1.0, g)) <= 1e-12


def test_rg_map_numeric_g1_coefficients():
    out = rg_map_numeric(Coupling(1.0, 1.0))
    assert abs(out.j - 1.0 / math.sqrt(2.0)) < 1e-12  # b = 1/sqrt(2)
    assert abs(out.g - 1.0) < 1e-12                   # c/b = 1


@pytest.mark.parametrize("g", np.geomspace(0.05, 20.0, 100))
def test_rg_map_numeric_matches_closed(g):
    closed = rg_map_closed(Coupling(1.0, g))
    numeric = rg_map_numeric(Coupling(1.0, g))
    assert abs(numeric.j - closed.j) <= 1e-10
    assert abs(numeric.g - closed.g) <= 1e-10 * max(1.0, closed.g)


@pytest.mark.parametrize("g", np.geomspace(0.1, 10.0, 9))
def test_projected_sz1_traceless(g):
    # the identity part of the projected sigma^z_1 must vanish by symmetry;
    # rg_map_numeric raises if it exceeds 1e-12
    d = ground_doublet(Coupling(1.0, g))
    basis = np.column_stack([d.psi0, d.psi1])
    m = basis.T @ pauli("z", 1, 2) @ basis
    assert abs(m[0, 0] + m[1, 1]) <= 1e-12


def test_fixed_points():
    pts = {p.g: p for p in fixed_points()}
    assert set(pts) == {0.0, 1.0, math.inf}
    assert pts[0.0].stable and pts[math.inf].stable
    assert not pts[1.0].stable
    assert pts[1.0].slope == 2.0


def test_critical_exponents_exact():
    ce = critical_exponents()
    assert ce.nu == 1.0
    assert ce.map_slope == 2.0
    assert ce.block_size == 2
    assert ce.theta_predicted == 1.0


def test_coupling_validation():
    with pytest.raises(ValueError):
        Coupling(-1.0, 0.5)
    with pytest.raises(ValueError):
        Coupling(1.0, -0.5)
    with pytest.raises(ValueError):
        Coupling(1.0, math.inf)
