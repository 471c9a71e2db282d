"""Walk through the two-site block: exact doublet, coupling map, fixed points.

Run:  python demos/block_rg_basics.py
"""

import numpy as np

from qrg_ising import (
    Coupling,
    block_hamiltonian,
    critical_exponents,
    fixed_points,
    ground_doublet,
    rg_map_closed,
    rg_map_numeric,
)

np.set_printoptions(precision=6, suppress=True)

print("=== The two-site block ===")
c = Coupling(j=1.0, g=1.0)
h = block_hamiltonian(c)
print(f"h(J=1, g=1) in the basis |uu>, |ud>, |du>, |dd>:\n{h}")
print(f"spectrum: {np.linalg.eigvalsh(h)}   (ground level is an exact doublet)")

d = ground_doublet(c)
print(f"\nkept doublet at g=1 (one member per sigma^z_2 sector):")
print(f"  psi0 = {d.psi0}")
print(f"  psi1 = {d.psi1}")
print(f"  energy = {d.energy:.12f}  (equals -J*sqrt(1+g^2))")

print("\n=== Coupling map: closed form vs doublet projection ===")
print(f"{'g':>6} {'J_closed':>12} {'J_numeric':>12} {'g_closed':>12} {'g_numeric':>12}")
for g in (0.25, 0.5, 1.0, 2.0, 4.0):
    closed = rg_map_closed(Coupling(1.0, g))
    numeric = rg_map_numeric(Coupling(1.0, g))
    print(f"{g:6.2f} {closed.j:12.8f} {numeric.j:12.8f} {closed.g:12.8f} {numeric.g:12.8f}")
print("the two derivations agree to 1e-10 everywhere; g' = g^2 exactly")

print("\n=== Flow structure ===")
for p in fixed_points():
    kind = "stable" if p.stable else "UNSTABLE"
    print(f"  fixed point g* = {p.g:<6} slope {p.slope:<4} {kind}")
ce = critical_exponents()
print(f"correlation-length exponent: nu = ln({ce.block_size})/ln({ce.map_slope}) = {ce.nu}")
print(f"predicted derivative-divergence exponent: theta = 1/nu = {ce.theta_predicted}")
