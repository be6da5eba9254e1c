"""Bogdanov-Takens unfolding around the cusp.

With q and m fixed, pinning the harvest to the diagonal fold value and the
growth rate to the trace-zero value puts a codimension-2 cusp at (2h3, 2h3).
Perturbing (h, s) by (eta1, eta2) and pushing the system through the
normal-form chain yields

    u' = v,   v' = l00 + l01*v + u^2 + u*v + O(3),

and the map eta -> (l00, l01) is a local diffeomorphism (nonzero Jacobian),
which is exactly the nondegeneracy needed for the full BT bifurcation
picture (fold, Hopf, and homoclinic curves) to unfold generically.
"""
import numpy as np

import allee_lab as al

p = al.cusp_base_params(1.0, 0.1)
print(f"cusp base point: q={p.q:g} m={p.m:g} -> h3={p.h:g}, s1={p.s:.6f}")

chk = al.cusp_check(p, al.State(2 * p.h, 2 * p.h))
print(f"cusp coefficients: g20={chk.g20:.6f}, g11={chk.g11:.6f} -> {chk.verdict.value}")

rep0 = al.bt_normal_form(p, (0.0, 0.0))
print(f"\nunperturbed chain: f20={rep0.f20:.4f}, f11={rep0.f11:.4f}, h11={rep0.h11:.4f}")
print(f"l00={rep0.l00:.2e}, l01={rep0.l01:.2e} (origin of the unfolding plane)")
print(f"|d(l00,l01)/d(eta)| = {rep0.jac_det:.2f} -> {rep0.verdict.value}")

print("\nsmall eta grid (l00, l01):")
for e1 in np.linspace(-1e-3, 1e-3, 3):
    row = []
    for e2 in np.linspace(-1e-3, 1e-3, 3):
        r = al.bt_normal_form(p, (float(e1), float(e2)))
        row.append(f"({r.l00:+.4f}, {r.l01:+.5f})")
    print(f"  eta1={e1:+.0e}:  " + "  ".join(row))
