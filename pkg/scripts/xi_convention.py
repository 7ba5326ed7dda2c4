"""Compare R_n(z) with ξ_n K_n(z, 1) under both ξ normalizations.

The ratio R_n / (ξ_n K_n) is printed for one z; with the product of
2(1 - g_j) it is 1, with the product of (1 - g_j) it is 2^n.
"""
import numpy as np

from opuckit import cgrec, measures as M
from opuckit.kernels import kernel_sum
from opuckit.opuc import build_opuc

N = 8
z = 0.9 * np.exp(0.7j)

for mu in (M.lebesgue(), M.geronimus(-0.3 + 0.2j), M.hyper_jacobi(0.8 + 0.5j)):
    c, g = mu.cgs(N)
    R = cgrec.r_values(c, g, N, z)
    t = build_opuc(mu, N)
    xc = cgrec.xi_sequence(g, mu.total_mass, cgrec.XI_CORRECTED)
    xp = cgrec.xi_sequence(g, mu.total_mass, cgrec.XI_PRINTED)
    print(mu.label())
    print("   n   R/(ξK) with 2(1-g)   R/(ξK) with (1-g)")
    for n in range(N + 1):
        k = kernel_sum(t, n, z, 1.0)
        print(f"  {n:2d}   {abs(R[n] / (xc[n] * k)):18.12f}   {abs(R[n] / (xp[n] * k)):14.6f}")
