"""K_n(·, w; ν) for dν = G(ζ) ζ^{-m} dμ from the μ-kernels, against Levinson."""
import numpy as np

from opuckit import christoffel as X, measures as M
from opuckit.opuc import build_opuc
from opuckit.verify import coeff_error, nu_oracle, oracle_kernel

n = 6
w = 1.2 * np.exp(1j * np.pi / 5)

for mu in (M.lebesgue(), M.geronimus(-0.5), M.hyper_jacobi(1)):
    for zeros in ((2, 0.5), (2, 0.5, 3j, 1j / 3)):
        G = X.make_factor(zeros, mu)
        t = build_opuc(mu, n + 2 * G.m)
        _, lev = nu_oracle(mu, G, n)
        ref = oracle_kernel(lev, n, w)
        for P in (X.admissible_floor(G.m), X.admissible_ceil(G.m)):
            r = X.transform_kernel(t, P, G, n, w)
            print(f"{mu.label():24s} m={G.m} {P.condition:18s} "
                  f"err {coeff_error(r.kernel_nu, ref):.2e}  degeneracy ratio {r.degeneracy_ratio:.2e}")

mu = M.lebesgue()
G = X.make_factor((2, 0.5), mu)
t = build_opuc(mu, n + 2)
for P in (X.admissible_floor(1), X.admissible_ceil(1)):
    r = X.transform_kernel(t, P, G, n, 0.0)
    print(f"w = 0, {P.condition}: degenerate = {r.degenerate}, Δ0 = {r.delta0:.3g}, Δm = {r.delta_m:.3g}")
