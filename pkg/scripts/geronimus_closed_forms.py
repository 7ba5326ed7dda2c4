"""g_n(ν) for the Geronimus arc-endpoint factor, three ways.

Columns: from the connection coefficients, the closed form implied by
a_2 = -4 (n+3)/(n+1) d, the closed form with 4(n+3), 4(n+2) in place of
(n+3) g, (n+2) g, and the Levinson oracle on the transformed moments.
"""
from opuckit import cgrec, measures as M
from opuckit.verify import nu_oracle

NMAX = 12

for alpha in (-0.5, -0.3, -0.3 + 0.2j):
    mu = M.geronimus(alpha)
    G = cgrec.geronimus_factor(mu)
    tc = cgrec.transformed_cg(mu, G, NMAX)
    _, lev = nu_oracle(mu, G, NMAX)
    _, g_oracle, _ = cgrec.cg_from_alpha(lev.alphas)
    print(f"alpha = {alpha}, c_n(nu) = {tc.c[0] + 0.0:.12f} (closed form {cgrec.geronimus_c_nu(alpha) + 0.0:.12f})")
    print("   n   connection       implied          alternative      oracle")
    for n in range(1, NMAX + 1):
        print(f"  {n:2d}   {tc.g[n - 1]:.12f}   {cgrec.geronimus_g_nu(alpha, n):.12f}   "
              f"{cgrec.geronimus_g_nu_displayed(alpha, n):.12f}   {g_oracle[n - 1]:.12f}")
