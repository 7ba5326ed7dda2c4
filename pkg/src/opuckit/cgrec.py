"""The w = 1 theory: (c, g) parameters, normalized kernels R_n and their
transformation under multiplication of the measure by G(ζ)/ζ^m."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .errors import ConsistencyError, ConventionError, DomainError, UnsupportedOperationError


def cg_from_alpha(alphas) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Map α_0..α_{N-1} to (c_1..c_N, g_1..g_N, τ_0..τ_N)."""
    alphas = np.asarray(alphas, dtype=complex)
    N = alphas.size
    tau = np.empty(N + 1, dtype=complex)
    tau[0] = 1.0
    c = np.empty(N)
    g = np.empty(N)
    for n in range(1, N + 1):
        a = alphas[n - 1]
        ta = tau[n - 1] * a
        if abs(1 - ta) == 0:
            raise DomainError(f"tau_{n-1} * alpha_{n-1} = 1")
        c[n - 1] = ta.imag / (ta.real - 1)
        g[n - 1] = 0.5 * abs(1 - ta) ** 2 / (1 - ta.real)
        tau[n] = (tau[n - 1] - np.conj(a)) / (1 - ta)
    return c, g, tau


def alpha_from_cg(c, g) -> np.ndarray:
    """Inverse map: (c_1..c_N, g_1..g_N) to α_0..α_{N-1}."""
    c = np.asarray(c, dtype=float)
    g = np.asarray(g, dtype=float)
    if np.any((g <= 0) | (g >= 1)):
        raise DomainError("every g_n must lie in (0, 1)")
    out = np.empty(c.size, dtype=complex)
    tau = 1.0 + 0j
    for n in range(1, c.size + 1):
        cn, gn = c[n - 1], g[n - 1]
        out[n - 1] = (1 - 2 * gn - 1j * cn) / (1 - 1j * cn) / tau
        tau = tau * (1 - 1j * cn) / (1 + 1j * cn)
    return out


# -- (c, g) tables, ξ and R_n ---------------------------------------------------

XI_CORRECTED = "corrected"
XI_PRINTED = "printed"
SINGULAR_RTOL = 1e-12
REALITY_TOL = 1e-9


def xi_sequence(g, total_mass: float = 1.0, convention: str = XI_CORRECTED) -> np.ndarray:
    """ξ_0..ξ_N with R_n = ξ_n K_n(·, 1).

    ``corrected`` uses ξ_n = ξ_0 ∏ 2(1 - g_j), the normalization under
    which the three-term recurrence below reproduces ξ_n K_n(z, 1);
    ``printed`` drops the factor 2 and is off by 2^n.
    """
    g = np.asarray(g, dtype=float)
    if convention == XI_CORRECTED:
        f = 2 * (1 - g)
    elif convention == XI_PRINTED:
        f = 1 - g
    else:
        raise ValueError(f"unknown ξ convention {convention!r}")
    return total_mass * np.concatenate([[1.0], np.cumprod(f)])


@dataclass(frozen=True)
class CGParams:
    c: np.ndarray     # c_1..c_N
    g: np.ndarray     # g_1..g_N
    tau: np.ndarray   # τ_0..τ_N
    xi: np.ndarray    # ξ_0..ξ_N

    @property
    def d(self) -> np.ndarray:
        """Chain sequence d_2..d_N, d_{n+1} = (1 - g_n) g_{n+1}."""
        return (1 - self.g[:-1]) * self.g[1:]


def cg_params(measure, N: int, convention: str = XI_CORRECTED) -> CGParams:
    if N < 1:
        raise ValueError("N must be >= 1")
    c, g, tau = cg_from_alpha(measure.alphas(N))
    return CGParams(c, g, tau, xi_sequence(g, measure.total_mass, convention))


def r_sequence_from_cg(c, g, N: int) -> list:
    """R_0..R_N from the three-term recurrence (R_0 = 1, R_{-1} = 0)."""
    c = np.asarray(c, dtype=float)
    g = np.asarray(g, dtype=float)
    if c.size < N or g.size < N:
        raise ValueError(f"need {N} (c, g) pairs")
    R = [np.ones(1, dtype=complex)]
    if N == 0:
        return R
    R.append(np.array([1 - 1j * c[0], 1 + 1j * c[0]]))
    for n in range(1, N):
        d = (1 - g[n - 1]) * g[n]
        f = np.array([1 - 1j * c[n], 1 + 1j * c[n]])
        R.append(poly.sub(poly.mul(f, R[n]), poly.shift(4 * d * R[n - 1], 1)))
    return R


def r_values(c, g, N: int, z) -> np.ndarray:
    """R_0(z)..R_N(z) by running the recurrence on values (rows indexed by n).

    Horner on the coefficients of R_n cancels badly near the support; the
    value recurrence does not.
    """
    c = np.asarray(c, dtype=float)
    g = np.asarray(g, dtype=float)
    if c.size < N or g.size < N:
        raise ValueError(f"need {N} (c, g) pairs")
    z = np.asarray(z, dtype=complex)
    out = np.empty((N + 1,) + z.shape, dtype=complex)
    out[0] = 1.0
    if N >= 1:
        out[1] = (1 - 1j * c[0]) + (1 + 1j * c[0]) * z
    for n in range(1, N):
        d = (1 - g[n - 1]) * g[n]
        out[n + 1] = ((1 - 1j * c[n]) + (1 + 1j * c[n]) * z) * out[n] - 4 * d * z * out[n - 1]
    return out


def r_sequence(measure, N: int) -> list:
    if N == 0:
        return [np.ones(1, dtype=complex)]
    c, g = measure.cgs(N)
    return r_sequence_from_cg(c, g, N)


# -- connection coefficients ------------------------------------------------------

@dataclass(frozen=True)
class ConnectionCoeffs:
    """a[n] = (a_1..a_2m) for R_{n+2m} + Σ a_j p_j R_{n+2m-j} = γ_n G R_n(·; ν)."""

    m: int
    a: np.ndarray       # shape (nmax + 1, 2m)
    gamma: np.ndarray   # γ_0..γ_nmax
    c: np.ndarray       # base c_1..c_{nmax+2m}
    g: np.ndarray


def _floor_power(j: int) -> int:
    return j // 2


def _solve_scaled(A: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    rows = np.max(np.abs(A), axis=1)
    rows = np.where(rows > 0, rows, 1.0)
    A = A / rows[:, None]
    rhs = rhs / rows
    s = np.max(np.abs(A), axis=0)
    if np.any(s == 0):
        raise ConsistencyError("connection system has a zero column")
    As = A / s
    sv = np.linalg.svd(As, compute_uv=False)
    if sv[-1] <= SINGULAR_RTOL * sv[0]:
        raise ConsistencyError("connection system is singular")
    return np.linalg.solve(As, rhs) / s


def connection_coeffs(measure, G, nmax: int) -> ConnectionCoeffs:
    """Connection coefficients over p_j = z^{floor(j/2)} and the γ_n.

    Simple zeros give one row per zero; for m = 1 a double zero gives
    a value row and a derivative row.
    """
    from .christoffel import group_zeros

    m = G.m
    groups = group_zeros(G.zeros)
    if any(k > 1 for _, k in groups) and m > 1:
        raise UnsupportedOperationError("repeated zeros are supported for m = 1 only")
    top = nmax + 2 * m
    c, g = measure.cgs(top)
    R = r_sequence_from_cg(c, g, top)
    points = [(z, r) for z, k in groups for r in range(k)]

    def row_values(p):
        out = []
        for z, r in points:
            q = p
            for _ in range(r):
                q = poly.derivative(q)
            out.append(poly.evaluate(q, z))
        return np.array(out)

    a = np.empty((nmax + 1, 2 * m), dtype=complex)
    for n in range(nmax + 1):
        N = n + 2 * m
        A = np.column_stack([row_values(poly.shift(R[N - j], _floor_power(j)))
                             for j in range(1, 2 * m + 1)])
        a[n] = _solve_scaled(A, -row_values(R[N]))

    cc = lambda k: c[k - 1]
    gamma = np.empty(nmax + 1, dtype=complex)
    gamma[0] = np.prod([1 + 1j * cc(j) for j in range(1, 2 * m + 1)]) / np.conj(G.as_poly[0])
    for n in range(1, nmax + 1):
        N = n + 2 * m
        gamma[n] = gamma[n - 1] * 0.5 * (_ratio_r(cc, a, n, N) + 1 + 1j * cc(N))

    symmetric = np.all(c == 0) and _conj_closed(G.zeros)
    if symmetric and nmax >= 1:
        ratio = gamma[1:] / gamma[:-1]
        if np.max(np.abs(ratio.imag)) > 1e-10 * max(1.0, np.max(np.abs(ratio))):
            raise ConsistencyError("γ_n / γ_{n-1} is not real for symmetric data")
    return ConnectionCoeffs(m, a, gamma, c, g)


def _conj_closed(zeros) -> bool:
    rest = list(zeros)
    while rest:
        z = rest.pop(0)
        if abs(z.imag) <= 1e-12 * max(1.0, abs(z)):
            continue
        hit = [i for i, y in enumerate(rest) if abs(y - np.conj(z)) <= 1e-10 * max(1.0, abs(z))]
        if not hit:
            return False
        rest.pop(hit[0])
    return True


def _ratio_r(cc, a, n: int, N: int) -> complex:
    return ((1 - 1j * cc(N - 1)) * ((1 - 1j * cc(N)) + a[n][0])
            / ((1 - 1j * cc(N - 1)) + a[n - 1][0]))


@dataclass(frozen=True)
class TransformedCG:
    c: np.ndarray       # c_1(ν)..c_nmax(ν)
    g: np.ndarray       # g_1(ν)..g_nmax(ν)
    coeffs: ConnectionCoeffs
    convention: str
    max_imag: float


def transformed_cg(measure, G, nmax: int, convention: str = XI_CORRECTED) -> TransformedCG:
    """(c_n(ν), g_n(ν)), n = 1..nmax, for dν = G(ζ) ζ^{-m} dμ.

    The g-formula is a ratio of ξ-weighted connection sums; with the
    corrected ξ it carries a factor 1/2, with the printed ξ it does not.
    """
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    cc_ = connection_coeffs(measure, G, nmax)
    m, a, gamma, c, g = cc_.m, cc_.a, cc_.gamma, cc_.c, cc_.g
    xi = xi_sequence(g, measure.total_mass, convention)
    half = 0.5 if convention == XI_CORRECTED else 1.0
    cc = lambda k: c[k - 1]
    cnu = np.empty(nmax, dtype=complex)
    gnu = np.empty(nmax, dtype=complex)
    for n in range(1, nmax + 1):
        N = n + 2 * m
        r = _ratio_r(cc, a, n, N)
        ratio = gamma[n - 1] / gamma[n]
        cnu[n - 1] = 0.5j * ratio * (r - (1 + 1j * cc(N)))
        num = xi[N] + sum(a[n][2 * j - 2] * xi[N - 2 * j + 1] + a[n][2 * j - 1] * xi[N - 2 * j]
                          for j in range(1, m + 1))
        den = xi[N - 1] + sum(a[n - 1][2 * j - 2] * xi[N - 2 * j] + a[n - 1][2 * j - 1] * xi[N - 2 * j - 1]
                              for j in range(1, m + 1))
        gnu[n - 1] = 1 - half * ratio * num / den
    imag = float(max(np.max(np.abs(cnu.imag)), np.max(np.abs(gnu.imag))))
    if imag > REALITY_TOL * (1 + max(np.max(np.abs(cnu)), np.max(np.abs(gnu)))):
        raise ConventionError(
            f"transformed (c, g) have imaginary parts up to {imag:.3e} "
            f"under the {convention} ξ convention")
    return TransformedCG(cnu.real, gnu.real, cc_, convention, imag)


def gamma_direct(measure, G, c_nu, n: int) -> complex:
    """γ_n from leading coefficients: ∏_{k≤n+2m}(1+ic_k(μ)) / (conj G(0) ∏_{k≤n}(1+ic_k(ν)))."""
    N = n + 2 * G.m
    c, _ = measure.cgs(N)
    top = np.prod(1 + 1j * c[:N])
    bottom = np.conj(G.as_poly[0]) * np.prod(1 + 1j * np.asarray(c_nu[:n]))
    return complex(top / bottom)


# -- closed forms for the example families ----------------------------------------

def geronimus_a2(alpha: complex, n: int) -> float:
    """a_2^{(n)} = -4 (n+3)/(n+1) d for the constant chain d = g(1-g)."""
    from .measures import geronimus_cg

    _, g = geronimus_cg(complex(alpha))
    return -4 * (n + 3) / (n + 1) * g * (1 - g)


def geronimus_r_at_zero(alpha: complex, n: int, z: complex) -> complex:
    """R_n(z_j) = 2^n (n+1) d^{n/2} z_j^{n/2} at an arc endpoint z_j."""
    from .measures import geronimus_cg

    _, g = geronimus_cg(complex(alpha))
    d = g * (1 - g)
    return 2 ** n * (n + 1) * d ** (n / 2) * np.sqrt(complex(z)) ** n


def geronimus_c_nu(alpha: complex) -> float:
    alpha = complex(alpha)
    return -alpha.imag / (1 + alpha.real)


def geronimus_g_nu_displayed(alpha: complex, n: int) -> float:
    """The g_n(ν) expression as commonly displayed for this example."""
    from .measures import geronimus_cg

    _, g = geronimus_cg(complex(alpha))
    return 1 - n / (n + 1) * ((n + 1) * (1 - g) - 4 * (n + 3)) / (n * (1 - g) - 4 * (n + 2)) * (1 - g)


def geronimus_g_nu(alpha: complex, n: int) -> float:
    """g_n(ν) implied by the connection coefficients (a_1 = 0, a_2 above)."""
    from .measures import geronimus_cg

    _, g = geronimus_cg(complex(alpha))
    return 1 - n / (n + 1) * ((n + 1) * (1 - g) - (n + 3) * g) / (n * (1 - g) - (n + 2) * g) * (1 - g)


def qhyper_connection(q: float, b: complex, n: int) -> tuple[complex, complex, complex]:
    """(a_1, a_2, γ_n) for the q-family with G = -q^{-b̄}(z - q^{-b})(z - q^{b̄})."""
    from .special import qpow

    b = complex(b)
    lam = b.real
    eq = -b.imag * np.log(q)
    cos_, sin_ = np.cos(eq), np.sin(eq)
    qb, qbc = qpow(q, b), qpow(q, b.conjugate())
    a1 = ((1 - q ** (2 * lam + n + 1)) / (1 - q ** (lam + n + 1) * cos_)
          * 2j * q ** lam * sin_ / (qb * (1 - qbc)))
    a2 = ((1 - q ** (2 * lam + n)) * (1 - q ** (2 * lam + n + 1))
          / ((1 - q ** (lam + n) * cos_) * (1 - q ** (lam + n + 1) * cos_))
          * (1 - 1 / qb) / (1 - qbc))
    gamma = (-qbc * (1 - qb * q ** (n + 1)) / (1 - q ** (lam + n + 1) * cos_)
             * (1 - qb) / (1 - q ** lam * cos_))
    return complex(a1), complex(a2), complex(gamma)


def qhyper_factor_zeros(q: float, b: complex) -> tuple[complex, complex]:
    from .special import qpow

    b = complex(b)
    return 1 / qpow(q, b), qpow(q, b.conjugate())


def hyper_confluent_connection(b: complex, n: int) -> tuple[complex, complex, complex]:
    """(a_1, a_2, γ_n) for the double zero at 1 with G = (z - 1)^2."""
    b = complex(b)
    lam, bc = b.real, b.conjugate()
    a1 = (b - bc) / (bc + 1) * (2 * lam + n + 3) / (lam + n + 2)
    a2 = -(b + 1) / (bc + 1) * (2 * lam + n + 2) * (2 * lam + n + 3) / ((lam + n + 1) * (lam + n + 2))
    gamma = (b + 1) / (lam + 1) * (b + n + 2) / (lam + n + 2)
    return complex(a1), complex(a2), complex(gamma)


def geronimus_factor(measure):
    """-w_α (z - z_1)(z - z_2) with z_1, z_2 the endpoints of the support arc."""
    from .christoffel import make_factor
    from .measures import geronimus_arc, geronimus_rotation

    alpha = complex(measure.alpha_param)
    lo, hi = geronimus_arc(alpha)
    return make_factor([np.exp(1j * lo), np.exp(1j * hi)], measure,
                       leading=-geronimus_rotation(alpha))


def qhyper_factor(measure):
    """-q^{-b̄}(z - q^{-b})(z - q^{b̄})."""
    from .christoffel import make_factor

    z1, z2 = qhyper_factor_zeros(measure.q, measure.b)
    return make_factor([z1, z2], measure, leading=-1 / z2)


def hyper_confluent_factor(measure):
    """-(z - 1)^2, nonnegative on the whole circle."""
    from .christoffel import make_factor

    return make_factor([1, 1], measure, leading=-1.0)
