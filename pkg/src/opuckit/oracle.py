"""Independent verification path: trigonometric moments, their Christoffel
transform, and Levinson recursion back to Verblunsky coefficients.

Moments follow the orientation ``m_k = ∫ ζ^{-k} dμ(ζ)``.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from . import measures as M
from . import poly
from .errors import InvalidMeasureError, UnsupportedOperationError
from .kernels import kernel_sum
from .opuc import table_from_alphas

QUAD_START = 256
QUAD_MAX = 1 << 15
QUAD_TOL = 1e-10


class NotPositiveError(InvalidMeasureError):
    """A Toeplitz pivot was non-positive: the moments are not of a positive measure."""


@dataclass(frozen=True)
class MomentList:
    """Moments m_0..m_K; negative indices follow from m_{-k} = conj(m_k)."""

    values: np.ndarray

    @property
    def max_order(self) -> int:
        return self.values.size - 1

    def __getitem__(self, k: int) -> complex:
        if abs(k) > self.max_order:
            raise IndexError(f"moment {k} beyond order {self.max_order}")
        v = self.values[abs(k)]
        return complex(v if k >= 0 else np.conj(v))

    def toeplitz(self, N: int) -> np.ndarray:
        """Gram matrix [m_{j-i}] of 1, z, ..., z^N (row i, column j)."""
        idx = np.arange(N + 1)
        return np.array([[self[j - i] for j in idx] for i in idx])


# -- moments from Verblunsky coefficients ----------------------------------------

def moments_from_alpha(measure, K: int) -> MomentList:
    """Moments m_0..m_K determined by the Verblunsky coefficients.

    Uses m_0 + 2 Σ m_k z^k = m_0 Ψ*_K(z) / Φ*_K(z) + O(z^{K+1}), with Ψ the
    second-kind polynomials (coefficients -α).  Φ*_K has no zeros in the
    closed disk, so the power-series division is stable.
    """
    alphas = np.asarray(measure.alphas(K), dtype=complex)
    first = table_from_alphas(alphas, K, 1.0).reversed_monic[K]
    second = table_from_alphas(-alphas, K, 1.0).reversed_monic[K]
    series = np.zeros(K + 1, dtype=complex)
    for k in range(K + 1):
        acc = second[k] - np.dot(first[1 : k + 1], series[k - 1 :: -1][:k]) if k else second[0]
        series[k] = acc / first[0]
    m = measure.total_mass * series
    m[1:] *= 0.5
    return MomentList(m)


# -- quadrature -----------------------------------------------------------------

def hyper_jacobi_rule(b: complex, n: int = 256) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for ∫ f(θ) w(θ) dθ with the *unnormalized* weight.

    θ = π(1 + x) and the endpoint factor (θ(2π-θ))^{2λ} goes into a
    Gauss–Jacobi rule; what remains of the weight is analytic.
    """
    b = complex(b)
    lam, eta = b.real, b.imag
    x, wj = roots_jacobi(n, 2 * lam, 2 * lam)
    theta = math.pi * (1 + x)
    s = np.sin(theta / 2) / (theta * (2 * math.pi - theta))
    smooth = np.exp((math.pi - theta) * eta) * (s * s) ** lam * math.pi ** (4 * lam)
    return theta, math.pi * wj * smooth


def geronimus_rule(alpha: complex, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss–Legendre in φ after x = π + (π - a) cos φ on the support arc.

    The substitution absorbs the square-root endpoint behavior, leaving a
    smooth integrand in φ.
    """
    alpha = complex(alpha)
    a = 2 * math.asin(abs(alpha))
    vartheta = float(np.angle(M.geronimus_rotation(alpha)))
    u, wl = roots_legendre(n)
    phi = 0.5 * math.pi * (u + 1)
    wl = 0.5 * math.pi * wl
    half = math.pi - a
    x = math.pi + half * np.cos(phi)
    d_lo = 2 * half * np.cos(phi / 2) ** 2     # x - a
    d_hi = 2 * half * np.sin(phi / 2) ** 2     # 2π - a - x
    # cos a - cos x = 2 sin((x+a)/2) sin((x-a)/2), with sin((x+a)/2) = sin((2π-a-x)/2)
    rad = 0.5 * (2 * np.sin(d_hi / 2) * np.sin(d_lo / 2))
    theta = x - vartheta
    dens = np.sqrt(np.clip(rad, 0, None)) / (2 * math.pi * abs(1 + alpha) * np.sin(theta / 2))
    return theta, wl * dens * half * np.sin(phi)


def _rule(measure, n: int) -> tuple[np.ndarray, np.ndarray]:
    kind = measure.kind
    if kind in (M.LEBESGUE, M.QHYPER):
        theta = 2 * math.pi * np.arange(n) / n
        return theta, measure.density(theta) * (2 * math.pi / n)
    if kind == M.HYPER_JACOBI:
        theta, w = hyper_jacobi_rule(measure.b, n)
        return theta, w * M.hyper_jacobi_normalization(measure.b)
    if kind == M.GERONIMUS:
        return geronimus_rule(measure.alpha_param, n)
    raise UnsupportedOperationError(f"no quadrature for {kind} measures")


def _rule_moments(theta, w, masses, K: int) -> np.ndarray:
    k = np.arange(K + 1)
    out = np.exp(-1j * np.outer(k, theta)) @ w
    for pm in masses:
        out = out + pm.mass * np.exp(-1j * k * pm.angle)
    return out


@functools.lru_cache(maxsize=64)
def converged_rule(measure, K: int = 40) -> tuple[np.ndarray, np.ndarray, int]:
    """Double the node count from 256 until moments 0..K move by < 1e-10."""
    if not measure.has_density:
        raise UnsupportedOperationError(f"no quadrature for {measure.kind} measures")
    n = QUAD_START
    theta, w = _rule(measure, n)
    prev = _rule_moments(theta, w, [], K)
    while n < QUAD_MAX:
        n *= 2
        theta, w = _rule(measure, n)
        cur = _rule_moments(theta, w, [], K)
        if np.max(np.abs(cur - prev)) < QUAD_TOL:
            return theta, w, n
        prev = cur
    return theta, w, n


def moments_quadrature(measure, K: int) -> MomentList:
    theta, w, _ = converged_rule(measure, max(K, 40))
    return MomentList(_rule_moments(theta, w, measure.point_masses(), K))


def integrate(measure, f, K: int = 40) -> complex:
    """∫ f(ζ) dμ(ζ) with a rule converged on moments up to order K."""
    theta, w, _ = converged_rule(measure, K)
    total = np.sum(f(np.exp(1j * theta)) * w)
    for pm in measure.point_masses():
        total += pm.mass * f(np.exp(1j * pm.angle))
    return complex(total)


# -- transformed moments and Levinson ---------------------------------------------

def transform_moments(mu: MomentList, G, K: int | None = None) -> MomentList:
    """Moments of dν = G(ζ) ζ^{-m} dμ, ν_k = Σ_j G_j μ_{k+m-j}."""
    coeffs = G.as_poly if hasattr(G, "as_poly") else poly.as_poly(G)
    m = (coeffs.size - 1) // 2
    if K is None:
        K = mu.max_order - m
    if K + m > mu.max_order:
        raise ValueError(
            f"need moments up to order {K + m}, have {mu.max_order}")
    nu = np.array([sum(coeffs[j] * mu[k + m - j] for j in range(coeffs.size))
                   for k in range(K + 1)])
    return MomentList(nu)


@dataclass(frozen=True)
class LevinsonResult:
    alphas: np.ndarray
    monic: tuple
    pivots: np.ndarray
    total_mass: float


def levinson(nu: MomentList, N: int) -> LevinsonResult:
    """Monic OPUC Φ_0..Φ_N of the moment functional and α_0..α_{N-1}.

    Each pivot is evaluated directly as ∫ Φ_n^* dν = ||Φ_n||^2.
    """
    if N > nu.max_order:
        raise ValueError(f"need moments up to order {N}, have {nu.max_order}")
    m0 = nu[0].real
    if m0 <= 0:
        raise NotPositiveError("zeroth moment is not positive")
    mconj = np.conj(nu.values)  # ∫ ζ^j dν
    monic = [np.ones(1, dtype=complex)]
    rev = np.ones(1, dtype=complex)
    alphas = np.empty(N, dtype=complex)
    pivots = np.empty(N + 1)
    for n in range(N + 1):
        phi = monic[-1]
        e = np.dot(rev, mconj[: n + 1])
        if e.real <= 0:
            raise NotPositiveError(f"Toeplitz pivot {n} is {e.real:.3e} <= 0")
        pivots[n] = e.real
        if n == N:
            break
        s = np.dot(phi, mconj[1 : n + 2])   # ∫ ζ Φ_n dν
        a = np.conj(s) / e.real
        if abs(a) >= 1:
            raise NotPositiveError(f"|alpha_{n}| = {abs(a):.6f} >= 1")
        alphas[n] = a
        zp = poly.shift(phi, 1)
        new = zp - np.conj(a) * np.append(rev, 0)
        rev = np.append(rev, 0) - a * zp
        monic.append(new)
    return LevinsonResult(alphas, tuple(monic), pivots, float(m0))


def kernel_oracle(alphas_nu, total_mass_nu: float, n: int, z, w):
    """K_n(z, w; ν) from Verblunsky data by direct summation."""
    table = table_from_alphas(alphas_nu, n, total_mass_nu)
    return kernel_sum(table, n, z, w)


def kernel_oracle_poly(alphas_nu, total_mass_nu: float, n: int, w) -> np.ndarray:
    from .kernels import kernel_poly

    table = table_from_alphas(alphas_nu, n, total_mass_nu)
    return kernel_poly(table, n, w).as_poly
