"""Catalogue of measures on the unit circle.

Every model can hand out Verblunsky coefficients and (c, g) parameters;
the four named families also carry a density in ``theta`` and a list of
point masses so the quadrature oracle can integrate against them.
"""
from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import special
from .cgrec import alpha_from_cg, cg_from_alpha
from .errors import InvalidMeasureError, UnsupportedOperationError

LEBESGUE = "lebesgue"
GERONIMUS = "geronimus"
QHYPER = "qhyper"
HYPER_JACOBI = "hyper"
EXPLICIT_ALPHA = "explicit-alpha"
EXPLICIT_CG = "explicit-cg"

DENSITY_FAMILIES = (LEBESGUE, GERONIMUS, QHYPER, HYPER_JACOBI)


@dataclass(frozen=True)
class PointMass:
    angle: float
    mass: float

    def __post_init__(self):
        if self.mass < 0:
            raise InvalidMeasureError("point mass must be non-negative")


@dataclass(frozen=True)
class MeasureModel:
    """A positive measure on the unit circle.

    Build instances with the module-level constructors (:func:`lebesgue`,
    :func:`geronimus`, ...) rather than directly.
    """

    kind: str
    alpha_param: complex = 0j
    q: float = 0.0
    b: complex = 0j
    alpha_list: tuple = ()
    c_list: tuple = ()
    g_list: tuple = ()
    total_mass: float = 1.0

    # -- Verblunsky / (c, g) ------------------------------------------------

    def alphas(self, N: int) -> np.ndarray:
        """Verblunsky coefficients ``alpha_0 .. alpha_{N-1}``."""
        if N < 0:
            raise ValueError("N must be non-negative")
        if self.kind == LEBESGUE:
            return np.zeros(N, dtype=complex)
        if self.kind == GERONIMUS:
            w = geronimus_rotation(self.alpha_param)
            return self.alpha_param * w ** np.arange(1, N + 1)
        if self.kind == EXPLICIT_ALPHA:
            if N > len(self.alpha_list):
                raise IndexError(
                    f"explicit Verblunsky list has {len(self.alpha_list)} "
                    f"entries, {N} requested"
                )
            return np.asarray(self.alpha_list[:N], dtype=complex)
        c, g = self.cgs(N)
        return alpha_from_cg(c, g)

    def alpha(self, n: int) -> complex:
        if n < 0:
            raise ValueError("n must be non-negative")
        return complex(self.alphas(n + 1)[n])

    def cgs(self, N: int) -> tuple[np.ndarray, np.ndarray]:
        """``(c_1..c_N, g_1..g_N)`` as two real arrays."""
        if self.kind == QHYPER:
            return qhyper_cg(self.q, self.b, N)
        if self.kind == HYPER_JACOBI:
            return hyper_jacobi_cg(self.b, N)
        if self.kind == EXPLICIT_CG:
            if N > len(self.g_list):
                raise IndexError(
                    f"explicit (c, g) list has {len(self.g_list)} entries, "
                    f"{N} requested"
                )
            return (np.asarray(self.c_list[:N], dtype=float),
                    np.asarray(self.g_list[:N], dtype=float))
        c, g, _ = cg_from_alpha(self.alphas(N))
        return c, g

    def cg(self, n: int) -> tuple[float, float]:
        if n < 1:
            raise ValueError("(c, g) parameters are indexed from 1")
        c, g = self.cgs(n)
        return float(c[n - 1]), float(g[n - 1])

    # -- density --------------------------------------------------------------

    def density(self, theta):
        """Absolutely continuous part, as a density in ``theta``."""
        theta = np.asarray(theta, dtype=float)
        if self.kind == LEBESGUE:
            out = np.full_like(theta, 1.0 / (2 * math.pi))
        elif self.kind == GERONIMUS:
            out = geronimus_density(self.alpha_param, theta)
        elif self.kind == QHYPER:
            out = qhyper_density(self.q, self.b, theta)
        elif self.kind == HYPER_JACOBI:
            out = hyper_jacobi_normalization(self.b) * hyper_jacobi_weight(
                self.b, theta)
        else:
            raise UnsupportedOperationError(f"no density for {self.kind} measures")
        return out[()] if out.ndim == 0 else out

    def point_masses(self) -> list[PointMass]:
        if self.kind in (LEBESGUE, QHYPER, HYPER_JACOBI):
            return []
        if self.kind == GERONIMUS:
            mass = geronimus_mass(self.alpha_param)
            return [PointMass(0.0, mass)] if mass > 0 else []
        raise UnsupportedOperationError(f"no density for {self.kind} measures")

    def support_arc(self) -> tuple[float, float]:
        """Angular interval carrying the absolutely continuous part."""
        if self.kind == GERONIMUS:
            return geronimus_arc(self.alpha_param)
        return 0.0, 2 * math.pi

    def support_angles(self, k: int = 512) -> np.ndarray:
        """Sample angles from the support (used for positivity checks)."""
        lo, hi = self.support_arc()
        if self.kind in (EXPLICIT_ALPHA, EXPLICIT_CG) or (lo, hi) == (0.0, 2 * math.pi):
            return 2 * math.pi * np.arange(k) / k
        angles = np.linspace(lo, hi, k)
        if self.kind == GERONIMUS:
            angles = np.concatenate([angles, [p.angle for p in self.point_masses()]])
        return angles

    @property
    def has_density(self) -> bool:
        return self.kind in DENSITY_FAMILIES

    def describe(self) -> dict:
        """JSON-ready family descriptor (complex values as ``a+bi`` strings)."""
        from .descriptor import format_complex

        if self.kind == GERONIMUS:
            return {"family": self.kind, "alpha": format_complex(self.alpha_param)}
        if self.kind == QHYPER:
            return {"family": self.kind, "q": self.q, "b": format_complex(self.b)}
        if self.kind == HYPER_JACOBI:
            return {"family": self.kind, "b": format_complex(self.b)}
        if self.kind == EXPLICIT_ALPHA:
            return {"family": self.kind, "alpha": [format_complex(a) for a in self.alpha_list],
                    "totalMass": self.total_mass}
        if self.kind == EXPLICIT_CG:
            return {"family": self.kind, "c": list(self.c_list), "g": list(self.g_list),
                    "totalMass": self.total_mass}
        return {"family": self.kind}

    def label(self) -> str:
        d = self.describe()
        parts = [f"{k}={v}" for k, v in d.items() if k != "family"]
        return d["family"] + (f"({', '.join(parts)})" if parts else "")


# -- constructors ---------------------------------------------------------------

def lebesgue() -> MeasureModel:
    return MeasureModel(LEBESGUE)


def geronimus(alpha: complex) -> MeasureModel:
    """Constant-Verblunsky measure, rotated so a mass point would sit at 1."""
    alpha = complex(alpha)
    if not 0 < abs(alpha) < 1:
        raise InvalidMeasureError("Geronimus parameter needs 0 < |alpha| < 1")
    return MeasureModel(GERONIMUS, alpha_param=alpha)


def qhyper(q: float, b: complex) -> MeasureModel:
    b = complex(b)
    if not 0 < q < 1:
        raise InvalidMeasureError("q-hypergeometric family needs 0 < q < 1")
    if b.real <= 0:
        raise InvalidMeasureError("q-hypergeometric family needs Re(b) > 0")
    return MeasureModel(QHYPER, q=float(q), b=b)


def hyper_jacobi(b: complex) -> MeasureModel:
    b = complex(b)
    if b.real <= -0.5:
        raise InvalidMeasureError("hypergeometric family needs Re(b) > -1/2")
    return MeasureModel(HYPER_JACOBI, b=b)


def explicit_alpha(alphas, total_mass: float = 1.0) -> MeasureModel:
    alphas = tuple(complex(a) for a in alphas)
    if any(abs(a) >= 1 for a in alphas):
        raise InvalidMeasureError("Verblunsky coefficients must satisfy |alpha| < 1")
    if total_mass <= 0:
        raise InvalidMeasureError("total mass must be positive")
    return MeasureModel(EXPLICIT_ALPHA, alpha_list=alphas, total_mass=float(total_mass))


def explicit_cg(c, g, total_mass: float = 1.0) -> MeasureModel:
    c = tuple(float(x) for x in c)
    g = tuple(float(x) for x in g)
    if len(c) != len(g):
        raise InvalidMeasureError("c and g lists must have equal length")
    if any(not 0 < x < 1 for x in g):
        raise InvalidMeasureError("every g_n must lie in (0, 1)")
    if total_mass <= 0:
        raise InvalidMeasureError("total mass must be positive")
    return MeasureModel(EXPLICIT_CG, c_list=c, g_list=g, total_mass=float(total_mass))


# -- Geronimus ------------------------------------------------------------------

def geronimus_rotation(alpha: complex) -> complex:
    """``w_alpha = (1 + conj(alpha)) / (1 + alpha)``."""
    return (1 + np.conj(alpha)) / (1 + alpha)


def geronimus_arc(alpha: complex) -> tuple[float, float]:
    theta_a = 2 * math.asin(abs(alpha))
    vartheta = float(np.angle(geronimus_rotation(alpha)))
    return theta_a - vartheta, 2 * math.pi - theta_a - vartheta


def geronimus_mass(alpha: complex) -> float:
    return 2.0 / abs(1 + alpha) ** 2 * max(alpha.real + abs(alpha) ** 2, 0.0)


def geronimus_cg(alpha: complex) -> tuple[float, float]:
    """Constant ``(c, g)`` of the rotated Geronimus measure."""
    return -alpha.imag / (1 + alpha.real), (1 - abs(alpha) ** 2) / (2 * (1 + alpha.real))


def geronimus_density(alpha: complex, theta):
    theta = np.asarray(theta, dtype=float)
    lo, hi = geronimus_arc(alpha)
    theta_a = 2 * math.asin(abs(alpha))
    vartheta = float(np.angle(geronimus_rotation(alpha)))
    t = np.mod(theta - lo, 2 * math.pi) + lo
    inside = (t >= lo) & (t <= hi)
    rad = np.cos(theta_a / 2) ** 2 - np.cos((t + vartheta) / 2) ** 2
    with np.errstate(invalid="ignore", divide="ignore"):
        val = np.sqrt(np.clip(rad, 0.0, None)) / (
            2 * math.pi * abs(1 + alpha) * np.sin(t / 2))
    return np.where(inside, val, 0.0)


# -- q-hypergeometric family ----------------------------------------------------

def _qhyper_lam_etaq(q: float, b: complex) -> tuple[float, float]:
    return b.real, -b.imag * math.log(q)


@functools.lru_cache(maxsize=None)
def qhyper_rho(q: float, b: complex) -> float:
    """Normalization making the q-family a probability measure."""
    qb = special.qpow(q, b)
    qbc = special.qpow(q, b.conjugate())
    phi = special.qphi21(q, q * special.qpow(q, -b), q * qbc, q, qb)
    val = (1 - qbc) / phi * (
        special.qpochhammer(q, q) * special.qpochhammer(qb * qbc, q)
        / (special.qpochhammer(qb, q) * special.qpochhammer(qbc, q)))
    return float(np.real(val))


def qhyper_density(q: float, b: complex, theta):
    zeta = np.exp(1j * np.asarray(theta, dtype=float))
    qb = special.qpow(q, b)
    num = np.abs(special.qpochhammer(q * zeta, q)) ** 2
    den = np.abs(special.qpochhammer(qb * zeta, q)) ** 2
    return qhyper_rho(q, b) * num / den / (2 * math.pi)


def qhyper_cg(q: float, b: complex, N: int) -> tuple[np.ndarray, np.ndarray]:
    lam, eta_q = _qhyper_lam_etaq(q, b)
    qb = special.qpow(q, b)
    qbc = special.qpow(q, b.conjugate())
    c = np.empty(N)
    g = np.empty(N)

    @functools.lru_cache(maxsize=None)
    def phi(k):
        qk = q ** k
        return special.qphi21(qk, q / qb, qbc * qk, q, qb)

    for k in range(1, N + 1):
        s = q ** (lam + k - 1)
        den = 1 - s * math.cos(eta_q)
        c[k - 1] = s * math.sin(eta_q) / den
        val = 0.5 * (1 - qbc * q ** (k - 1)) / den * phi(k - 1) / phi(k)
        g[k - 1] = val.real
    return c, g


# -- hypergeometric (Jacobi-type) family ------------------------------------------

def hyper_jacobi_cg(b: complex, N: int) -> tuple[np.ndarray, np.ndarray]:
    lam, eta = b.real, b.imag
    n = np.arange(1, N + 1, dtype=float)
    return eta / (lam + n), 0.5 * (2 * lam + n) / (lam + n)


def hyper_jacobi_weight(b: complex, theta):
    """Unnormalized weight ``exp((pi - theta) Im b) * sin^2(theta/2)^Re b``."""
    theta = np.asarray(theta, dtype=float)
    t = np.mod(theta, 2 * math.pi)
    return np.exp((math.pi - t) * b.imag) * (np.sin(t / 2) ** 2) ** b.real


@functools.lru_cache(maxsize=None)
def hyper_jacobi_normalization(b: complex) -> float:
    """Reciprocal of the integral of the unnormalized weight."""
    from .oracle import hyper_jacobi_rule

    theta, wts = hyper_jacobi_rule(b)
    return 1.0 / float(np.sum(wts))
