"""Christoffel–Darboux kernels K_n(z, w) of an :class:`OpucTable`."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .opuc import OpucTable

CD_SINGULAR_TOL = 1e-8


@dataclass(frozen=True)
class KernelEval:
    n: int
    w: complex
    as_poly: np.ndarray


def kernel_sum(t: OpucTable, n: int, z, w):
    """Direct sum of conj(φ_j(w)) φ_j(z), j = 0..n."""
    if n > t.depth:
        raise ValueError(f"table depth {t.depth} < n = {n}")
    z = np.asarray(z, dtype=complex)
    pw = t.values(n, w)[0]
    pz = t.values(n, z)[0]
    acc = np.tensordot(np.conj(pw), pz, axes=(0, 0))
    return acc[()] if acc.ndim == 0 else acc


def kernel_cd(t: OpucTable, n: int, z, w):
    """Christoffel–Darboux closed form, falling back to the sum near w̄z = 1."""
    if n + 1 > t.depth:
        raise ValueError(f"table depth {t.depth} < n + 1 = {n + 1}")
    z = np.asarray(z, dtype=complex)
    den = np.conj(w) * z - 1
    num = (np.conj(t.eval_phi(n + 1, w)) * t.eval_phi(n + 1, z)
           - np.conj(t.eval_phi_star(n + 1, w)) * t.eval_phi_star(n + 1, z))
    singular = np.abs(den) < CD_SINGULAR_TOL
    with np.errstate(invalid="ignore", divide="ignore"):
        out = np.where(singular, 0, num / np.where(singular, 1, den))
    if np.any(singular):
        out = np.where(singular, kernel_sum(t, n, z, w), out)
    return out[()] if out.ndim == 0 else out


def kernel_poly(t: OpucTable, n: int, w: complex) -> KernelEval:
    """K_n(·, w) as a coefficient array in z."""
    if n > t.depth:
        raise ValueError(f"table depth {t.depth} < n = {n}")
    coeffs = np.zeros(n + 1, dtype=complex)
    pw = t.values(n, w)[0]
    for j in range(n + 1):
        coeffs[: j + 1] += np.conj(pw[j]) * t.phi(j)
    return KernelEval(n, complex(w), coeffs)


def kernel_deriv_poly(t: OpucTable, n: int, w: complex, order: int = 1) -> np.ndarray:
    p = kernel_poly(t, n, w).as_poly
    for _ in range(order):
        p = poly.derivative(p)
    return p


def kernel_roots(k: KernelEval) -> np.ndarray:
    return poly.roots(k.as_poly)
