"""Monic and orthonormal OPUC from Verblunsky coefficients (Szegő recurrence)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import poly
from .errors import InvalidMeasureError


@dataclass(frozen=True)
class OpucTable:
    """Φ_0..Φ_N, their reversals, the κ_n and the τ_n of one measure.

    ``monic[n]`` and ``reversed_monic[n]`` are coefficient arrays of length
    ``n + 1``; the orthonormal polynomials are ``kappa[n] * monic[n]``.
    """

    alphas: np.ndarray
    monic: tuple
    reversed_monic: tuple
    kappa: np.ndarray
    tau: np.ndarray
    total_mass: float

    @property
    def depth(self) -> int:
        return len(self.monic) - 1

    def phi(self, n: int) -> np.ndarray:
        return self.kappa[n] * self.monic[n]

    def phi_star(self, n: int) -> np.ndarray:
        return self.kappa[n] * self.reversed_monic[n]

    def values(self, n: int, z) -> tuple[np.ndarray, np.ndarray]:
        """φ_0(z)..φ_n(z) and φ*_0(z)..φ*_n(z), stacked along axis 0.

        Runs the Szegő recurrence on values rather than evaluating the
        coefficient arrays, which avoids cancellation where |φ_j(z)| is
        much smaller than the coefficients (e.g. at a mass point).
        """
        if n > self.depth:
            raise ValueError(f"table depth {self.depth} < n = {n}")
        z = np.asarray(z, dtype=complex)
        p = np.ones((n + 1,) + z.shape, dtype=complex)
        s = np.ones((n + 1,) + z.shape, dtype=complex)
        for j in range(1, n + 1):
            a = self.alphas[j - 1]
            p[j] = z * p[j - 1] - np.conj(a) * s[j - 1]
            s[j] = s[j - 1] - a * z * p[j - 1]
        k = self.kappa[: n + 1].reshape((n + 1,) + (1,) * z.ndim)
        return k * p, k * s

    def eval_phi(self, n: int, z):
        out = self.values(n, z)[0][n]
        return out[()] if np.ndim(out) == 0 else out

    def eval_phi_star(self, n: int, z):
        out = self.values(n, z)[1][n]
        return out[()] if np.ndim(out) == 0 else out


def table_from_alphas(alphas, N: int, total_mass: float = 1.0) -> OpucTable:
    alphas = np.asarray(alphas, dtype=complex)[:N]
    if alphas.size < N:
        raise ValueError(f"need {N} Verblunsky coefficients, got {alphas.size}")
    if np.any(np.abs(alphas) >= 1):
        bad = int(np.argmax(np.abs(alphas) >= 1))
        raise InvalidMeasureError(f"|alpha_{bad}| >= 1")
    if total_mass <= 0:
        raise InvalidMeasureError("total mass must be positive")

    monic = [np.ones(1, dtype=complex)]
    rev = [np.ones(1, dtype=complex)]
    kappa = np.empty(N + 1)
    kappa[0] = total_mass ** -0.5
    tau = np.empty(N + 1, dtype=complex)
    tau[0] = 1.0
    for n in range(1, N + 1):
        a = alphas[n - 1]
        prev, prev_rev = monic[-1], rev[-1]
        zp = poly.shift(prev, 1)
        cur = zp - np.conj(a) * np.append(prev_rev, 0)
        cur_rev = np.append(prev_rev, 0) - a * zp
        monic.append(cur)
        rev.append(cur_rev)
        kappa[n] = kappa[n - 1] / np.sqrt(1 - abs(a) ** 2)
        tau[n] = (tau[n - 1] - np.conj(a)) / (1 - tau[n - 1] * a)
    return OpucTable(alphas, tuple(monic), tuple(rev), kappa, tau, float(total_mass))


def build_opuc(measure, N: int) -> OpucTable:
    """Szegő recurrence for Φ_0..Φ_N of ``measure``."""
    if N < 0:
        raise ValueError("N must be non-negative")
    return table_from_alphas(measure.alphas(N), N, measure.total_mass)
