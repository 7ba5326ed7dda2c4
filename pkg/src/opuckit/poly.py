"""Dense complex polynomial arithmetic.

Polynomials are 1-D ``complex128`` arrays in ascending order: ``p[k]`` is
the coefficient of ``z**k``.  The zero polynomial is ``array([0j])``.
"""
from __future__ import annotations

import numpy as np

TRIM_RTOL = 1e-12


def as_poly(coeffs) -> np.ndarray:
    p = np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()
    if p.ndim != 1:
        raise ValueError("polynomial coefficients must be one-dimensional")
    if p.size == 0:
        return np.zeros(1, dtype=complex)
    return p


def trim(p, rtol: float = TRIM_RTOL) -> np.ndarray:
    """Drop trailing coefficients with magnitude <= rtol * max|coeff|."""
    p = as_poly(p)
    mags = np.abs(p)
    top = mags.max()
    if top == 0.0:
        return np.zeros(1, dtype=complex)
    keep = np.nonzero(mags > rtol * top)[0]
    return p[: keep[-1] + 1]


def degree(p) -> int:
    """Degree after trimming; -1 for the zero polynomial."""
    p = trim(p)
    if p.size == 1 and p[0] == 0:
        return -1
    return p.size - 1


def is_zero(p) -> bool:
    return degree(p) < 0


def monomial(k: int, c: complex = 1.0) -> np.ndarray:
    p = np.zeros(k + 1, dtype=complex)
    p[k] = c
    return p


def evaluate(p, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    p = as_poly(p)
    z = np.asarray(z, dtype=complex)
    acc = np.zeros_like(z)
    for c in p[::-1]:
        acc = acc * z + c
    return acc[()] if acc.ndim == 0 else acc


def add(p, q) -> np.ndarray:
    p, q = as_poly(p), as_poly(q)
    out = np.zeros(max(p.size, q.size), dtype=complex)
    out[: p.size] += p
    out[: q.size] += q
    return out


def sub(p, q) -> np.ndarray:
    return add(p, -as_poly(q))


def mul(p, q) -> np.ndarray:
    return np.convolve(as_poly(p), as_poly(q))


def scale(p, c: complex) -> np.ndarray:
    return as_poly(p) * c


def shift(p, k: int) -> np.ndarray:
    """Multiply by ``z**k``."""
    return np.concatenate([np.zeros(k, dtype=complex), as_poly(p)])


def reverse(p, declared_degree: int) -> np.ndarray:
    """Conjugate-reciprocal polynomial ``z**n * conj(p(1/conj(z)))``.

    Raises
    ------
    ValueError
        If ``declared_degree`` is below the actual degree of ``p``.
    """
    p = as_poly(p)
    if declared_degree < degree(p):
        raise ValueError(
            f"declared degree {declared_degree} is below the degree {degree(p)}"
        )
    padded = np.zeros(declared_degree + 1, dtype=complex)
    m = min(p.size, declared_degree + 1)
    padded[:m] = p[:m]
    return np.conj(padded[::-1])


def derivative(p) -> np.ndarray:
    p = as_poly(p)
    if p.size == 1:
        return np.zeros(1, dtype=complex)
    return p[1:] * np.arange(1, p.size)


def divide(p, d) -> tuple[np.ndarray, np.ndarray]:
    """Long division ``p = quotient * d + remainder``.

    The divisor is trimmed first, so its degree is decided with the
    module trim threshold.
    """
    p = as_poly(p)
    d = trim(d)
    if is_zero(d):
        raise ZeroDivisionError("division by the zero polynomial")
    nd = d.size - 1
    if p.size - 1 < nd:
        return np.zeros(1, dtype=complex), p.copy()
    rem = p.copy()
    quot = np.zeros(p.size - nd, dtype=complex)
    lead = d[-1]
    for k in range(p.size - 1 - nd, -1, -1):
        c = rem[k + nd] / lead
        quot[k] = c
        rem[k : k + nd + 1] -= c * d
    rem = rem[:nd] if nd > 0 else np.zeros(1, dtype=complex)
    return quot, rem


def roots(p) -> np.ndarray:
    """All roots, with multiplicity, from companion-matrix eigenvalues."""
    p = trim(p)
    if is_zero(p):
        raise ValueError("the zero polynomial has no finite root set")
    if p.size == 1:
        return np.zeros(0, dtype=complex)
    return np.roots(p[::-1])


def from_roots(zeros, leading: complex = 1.0) -> np.ndarray:
    p = np.ones(1, dtype=complex)
    for r in zeros:
        p = mul(p, [-r, 1.0])
    return p * leading


def max_abs(p) -> float:
    return float(np.abs(as_poly(p)).max())
