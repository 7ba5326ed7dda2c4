"""Pochhammer symbols and the two hypergeometric series the catalogue needs."""
from __future__ import annotations

import math

import numpy as np

QPROD_TAIL = 1e-17


def qpow(q: float, b: complex) -> complex:
    """``q**b`` for real 0 < q < 1 and complex ``b``."""
    return complex(np.exp(complex(b) * math.log(q)))


def qpochhammer(a, q: float, n: int | None = None):
    """``(a; q)_n``; ``n=None`` gives the infinite product.

    The infinite product stops at the first ``K`` with ``q**K < 1e-17``.
    ``a`` may be an array.
    """
    a = np.asarray(a, dtype=complex)
    if n is None:
        n = max(1, math.ceil(math.log(QPROD_TAIL) / math.log(q)))
    out = np.ones_like(a)
    qj = 1.0
    for _ in range(n):
        out = out * (1.0 - a * qj)
        qj *= q
    return out[()] if out.ndim == 0 else out


def pochhammer(a: complex, n: int) -> complex:
    out = 1.0 + 0j
    for k in range(n):
        out *= a + k
    return out


def qphi21(a: complex, b: complex, c: complex, q: float, z: complex,
           max_terms: int = 100000) -> complex:
    """Basic hypergeometric series ``2phi1(a, b; c; q, z)``, |z| < 1.

    Terminates exactly when ``a`` or ``b`` is ``q**-n``.
    """
    total = 1.0 + 0j
    term = 1.0 + 0j
    qk = 1.0
    small = 0
    for _ in range(max_terms):
        num = (1 - a * qk) * (1 - b * qk)
        den = (1 - c * qk) * (1 - q * qk)
        if num == 0:
            break
        term *= num / den * z
        total += term
        qk *= q
        if abs(term) <= 1e-18 * abs(total):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return total


def hyp2f1_terminating(n: int, b: complex, c: complex, x: complex) -> complex:
    """``2F1(-n, b; c; x)`` as a finite sum."""
    total = 1.0 + 0j
    term = 1.0 + 0j
    for k in range(n):
        term *= (-n + k) * (b + k) / ((c + k) * (k + 1)) * x
        total += term
    return total
