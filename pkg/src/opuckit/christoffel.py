"""Determinantal formula for the CD kernels of dν = G(ζ) ζ^{-m} dμ(ζ).

The (2m+1)×(2m+1) matrix Q has the kernel columns p_j(z) K_{n+2m-j}(z, w; μ)
in its first row and their values at the zeros of G below.  Expanding
det Q along the first row gives a polynomial divisible by G whose quotient
is a constant multiple of K_n(·, w; ν).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import poly
from .errors import ConsistencyError, DomainError, InvalidMeasureError, UnsupportedOperationError
from .kernels import kernel_poly
from .opuc import OpucTable

PAIR_TOL = 1e-10
POSITIVITY_RTOL = 1e-10
DEGENERACY_RTOL = 1e-10
DEFLATION_RTOL = 1e-8
MIN_SUPPORT_SAMPLES = 256

DEG_BELOW_INDEX = "deg-below-index"   # deg p_j < j, j = 1..2m
DEG_BELOW_M = "deg-below-m"           # deg p_j < m, j = 1..2m-1
VANISH_AT_ZERO = "vanish-at-zero"     # p_j(0) = 0, j = 1..2m
CONDITIONS = (DEG_BELOW_INDEX, DEG_BELOW_M, VANISH_AT_ZERO)


# -- the factor G ---------------------------------------------------------------

def _zero_key(z: complex):
    return (round(abs(z), 12), round(math.atan2(z.imag, z.real), 12))


def group_zeros(zeros, tol: float = PAIR_TOL) -> list[tuple[complex, int]]:
    """Distinct zeros with multiplicities (zeros closer than ``tol`` merge)."""
    out: list[list] = []
    for z in zeros:
        for item in out:
            if abs(item[0] - z) <= tol * max(1.0, abs(z)):
                item[1] += 1
                break
        else:
            out.append([complex(z), 1])
    return [(z, k) for z, k in out]


@dataclass(frozen=True)
class SelfReciprocalFactor:
    zeros: tuple
    leading: complex
    m: int
    as_poly: np.ndarray = field(repr=False)

    @property
    def simple(self) -> bool:
        return all(k == 1 for _, k in group_zeros(self.zeros))

    def on_circle(self, theta) -> np.ndarray:
        """The real function G(ζ)/ζ^m at ζ = e^{iθ}."""
        zeta = np.exp(1j * np.asarray(theta, dtype=float))
        return np.real(poly.evaluate(self.as_poly, zeta) * zeta ** (-self.m))


def _check_pairing(zeros) -> None:
    remaining = list(zeros)
    while remaining:
        z = remaining.pop(0)
        if abs(abs(z) - 1) <= PAIR_TOL:
            continue
        partner = 1 / np.conj(z)
        for i, y in enumerate(remaining):
            if abs(y - partner) <= PAIR_TOL * max(1.0, abs(partner)):
                remaining.pop(i)
                break
        else:
            raise DomainError(f"zero {z} has no partner 1/conj(z) = {partner}")


def make_factor(zeros, support=None, leading: complex | None = None,
                check_positivity: bool = True) -> SelfReciprocalFactor:
    """Build a self-reciprocal G of degree 2m from its zeros.

    Parameters
    ----------
    zeros : sequence of complex
        z_1..z_{2m}; non-unimodular zeros must come in pairs (z, 1/conj z).
    support : MeasureModel or array of angles, optional
        Support of the base measure.  Without an explicit ``leading``,
        the scale is fixed by G(ζ)/ζ^m = 1 at the first support sample
        where |G(ζ)/ζ^m| reaches 1% of its maximum over the samples.
    leading : complex, optional
        Leading coefficient; must be compatible with self-reciprocity.
    check_positivity : bool
        Require G(ζ)/ζ^m >= 0 on the support samples.
    """
    zeros = tuple(sorted((complex(z) for z in zeros), key=_zero_key))
    if len(zeros) == 0 or len(zeros) % 2:
        raise DomainError("G needs an even, positive number of zeros")
    if any(abs(z) <= PAIR_TOL for z in zeros):
        raise DomainError("G may not vanish at the origin")
    _check_pairing(zeros)
    m = len(zeros) // 2

    angles = None
    if support is not None:
        angles = support.support_angles(max(MIN_SUPPORT_SAMPLES, 512)) \
            if hasattr(support, "support_angles") else np.asarray(support, dtype=float)

    monic = poly.from_roots(zeros)
    if leading is None:
        # a / conj(a) = conj(G_monic(0)) makes a * G_monic self-reciprocal
        phase = np.sqrt(np.conj(monic[0]))
        base = phase * monic
        ref_angles = angles if angles is not None else np.array([0.0])
        vals = np.real(poly.evaluate(base, np.exp(1j * ref_angles))
                       * np.exp(-1j * m * ref_angles))
        big = np.nonzero(np.abs(vals) >= 1e-2 * np.abs(vals).max())[0]
        if big.size == 0:
            raise DomainError("G vanishes on every support sample")
        leading = phase / vals[big[0]]
    leading = complex(leading)
    G = leading * monic
    scale = poly.max_abs(G)
    if np.max(np.abs(poly.reverse(G, 2 * m) - G)) > 1e-12 * scale * 10:
        raise DomainError("leading coefficient breaks self-reciprocity")
    G = 0.5 * (G + poly.reverse(G, 2 * m))

    factor = SelfReciprocalFactor(zeros, leading, m, G)
    if check_positivity and angles is not None:
        if len(angles) < MIN_SUPPORT_SAMPLES and not np.all(np.isfinite(angles)):
            raise ValueError("support sampling too coarse")
        vals = factor.on_circle(angles)
        worst = float(vals.min())
        if worst < -POSITIVITY_RTOL * float(np.abs(vals).max()):
            raise InvalidMeasureError(
                f"G(ζ)/ζ^m takes the value {worst:.3e} < 0 on the support")
    return factor


# -- admissible sets ------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibleSet:
    m: int
    polys: tuple
    condition: str

    def conditions(self) -> set[str]:
        return satisfied_conditions(self.m, self.polys)


def _deg(p) -> int:
    return poly.degree(p)


def satisfied_conditions(m: int, polys) -> set[str]:
    out = set()
    if all(_deg(polys[j]) < j for j in range(1, 2 * m + 1)):
        out.add(DEG_BELOW_INDEX)
    if all(_deg(polys[j]) < m for j in range(1, 2 * m)):
        out.add(DEG_BELOW_M)
    if all(abs(poly.as_poly(polys[j])[0]) == 0 for j in range(1, 2 * m + 1)):
        out.add(VANISH_AT_ZERO)
    return out


def admissible_set(polys, condition: str | None = None) -> AdmissibleSet:
    """Validate p_0..p_{2m} and record which condition is claimed."""
    polys = tuple(poly.as_poly(p) for p in polys)
    if len(polys) % 2 == 0 or len(polys) < 3:
        raise DomainError("an admissible set has 2m + 1 polynomials, m >= 1")
    m = (len(polys) - 1) // 2
    if np.max(np.abs(poly.sub(polys[0], [1.0]))) != 0:
        raise DomainError("p_0 must be 1")
    if np.max(np.abs(poly.sub(polys[2 * m], poly.monomial(m)))) != 0:
        raise DomainError("p_2m must be z^m")
    for j, p in enumerate(polys):
        if poly.is_zero(p):
            raise DomainError(f"p_{j} is identically zero")
        lo, hi = max(0, j - m), min(j, m)
        nz = np.nonzero(p)[0]
        if nz.min() < lo or nz.max() > hi:
            raise DomainError(f"p_{j} has terms outside z^{lo}..z^{hi}")
    ok = satisfied_conditions(m, polys)
    if condition is None:
        if not ok:
            raise DomainError("no admissibility condition holds")
        condition = next(c for c in CONDITIONS if c in ok)
    elif condition not in ok:
        raise DomainError(f"condition {condition!r} does not hold")
    return AdmissibleSet(m, polys, condition)


def admissible_floor(m: int) -> AdmissibleSet:
    """p_j = z^{floor(j/2)}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return admissible_set([poly.monomial(j // 2) for j in range(2 * m + 1)], DEG_BELOW_INDEX)


def admissible_ceil(m: int) -> AdmissibleSet:
    """p_j = z^{ceil(j/2)}."""
    if m < 1:
        raise ValueError("m must be >= 1")
    return admissible_set([poly.monomial((j + 1) // 2) for j in range(2 * m + 1)], VANISH_AT_ZERO)


def hat(P: AdmissibleSet) -> AdmissibleSet:
    """p̂_j(z) = z^j conj(p_j(1/conj z))."""
    polys = [poly.reverse(p[: j + 1], j) for j, p in enumerate(P.polys)]
    ok = satisfied_conditions(P.m, polys)
    dual = {DEG_BELOW_INDEX: VANISH_AT_ZERO, VANISH_AT_ZERO: DEG_BELOW_INDEX}
    cond = dual.get(P.condition)
    if cond not in ok:
        cond = None
    return admissible_set(polys, cond)


# -- the matrix Q ---------------------------------------------------------------

@dataclass(frozen=True)
class QMatrix:
    """First row as polynomials, remaining rows as numbers."""

    columns: tuple
    lower: np.ndarray
    row_points: tuple   # (zero, derivative order) per lower row
    integrals: tuple    # ∫ column(ζ) ζ^{-m} dμ(ζ), exact by reproduction


def _row_points(G: SelfReciprocalFactor) -> tuple:
    return tuple((z, r) for z, mult in group_zeros(G.zeros) for r in range(mult))


def _evaluate_rows(columns, points) -> np.ndarray:
    out = np.empty((len(points), len(columns)), dtype=complex)
    for j, col in enumerate(columns):
        derivs = {0: col}
        for i, (z, r) in enumerate(points):
            if r not in derivs:
                p = derivs[max(derivs)]
                for _ in range(r - max(derivs)):
                    p = poly.derivative(p)
                derivs[r] = p
            out[i, j] = poly.evaluate(derivs[r], z)
    return out


def _require_depth(t: OpucTable, n: int, m: int) -> None:
    if t.depth < n + 2 * m:
        raise ValueError(f"table depth {t.depth} < n + 2m = {n + 2 * m}")


def build_q(t: OpucTable, P: AdmissibleSet, G: SelfReciprocalFactor, n: int,
            w: complex) -> QMatrix:
    """Q with columns p_j K_{n+2m-j}(·, w); repeated zeros give derivative rows."""
    if P.m != G.m:
        raise ValueError("admissible set and factor disagree on m")
    _require_depth(t, n, P.m)
    N = n + 2 * P.m
    cols = tuple(poly.mul(P.polys[j], kernel_poly(t, N - j, w).as_poly)
                 for j in range(2 * P.m + 1))
    points = _row_points(G)
    ints = tuple(_column_integral(P.polys[j], P.m, w) for j in range(2 * P.m + 1))
    return QMatrix(cols, _evaluate_rows(cols, points), points, ints)


def _column_integral(p, m: int, w: complex) -> complex:
    """∫ p(ζ) K_k(ζ, w) ζ^{-m} dμ = Σ_s p_s conj(w)^{m-s} for deg p ≤ m ≤ k + deg p."""
    p = poly.as_poly(p)
    cw = np.conj(complex(w))
    return complex(sum(p[s] * cw ** (m - s) for s in range(p.size) if p[s] != 0))


def telescoped_q(t: OpucTable, P: AdmissibleSet, G: SelfReciprocalFactor, n: int,
                 w: complex) -> tuple[QMatrix, int]:
    """Column-reduced Q with the same determinant up to the returned sign.

    Where p_{j+1} = p_j, column j becomes Q_j - Q_{j+1}, a single
    conj(φ_{N-j}(w)) φ_{N-j} term.  Where p_{j+1} = z p_j it becomes
    conj(w) Q_{j+1} - Q_j = -p_j conj(φ*_{N-j}(w)) φ*_{N-j}.  Both are
    computed directly, so near-dependent kernel columns never get
    subtracted numerically.
    """
    if P.m != G.m:
        raise ValueError("admissible set and factor disagree on m")
    _require_depth(t, n, P.m)
    N = n + 2 * P.m
    cols = []
    ints = []
    sign = 1
    for j in range(2 * P.m + 1):
        p = P.polys[j]
        nxt = P.polys[j + 1] if j < 2 * P.m else None
        if nxt is not None and _same(nxt, p):
            k = N - j
            cols.append(poly.mul(p, np.conj(t.eval_phi(k, w)) * t.phi(k)))
            ints.append(0j)
        elif nxt is not None and _same(nxt, poly.shift(p, 1)):
            k = N - j
            cols.append(poly.mul(p, -np.conj(t.eval_phi_star(k, w)) * t.phi_star(k)))
            ints.append(0j)
            sign = -sign
        else:
            cols.append(poly.mul(p, kernel_poly(t, N - j, w).as_poly))
            ints.append(_column_integral(p, P.m, w))
    points = _row_points(G)
    cols = tuple(cols)
    return QMatrix(cols, _evaluate_rows(cols, points), points, tuple(ints)), sign


def _same(p, q) -> bool:
    p, q = poly.trim(p, 0.0), poly.trim(q, 0.0)
    return p.size == q.size and bool(np.all(p == q))


def scaled_det(a: np.ndarray) -> complex:
    """Determinant after scaling each column by its largest entry."""
    if a.shape[0] == 0:
        return 1.0 + 0j
    s = np.max(np.abs(a), axis=0)
    if np.any(s == 0):
        return 0j
    return complex(np.linalg.det(a / s) * np.prod(s))


def first_row_cofactors(lower: np.ndarray) -> np.ndarray:
    k = lower.shape[1]
    out = np.empty(k, dtype=complex)
    for j in range(k):
        out[j] = (-1) ** j * scaled_det(np.delete(lower, j, axis=1))
    return out


# -- the transformation ---------------------------------------------------------

@dataclass(frozen=True)
class TransformResult:
    kernel_nu: np.ndarray | None
    raw_det: np.ndarray
    deflated: np.ndarray
    degenerate: bool
    delta0: complex | None
    delta_m: complex | None
    degeneracy_ratio: float
    remainder_ratio: float
    moment_residual: float | None = None


def det_polynomial(q: QMatrix) -> tuple[np.ndarray, float, complex]:
    """det Q as a polynomial in z, and |det| over the Hadamard bound.

    The bound is taken after equilibrating every row (the polynomial row
    by coefficient norms), so it measures cancellation rather than the
    spread of kernel magnitudes between zeros inside and outside the disk.
    """
    cof = first_row_cofactors(q.lower)
    size = max(c.size for c in q.columns)
    det = np.zeros(size, dtype=complex)
    for c, col in zip(cof, q.columns):
        det[: col.size] += c * col
    top_norms = np.array([np.linalg.norm(col) for col in q.columns])
    row_scale = np.max(np.abs(q.lower), axis=1) if q.lower.size else np.ones(0)
    row_scale = np.where(row_scale > 0, row_scale, 1.0)
    top_scale = top_norms.max() if top_norms.max() > 0 else 1.0
    scaled = np.vstack([top_norms / top_scale, np.abs(q.lower) / row_scale[:, None]])
    bound = float(np.prod(np.linalg.norm(scaled, axis=0)))
    top = float(np.linalg.norm(det)) / top_scale / float(np.prod(row_scale))
    ratio = top / bound if bound > 0 else 0.0
    return det, ratio, complex(np.dot(cof, q.integrals))


def _divide_linear(p: np.ndarray, r: complex) -> np.ndarray:
    """Quotient of p by (z - r), run in the direction that damps errors."""
    n = p.size - 1
    q = np.zeros(n, dtype=complex)
    if abs(r) <= 1:
        acc = p[n]
        for k in range(n - 1, -1, -1):
            q[k] = acc
            acc = p[k] + r * acc
    else:
        # from the constant term: q_0 = -p_0 / r, q_k = (q_{k-1} - p_k) / r
        acc = 0j
        for k in range(n):
            acc = (acc - p[k]) / r
            q[k] = acc
    return q


def deflate(det: np.ndarray, G: SelfReciprocalFactor) -> np.ndarray:
    """det / G, one zero at a time."""
    q = poly.as_poly(det)
    if q.size <= 2 * G.m:
        return np.zeros(1, dtype=complex)
    q = q[: max(poly.degree(q), 2 * G.m) + 1]
    for z in G.zeros:
        q = _divide_linear(q, z)
    return q / G.leading


def transform_kernel(t: OpucTable, P: AdmissibleSet, G: SelfReciprocalFactor, n: int,
                     w: complex, nu_moments=None, stabilized: bool = True) -> TransformResult:
    """K_n(·, w; ν) from the kernels of μ.

    The constant is fixed by ∫ K_n(ζ, w; ν) dν(ζ) = 1.  Since
    A_n G = det Q, the integral ∫ A_n dν equals ∫ det Q(ζ) ζ^{-m} dμ, which
    the reproducing property of the μ-kernels gives exactly, column by
    column.  When ``nu_moments`` (ν_k for k ≤ n) are supplied, the same
    integral is also formed from them and its disagreement reported as
    ``moment_residual``.
    """
    if stabilized:
        q, sign = telescoped_q(t, P, G, n, w)
    else:
        q, sign = build_q(t, P, G, n, w), 1
    det, ratio, integral = det_polynomial(q)
    det = sign * det
    integral = sign * integral
    d0 = dm = None
    if G.simple:
        raw = build_q(t, P, G, n, w).lower
        d0 = scaled_det(raw[:, 1:])
        dm = scaled_det(raw[:, :-1])

    if ratio <= DEGENERACY_RTOL:
        return TransformResult(None, det, np.zeros(1, dtype=complex), True, d0, dm, ratio, 0.0)

    quot = deflate(det, G)
    rem = poly.sub(det, poly.mul(G.as_poly, quot))
    top = float(np.max(np.abs(det)))
    rem_ratio = float(np.max(np.abs(rem))) / top
    if rem_ratio > DEFLATION_RTOL:
        raise ConsistencyError(
            f"det Q is not divisible by G: remainder/size = {rem_ratio:.3e}")
    quot = quot[: n + 1] if quot.size > n + 1 else quot
    kernel = quot / integral
    residual = None
    if nu_moments is not None:
        s = sum(kernel[k] * nu_moments[-k] for k in range(kernel.size))
        residual = float(abs(s - 1))
    return TransformResult(kernel, det, quot, False, d0, dm, ratio, rem_ratio, residual)


def minors(t: OpucTable, P: AdmissibleSet, G: SelfReciprocalFactor, n: int,
           w: complex) -> tuple[complex, complex]:
    """Δ_0 (drop first column) and Δ_m (drop last column) of the numeric block."""
    if not G.simple:
        raise UnsupportedOperationError("minors are defined for simple zeros only")
    lower = build_q(t, P, G, n, w).lower
    return scaled_det(lower[:, 1:]), scaled_det(lower[:, :-1])
