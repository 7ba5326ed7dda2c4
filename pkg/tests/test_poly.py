import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuckit import poly

coef = st.complex_numbers(max_magnitude=10, allow_nan=False, allow_infinity=False)
polys = st.lists(coef, min_size=1, max_size=8)


def test_trim_and_degree():
    p = poly.trim([1, 2, 0, 1e-20])
    assert p.size == 2
    assert poly.degree([0, 0]) == -1 or poly.is_zero([0, 0])
    assert poly.degree([1, 0, 3]) == 2


def test_reverse_of_monomial():
    r = poly.reverse(poly.monomial(1), 3)
    assert np.allclose(r, [0, 0, 1, 0])


def test_reverse_conjugates():
    p = np.array([1 + 1j, 2, 3j])
    r = poly.reverse(p, 2)
    assert np.allclose(r, np.conj(p[::-1]))


def test_from_roots_and_roots():
    p = poly.from_roots([2, 0.5, 1j], leading=3)
    assert np.allclose(p[-1], 3)
    assert np.allclose(np.sort_complex(poly.roots(p)), np.sort_complex([2, 0.5, 1j]))


def test_divide_exact():
    a = poly.from_roots([1, 2])
    b = poly.from_roots([3])
    q, r = poly.divide(poly.mul(a, b), b)
    assert np.allclose(poly.trim(q), a)
    assert np.max(np.abs(r)) < 1e-12


@given(polys, polys)
def test_mul_evaluates_pointwise(p, q):
    z = 0.3 + 0.7j
    lhs = poly.evaluate(poly.mul(p, q), z)
    rhs = poly.evaluate(p, z) * poly.evaluate(q, z)
    assert abs(lhs - rhs) <= 1e-9 * (1 + abs(rhs))


@given(polys, polys)
def test_add_sub_inverse(p, q):
    back = poly.sub(poly.add(p, q), q)
    n = len(p)
    assert np.allclose(back[:n], p, atol=1e-9)
    assert np.allclose(back[n:], 0, atol=1e-9)


@given(polys)
def test_reverse_is_involution(p):
    n = len(p) - 1
    assert np.allclose(poly.reverse(poly.reverse(p, n), n), p)


@given(polys)
@settings(max_examples=50)
def test_derivative_matches_finite_difference(p):
    z, h = 0.4 - 0.2j, 1e-6
    fd = (poly.evaluate(p, z + h) - poly.evaluate(p, z - h)) / (2 * h)
    assert abs(poly.evaluate(poly.derivative(p), z) - fd) <= 1e-4 * (1 + abs(fd))


def test_divide_by_zero_poly_raises():
    with pytest.raises((ZeroDivisionError, ValueError)):
        poly.divide([1, 2], [0])
