import numpy as np
from hypothesis import assume, given, settings, strategies as st

from opuckit import measures as M, poly
from opuckit.kernels import kernel_cd, kernel_poly, kernel_roots, kernel_sum
from opuckit.opuc import build_opuc, table_from_alphas
from opuckit.oracle import integrate

unit_disk = st.builds(lambda r, t: r * np.exp(1j * t),
                      st.floats(0, 0.9), st.floats(0, 2 * np.pi))
points = st.builds(lambda r, t: r * np.exp(1j * t),
                   st.floats(0.1, 2.5), st.floats(0, 2 * np.pi))
alpha_lists = st.lists(unit_disk, min_size=2, max_size=10)


def test_lebesgue_example():
    t = build_opuc(M.lebesgue(), 2)
    assert np.isclose(kernel_sum(t, 1, 2, 1), 3)
    assert np.isclose(kernel_cd(t, 1, 2, 1), 3)


@given(alpha_lists, points, points)
@settings(max_examples=80)
def test_sum_equals_cd(alphas, z, w):
    assume(abs(np.conj(w) * z - 1) > 1e-3)
    n = len(alphas) - 1
    t = table_from_alphas(alphas, n + 1)
    s, d = kernel_sum(t, n, z, w), kernel_cd(t, n, z, w)
    assert abs(s - d) <= 1e-8 * (1 + abs(s))


@given(alpha_lists, points, points)
def test_hermitian(alphas, z, w):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    assert np.isclose(kernel_sum(t, n, z, w), np.conj(kernel_sum(t, n, w, z)), rtol=1e-10, atol=1e-12)


@given(alpha_lists, points)
def test_poly_matches_sum(alphas, w):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    z = 0.3 - 0.8j
    k = kernel_poly(t, n, w)
    assert np.isclose(poly.evaluate(k.as_poly, z), kernel_sum(t, n, z, w), rtol=1e-10, atol=1e-12)


@given(alpha_lists, st.floats(0.1, 0.95), st.floats(0, 2 * np.pi))
@settings(max_examples=60)
def test_zeros_outside_for_w_inside(alphas, r, theta):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    roots = kernel_roots(kernel_poly(t, n, r * np.exp(1j * theta)))
    assert np.all(np.abs(roots) > 1 - 1e-8)


@given(alpha_lists, st.floats(0, 2 * np.pi))
@settings(max_examples=60)
def test_zeros_on_circle_for_w_on_circle(alphas, theta):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    roots = kernel_roots(kernel_poly(t, n, np.exp(1j * theta)))
    assert np.all(np.abs(np.abs(roots) - 1) < 1e-6)


def test_reproducing_property():
    mu = M.geronimus(-0.3 + 0.2j)
    t = build_opuc(mu, 6)
    w = 0.6 * np.exp(0.4j)
    p = np.array([1, -2j, 0.5, 0.3 + 0.1j])
    k = kernel_poly(t, 5, w).as_poly
    lhs = integrate(mu, lambda z: poly.evaluate(p, z) * np.conj(poly.evaluate(k, z)))
    assert abs(lhs - poly.evaluate(p, w)) < 1e-10


def test_extremal_value_at_w():
    t = build_opuc(M.hyper_jacobi(1), 8)
    w = 0.5j
    assert kernel_sum(t, 8, w, w).real > 0
    assert abs(kernel_sum(t, 8, w, w).imag) < 1e-14


@given(alpha_lists, points, points)
def test_second_cd_form(alphas, z, w):
    assume(abs(np.conj(w) * z - 1) > 1e-3)
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    cw = np.conj(w)
    num = (t.eval_phi_star(n, z) * np.conj(t.eval_phi_star(n, w))
           - cw * z * t.eval_phi(n, z) * np.conj(t.eval_phi(n, w)))
    s = kernel_sum(t, n, z, w)
    assert abs(num / (1 - cw * z) - s) <= 1e-8 * (1 + abs(s))
