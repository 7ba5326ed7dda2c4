import numpy as np
from hypothesis import given, settings, strategies as st

from opuckit import measures as M, poly
from opuckit.opuc import build_opuc, table_from_alphas
from opuckit.oracle import integrate

unit_disk = st.builds(lambda r, t: r * np.exp(1j * t),
                      st.floats(0, 0.9), st.floats(0, 2 * np.pi))


def test_lebesgue_monomials():
    t = build_opuc(M.lebesgue(), 4)
    for k in range(5):
        assert np.allclose(poly.trim(t.phi(k)), poly.monomial(k))


def test_orthonormal_under_quadrature():
    mu = M.hyper_jacobi(0.8 + 0.5j)
    t = build_opuc(mu, 6)
    gram = np.empty((7, 7), dtype=complex)
    for j in range(7):
        for k in range(7):
            gram[j, k] = integrate(mu, lambda z: t.eval_phi(j, z) * np.conj(t.eval_phi(k, z)))
    assert np.max(np.abs(gram - np.eye(7))) < 1e-10


def test_mass_scales_kappa0():
    t = table_from_alphas([], 0, total_mass=4.0)
    assert np.isclose(t.phi(0)[0], 0.5)


@given(st.lists(unit_disk, min_size=1, max_size=10),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
@settings(max_examples=60)
def test_values_match_coefficients(alphas, z):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    v, vs = t.values(n, z)
    for k in range(n + 1):
        assert abs(v[k] - poly.evaluate(t.phi(k), z)) <= 1e-9 * (1 + abs(v[k]))
        assert abs(vs[k] - poly.evaluate(t.phi_star(k), z)) <= 1e-9 * (1 + abs(vs[k]))


@given(st.lists(unit_disk, min_size=1, max_size=10))
def test_zeros_inside_disk(alphas):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    assert np.all(np.abs(poly.roots(t.phi(n))) < 1 + 1e-9)


@given(st.lists(unit_disk, min_size=1, max_size=10), st.floats(0, 2 * np.pi))
def test_star_is_reversal(alphas, theta):
    n = len(alphas)
    t = table_from_alphas(alphas, n)
    z = np.exp(1j * theta)
    assert np.isclose(abs(t.eval_phi(n, z)), abs(t.eval_phi_star(n, z)))
