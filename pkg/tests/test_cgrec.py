import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from opuckit import cgrec, christoffel as X, measures as M, poly
from opuckit.errors import ConventionError
from opuckit.kernels import kernel_sum
from opuckit.opuc import build_opuc
from opuckit.oracle import integrate

unit_disk = st.builds(lambda r, t: r * np.exp(1j * t),
                      st.floats(0, 0.9), st.floats(0, 2 * np.pi))


def test_lebesgue_r_is_geometric_sum():
    for n, R in enumerate(cgrec.r_sequence(M.lebesgue(), 3)):
        assert np.allclose(R, np.ones(n + 1))


def test_hyper_r2_at_one():
    R = cgrec.r_sequence(M.hyper_jacobi(1), 2)
    assert np.isclose(poly.evaluate(R[2], 1), 10 / 3)


@given(st.lists(unit_disk, min_size=1, max_size=10),
       st.complex_numbers(max_magnitude=2, allow_nan=False, allow_infinity=False))
@settings(max_examples=50)
def test_r_is_xi_times_kernel_at_one(alphas, z):
    mu = M.explicit_alpha(alphas)
    N = len(alphas)
    p = cgrec.cg_params(mu, N)
    R = cgrec.r_sequence_from_cg(p.c, p.g, N)
    t = build_opuc(mu, N)
    for n in range(N + 1):
        ref = p.xi[n] * kernel_sum(t, n, z, 1)
        assert abs(poly.evaluate(R[n], z) - ref) <= 1e-8 * (1 + abs(ref))


@given(st.lists(unit_disk, min_size=1, max_size=10))
def test_r_at_zero_is_product(alphas):
    mu = M.explicit_alpha(alphas)
    N = len(alphas)
    c, g = mu.cgs(N)
    R = cgrec.r_sequence_from_cg(c, g, N)
    for n in range(N + 1):
        assert np.isclose(R[n][0], np.prod(1 - 1j * c[:n]))


@given(st.lists(unit_disk, min_size=1, max_size=10))
def test_r_conjugate_reciprocal(alphas):
    mu = M.explicit_alpha(alphas)
    N = len(alphas)
    c, g = mu.cgs(N)
    for n, R in enumerate(cgrec.r_sequence_from_cg(c, g, N)):
        assert np.allclose(poly.reverse(R, n), R, atol=1e-9)


def test_printed_xi_off_by_power_of_two():
    g = M.hyper_jacobi(1).cgs(6)[1]
    a = cgrec.xi_sequence(g, 1.0, cgrec.XI_CORRECTED)
    b = cgrec.xi_sequence(g, 1.0, cgrec.XI_PRINTED)
    assert np.allclose(a / b, 2.0 ** np.arange(7))
    with pytest.raises(ValueError):
        cgrec.xi_sequence(g, 1.0, "other")


def test_geronimus_connection():
    mu = M.geronimus(-0.5)
    G = cgrec.geronimus_factor(mu)
    cc = cgrec.connection_coeffs(mu, G, 8)
    assert np.isclose(cc.a[1][1], -1.5)
    for n in range(9):
        assert abs(cc.a[n][0]) < 1e-12
        assert np.isclose(cc.a[n][1], cgrec.geronimus_a2(-0.5, n))


def test_geronimus_r_at_endpoints():
    mu = M.geronimus(-0.5)
    R = cgrec.r_sequence(mu, 10)
    lo, hi = M.geronimus_arc(-0.5)
    for z in (np.exp(1j * lo), np.exp(1j * hi)):
        for n in range(11):
            ref = cgrec.geronimus_r_at_zero(-0.5, n, z)
            assert abs(poly.evaluate(R[n], z) - ref) <= 1e-10 * abs(ref)


def test_geronimus_transformed_g():
    mu = M.geronimus(-0.5)
    tc = cgrec.transformed_cg(mu, cgrec.geronimus_factor(mu), 10)
    assert np.allclose(tc.c, 0, atol=1e-12)
    ref = [cgrec.geronimus_g_nu(-0.5, n) for n in range(1, 11)]
    assert np.allclose(tc.g, ref, rtol=0, atol=1e-12)
    shown = [cgrec.geronimus_g_nu_displayed(-0.5, n) for n in range(1, 11)]
    assert np.max(np.abs(np.subtract(shown, ref))) > 1e-3


def test_qhyper_connection_example():
    mu = M.qhyper(0.5, 1)
    cc = cgrec.connection_coeffs(mu, cgrec.qhyper_factor(mu), 4)
    assert np.isclose(cc.a[0][1], -3.5)
    assert np.isclose(cc.gamma[0], -0.5)
    for n in range(5):
        a1, a2, gam = cgrec.qhyper_connection(0.5, 1, n)
        assert np.allclose(cc.a[n], [a1, a2])
        assert np.isclose(cc.gamma[n], gam)


@pytest.mark.parametrize("b", [1, 0.7 + 0.3j])
def test_qhyper_transform_shifts_b(b):
    mu = M.qhyper(0.5, b)
    tc = cgrec.transformed_cg(mu, cgrec.qhyper_factor(mu), 10)
    c, g = M.qhyper(0.5, b + 1).cgs(10)
    assert np.allclose(tc.c, c, atol=1e-8)
    assert np.allclose(tc.g, g, atol=1e-8)


def test_hyper_confluent_example():
    mu = M.hyper_jacobi(1)
    cc = cgrec.connection_coeffs(mu, cgrec.hyper_confluent_factor(mu), 3)
    assert abs(cc.a[0][0]) < 1e-12
    assert np.isclose(cc.a[0][1], -10 / 3)
    assert np.isclose(-cc.gamma[0], 1)


@pytest.mark.parametrize("b", [1, 0.8 + 0.5j, -0.3])
def test_hyper_confluent_closed_forms(b):
    mu = M.hyper_jacobi(b)
    cc = cgrec.connection_coeffs(mu, cgrec.hyper_confluent_factor(mu), 6)
    for n in range(7):
        a1, a2, gam = cgrec.hyper_confluent_connection(b, n)
        assert np.allclose(cc.a[n], [a1, a2], atol=1e-10)
        assert np.isclose(-cc.gamma[n], gam)


def test_gamma_direct_agrees():
    mu = M.qhyper(0.5, 0.7 + 0.3j)
    G = cgrec.qhyper_factor(mu)
    tc = cgrec.transformed_cg(mu, G, 6)
    for n in range(7):
        assert np.isclose(cgrec.gamma_direct(mu, G, tc.c, n), tc.coeffs.gamma[n])


def test_printed_convention_is_not_real_or_wrong():
    mu = M.hyper_jacobi(1)
    G = X.make_factor([2, 0.5], mu)
    good = cgrec.transformed_cg(mu, G, 6)
    try:
        bad = cgrec.transformed_cg(mu, G, 6, cgrec.XI_PRINTED)
    except ConventionError:
        return
    assert np.max(np.abs(bad.g - good.g)) > 1e-3


def test_connection_shape_and_bad_nmax():
    mu = M.lebesgue()
    G = X.make_factor([2, 0.5], mu)
    cc = cgrec.connection_coeffs(mu, G, 3)
    assert cc.a.shape == (4, 2)
    with pytest.raises(ValueError):
        cgrec.transformed_cg(mu, G, 0)


CONNECTION_CASES = [
    (M.lebesgue(), (2, 0.5)),
    (M.hyper_jacobi(0.8 + 0.5j), (2, 0.5)),
    (M.hyper_jacobi(1), (2, 0.5, 3j, 1j / 3)),
    (M.qhyper(0.5, 0.7 + 0.3j), None),
    (M.geronimus(-0.3 + 0.2j), "arc"),
]


@pytest.mark.parametrize("mu,zeros", CONNECTION_CASES, ids=lambda x: getattr(x, "label", lambda: str(x))())
def test_connection_identity(mu, zeros):
    if zeros is None:
        G = cgrec.qhyper_factor(mu)
    elif zeros == "arc":
        G = cgrec.geronimus_factor(mu)
    else:
        G = X.make_factor(zeros, mu)
    nmax, m = 8, G.m
    tc = cgrec.transformed_cg(mu, G, nmax)
    c, g = mu.cgs(nmax + 2 * m)
    rng = np.random.default_rng(0)
    zs = 2.5 * rng.random(20) * np.exp(2j * np.pi * rng.random(20))
    Rmu = cgrec.r_values(c, g, nmax + 2 * m, zs)
    Rnu = cgrec.r_values(tc.c, tc.g, nmax, zs)
    for n in range(nmax + 1):
        N = n + 2 * m
        rhs = Rmu[N] + sum(tc.coeffs.a[n][j - 1] * zs ** (j // 2) * Rmu[N - j]
                           for j in range(1, 2 * m + 1))
        lhs = tc.coeffs.gamma[n] * poly.evaluate(G.as_poly, zs) * Rnu[n]
        assert np.max(np.abs(lhs - rhs) / np.maximum(np.abs(rhs), 1e-300)) < 1e-8


@pytest.mark.parametrize("mu,zeros", CONNECTION_CASES[:3], ids=lambda x: getattr(x, "label", lambda: str(x))())
def test_gamma_recursion_vs_direct(mu, zeros):
    G = X.make_factor(zeros, mu)
    tc = cgrec.transformed_cg(mu, G, 10)
    for n in range(11):
        direct = cgrec.gamma_direct(mu, G, tc.c, n)
        assert abs(direct - tc.coeffs.gamma[n]) <= 1e-9 * abs(direct)


def test_gamma_ratio_real_for_symmetric_data():
    mu = M.lebesgue()
    cc = cgrec.connection_coeffs(mu, X.make_factor([2, 0.5, 3j, -3j, 1j / 3, -1j / 3], mu), 6)
    ratio = cc.gamma[1:] / cc.gamma[:-1]
    assert np.max(np.abs(ratio.imag)) < 1e-10


@pytest.mark.parametrize("mu", [M.geronimus(-0.3 + 0.2j), M.qhyper(0.5, 0.7 + 0.3j), M.hyper_jacobi(-0.3)],
                         ids=lambda m: m.label())
def test_r_orthogonality(mu):
    c, g = mu.cgs(10)
    for n in range(1, 11):
        for s in range(1, n + 1):
            val = integrate(mu, lambda z: np.conj(z ** s) * cgrec.r_values(c, g, n, z)[n] * (1 - z))
            assert abs(val) < 1e-6
