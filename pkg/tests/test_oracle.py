import numpy as np
import pytest

from opuckit import cgrec, christoffel as X, measures as M
from opuckit import oracle as O
from opuckit.verify import catalogue


@pytest.mark.parametrize("mu", catalogue(), ids=lambda m: m.label())
def test_moments_agree_with_quadrature(mu):
    a = O.moments_from_alpha(mu, 15).values
    b = O.moments_quadrature(mu, 15).values
    assert np.max(np.abs(a - b)) < 1e-10


def test_lebesgue_moments():
    m = O.moments_from_alpha(M.lebesgue(), 5)
    assert np.allclose(m.values, [1, 0, 0, 0, 0, 0])


def test_hyper_mass_is_one():
    assert abs(O.moments_quadrature(M.hyper_jacobi(1), 0)[0] - 1) < 1e-10


def test_negative_index_is_conjugate():
    m = O.moments_from_alpha(M.geronimus(-0.3 + 0.2j), 4)
    assert m[-3] == np.conj(m[3])
    with pytest.raises(IndexError):
        m[5]


@pytest.mark.parametrize("mu", catalogue(), ids=lambda m: m.label())
def test_levinson_recovers_alpha(mu):
    lev = O.levinson(O.moments_from_alpha(mu, 10), 10)
    assert np.max(np.abs(lev.alphas - mu.alphas(10))) < 1e-8


def test_levinson_rejects_non_positive():
    with pytest.raises(O.NotPositiveError):
        O.levinson(O.MomentList(np.array([1.0, 1.5, 0.0])), 2)


def test_transform_moments_lebesgue():
    G = X.make_factor([2, 0.5], M.lebesgue())
    nu = O.transform_moments(O.moments_from_alpha(M.lebesgue(), 6), G)
    assert np.allclose(nu.values[:3], [5, -2, 0])


def test_toeplitz_hermitian_positive():
    T = O.moments_from_alpha(M.qhyper(0.5, 0.7 + 0.3j), 8).toeplitz(8)
    assert np.allclose(T, T.conj().T)
    assert np.linalg.eigvalsh(T).min() > 0


def test_explicit_alpha_first_moment():
    m = O.moments_from_alpha(M.explicit_alpha([0.5]), 1)
    assert np.isclose(m[1], 0.5)


@pytest.mark.parametrize("mu", catalogue(), ids=lambda m: m.label())
def test_pivots_telescope(mu):
    lev = O.levinson(O.moments_from_alpha(mu, 10), 10)
    expect = mu.total_mass * np.concatenate([[1.0], np.cumprod(1 - np.abs(lev.alphas) ** 2)])
    assert np.allclose(lev.pivots, expect, rtol=1e-10, atol=0)


def test_arc_factor_moments_real():
    mu = M.geronimus(-0.5)
    nu = O.transform_moments(O.moments_from_alpha(mu, 16), cgrec.geronimus_factor(mu))
    assert np.max(np.abs(nu.values.imag)) < 1e-14


@pytest.mark.parametrize("q,b", [(0.5, 1), (0.5, 0.7 + 0.3j), (0.3, 1.2)])
def test_qhyper_transform_is_shift(q, b):
    mu = M.qhyper(q, b)
    nu = O.transform_moments(O.moments_from_alpha(mu, 12), cgrec.qhyper_factor(mu), 10)
    lev = O.levinson(nu, 10)
    assert np.max(np.abs(lev.alphas - M.qhyper(q, b + 1).alphas(10))) < 1e-8


@pytest.mark.parametrize("mu", [M.lebesgue(), M.geronimus(-0.5), M.hyper_jacobi(1)])
def test_transformed_functional_is_positive(mu):
    G = X.make_factor([2, 0.5, 3j, 1j / 3], mu)
    nu = O.transform_moments(O.moments_from_alpha(mu, 22), G, 20)
    c, g, _ = cgrec.cg_from_alpha(O.levinson(nu, 20).alphas)
    assert np.all((g > 0) & (g < 1))


def test_insufficient_depth():
    G = X.make_factor([2, 0.5], M.lebesgue())
    with pytest.raises(ValueError):
        O.transform_moments(O.moments_from_alpha(M.lebesgue(), 4), G, 4)
