import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from opuckit import cgrec, measures as M
from opuckit.descriptor import format_complex, measure_from_descriptor, parse_complex
from opuckit.errors import DomainError
from opuckit.oracle import integrate

unit_disk = st.builds(lambda r, t: r * np.exp(1j * t),
                      st.floats(0, 0.95), st.floats(0, 2 * np.pi))


def test_lebesgue_parameters():
    c, g = M.lebesgue().cgs(5)
    assert np.allclose(c, 0)
    assert np.allclose(g, 0.5)


def test_hyper_jacobi_b1_g():
    c, g = M.hyper_jacobi(1).cgs(3)
    assert np.allclose(c, 0)
    assert np.allclose(g, [0.75, 2 / 3, 0.625])


def test_geronimus_constant_alpha_up_to_rotation():
    a = M.geronimus(-0.3 + 0.2j).alphas(6)
    assert np.allclose(np.abs(a), abs(-0.3 + 0.2j))


@given(st.lists(unit_disk, min_size=1, max_size=12))
def test_alpha_cg_roundtrip(alphas):
    c, g, _ = cgrec.cg_from_alpha(alphas)
    assert np.all((g > 0) & (g < 1))
    assert np.allclose(cgrec.alpha_from_cg(c, g), alphas, atol=1e-9)


def test_alpha_from_cg_rejects_g_outside():
    with pytest.raises(DomainError):
        cgrec.alpha_from_cg([0.0], [1.0])


@pytest.mark.parametrize("mu", [M.lebesgue(), M.geronimus(-0.5), M.geronimus(0.4),
                                M.qhyper(0.5, 1), M.hyper_jacobi(0.8 + 0.5j)])
def test_total_mass_one(mu):
    assert abs(integrate(mu, lambda z: np.ones_like(z)) - 1) < 1e-10


def test_geronimus_mass_point_only_when_outside():
    assert M.geronimus(-0.5).point_masses() == []
    assert M.geronimus(0.4).point_masses()[0].mass > 0


def test_explicit_lists_too_short():
    with pytest.raises(IndexError):
        M.explicit_alpha([0.1]).alphas(3)


@pytest.mark.parametrize("text,value", [("1", 1), ("-2.5", -2.5), ("i", 1j), ("-i", -1j),
                                        ("0.5-0.25i", 0.5 - 0.25j), ("1e-3+2i", 1e-3 + 2j)])
def test_parse_complex(text, value):
    assert parse_complex(text) == value


def test_parse_complex_rejects_python_syntax():
    with pytest.raises(ValueError):
        parse_complex("1+2j")


@given(st.complex_numbers(max_magnitude=1e6, allow_nan=False, allow_infinity=False))
def test_format_parse_roundtrip(z):
    assert parse_complex(format_complex(z)) == z


@pytest.mark.parametrize("mu", [M.lebesgue(), M.geronimus(-0.3 + 0.2j), M.qhyper(0.5, 0.7 + 0.3j),
                                M.hyper_jacobi(-0.3), M.explicit_alpha([0.1, 0.2j], 2.0),
                                M.explicit_cg([0.1], [0.3])])
def test_descriptor_roundtrip(mu):
    back = measure_from_descriptor(json.dumps(mu.describe()))
    assert np.allclose(back.alphas(1), mu.alphas(1))
    assert back.describe() == mu.describe()


def test_unknown_family():
    with pytest.raises(ValueError):
        measure_from_descriptor({"family": "nope"})
