import numpy as np
import pytest

from opuckit import verify as V


def test_rows_sorted_and_serializable():
    crit = V.run_suite("roundtrip", seed=1)[0]
    keys = [(r.check, V._key(r.params)) for r in crit.rows]
    assert keys == sorted(keys)
    for r in crit.rows:
        assert set(r.as_dict()) - {"supplementary"} == {"check", "params", "error", "threshold", "pass"}


def test_seed_changes_samples_not_structure():
    a = V.run_suite("zeros", seed=1)[0]
    b = V.run_suite("zeros", seed=2)[0]
    assert [r.check for r in a.rows] == [r.check for r in b.rows]


def test_threads_do_not_change_results():
    a = V.run_suite("xi", seed=4, threads=1)
    b = V.run_suite("xi", seed=4, threads=4)
    assert [r.as_dict() for c in a for r in c.rows] == [r.as_dict() for c in b for r in c.rows]


def test_tol_override():
    crit = V.run_suite("roundtrip", seed=0, tol=1e-40)[0]
    assert not crit.passed
    assert all(r.threshold == 1e-40 for r in crit.rows if not r.supplementary)


def test_supplementary_rows_do_not_gate():
    rows = (V._row("x", {}, 1.0, 0.5, supplementary=True), V._row("y", {}, 0.1, 0.5))
    assert V.Criterion(0, "s", "t", rows).passed


def test_unknown_suite():
    with pytest.raises(ValueError):
        V.run_suite("nope")


def test_lebesgue_limit_kernel_is_polynomial():
    k = V.lebesgue_limit_kernel(4)
    assert k.size == 5
    assert np.all(np.isfinite(k))
