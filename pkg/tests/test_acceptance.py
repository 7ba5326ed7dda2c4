"""Acceptance criteria 1-12, each run at its stated tolerance.

Each criterion records one PASS/FAIL line, printed in the terminal
summary by ``conftest.py``, and then asserts its result.
"""
import pytest

from opuckit import verify as V

SEED = 7
SUMMARY: list = []


@pytest.mark.parametrize("entry", V.CRITERIA, ids=lambda e: f"c{e[0]:02d}-{e[1]}")
def test_criterion(entry):
    number, suite, title, _ = entry
    crit = V.run_suite(suite, seed=SEED)[0]
    SUMMARY.append(f"criterion {number:2d} {'PASS' if crit.passed else 'FAIL'}  [{suite}] {title}")
    failed = [f"{r.check} {r.params}: error {r.error:.3e} > {r.threshold:.1e}"
              for r in crit.rows if not r.passed and not r.supplementary]
    assert not failed, f"criterion {number} failed:\n" + "\n".join(failed)
