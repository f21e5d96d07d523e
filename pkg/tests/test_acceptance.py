"""Acceptance suite: every criterion at its stated tolerance, one line per criterion.

All numerical checks are exact (rational and cyclotomic arithmetic); the time
limits are the stated budgets.  Criterion 10 re-runs the selftest CLI twice
and compares raw bytes.
"""

import subprocess
import sys
import time

import pytest

from orbistring import selftest as st

SEED = 42

LIMITS = {
    "criterion-01 dijkgraaf-witten-point": 5.0,
    "criterion-02 discrete-torsion": 5.0,
    "criterion-03 cohomology-invariance": None,
    "criterion-04 morita-invariance": 30.0,
    "criterion-05 operad-axioms": 60.0,
    "criterion-06 g-graded-operad": None,
    "criterion-07 holonomy-figure": None,
    "criterion-08 lens-rings": 5.0,
    "criterion-09 bv-checker": 5.0,
}


def _run(fn):
    t0 = time.monotonic()
    result = fn(SEED)
    elapsed = time.monotonic() - t0
    status = "PASS" if result.ok else "FAIL"
    print(f"{result.name}: {status} [{elapsed:.2f}s] ({result.detail})")
    limit = LIMITS.get(result.name)
    assert result.ok, f"{result.name}: {result.detail}"
    if limit is not None:
        assert elapsed < limit, f"{result.name} took {elapsed:.2f}s, budget {limit}s"
    return result


def test_criterion_01_dw_point_case():
    _run(st.crit_01_dw_point)


def test_criterion_02_discrete_torsion():
    _run(st.crit_02_discrete_torsion)


def test_criterion_03_cohomology_invariance():
    _run(st.crit_03_cohomology_invariance)


def test_criterion_04_morita_invariance():
    _run(st.crit_04_morita)


def test_criterion_05_operad_axioms():
    _run(st.crit_05_operad)


def test_criterion_06_g_graded_operad():
    _run(st.crit_06_g_operad)


def test_criterion_07_holonomy_figure():
    _run(st.crit_07_holonomy_figure)


def test_criterion_08_lens_rings():
    _run(st.crit_08_lens_rings)


def test_criterion_09_bv_checker():
    _run(st.crit_09_bv_checker)


@pytest.mark.slow
def test_criterion_10_selftest_determinism():
    cmd = [sys.executable, "-m", "orbistring.cli", "selftest", "--seed", "42"]
    p1 = subprocess.run(cmd, capture_output=True, timeout=600)
    p2 = subprocess.run(cmd, capture_output=True, timeout=600)
    assert p1.returncode == 0, p1.stdout.decode()[-2000:]
    assert p1.stdout == p2.stdout and p1.stderr == p2.stderr
    print("criterion-10 determinism: PASS (selftest --seed 42 twice is byte-identical)")
