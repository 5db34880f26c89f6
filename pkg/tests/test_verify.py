import io
import math
from fractions import Fraction

import numpy as np
import pytest

from modverify import langlands as ll
from modverify.qexp import HoloEigenform, cusp_eigenforms
from modverify.verify import identities as ids
from modverify.verify import local
from modverify.verify.cache import FormCache
from modverify.verify.constants import ConstantTable
from modverify.verify.report import IdentityReport, csv_text, read_jsonl, write_jsonl
from modverify.verify.thirdmoment import run_thrd_experiment


# --- constants --------------------------------------------------------------------------

def test_constant_table_rationals():
    assert ConstantTable.c_inf(12) == Fraction(1, 2 ** 13)
    assert ConstantTable.c_inf(-12) == ConstantTable.c_inf(12)
    assert ConstantTable.c_inf(0) == 1
    assert ConstantTable.C_inf(12) == Fraction(1, 2 ** 26)
    assert ConstantTable.C_inf(0, -1) == 0 and ConstantTable.C_inf(0, 1) == 1
    assert {ConstantTable.Q_inf(p, e) for p in ("maass", "kk0", "holomorphic-balanced") for e in (1, -1)} == {0, 1, 2}
    assert ConstantTable.watson_prefactor("holomorphic-balanced") == Fraction(1, 4)
    with pytest.raises(ValueError):
        ConstantTable.Q_inf("maass", 0)


def test_q_from_zeta_constants_matches_table():
    rows = [("maass", (0, 0, 0), 1), ("maass", (0, 0, 0), -1), ("kk0", (12, 12, 0), 1),
            ("holomorphic-balanced", (28, 16, 12), 1), ("holomorphic-balanced", (20, 12, 8), -1)]
    for pattern, w, e in rows:
        assert ConstantTable.Q_from_zeta_constants(w, e) == ConstantTable.Q_inf(pattern, e)


# --- reports ----------------------------------------------------------------------------

def test_report_verdict_recomputable():
    r = IdentityReport("x", 1.0 + 1e-7, 1e-9, 1.0, 1e-9, 1e-6, {"a": 1})
    assert r.passed
    buf = io.StringIO()
    write_jsonl([r], buf)
    back = read_jsonl(io.StringIO(buf.getvalue()))[0]
    assert back.passed == r.passed and back.lhs == r.lhs
    assert "rel_disc" in csv_text([r]).splitlines()[0]


def test_report_modes():
    assert not IdentityReport("x", 1.1, 0, 1.0, 0, 1e-3).passed
    assert IdentityReport("z", 1e-20, 1e-19, 0.0, 0, 0.0, mode="absolute").passed
    assert IdentityReport("b", 3.0, 0, 10.0, 0, 0.0, mode="bound").passed
    assert not IdentityReport("b", 11.0, 0, 10.0, 0, 0.0, mode="bound").passed
    assert not IdentityReport("r", 1.0, 0, 1.0, 0, 1.0, rejected="bad input").passed


# --- global identities ----------------------------------------------------------------------

def test_ransel_rejects_unnormalised(delta):
    scaled = HoloEigenform(12, delta.precision, [2 * c for c in delta.coeffs], "2*Delta")
    r = ids.check_ransel(scaled)
    assert r.rejected and not r.passed


def test_ransel_delta(delta):
    r = ids.check_ransel(delta, cache=FormCache())
    assert r.passed and r.relative_discrepancy < 1e-10


def test_eismth_pole_guard(delta):
    r = ids.check_eismth(delta, 1.02)[0]
    assert r.rejected


def test_eismth_functional_equation(delta):
    for s in (0.5 + 3j, 2.0, 0.3 + 1j):
        assert ids.eismth_functional_equation(delta, s).passed


def test_cache_shares_adjoint_between_norm_and_watson(first_even):
    cache = FormCache()
    ids.check_watson(first_even, first_even, first_even, 1e-8, cache)
    before = cache.hits["adjoint"]
    cache.adjoint_at_one(first_even)
    assert cache.hits["adjoint"] == before + 1
    assert cache.misses["adjoint"] == 1


def test_watson_odd_maass_vanishes(first_odd):
    r = ids.check_watson(first_odd, first_odd, first_odd, 1e-10)
    assert r.mode == "absolute" and r.passed and abs(r.lhs) <= r.lhs_error


def test_watson_mixed_even(delta, first_even):
    r = ids.check_watson(delta, delta, first_even, 1e-10)
    assert r.inputs["pattern"] == "kk0"
    assert r.passed and r.relative_discrepancy < 1e-6


def test_watson_mixed_odd_both_sides_vanish(delta, first_odd):
    # L(1/2, Ad Delta x phi) and L(1/2, phi) both vanish for odd phi
    r = ids.check_watson(delta, delta, first_odd, 1e-10)
    assert abs(r.lhs) < 1e-30
    assert abs(r.rhs) <= r.rhs_error
    assert r.passed


def test_watson_unsupported_pattern(delta):
    f16 = cusp_eigenforms(16, 200)[0]
    with pytest.raises(ValueError):
        ids.check_watson(f16, delta, delta)


# --- local identities ----------------------------------------------------------------------

def test_local_zeta_trivial_parameters():
    r = local.check_local_zeta_unramified(2, 1.0, (0, 0), (0, 0), (0, 0))
    want = complex(ll.zeta_p(1.5, 2) ** 8 / (ll.zeta_p(4, 2) * ll.zeta_p(6, 2)))
    assert abs(r.rhs - want) < 1e-12 * abs(want)
    assert r.relative_discrepancy < 1e-10


def test_local_zeta_swap_symmetry():
    rng = np.random.default_rng(5)
    a, b, c = (local.random_tempered_satake(rng, 3) for _ in range(3))
    r1 = local.check_local_zeta_unramified(3, 1.25, a, b, c)
    r2 = local.check_local_zeta_unramified(3, 1.25, a, c, b)
    assert abs(r1.lhs - r2.lhs) < 1e-14 * abs(r1.lhs)


def test_local_zeta_rejects_bad_input():
    assert local.check_local_zeta_unramified(2, 1.0, (0.1j, 0), (0, 0), (0, 0)).rejected
    assert local.check_local_zeta_unramified(2, 0.2, (0.3, -0.3), (0, 0), (0, 0)).rejected


def test_ikeda_real_parameters_positive():
    r = local.check_ikeda_arch(1.0, 0.1, 0.2, 0.05)
    assert r.passed and r.lhs.real > 0 and abs(r.lhs.imag) == 0
    assert r.diagnostics["gamma_vs_zeta"] < 1e-12


def test_ikeda_divergent_rejected():
    assert local.check_ikeda_arch(0.1, 0.7, 0, 0).rejected


def test_gross_kudla_corrected_and_printed():
    reps = local.check_gross_kudla_arch(12, 8, 4, 1.0)
    assert all(r.passed for r in reps)
    printed = local.check_gross_kudla_arch(12, 8, 4, 1.0, printed=True)[0]
    # the printed Pochhammer (2s+1)_k differs from the Gamma chain by exactly 2s + k
    assert abs(printed.diagnostics["ratio"] - (2 * 1.0 + 12)) < 1e-12


def test_gross_kudla_pattern_guard():
    assert local.check_gross_kudla_arch(12, 6, 4, 0)[0].rejected


def test_kk0_integral():
    reps = local.check_kk0_arch(4, 0.2)
    assert all(r.passed for r in reps)


def test_boundary_consistency():
    assert all(r.passed for r in local.check_boundary(0.4, 16))


# --- third moment -------------------------------------------------------------------------

def test_thirdmoment_excludes_odd(first_even, first_odd):
    rep = run_thrd_experiment([first_odd, first_even], 1e-8)
    assert len(rep.rows) == 1 and rep.excluded
    assert rep.rows[0].watson.passed
    assert not rep.passed  # fewer than four forms
