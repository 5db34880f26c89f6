import math

import mpmath
import numpy as np
import pytest

from modverify import lfun
from modverify.qexp import cusp_eigenforms


def test_zeta_values():
    Z = lfun.build_zeta(2000)
    r = Z.value(2.0, 1e-12)
    assert abs(r.value - math.pi ** 2 / 6) < max(r.error_bound, 1e-12)
    r3 = Z.value(3.0, 1e-12)
    assert abs(r3.value - float(mpmath.zeta(3))) < 1e-11


def test_zeta_first_zero():
    r = lfun.build_zeta(4000).value(0.5 + 14.134725141734693j, 1e-10)
    assert abs(r.value) < 1e-8


def test_zeta_star_reflection():
    for s in (0.3 + 2j, -1.0, -3.5):
        assert abs(lfun.zeta_star(s) - lfun.zeta_star(1 - s)) < 1e-12 * abs(lfun.zeta_star(1 - s))


def test_adjoint_against_euler_product():
    f = cusp_eigenforms(12, 3000)[0]
    L = lfun.build_adjoint(f)
    r = L.value(3.0, 1e-12)
    direct = L.euler_product(3.0, 3000)
    assert abs(r.value - direct) < 1e-8


def test_adjoint_error_bound_is_honest():
    f = cusp_eigenforms(12, 3000)[0]
    L = lfun.build_adjoint(f)
    fine = L.value(1.0, 1e-14)
    coarse = L.value(1.0, 1e-6)
    assert abs(fine.value - coarse.value) <= coarse.error_bound + fine.error_bound


def test_rankin_selberg_functional_equation():
    f = cusp_eigenforms(12, 3000)[0]
    L = lfun.build_rankin_selberg(f, f, adjoint_value=lambda: lfun.build_adjoint(f).value(1.0).completed)
    a = L.value(0.3 + 2j, 1e-12).completed
    b = L.value(0.7 - 2j, 1e-12).completed
    assert abs(a - b) < 1e-10 * abs(a)


def test_shortfall_is_reported():
    f = cusp_eigenforms(28, 50)[0]
    g = cusp_eigenforms(16, 50)[0]
    h = cusp_eigenforms(12, 50)[0]
    with pytest.raises(lfun.CoefficientShortfall):
        lfun.build_triple(f, g, h).value(0.5, 1e-12)


def test_triple_patterns(first_even):
    f28 = cusp_eigenforms(28, 50)[0]
    f16 = cusp_eigenforms(16, 50)[0]
    d = cusp_eigenforms(12, 50)[0]
    assert lfun.triple_pattern(f28, f16, d) == "holomorphic-balanced"
    assert lfun.triple_pattern(d, d, first_even) == "kk0"
    assert lfun.triple_pattern(first_even, first_even, first_even) == "maass"
    with pytest.raises(ValueError):
        lfun.triple_pattern(f28, d, d)


def test_dirichlet_coefficients_multiplicative():
    f = cusp_eigenforms(12, 500)[0]
    b = lfun.build_adjoint(f).coeffs(200)
    assert abs(b[6] - b[2] * b[3]) < 1e-12
    assert abs(b[35] - b[5] * b[7]) < 1e-12
    assert np.isfinite(b).all()
