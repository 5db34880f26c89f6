from fractions import Fraction

import mpmath
import pytest

from modverify.qexp import (PrecisionError, QSeries, cusp_eigenforms, delta_qexp, dim_cusp, eisenstein_qexp,
                            hecke_apply, lambda_power, miller_basis, satake_params)

TAU = [0, 1, -24, 252, -1472, 4830, -6048, -16744, 84480, -113643, -115920]


def test_delta_coefficients():
    d = delta_qexp(11)
    assert [int(c) for c in d.coeffs] == TAU


def test_eisenstein_normalisation():
    e4 = eisenstein_qexp(4, 5)
    assert e4.coeffs[:3] == (1, 240, 2160)


def test_e4_cubed_minus_e6_squared_is_1728_delta():
    e4, e6 = eisenstein_qexp(4, 30), eisenstein_qexp(6, 30)
    assert (e4 ** 3 - e6 * e6).scale(Fraction(1, 1728)) == delta_qexp(30)


@pytest.mark.parametrize("k,d", [(12, 1), (14, 0), (24, 2), (26, 1), (28, 2), (36, 3)])
def test_cusp_dimensions(k, d):
    assert dim_cusp(k) == d


def test_miller_basis_is_echelon():
    b = miller_basis(24, 10)
    assert [g[1] for g in b] == [1, 0] and [g[2] for g in b] == [0, 1]


def test_hecke_operator_on_delta():
    d = delta_qexp(200)
    assert hecke_apply(d, 2) == d.truncate(100).scale(-24)


def test_hecke_precision_guard():
    with pytest.raises(PrecisionError):
        hecke_apply(delta_qexp(5), 7)


def test_dimension_two_branches_are_conjugate():
    f1, f2 = cusp_eigenforms(24, 50)
    # a_2 = 540 +- 12 sqrt(144169), the roots of x^2 - 1080 x - 20468736
    assert abs(f1.a(2) + f2.a(2) - 1080) < 1e-9
    assert abs(f1.a(2) * f2.a(2) + 20468736) < 1e-6


def test_eigenform_multiplicativity():
    f = cusp_eigenforms(16, 100)[0]
    assert abs(f.a(6) - f.a(2) * f.a(3)) < 1e-20 * abs(f.a(6))
    k = 16
    assert abs(f.a(4) - (f.a(2) ** 2 - mpmath.mpf(2) ** (k - 1))) < 1e-20 * abs(f.a(4))


def test_satake_roundtrip_and_tempered():
    f = cusp_eigenforms(12, 50)[0]
    for p in (2, 3, 5, 7):
        (sd, sdd), branch = satake_params(f.lam(p), p)
        assert branch == "tempered" and abs(sd.real) < 1e-12
        assert abs(lambda_power((sd, sdd), p, 1) - f.lam(p)) < 1e-12
        assert abs(lambda_power((sd, sdd), p, 2) - f.lam(p * p)) < 1e-12


def test_hecke_normalisation_of_lambda_power():
    sat = (0.3j, -0.3j)
    assert abs(lambda_power(sat, 5, 3, "hecke") - 5 ** 1.5 * lambda_power(sat, 5, 3)) < 1e-12


def test_json_roundtrip():
    f = cusp_eigenforms(20, 40)[0]
    g = type(f).from_json(f.to_json())
    assert g.weight == 20 and abs(g.a(13) - f.a(13)) < 1e-25 * abs(f.a(13))
