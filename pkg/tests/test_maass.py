import numpy as np
import pytest

from modverify.maass import MaassForm, extend_coefficients, hejhal_system, maass_satake, scan, solve

# known spectral parameters of the first level-one forms
FIRST_EVEN = 13.779751351890
FIRST_ODD = 9.533695261354


def test_first_even_eigenvalue(first_even):
    assert abs(first_even.t - FIRST_EVEN) < 1e-8
    assert first_even.parity == 0
    assert first_even.certified_digits >= 6


def test_first_odd_eigenvalue(first_odd):
    assert abs(first_odd.t - FIRST_ODD) < 1e-8


def test_hecke_relations(first_even, first_odd):
    for f in (first_even, first_odd):
        assert f.hecke_residual(20) < 1e-8


def test_known_coefficients(first_odd):
    # c_2 of the first odd form
    assert abs(first_odd.coeffs[2] - (-1.068333551)) < 1e-8


def test_no_spurious_forms_below_first():
    assert scan(2.0, 13.5, 0) == []
    assert scan(2.0, 9.4, 1) == []


def test_next_even_forms():
    ts = [f.t for f in solve((17.6, 19.5), 0)]
    assert ts == pytest.approx([17.738563381, 19.423481471], abs=1e-7)


def test_anchor_below_domain_required():
    with pytest.raises(ValueError):
        hejhal_system(13.0, 0, 20, 0.9)


def test_extension_is_multiplicative(first_even):
    f = extend_coefficients(first_even, 1500)
    c = f.coeffs
    pairs = [(2, 3), (7, 11), (13, 97), (31, 37), (5, 289)]
    assert max(abs(c[m * n] - c[m] * c[n]) for m, n in pairs) < 1e-9
    p = 3
    assert abs(c[p * p] - (c[p] ** 2 - 1)) < 1e-9


def test_satake_parameters_tempered(first_even):
    (sd, sdd), branch = maass_satake(first_even, 2)
    assert branch == "tempered" and abs(sd + sdd) < 1e-14


def test_json_roundtrip(first_odd):
    g = MaassForm.from_json(first_odd.to_json())
    assert g.t == first_odd.t and np.array_equal(g.coeffs, first_odd.coeffs)
