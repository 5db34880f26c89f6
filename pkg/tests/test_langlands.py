import itertools

import mpmath
import pytest

from modverify import langlands as ll
from modverify.verify.suites import langlands_suite

H = ll.LanglandsParam.holomorphic
M = ll.LanglandsParam.maass


def test_local_zetas():
    assert abs(ll.zeta_R(2) - 1 / mpmath.pi) < 1e-14
    # zeta_C = zeta_R(s) zeta_R(s + 1)
    for s in (0.7, 2.5 + 1j):
        assert abs(ll.zeta_C(s) - ll.zeta_R(s) * ll.zeta_R(s + 1)) < 1e-13
    assert abs(ll.zeta_p(2, 3) - 9 / mpmath.mpf(8)) < 1e-14


def test_holomorphic_parameter_shape():
    h = H(12)
    assert h.degree == 2
    assert h.render() == "(0,11)^2_R"
    assert abs(h.local_L(1) - ll.zeta_C(1 + 5.5)) < 1e-14


def test_maass_zero_parameter_splits():
    m = M(0, 0)
    assert m.degree == 2 and len(m.factors) == 2


def test_adjoint_of_holomorphic():
    ad = ll.adjoint(H(12))
    assert ad.degree == 3
    assert sorted(f.render() for f in ad.factors) == ["(0,1)^1_R", "(0,22)^2_R"]


def test_tensor_with_dual_contains_trivial():
    for p in (H(16), M(3.2j, 1), ll.LanglandsParam.unramified(5, 0.4j, -0.4j)):
        one = ll.LanglandsParam(p.place, [ll.ArchFactor(1, 0, 0) if p.place == ll.ARCH else ll.NonArchFactor(0)])
        assert ll.tensor(p, ll.dual(p)) == ll.adjoint(p) + one


def test_unramified_triple_roots():
    p = 3
    sd = [0.1j, 0.25j, 0.7j]
    T = ll.triple(*(ll.LanglandsParam.unramified(p, x, -x) for x in sd))
    got = sorted(complex(f.s).imag for f in T.factors)
    want = sorted((e[0] * sd[0] + e[1] * sd[1] + e[2] * sd[2]).imag for e in itertools.product((1, -1), repeat=3))
    assert got == pytest.approx(want, abs=1e-12)


def test_balanced_holomorphic_triple_factor():
    T = ll.triple(H(28), H(16), H(12))
    s = mpmath.mpf(0.8)
    want = ll.zeta_C(s + 28 - 1.5) * ll.zeta_C(s + 15.5) * ll.zeta_C(s + 11.5) * ll.zeta_C(s + 0.5)
    assert abs(T.local_L(s) / want - 1) < 1e-13


def test_root_numbers_of_level_one_rows():
    assert abs(ll.triple(H(28), H(16), H(12)).epsilon() - 1) < 1e-12
    assert abs(ll.triple(M(1j, 1), M(1j, 1), M(1j, 1)).epsilon() - 1) < 1e-12
    assert abs(ll.triple(H(12), H(12), M(9.5j, 1)).epsilon() - 1) < 1e-12


def test_pole_raises():
    with pytest.raises(ll.PoleError):
        M(0, 0).local_L(0)


def test_place_mismatch():
    with pytest.raises(ValueError):
        ll.tensor(H(12), ll.LanglandsParam.unramified(2, 0, 0))


def test_special_representation_conductor_and_dual():
    sp = ll.LanglandsParam(7, [ll.NonArchFactor(0.5, 2)])
    assert sp.conductor() == 7
    assert ll.dual(ll.dual(sp)) == sp


def test_property_suite_small():
    res = langlands_suite(150, seed=7)
    assert res.passed, res.failures[:3]
