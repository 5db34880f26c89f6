import math

import mpmath
import numpy as np
import pytest

from modverify.qexp import cusp_eigenforms
from modverify.surface.domain import PointH, in_domain, random_word, reduce, reduce_many
from modverify.surface.forms import HoloUnitary, MaassFunction, eval_many
from modverify.surface.quadrature import VOLUME, cutoff_height, integrate_fd, petersson_norm, volume
from modverify.surface.special import KTable, kbessel, kbessel_mp, whittaker_w
from modverify.surface.unfold import unfolded_eisenstein


def test_reduce_lands_in_domain():
    rng = np.random.default_rng(3)
    for _ in range(200):
        p = PointH(rng.uniform(-5, 5), 10 ** rng.uniform(-3, 0.5))
        q, g = reduce(p)
        assert in_domain(q)
        w = p.act(g)
        assert abs(w.x - q.x) < 1e-9 and abs(w.y - q.y) < 1e-9 * max(1, q.y)


def test_reduce_many_matches_scalar():
    rng = np.random.default_rng(4)
    x = rng.uniform(-3, 3, 50)
    y = 10 ** rng.uniform(-2, 0, 50)
    xr, yr, _ = reduce_many(x, y)
    for i in range(50):
        q, _ = reduce(PointH(x[i], y[i]))
        assert abs(q.x - xr[i]) < 1e-9 and abs(q.y - yr[i]) < 1e-9


def test_random_word_is_in_sl2z():
    g = random_word(np.random.default_rng(0), 30)
    (a, b), (c, d) = g
    assert a * d - b * c == 1


@pytest.mark.parametrize("mu,x", [(3.5j, 0.7), (13.78j, 5.0), (0.3, 2.0), (9.5j, 40.0), (0.2 + 0.5j, 1.3)])
def test_kbessel_against_mpmath(mu, x):
    with mpmath.workdps(30):
        ref = complex(kbessel_mp(mu, x))
    got = complex(kbessel(mu, x))
    assert abs(got - ref) <= 1e-12 * max(abs(ref), math.exp(-math.pi * abs(complex(mu).imag) / 2))


def test_ktable_matches_direct():
    T = KTable(13.78j, 5.0, 400.0)
    x = np.geomspace(5.0, 400.0, 37)
    scale = math.exp(math.pi * 13.78 / 2)
    assert np.max(np.abs(T(x) - kbessel(13.78j, x)) * scale) < 1e-12


def test_whittaker_rows():
    # kappa = 0 row and the elementary row kappa = mu + 1/2
    y = 2.3
    assert abs(whittaker_w(0, 0.4, y) - mpmath.sqrt(y / mpmath.pi) * mpmath.besselk(0.4, y / 2)) < 1e-14
    assert abs(whittaker_w(-3, -3.5, y) - y ** -3 * mpmath.exp(-y / 2)) < 1e-14
    ref = mpmath.whitw(-2, -1.5 + 0.5, y)  # mpmath's W_{k,m}
    assert abs(whittaker_w(-2, -1.0, y) - ref) < 1e-12 * abs(ref)


def test_volume():
    r = volume()
    assert abs(r.value - VOLUME) < 1e-13 and r.error < 1e-10


def test_cutoff_respects_onset():
    assert cutoff_height(1e-12, 2 * math.pi, 0.0, onset=3.0) > cutoff_height(1e-12, 2 * math.pi, 0.0)


def test_non_decaying_integrand_needs_tail():
    r = integrate_fd(lambda x, y: np.ones_like(x), Y=3.0, rate=0.0)
    assert math.isinf(r.error)


def test_holomorphic_form_is_invariant(delta):
    F = HoloUnitary(delta)
    rng = np.random.default_rng(1)
    x = rng.uniform(-0.5, 0.5, 20)
    y = rng.uniform(0.9, 1.5, 20)
    v = np.abs(eval_many(F, x, y))
    g = random_word(rng, 12)
    (a, b), (c, d) = g
    z = (a * (x + 1j * y) + b) / (c * (x + 1j * y) + d)
    w = np.abs(eval_many(F, z.real, z.imag))
    assert np.max(np.abs(v - w)) < 1e-12 * np.max(v)


def test_maass_expansion_is_s_invariant(first_even, first_odd):
    # points just outside the unit circle whose S-images also sit above the floor
    x = np.array([0.3, 0.2, -0.25, 0.1])
    y = np.sqrt(1.012 - x * x)
    w = -1 / (x + 1j * y)
    for form in (first_even, first_odd):
        F = MaassFunction(form)
        a = F.values(x, y, 1e-12)
        b = F.values(w.real, w.imag, 1e-12)
        assert np.max(np.abs(a - b)) < 1e-7 * np.max(np.abs(a))


def test_petersson_norm_scales_with_weight_of_form(delta):
    r = petersson_norm(delta, 1e-12)
    assert r.error < 1e-10 * r.value
    assert 1.0e-6 < r.value < 1.1e-6


def test_unfolding_oracle_converges(delta):
    big = cusp_eigenforms(12, 20001)[0]
    lam = big.lam_array(20000)
    r = unfolded_eisenstein(lam, 12, 3.0)
    assert r.error < 1e-9 * abs(r.value)
    with pytest.raises(ValueError):
        unfolded_eisenstein(lam, 12, 1.0)
