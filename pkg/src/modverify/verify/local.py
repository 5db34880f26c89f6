"""Local zeta integrals of the triple product: unramified sum and archimedean evaluations."""
from __future__ import annotations

import itertools
import math
import time

import mpmath
import numpy as np
from scipy.integrate import quad
from scipy.special import kv

from .. import langlands as ll
from ..surface.special import kbessel, whittaker_w
from .report import IdentityReport

TOL_UNRAMIFIED = 1e-8
TOL_IKEDA = 1e-6
TOL_GK = 1e-10
TOL_KK0 = 1e-6


def _ms(t0):
    return (time.perf_counter() - t0) * 1e3


# --- unramified -----------------------------------------------------------------------

def _sinh_ratio(x: complex, m: np.ndarray) -> np.ndarray:
    """(p^{m s} - p^{-m s}) / (p^{s} - p^{-s}) with x = s log p; limit m at x = 0."""
    if abs(x) < 1e-8:
        return m.astype(complex)
    return (np.exp(m * x) - np.exp(-m * x)) / (np.exp(x) - np.exp(-x))


def local_zeta_sum(p: int, s: float, satake, K: int):
    """Truncated sum of S(k, k2, k3, l) over 0 <= k < K and -k/2 <= k_j < K.

    satake holds three pairs (s_dot, s_ddot) with s_ddot = -s_dot.
    """
    lp = math.log(p)
    k = np.arange(K)[:, None, None]
    k2 = np.arange(-(K // 2), K)[None, :, None]
    k3 = np.arange(-(K // 2), K)[None, None, :]
    ok = (2 * k2 >= -k) & (2 * k3 >= -k)
    l = np.minimum(np.minimum(k, k + 2 * k2), k + 2 * k3)
    P = lambda z: np.exp(z * lp)
    pre = (1 - P(-2 * s - 2)) / (1 - P(2 * s + 1))
    x = [complex(sd[0]) * lp for sd in satake]
    for sd in satake:
        if abs(complex(sd[0]) + complex(sd[1])) > 1e-12:
            raise ValueError("each Satake pair must have s_dot + s_ddot = 0")
    # with s_ddot = -s_dot: p^{(k+kj+1) sd - kj sdd} - p^{(k+kj+1) sdd - kj sd} = p^{m sd} - p^{-m sd}
    f1 = _sinh_ratio(x[0], k + 1)
    f2 = _sinh_ratio(x[1], k + 2 * k2 + 1)
    f3 = _sinh_ratio(x[2], k + 2 * k3 + 1)
    term = pre * P(-(3 * k + 2 * k2 + 2 * k3) * (s + 0.5)) * (1 - P((l + 1) * (2 * s + 1))) * f1 * f2 * f3
    return complex(np.sum(np.where(ok, term, 0)))


def local_zeta_closed_form(p: int, s: float, satake):
    params = [ll.LanglandsParam.unramified(p, sd[0], sd[1]) for sd in satake]
    L = ll.triple(*params).local_L(s + 0.5)
    return complex(L / (ll.zeta_p(2 * s + 2, p) * ll.zeta_p(4 * s + 2, p)))


def _truncation(p: int, s: float, satake, eps: float) -> int:
    # terms decay like p^{-(s+1/2 - 3 max Re s_j) n / 2} along the slowest direction, times a cubic
    sig = max(abs(complex(sd[0]).real) for sd in satake)
    rate = (s + 0.5 - 3 * sig) * math.log(p) / 2
    if rate <= 0:
        raise ValueError("triple sum diverges for these parameters")
    K = 8
    while K ** 3 * math.exp(-rate * K) > eps * 1e-4:
        K += 4
    return K


def check_local_zeta_unramified(p: int, s: float, satake1, satake2, satake3,
                                eps: float = 1e-12) -> IdentityReport:
    t0 = time.perf_counter()
    sat = [tuple(complex(x) for x in sd) for sd in (satake1, satake2, satake3)]
    inputs = {"p": p, "s": s, "satake": [[sd[0].real, sd[0].imag] for sd in sat]}
    if abs(sum(a + b for a, b in sat)) > 1e-12:
        return IdentityReport("localzeta", math.nan, 0, math.nan, 0, TOL_UNRAMIFIED, inputs, _ms(t0),
                              rejected="central characters do not multiply to 1")
    try:
        K = _truncation(p, s, sat, eps)
    except ValueError as exc:
        return IdentityReport("localzeta", math.nan, 0, math.nan, 0, TOL_UNRAMIFIED, inputs, _ms(t0),
                              rejected=str(exc))
    lhs = local_zeta_sum(p, s, sat, K)
    lhs_short = local_zeta_sum(p, s, sat, K - 4)
    rhs = local_zeta_closed_form(p, s, sat)
    err = abs(lhs - lhs_short) + 64 * np.finfo(float).eps * abs(lhs) * K
    return IdentityReport("localzeta", lhs, err, rhs, 1e-15 * abs(rhs), TOL_UNRAMIFIED, inputs, _ms(t0),
                          diagnostics={"K": K})


def random_tempered_satake(rng: np.random.Generator, p: int):
    th = rng.uniform(0, math.pi)
    sd = complex(0, th / math.log(p))
    return (sd, -sd)


# --- archimedean: all Maass (Ikeda) ---------------------------------------------------------

def ikeda_closed_form(s, s1, s2, s3):
    out = mpmath.mpf(1)
    for e in itertools.product((1, -1), repeat=3):
        out *= ll.zeta_R(s + 0.5 + e[0] * s1 + e[1] * s2 + e[2] * s3)
    return complex(out / (ll.zeta_R(2 * s + 2) * ll.zeta_R(4 * s + 2)))


def ikeda_gamma_form(s, s1, s2, s3):
    """pi^{-s} / (Gamma(s+1) Gamma(2s+1)) prod Gamma(s/2 + 1/4 +- s1/2 +- s2/2 +- s3/2)."""
    with mpmath.workdps(30):
        out = mpmath.pi ** (-s) / (mpmath.gamma(s + 1) * mpmath.gamma(2 * s + 1))
        for e in itertools.product((1, -1), repeat=3):
            out *= mpmath.gamma(mpmath.mpf(s) / 2 + 0.25 + (e[0] * s1 + e[1] * s2 + e[2] * s3) / 2)
        return complex(out)


def ikeda_integral(s: float, sj, h: float = 0.15, ymax: float = 8.0) -> tuple[complex, float]:
    """(2^5 pi^{s+1} / Gamma(s+1)) int y^{-s-1/2} K_{s+1/2}(2 pi y) prod y_j^{s+1/2} K_{s_j}(2 pi y_j) d*y_j.

    Trapezoid in log y_j (spectrally accurate for this analytic, doubly decaying
    integrand); returns the value and the difference against step 4h/3.
    """
    def run(step):
        a = s + 0.5 - max(abs(complex(x).real) for x in sj)
        if a <= 0:
            raise ValueError("outside the convergence region")
        xs = np.arange(-38.0 / a, math.log(ymax), step)
        y = np.exp(xs)
        f = [y ** (s + 0.5) * kbessel(complex(x), 2 * math.pi * y) for x in sj]
        Y23 = y[:, None] + y[None, :]
        F23 = f[1][:, None] * f[2][None, :]
        tot = 0.0
        for i, y1 in enumerate(y):
            Y = y1 + Y23
            tot += f[0][i] * np.sum(Y ** (-s - 0.5) * kv(s + 0.5, 2 * math.pi * Y) * F23)
        return complex(2 ** 5 * math.pi ** (s + 1) / math.gamma(s + 1) * tot * step ** 3)

    v = run(h)
    v2 = run(h * 4 / 3)
    return v, abs(v - v2)


def check_ikeda_arch(s: float, s1, s2, s3, eps: float = 1e-10) -> IdentityReport:
    t0 = time.perf_counter()
    sj = [complex(x) for x in (s1, s2, s3)]
    inputs = {"s": s, "s_j": [[x.real, x.imag] for x in sj]}
    try:
        lhs, err = ikeda_integral(s, sj)
    except ValueError as exc:
        return IdentityReport("ikeda", math.nan, 0, math.nan, 0, TOL_IKEDA, inputs, _ms(t0), rejected=str(exc))
    rhs = ikeda_closed_form(s, *sj)
    gam = ikeda_gamma_form(s, *sj)
    return IdentityReport("ikeda", lhs, err, rhs, 1e-14 * abs(rhs), TOL_IKEDA, inputs, _ms(t0),
                          diagnostics={"gamma_form": gam, "gamma_vs_zeta": abs(gam / rhs - 1)})


# --- archimedean: holomorphic (Gross-Kudla) ------------------------------------------------

def _holo_triple(k1, k2, k3):
    return ll.triple(*(ll.LanglandsParam.holomorphic(k) for k in (k1, k2, k3)))


def gk_gamma_expression(k1, k2, k3, s):
    """Value of the zeta integral after the y_j and t integrations (Beta integral in closed form)."""
    k = k1
    with mpmath.workdps(40):
        s = mpmath.mpf(s)
        g = mpmath.gamma
        return (mpmath.factorial(k) * g(s + k1) * g(s + k2) * g(s + k3)
                / (2 ** (4 * s + 4 * k - 2) * mpmath.pi ** (s + 2 * k - 2) * g(s + 1) * g(s + k + 1))
                * g(s + 1) * g(s + k - 1) / g(2 * s + k))


def gk_closed_form(k1, k2, k3, s, pochhammer_length: int | None = None):
    """2^{-2k-2} k! / ((s+k)(2s+1)_m) * L_inf(s+1/2) / (zeta_R(2s+2) zeta_R(4s+2)).

    The printed evaluation has m = k; the Gamma chain gives m = k - 1, which is
    also what the printed central value at s = 0 requires.
    """
    k = k1
    m = k - 1 if pochhammer_length is None else pochhammer_length
    with mpmath.workdps(40):
        s = mpmath.mpf(s)
        L = _holo_triple(k1, k2, k3).local_L(s + 0.5)
        return (2 ** (-2 * k - 2) * mpmath.factorial(k) / ((s + k) * mpmath.rf(2 * s + 1, m))
                * L / (ll.zeta_R(2 * s + 2) * ll.zeta_R(4 * s + 2)))


def gk_central_value(k1, k2, k3):
    with mpmath.workdps(40):
        return 2 ** (-2 * k1 - 2) / ll.zeta_R(2) ** 2 * _holo_triple(k1, k2, k3).local_L(0.5)


def gk_beta_integral(k, s):
    """int_0^inf t^s (1+t)^{-2s-k} dt numerically, and Gamma(s+1)Gamma(s+k-1)/Gamma(2s+k)."""
    f = lambda u: math.exp(s * math.log(u) - (2 * s + k) * math.log1p(u))
    a, e1 = quad(f, 0, 1, epsabs=0, epsrel=1e-13, limit=200)
    b, e2 = quad(f, 1, math.inf, epsabs=0, epsrel=1e-13, limit=200)
    exact = math.exp(math.lgamma(s + 1) + math.lgamma(s + k - 1) - math.lgamma(2 * s + k))
    return a + b, e1 + e2, exact


def check_gross_kudla_arch(k1, k2, k3, s, eps: float = 1e-12, printed: bool = False) -> list[IdentityReport]:
    """Reports: Gamma chain vs closed form; Beta integral; central value at s = 0.

    printed=True compares against the evaluation exactly as printed, (2s+1)_k.
    """
    t0 = time.perf_counter()
    k1, k2, k3 = sorted((abs(k1), abs(k2), abs(k3)), reverse=True)
    inputs = {"weights": [k1, k2, k3], "s": s}
    if k1 != k2 + k3 or k3 < 2:
        return [IdentityReport("grosskudla", math.nan, 0, math.nan, 0, TOL_GK, inputs, _ms(t0),
                               rejected="weights must satisfy |k1| = |k2| + |k3| with all >= 2")]
    lhs = complex(gk_gamma_expression(k1, k2, k3, s))
    rhs = complex(gk_closed_form(k1, k2, k3, s, k1 if printed else None))
    out = [IdentityReport("grosskudla" + ("-printed" if printed else ""), lhs, 1e-30 * abs(lhs), rhs,
                          1e-30 * abs(rhs), TOL_GK, inputs, _ms(t0),
                          diagnostics={"ratio": lhs / rhs})]
    num, err, exact = gk_beta_integral(k1, s)
    out.append(IdentityReport("grosskudla-beta", num, err, exact, 1e-15 * exact, TOL_GK,
                              {"k": k1, "s": s}, _ms(t0)))
    if s == 0:
        cv = complex(gk_central_value(k1, k2, k3))
        out.append(IdentityReport("grosskudla-central", lhs, 1e-30 * abs(lhs), cv, 1e-30 * abs(cv), TOL_GK,
                                  inputs, _ms(t0)))
    return out


# --- archimedean: (k, k, 0) ------------------------------------------------------------------

def kk0_integral(k: int, s3, dps: int = 20, h: float = 0.1):
    """Gamma(k)^2 int_0^inf u^{k/2-1} w_{-k/2,(1-k)/2}(u) w_{0,s3}(u) d*u by trapezoid in log u.

    Returns (value, refinement difference).
    """
    s3 = complex(s3)
    a = 0.5 - abs(s3.real)
    if a < 0.05:
        raise ValueError("|Re s3| must stay below 0.45 for the log-grid quadrature")

    def run(step):
        xs = np.arange(-37.0 / a, math.log(120.0), step)
        u = np.exp(xs)
        w1 = np.array([complex(whittaker_w(-k / 2, (1 - k) / 2, ui, dps=dps)) for ui in u])
        w2 = np.sqrt(u / math.pi) * kbessel(s3, u / 2)
        return complex(math.gamma(k) ** 2 * step * np.sum(u ** (k / 2 - 1) * w1 * w2))

    v = run(h)
    v2 = run(h * 1.5)
    return v, abs(v - v2)


def kk0_final_line(k: int, s3):
    """2^{-4k+2} pi^{-2k+2} Gamma(k-1/2+s3) Gamma(k-1/2-s3) Gamma(1/2+s3) Gamma(1/2-s3), without the prefactor."""
    g = mpmath.gamma
    with mpmath.workdps(30):
        s3 = mpmath.mpmathify(s3)
        return complex(g(k - 0.5 + s3) * g(k - 0.5 - s3) * g(0.5 + s3) * g(0.5 - s3))


def kk0_central_value(k: int, s3):
    """2^{-2k-2} / zeta_R(2)^2 L_inf(1/2) for the (k, k, 0) row, divided by 2^{-4k+2} pi^{-2k+2}."""
    with mpmath.workdps(30):
        maass = ll.LanglandsParam.maass(s3, 0)
        hol = ll.LanglandsParam.holomorphic(k)
        L = ll.triple(hol, hol, maass).local_L(0.5)
        return complex(2 ** (-2 * k - 2) / ll.zeta_R(2) ** 2 * L / (2 ** (-4 * k + 2) * mpmath.pi ** (-2 * k + 2)))


def check_kk0_arch(k: int, s3, eps: float = 1e-10) -> list[IdentityReport]:
    t0 = time.perf_counter()
    s3 = complex(s3)
    inputs = {"k": k, "s3": [s3.real, s3.imag]}
    try:
        lhs, err = kk0_integral(k, s3)
    except ValueError as exc:
        return [IdentityReport("kk0", math.nan, 0, math.nan, 0, TOL_KK0, inputs, _ms(t0), rejected=str(exc))]
    rhs = kk0_final_line(k, s3)
    out = [IdentityReport("kk0", lhs, err, rhs, 1e-14 * abs(rhs), TOL_KK0, inputs, _ms(t0))]
    cv = kk0_central_value(k, s3)
    out.append(IdentityReport("kk0-central", rhs, 1e-14 * abs(rhs), cv, 1e-14 * abs(cv), 1e-10, inputs, _ms(t0)))
    return out


# --- boundary consistency -------------------------------------------------------------------

def check_boundary(s: float = 0.3, k: int = 12) -> list[IdentityReport]:
    """Parameter overlaps between the three archimedean rows, at the level of L_inf.

    (a) all-Maass row at s_j = -1/2 against the holomorphic row at k_j = 0;
    (b) (k,k,0) row at s_3 = -1/2 against the holomorphic row at (k, k, 0).
    The scalar prefactors are recorded as diagnostics.
    """
    t0 = time.perf_counter()
    with mpmath.workdps(30):
        # zeta_C(s + |k_1| - 3/2) zeta_C(s + |k_2| - 1/2) zeta_C(s + |k_3| - 1/2) zeta_C(s + 1/2)
        def holo_row(w, z):
            return (ll.zeta_C(z + w[0] - 1.5) * ll.zeta_C(z + w[1] - 0.5) * ll.zeta_C(z + w[2] - 0.5)
                    * ll.zeta_C(z + 0.5))

        a_lhs = complex(mpmath.mpf(1))
        for e in itertools.product((1, -1), repeat=3):
            a_lhs *= complex(ll.zeta_R(s + 0.5 - 0.5 * sum(e)))
        a_rhs = complex(holo_row((0, 0, 0), s + 0.5))
        hol = ll.LanglandsParam.holomorphic(k)
        b_lhs = complex(ll.triple(hol, hol, ll.LanglandsParam.maass(-0.5, 0)).local_L(s + 0.5))
        b_rhs = complex(holo_row((k, k, 0), s + 0.5))
    prefactor_ratio = 1 / (4 * s)  # 2^{-2} k!/((s+k)(2s+1)_{k-1}) at k = 0 against Ikeda's 1
    return [
        IdentityReport("boundary-maass-holo", a_lhs, 1e-14 * abs(a_lhs), a_rhs, 1e-14 * abs(a_rhs), 1e-12,
                       {"s": s}, _ms(t0), diagnostics={"prefactor_ratio": prefactor_ratio}),
        IdentityReport("boundary-kk0-holo", b_lhs, 1e-14 * abs(b_lhs), b_rhs, 1e-14 * abs(b_rhs), 1e-12,
                       {"s": s, "k": k}, _ms(t0)),
    ]
