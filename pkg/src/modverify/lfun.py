"""Completed L-functions at level 1 and their values by a smoothed approximate functional equation.

Lambda(s) = gamma(s) L(s), gamma a product of zeta_R / zeta_C factors,
Lambda(s) = w Lambda(1 - s) with real coefficients (self-dual) and w = 1.

For a test function G with G(0) = 1,

    Lambda(s0) = sum b_n F(n; s0, G) + w sum b_n F(n; 1 - s0, G(-.)) - sum_rho r_rho G(rho - s0)/(rho - s0)

where F(n; s, G) = (1/2 pi i) int_(c) gamma(s+z) G(z) n^{-s-z} dz/z and r_rho are
the residues of Lambda at its poles.  G(z) = exp(z^2/A + i b z), with b tilted against
the exponential decay of gamma so that no cancellation occurs high on the critical line.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import mpmath
import numpy as np
from scipy.special import loggamma

from . import langlands as ll
from .arith import multiplicative_table, primes_upto

LOG2PI = math.log(2 * math.pi)
LOGPI = math.log(math.pi)
_GA = 16.0  # width of the Gaussian part of the test function


class CoefficientShortfall(RuntimeError):
    def __init__(self, need: int, have: int):
        super().__init__(f"AFE needs coefficients up to n={need}, only {have} available")
        self.need, self.have = need, have


def log_gamma_factor(shifts, s):
    """log prod zeta_kind(s + shift) for an array s."""
    s = np.asarray(s, dtype=complex)
    out = np.zeros_like(s)
    for kind, sh in shifts:
        z = s + sh
        if kind == "R":
            out += -0.5 * z * LOGPI + loggamma(0.5 * z)
        else:
            out += math.log(2) - z * LOG2PI + loggamma(z)
    return out


def gamma_factor_mp(shifts, s):
    out = mpmath.mpf(1)
    for kind, sh in shifts:
        z = mpmath.mpmathify(s) + mpmath.mpc(sh)
        out *= ll.zeta_R(z) if kind == "R" else ll.zeta_C(z)
    return out


def zeta_star(s):
    """zeta_R(s) zeta(s); poles at 0 and 1."""
    s = mpmath.mpmathify(s)
    if s == 0 or s == 1:
        raise ll.PoleError(s, "zeta*")
    if mpmath.re(s) < 0.5:
        # the trivial zeros cancel the Gamma poles; use the reflected value
        return zeta_star(1 - s)
    return ll.zeta_R(s) * mpmath.zeta(s)


def _complete_homogeneous(roots, emax):
    """h_e(roots) for e = 0..emax (coefficients of prod (1 - a X)^{-1})."""
    e = np.zeros(len(roots) + 1, dtype=complex)
    e[0] = 1
    for r in roots:
        e[1:] = e[1:] - r * e[:-1]
    h = [1.0 + 0j]
    for m in range(1, emax + 1):
        v = 0j
        for j in range(1, min(m, len(roots)) + 1):
            v -= e[j] * h[m - j]
        h.append(v)
    return h


@dataclass
class AFEResult:
    value: complex
    error_bound: float
    coeffs_used: int
    wall_time_ms: float
    completed: complex = 0j
    gamma: complex = 0j
    completed_error: float = 0.0

    def record(self, series_id: str, s0) -> dict:
        return {
            "series_id": series_id,
            "s0": [complex(s0).real, complex(s0).imag],
            "value": [self.value.real, self.value.imag],
            "error_bound": self.error_bound,
            "coeffs_used": self.coeffs_used,
            "wall_time_ms": self.wall_time_ms,
        }


@dataclass
class LSeries:
    """A completed L-function with Euler product given by local roots at each prime."""

    label: str
    gamma: list  # [(kind, shift)]
    local_roots: Callable[[int], list]  # p -> [alpha_i], L_p = prod (1 - alpha_i p^{-s})^{-1}
    degree: int
    nmax: int  # coefficients available for n <= nmax
    root_number: complex = 1.0
    theta: float = 0.0
    poles: dict = field(default_factory=dict)  # rho -> residue of Lambda (callable or number)
    _coeffs: np.ndarray | None = None

    def __post_init__(self):
        # level-1 rows supplied all have epsilon = +1; asserted, not computed
        if abs(self.root_number - 1) > 1e-12:
            raise ValueError("only root number +1 is implemented at level 1")

    def coeffs(self, n: int | None = None) -> np.ndarray:
        n = self.nmax if n is None else n
        if n > self.nmax:
            raise CoefficientShortfall(n, self.nmax)
        if self._coeffs is None or len(self._coeffs) <= n:
            def pp(p, e):
                return _complete_homogeneous(self.local_roots(p), e)[e]
            self._coeffs = multiplicative_table(self.nmax, pp)
        return self._coeffs[: n + 1]

    def euler_factor(self, p: int, s):
        out = 1.0
        for a in self.local_roots(p):
            out /= 1 - a * p ** (-complex(s))
        return out

    def euler_product(self, s, pmax: int | None = None) -> complex:
        pmax = self.nmax if pmax is None else pmax
        logv = 0j
        for p in primes_upto(pmax):
            for a in self.local_roots(p):
                logv -= np.log1p(-a * p ** (-complex(s)))
        return complex(np.exp(logv))

    def dirichlet_sum(self, s, n: int | None = None) -> complex:
        b = self.coeffs(n)
        idx = np.arange(1, len(b))
        return complex(np.sum(b[1:] * np.exp(-complex(s) * np.log(idx))))

    def gamma_value(self, s) -> complex:
        return complex(np.exp(log_gamma_factor(self.gamma, np.array([s]))[0]))

    def residue(self, rho):
        r = self.poles[rho]
        return complex(r() if callable(r) else r)

    def value(self, s0, eps: float = 1e-12) -> AFEResult:
        return afe_value(self, s0, eps)


def _line_weights(shifts, s, c, b, degree):
    """Nodes z_j = c + i u_j and weights gamma(s+z) G(z)/(2 pi z) h."""
    # distance from the line to the nearest singularity (z = 0 or a gamma pole)
    a = min([c] + [(complex(s) + sh).real + c for _, sh in shifts])
    a = max(a, 1e-3)
    h = 2 * math.pi * min(a, 1.0) / 48.0
    U = math.sqrt(50 * _GA) + 2 * abs(b) * _GA / 2
    u = np.arange(-U, U + h / 2, h)
    z = c + 1j * u
    logw = log_gamma_factor(shifts, s + z) + _log_G(z, b) - np.log(z)
    return z, logw, h


def _log_G(z, b):
    return z * z / _GA + 1j * b * z


def _decay_bound(shifts, s, c, b, n: np.ndarray) -> np.ndarray:
    """min over lines c' >= c of M(c') n^{-Re s - c'}, M the L1 norm of the kernel on the line."""
    out = np.full(n.shape, np.inf)
    logn = np.log(n)
    for cp in c + np.arange(0.0, 60.0, 0.5):
        U = math.sqrt(50 * _GA) + abs(b) * _GA
        u = np.linspace(-U, U, 1201)
        z = cp + 1j * u
        lw = (log_gamma_factor(shifts, s + z) + _log_G(z, b) - np.log(z)).real
        m = lw.max()
        logM = m + math.log(np.sum(np.exp(lw - m)) * (u[1] - u[0]) / (2 * math.pi))
        out = np.minimum(out, np.exp(np.minimum(logM - (complex(s).real + cp) * logn, 700.0)))
    return out


def _kernel(n: np.ndarray, s, z, logw, h):
    """F(n) for integer array n, plus the absolute-value majorant."""
    logn = np.log(n.astype(float))[:, None]
    expo = logw[None, :] - (s + z)[None, :] * logn
    vals = np.exp(expo)
    F = vals.sum(axis=1) * h / (2 * math.pi)
    A = np.abs(vals).sum(axis=1) * h / (2 * math.pi)
    return F, A


def afe_value(L: LSeries, s0, eps: float = 1e-12) -> AFEResult:
    t0 = time.perf_counter()
    s0 = complex(s0)
    for rho in L.poles:
        if abs(s0 - rho) < 1e-9:
            raise ll.PoleError(s0, L.label)
    d = L.degree
    th = L.theta
    c = max(1 + th + 0.5 - s0.real, 1 + th + 0.5 - (1 - s0.real), 0.75)
    for rho in L.poles:
        c = max(c, abs((rho - s0).real) + 0.5)
    b = -0.9 * (math.pi * d / 4) * math.tanh(s0.imag / 2)
    z1, w1, h1 = _line_weights(L.gamma, s0, c, b, d)
    s1 = 1 - s0
    z2, w2, h2 = _line_weights(L.gamma, s1, c, -b, d)
    # F(n) <= min_c' M(c') n^{-Re s - c'} over shifted lines; truncate where the tail is negligible
    grid = np.unique(np.geomspace(1, 1e8, 600).astype(np.int64)).astype(float)
    B = np.minimum(_decay_bound(L.gamma, s0, c, b, grid), _decay_bound(L.gamma, s1, c, -b, grid))
    dens = B * (np.log(grid + 1.0) ** (d - 1) + 1) * grid ** (1 + th)
    scale = abs(_decay_bound(L.gamma, s0, c, b, np.array([1.0]))[0])
    cut = np.nonzero((dens < eps * 1e-2 * scale) & (grid > 1))[0]
    nstar = int(grid[cut[0]]) if len(cut) else int(grid[-1])
    if nstar > L.nmax:
        raise CoefficientShortfall(nstar, L.nmax)
    bcoef = L.coeffs(nstar)
    n = np.arange(1, nstar + 1)
    F1, Ab1 = _kernel(n, s0, z1, w1, h1)
    F2, Ab2 = _kernel(n, s1, z2, w2, h2)
    bn = bcoef[1:]
    Lam = np.sum(bn * F1) + L.root_number * np.sum(np.conj(bn) * F2)
    for rho in L.poles:
        g = np.exp(_log_G(rho - s0, b))
        Lam -= L.residue(rho) * g / (rho - s0)
    majorant = float(np.sum(np.abs(bn) * (Ab1 + Ab2)))
    # a posteriori bound: rounding on the majorant plus the truncated tail estimate
    tail = float(dens[cut[0]]) if len(cut) else float("inf")
    err_lam = 64 * np.finfo(float).eps * majorant + tail
    gam = L.gamma_value(s0)
    if np.isfinite(abs(gam)):
        val = complex(Lam / gam)
        err = float(err_lam / abs(gam))
    else:
        val, err = 0j, 0.0  # a Gamma pole with finite completed value: trivial zero
    return AFEResult(val, err, nstar, (time.perf_counter() - t0) * 1e3, complex(Lam), gam, float(err_lam))


# --- builders --------------------------------------------------------------------------

def build_zeta(nmax: int = 10000) -> LSeries:
    L = LSeries("zeta", [("R", 0)], lambda p: [1.0], 1, nmax)
    L.poles = {1: 1.0, 0: -1.0}
    return L


def _form_param(f, p):
    sd, sdd = f.get_satake(p)
    return ll.LanglandsParam.unramified(p, sd, sdd)


def _arch_param(f):
    from .maass import MaassForm

    if isinstance(f, MaassForm):
        return ll.LanglandsParam.maass(1j * f.t, f.parity)
    return ll.LanglandsParam.holomorphic(f.weight)


def _theta(forms):
    from .maass import MaassForm

    return 7 / 64 if any(isinstance(f, MaassForm) for f in forms) else 0.0


def _label(f):
    return getattr(f, "label", "") or str(getattr(f, "weight", "?"))


def _nmax(forms):
    return min(f.precision - 1 for f in forms)


def build_adjoint(f) -> LSeries:
    arch = ll.adjoint(_arch_param(f))

    def roots(p):
        return ll.adjoint(_form_param(f, p)).local_roots()

    th = _theta([f])
    return LSeries(f"Ad({_label(f)})", arch.gamma_shifts(), roots, 3, _nmax([f]), theta=2 * th)


def build_rankin_selberg(f, g, adjoint_value: Callable[[], complex] | None = None) -> LSeries:
    """L(s, varrho_f (x) conj varrho_g); for f = g the residue at 1 is Lambda(1, Ad f)."""
    arch = ll.tensor(_arch_param(f), ll.dual(_arch_param(g)))

    def roots(p):
        return ll.tensor(_form_param(f, p), ll.dual(_form_param(g, p))).local_roots()

    L = LSeries(f"RS({_label(f)},{_label(g)})", arch.gamma_shifts(), roots, 4, _nmax([f, g]),
                theta=2 * _theta([f, g]))
    if f is g:
        if adjoint_value is None:
            ad = build_adjoint(f)
            cache = {}

            def adjoint_value():
                if "v" not in cache:
                    cache["v"] = ad.value(1.0).completed
                return cache["v"]
        L.poles = {1: adjoint_value, 0: lambda: -adjoint_value()}
    return L


TRIPLE_PATTERNS = ("holomorphic-balanced", "kk0", "maass")


def triple_pattern(f1, f2, f3) -> str:
    from .maass import MaassForm

    ks = [0 if isinstance(f, MaassForm) else f.weight for f in (f1, f2, f3)]
    if all(k == 0 for k in ks):
        return "maass"
    srt = sorted(ks, reverse=True)
    if srt[2] == 0 and srt[0] == srt[1]:
        return "kk0"
    if srt[2] > 0 and srt[0] == srt[1] + srt[2]:
        return "holomorphic-balanced"
    raise ValueError(f"unsupported weight pattern {tuple(ks)}")


def build_triple(f1, f2, f3) -> LSeries:
    triple_pattern(f1, f2, f3)
    arch = ll.triple(_arch_param(f1), _arch_param(f2), _arch_param(f3))
    eps = arch.epsilon(0.5)
    if abs(eps - 1) > 1e-12:
        raise ValueError(f"archimedean root number {eps} != 1")

    def roots(p):
        return ll.triple(_form_param(f1, p), _form_param(f2, p), _form_param(f3, p)).local_roots()

    th = _theta([f1, f2, f3])
    lbl = ",".join(_label(f) for f in (f1, f2, f3))
    return LSeries(f"Triple({lbl})", arch.gamma_shifts(), roots, 8, _nmax([f1, f2, f3]), theta=3 * th)
