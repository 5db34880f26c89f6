"""Level-1 Maass cusp forms by Hejhal's method.

phi(z) = sum_{n >= 1} c_n sqrt(y) K_{it}(2 pi n y) cs(2 pi n x), cs = cos (even) or sin (odd),
normalised by c_1 = 1.  Automorphy is imposed on a horocycle below the fundamental
domain: phi(z_m) = phi(z_m*) with z_m* the reduced point.  Eigenvalues are located by
requiring the solutions at two horocycle heights to agree.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lu_factor, lu_solve
from scipy.optimize import brentq

from .qexp import satake_params
from .surface.domain import reduce_many
from .surface.special import KTable, kbessel

TWO_PI = 2 * math.pi
REJECT = 1e-3


@dataclass
class MaassForm:
    t: float
    parity: int
    coeffs: np.ndarray  # c_0 = 0, c_1 = 1, ...
    certified_digits: int = 0
    diagnostics: dict = field(default_factory=dict)
    label: str = ""

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    @property
    def eigenvalue(self) -> float:
        return 0.25 + self.t ** 2

    def lam(self, n: int) -> float:
        return float(self.coeffs[n])

    def lam_array(self, nmax=None):
        return np.asarray(self.coeffs[: (nmax or len(self.coeffs) - 1) + 1], dtype=float)

    def get_satake(self, p: int):
        return maass_satake(self, p)[0]

    def hecke_residual(self, nmax: int = 30) -> float:
        """max |c_m c_n - sum_{d | (m,n)} c_{mn/d^2}| over m, n <= nmax with mn in range."""
        c = self.coeffs
        worst = 0.0
        for m in range(2, nmax + 1):
            for n in range(m, nmax + 1):
                if m * n >= len(c):
                    break
                g = math.gcd(m, n)
                rhs = sum(c[m * n // (d * d)] for d in range(1, g + 1) if g % d == 0)
                worst = max(worst, abs(c[m] * c[n] - rhs))
        return worst

    def to_json(self) -> str:
        return json.dumps({
            "t": repr(self.t),
            "parity": self.parity,
            "coeffs": [repr(float(x)) for x in self.coeffs],
            "certified_digits": self.certified_digits,
            "diagnostics": self.diagnostics,
            "label": self.label,
        })

    @classmethod
    def from_json(cls, text: str) -> "MaassForm":
        d = json.loads(text)
        return cls(float(d["t"]), int(d["parity"]), np.array([float(x) for x in d["coeffs"]]),
                   int(d.get("certified_digits", 0)), d.get("diagnostics", {}), d.get("label", ""))


def default_M0(t: float) -> int:
    return int(math.ceil((36 + t) / (TWO_PI * math.sqrt(3) / 2))) + 4


def _trig(parity):
    return np.sin if parity else np.cos


def hejhal_system(t: float, parity: int, M0: int, Y0: float, Q: int | None = None):
    """Matrix V (M0 x M0) with sum_l V[n, l] c_l = 0 for automorphic coefficient vectors."""
    if Q is None:
        Q = M0 + 12
    if Y0 >= math.sqrt(3) / 2:
        raise ValueError("anchor height must lie below the fundamental domain")
    x = (np.arange(1, Q + 1) - 0.5) / (2 * Q)
    xs, ys, _ = reduce_many(x, np.full(Q, Y0))
    cs = _trig(parity)
    ls = np.arange(1, M0 + 1)
    scale = math.exp(math.pi * t / 2)  # keeps K_{it} of order one for x < t
    arg = TWO_PI * np.outer(ys, ls)
    K = kbessel(1j * t, arg.ravel()).reshape(arg.shape).real * scale
    rows = np.sqrt(ys)[:, None] * K * cs(TWO_PI * np.outer(xs, ls))  # phi(z*_m) per coefficient
    proj = (2.0 / Q) * cs(TWO_PI * np.outer(ls, x))  # n x m
    V = proj @ rows
    diag = math.sqrt(Y0) * kbessel(1j * t, TWO_PI * ls * Y0).real * scale
    V[np.arange(M0), np.arange(M0)] -= diag
    return V


def solve_coefficients(t: float, parity: int, M0: int, Y0: float, Q: int | None = None):
    """Square solve with c_1 = 1 (the n = 1 equation is dropped); returns (c[0..M0], residual, rank).

    Dropping one equation keeps the solution a rational function of t, so the
    two-anchor difference changes sign cleanly at an eigenvalue.  The residual of
    the dropped equation is reported.
    """
    V = hejhal_system(t, parity, M0, Y0, Q)
    V = V / np.maximum(np.abs(V).max(axis=1, keepdims=True), 1e-300)
    A = V[1:, 1:]
    rhs = -V[1:, 0]
    colscale = np.maximum(np.abs(A).max(axis=0), 1e-300)
    As = A / colscale
    sol = lu_solve(lu_factor(As), rhs) / colscale
    c = np.zeros(M0 + 1)
    c[1] = 1.0
    c[2:] = sol
    resid = float(abs(V[0] @ c[1:]))
    rank = int(np.linalg.matrix_rank(As))
    return c, resid, rank


def _anchors(t: float, M0: int):
    # heights where the truncation at M0 is accurate yet below the domain
    y1 = min(0.84, (30 + t) / (TWO_PI * M0))
    return y1, 0.9 * y1


def consistency(t: float, parity: int, M0: int | None = None, anchors=None, which: int = 2) -> float:
    M0 = M0 or default_M0(t)
    Y1, Y2 = anchors or _anchors(t, M0)
    c1, _, _ = solve_coefficients(t, parity, M0, Y1)
    c2, _, _ = solve_coefficients(t, parity, M0, Y2)
    return float(c1[which] - c2[which])


def scan(a: float, b: float, parity: int, step: float = 0.02, M0: int | None = None, tol: float = 1e-10):
    """Roots of the two-anchor consistency function in [a, b] (poles rejected)."""
    M0 = M0 or default_M0(b)
    ts = np.arange(a, b + step / 2, step)
    anchors = _anchors(b, M0)
    vals = np.array([consistency(t, parity, M0, anchors) for t in ts])
    out = []
    for i in range(len(ts) - 1):
        f0, f1 = vals[i], vals[i + 1]
        if not (np.isfinite(f0) and np.isfinite(f1)) or f0 * f1 > 0:
            continue
        r = brentq(lambda t: consistency(t, parity, M0, anchors), ts[i], ts[i + 1], xtol=tol, rtol=1e-15)
        # a pole of the consistency function also changes sign; a genuine eigenvalue
        # survives a change of truncation, a pole moves away
        lo, hi = (consistency(r + d, parity, M0 + 6) for d in (-1e-3, 1e-3))
        if lo * hi < 0 and max(abs(lo), abs(hi)) < 2.0:
            out.append(r)
    return out


def solve(t_interval, parity: int, M0: int | None = None, y_anchor: float | None = None,
          eps: float = 1e-8, step: float = 0.02) -> list[MaassForm]:
    a, b = t_interval
    M0 = M0 or default_M0(b)
    forms = []
    for t in scan(a, b, parity, step, M0):
        Y1 = y_anchor or _anchors(t, M0)[0]
        c, res, rank = solve_coefficients(t, parity, M0, Y1)
        # certification: a different truncation and anchor
        M1 = M0 + 6
        t2 = brentq(lambda s: consistency(s, parity, M1), t - 1e-3, t + 1e-3, xtol=1e-12, rtol=1e-15)
        c2, _, _ = solve_coefficients(t2, parity, M1, _anchors(t2, M1)[1])
        usable = min(M0 - 8, 30)
        diff = float(np.max(np.abs(c[1:usable + 1] - c2[1:usable + 1])))
        if diff > REJECT:
            continue  # the two truncations disagree: not an eigenvalue
        digits = int(math.floor(-math.log10(max(diff, 1e-16))))
        f = MaassForm(t, parity, c[: usable + 1], digits,
                      {"M0": M0, "Y0": Y1, "residual": res, "rank": int(rank), "t_alt": t2,
                       "t_shift": abs(t2 - t), "coeff_diff": diff}, f"{'odd' if parity else 'even'} t={t:.8f}")
        if diff > eps:
            f.diagnostics["warning"] = "certification tolerance not met"
        forms.append(f)
    return forms


def evaluate(form: MaassForm, x, y, coeffs=None):
    """phi at reduced points (vectorised)."""
    c = form.coeffs if coeffs is None else coeffs
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    out = np.zeros_like(x)
    cs = _trig(form.parity)
    for n in range(1, len(c)):
        out += c[n] * np.sqrt(y) * kbessel(1j * form.t, TWO_PI * n * y).real * cs(TWO_PI * n * x)
    return out


def extend_coefficients(form: MaassForm, nmax: int, M0: int | None = None) -> MaassForm:
    """Coefficients up to nmax by Fourier analysis of phi on low horocycles.

    phi at a low point equals phi at its reduced point, which the short expansion
    evaluates accurately; each c_n is taken from the height where K_{it}(2 pi n y)
    is comfortably away from its oscillatory zeros.
    """
    t = form.t
    M0 = M0 or default_M0(t)
    base, _, _ = solve_coefficients(t, form.parity, M0, _anchors(t, M0)[0])
    cs = _trig(form.parity)
    kmax = 700.0  # beyond this K_{it}(x) e^{pi t/2} underflows
    table = KTable(1j * t, TWO_PI * math.sqrt(3) / 2 * 0.999, kmax)
    scale = math.exp(math.pi * t / 2)
    out = np.zeros(nmax + 1)
    best = np.zeros(nmax + 1)
    out[: len(form.coeffs)] = form.coeffs
    best[: len(form.coeffs)] = np.inf
    n_all = np.arange(1, nmax + 1)
    band = max(len(form.coeffs) - 1, 2)
    while band < nmax:
        hi = min(nmax, int(band * 1.6) + 1)
        Y = (t + 2.0) / (TWO_PI * hi)
        Q = 2 * hi + 16
        x = (np.arange(1, Q + 1) - 0.5) / (2 * Q)
        xs, ys, _ = reduce_many(x, np.full(Q, Y))
        phi = np.zeros(Q)
        for l in range(1, M0 + 1):
            arg = TWO_PI * l * ys
            kv = np.zeros(Q)
            ok = arg < kmax
            kv[ok] = table(arg[ok])
            phi += base[l] * np.sqrt(ys) * kv * scale * cs(TWO_PI * l * xs)
        ns = n_all[band - 1: hi]
        a = (2.0 / Q) * cs(TWO_PI * np.outer(ns, x)) @ phi
        k = math.sqrt(Y) * kbessel(1j * t, TWO_PI * ns * Y).real * scale
        # envelope-relative size of K decides which height is trusted for each n
        w = np.abs(k)
        better = w > best[ns]
        out[ns[better]] = a[better] / k[better]
        best[ns[better]] = w[better]
        band = hi
    return MaassForm(t, form.parity, out, form.certified_digits,
                     dict(form.diagnostics, extended_to=nmax), form.label)


def maass_satake(form: MaassForm, p: int):
    """Satake pair and branch flag from c_p (unitary normalisation)."""
    return satake_params(form.coeffs[p], p)
