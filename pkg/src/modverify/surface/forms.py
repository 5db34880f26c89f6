"""Pointwise evaluation of automorphic functions from their Fourier expansions."""
from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np

from .domain import PointH, reduce_many
from .special import KTable, kbessel

TWO_PI = 2 * math.pi
_Y_FLOOR = math.sqrt(3) / 2 - 1e-12


class CoefficientShortfall(RuntimeError):
    pass


@dataclass
class Evaluation:
    value: complex
    error: float


class AutomorphicFunction:
    """Base class.  weight is the signed weight (negative for conjugated holomorphic)."""

    weight: int = 0
    decay_rate: float = TWO_PI  # |F| <= C y^decay_power e^{-decay_rate y}
    decay_power: float = 0.0
    decay_onset: float = 0.0  # certificate holds for y >= decay_onset
    cuspidal: bool = True

    def values(self, x, y, eps: float = 1e-15):
        """Fourier sum at (x, y) without reduction; y should be >= sqrt(3)/2."""
        raise NotImplementedError

    def automorphy(self, c, d, x, y):
        """Factor F(z) / F(gz) for z -> gz with bottom row (c, d)."""
        if self.weight == 0:
            return 1.0
        j = c * (x + 1j * y) + d
        return (np.abs(j) / j) ** self.weight


def eval_many(F: AutomorphicFunction, x, y, eps: float = 1e-15):
    """F at arbitrary points: reduce, sum the expansion, undo the automorphy factor."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xr, yr, (a, b, c, d) = reduce_many(x, y)
    v = F.values(xr, yr, eps)
    return v * F.automorphy(c, d, x, y)


def eval_form(F: AutomorphicFunction, z: PointH, eps: float = 1e-15) -> Evaluation:
    v = eval_many(F, np.array([z.x]), np.array([z.y]), eps)[0]
    return Evaluation(complex(v), F.truncation_bound(eps) if hasattr(F, "truncation_bound") else eps)


def _nterms_holo(k: int, ymin: float, eps: float, cap: int) -> int:
    # |a_n| y^{k/2} e^{-2 pi n y} <= d(n) n^{(k-1)/2} y^{k/2} e^{-2 pi n y}
    n = 1
    while n < cap:
        logt = math.log(2 * math.sqrt(n) + 1) + (k - 1) / 2 * math.log(n) + k / 2 * math.log(max(ymin, 1e-300)) \
            - TWO_PI * n * ymin
        if n > (k - 1) / (4 * math.pi * ymin) and logt < math.log(eps) - 3:
            return n
        n += 1
    raise CoefficientShortfall(f"holomorphic expansion needs more than {cap} terms at y={ymin}")


class HoloUnitary(AutomorphicFunction):
    """y^{k/2} f(z), or its complex conjugate when conj=True."""

    def __init__(self, f, conj: bool = False):
        self.f = f
        self.k = f.weight
        self.conj = conj
        self.weight = -self.k if conj else self.k
        self.decay_rate = TWO_PI
        self.decay_power = self.k / 2
        self.label = ("conj " if conj else "") + (getattr(f, "label", "") or str(self.k))

    def values(self, x, y, eps: float = 1e-15):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        ymin = float(y.min()) if y.size else 1.0
        N = _nterms_holo(self.k, ymin, eps, self.f.precision - 1)
        lam = self.f.lam_array(N)
        n = np.arange(1, N + 1)
        out = np.zeros(x.shape, dtype=complex)
        ly = np.log(y)
        for j in n:
            if lam[j] == 0:
                continue
            amp = lam[j] * np.exp((self.k - 1) / 2 * math.log(j) + self.k / 2 * ly - TWO_PI * j * y)
            out += amp * np.exp(1j * TWO_PI * j * x)
        return np.conj(out) if self.conj else out


class MaassFunction(AutomorphicFunction):
    """sum_{n >= 1} c_n sqrt(y) K_{it}(2 pi n y) cos(2 pi n x) (sin for odd forms)."""

    def __init__(self, form, ymin: float = _Y_FLOOR, ymax: float = 12.0):
        self.form = form
        self.weight = 0
        self.decay_rate = TWO_PI
        self.decay_power = 0.0
        # K_{it}(2 pi y) only starts to decay once 2 pi y exceeds t
        self.decay_onset = (form.t + 2) / TWO_PI
        self.label = getattr(form, "label", "") or f"maass t={form.t:.6f}"
        self._table = None
        self._range = (ymin, ymax)

    def _nterms(self, ymin, eps):
        c = np.abs(np.asarray(self.form.coeffs))
        M = len(c) - 1
        for n in range(1, M + 1):
            # K_{it}(x) <= sqrt(pi/(2x)) e^{-x} once x > t; coefficients <= d(n) n^{7/64}
            x = TWO_PI * n * ymin
            if x > self.form.t + 4 and math.sqrt(math.pi / (2 * x)) * math.exp(-x) * (2 * math.sqrt(n) + 1) * n ** 0.11 < eps * 1e-3:
                return n
        return M

    def _kfun(self, x):
        lo, hi = self._range
        if self._table is None:
            nmax = len(self.form.coeffs) - 1
            self._table = KTable(1j * self.form.t, TWO_PI * lo, TWO_PI * nmax * hi)
        return self._table(x)

    def values(self, x, y, eps: float = 1e-15):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        if y.size and y.min() < self._range[0] * (1 - 1e-9):
            raise ValueError("MaassFunction.values expects reduced points")
        N = self._nterms(float(y.min()) if y.size else 1.0, eps)
        c = np.asarray(self.form.coeffs)
        out = np.zeros(x.shape)
        sy = np.sqrt(y)
        trig = np.sin if self.form.parity else np.cos
        for n in range(1, N + 1):
            arg = TWO_PI * n * y
            big = arg > self._range[1] * TWO_PI * N
            if big.any():
                kv = np.zeros_like(arg)
                ok = ~big
                kv[ok] = self._kfun(arg[ok])
                kv[big] = kbessel(1j * self.form.t, arg[big]).real
            else:
                kv = self._kfun(arg)
            out += c[n] * sy * kv * trig(TWO_PI * n * x)
        return out


class EisensteinClassical(AutomorphicFunction):
    """E(z, s) = sum over Gamma_inf \\ Gamma of Im(gz)^s, by its Fourier expansion."""

    cuspidal = False

    def __init__(self, s: complex, nmax: int = 200):
        self.s = complex(s)
        if abs(self.s - 1) < 1e-9:
            raise ValueError("pole of E(z, s) at s = 1")
        self.weight = 0
        self.decay_rate = 0.0
        self.decay_power = max(self.s.real, 1 - self.s.real)
        self.label = f"E(s={self.s})"
        with mpmath.workdps(30):
            s = mpmath.mpc(self.s)
            xi = lambda w: mpmath.pi ** (-w / 2) * mpmath.gamma(w / 2) * mpmath.zeta(w)
            self.phi = complex(xi(2 * s - 1) / xi(2 * s))
            self.c0 = complex(2 / xi(2 * s))
            self.coef = np.zeros(nmax + 1, dtype=complex)
            for n in range(1, nmax + 1):
                sig = sum(mpmath.mpf(d) ** (1 - 2 * s) for d in range(1, n + 1) if n % d == 0)
                self.coef[n] = complex(mpmath.mpf(n) ** (s - 0.5) * sig)
        self.nmax = nmax

    def values(self, x, y, eps: float = 1e-15):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        s = self.s
        out = np.exp(s * np.log(y)) + self.phi * np.exp((1 - s) * np.log(y))
        ymin = float(y.min()) if y.size else 1.0
        sy = np.sqrt(y)
        mu = s - 0.5
        for n in range(1, self.nmax + 1):
            arg = TWO_PI * n * y
            kv = kbessel(mu, arg)
            term = 2 * self.c0 * self.coef[n] * sy * kv * np.cos(TWO_PI * n * x)
            out = out + term
            bound = abs(self.c0 * self.coef[n]) * 2 * math.sqrt(ymin) * math.sqrt(math.pi / (2 * TWO_PI * n * ymin)) \
                * math.exp(-TWO_PI * n * ymin + abs(mu.imag) * math.pi / 2 * 0)
            if n > 3 and bound < eps * 1e-3:
                break
        else:
            raise CoefficientShortfall("Eisenstein expansion not converged")
        return out


class Product(AutomorphicFunction):
    """Pointwise product; weights add."""

    def __init__(self, *factors: AutomorphicFunction):
        self.factors = factors
        self.weight = sum(f.weight for f in factors)
        self.decay_rate = sum(f.decay_rate for f in factors)
        self.decay_power = sum(f.decay_power for f in factors)
        self.decay_onset = max(f.decay_onset for f in factors)
        self.label = "*".join(getattr(f, "label", "?") for f in factors)

    def values(self, x, y, eps: float = 1e-15):
        out = None
        for f in self.factors:
            v = f.values(x, y, eps)
            out = v if out is None else out * v
        return out
