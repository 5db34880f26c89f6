"""K-Bessel and Whittaker functions.

The bulk evaluator integrates K_nu(x) = 1/2 int exp(-x cosh u + nu u) du along
a horizontal line Im u = alpha chosen to sit near the saddle point, with the
trapezoid rule (exponentially convergent for analytic integrands).  mpmath is
used for scalar reference values.
"""
from __future__ import annotations

import math

import mpmath
import numpy as np

MAX_IMAG_ORDER = 60.0
_LOG_EPS = 38.0  # about 1e-16.5 target per evaluation
_STRIP_EXCESS = 6.0


def _choose_alpha(x: np.ndarray, t: float) -> np.ndarray:
    """Contour height minimising node count with bounded cancellation."""
    # reference log-magnitude of the result
    sin_star = np.minimum(t / x, 1.0)
    a_star = np.arcsin(sin_star)
    ref = -x * np.cos(a_star) - t * a_star
    # smallest alpha in [0, a_star] with excess(alpha) <= 2; excess decreases in alpha
    lo = np.zeros_like(x)
    hi = a_star.copy()
    ok0 = (-x - ref) <= 2.0
    for _ in range(50):
        mid = 0.5 * (lo + hi)
        exc = -x * np.cos(mid) - t * mid - ref
        good = exc <= 2.0
        hi = np.where(good, mid, hi)
        lo = np.where(good, lo, mid)
    alpha = np.where(ok0, 0.0, hi)
    return np.minimum(alpha, 0.5 * math.pi - 1e-3)


def _kbessel_core(nu: complex, x: np.ndarray, scaled: bool) -> np.ndarray:
    nu = complex(nu)
    if nu.imag < 0:
        nu = -nu
    sigma, t = nu.real, nu.imag
    alpha = _choose_alpha(x, t)
    # strip half-width: inside |Im u| < pi/2 with bounded growth on both edges
    sin_star = np.minimum(t / x, 1.0)
    a_star = np.arcsin(sin_star)
    ref = -x * np.cos(a_star) - t * a_star
    lo = np.zeros_like(x)
    hi = np.minimum(0.95 * (0.5 * math.pi - alpha), 1.0)
    for _ in range(40):
        mid = 0.5 * (lo + hi)
        e1 = -x * np.cos(alpha - mid) - t * (alpha - mid) - ref
        e2 = -x * np.cos(alpha + mid) - t * (alpha + mid) - ref
        good = np.maximum(e1, e2) <= _STRIP_EXCESS
        lo = np.where(good, mid, lo)
        hi = np.where(good, hi, mid)
    d = lo
    h = 2.0 * math.pi * d / (_LOG_EPS + _STRIP_EXCESS + 4.0)
    ca = np.cos(alpha)
    V = np.full_like(x, 2.0)
    for _ in range(4):
        V = np.arccosh(1.0 + (_LOG_EPS + 4.0 + abs(sigma) * V) / (x * ca))
    n_half = np.ceil(V / h).astype(np.int64) + 1
    out = np.empty(x.shape, dtype=complex)
    # group by node count so the 2D grid stays tight
    buckets = np.ceil(np.log2(n_half)).astype(int)
    for b in np.unique(buckets):
        idx = np.nonzero(buckets == b)[0]
        nmax = int(n_half[idx].max())
        k = np.arange(-nmax, nmax + 1, dtype=float)
        for chunk in np.array_split(idx, max(1, len(idx) * (2 * nmax + 1) // 4_000_000 + 1)):
            xs = x[chunk][:, None]
            hs = h[chunk][:, None]
            al = alpha[chunk][:, None]
            u = k[None, :] * hs + 1j * al
            # shift keeps the integrand magnitude near one at the contour centre
            shift = xs * np.cos(al) + t * al
            if scaled:
                expo = -xs * (np.cosh(u) - 1.0) + nu * u
                shift = shift - xs
            else:
                expo = -xs * np.cosh(u) + nu * u
            with np.errstate(over="ignore", under="ignore"):
                vals = np.exp(expo + shift)
            s = 0.5 * hs[:, 0] * vals.sum(axis=1)
            out[chunk] = s * np.exp(-shift[:, 0])
    return out


def kbessel(mu: complex, x, scaled: bool = False):
    """K_mu(x) for x > 0 (scalar or array).  scaled=True returns e^x K_mu(x).

    Real results are returned when mu is real or purely imaginary.
    """
    mu = complex(mu)
    if abs(mu.imag) > MAX_IMAG_ORDER:
        raise ValueError(f"|Im mu| = {abs(mu.imag)} outside supported range {MAX_IMAG_ORDER}")
    xa = np.asarray(x, dtype=float)
    if np.any(xa <= 0):
        raise ValueError("kbessel needs x > 0")
    flat = np.atleast_1d(xa).ravel()
    res = _kbessel_core(mu, flat, scaled).reshape(xa.shape)
    if mu.imag == 0 or mu.real == 0:
        res = res.real
    return res if xa.shape else res[()]


def kbessel_mp(mu, x, scaled: bool = False):
    """Reference K via mpmath at the current mpmath precision."""
    v = mpmath.besselk(mu, x)
    if scaled:
        v *= mpmath.exp(x)
    return v


class KTable:
    """Chebyshev interpolant of sqrt(x)e^{x}K_{it}(x) in log x for fixed order.

    Used when one order is evaluated at very many points (Maass forms).
    """

    def __init__(self, mu: complex, xmin: float, xmax: float, pieces: int | None = None, deg: int = 24):
        self.mu = complex(mu)
        self.xmin, self.xmax = xmin, xmax
        lo, hi = math.log(xmin), math.log(xmax)
        if pieces is None:
            pieces = max(8, int(math.ceil((hi - lo) * (4 + abs(self.mu.imag) / 2))))
        self.edges = np.linspace(lo, hi, pieces + 1)
        self.deg = deg
        nodes = np.cos(math.pi * (np.arange(deg) + 0.5) / deg)
        a, b = self.edges[:-1, None], self.edges[1:, None]
        ls = 0.5 * (a + b) + 0.5 * (b - a) * nodes[None, :]
        xs = np.exp(ls)
        vals = kbessel(self.mu, xs.ravel(), scaled=True).reshape(xs.shape) * np.sqrt(xs)
        self.coef = np.polynomial.chebyshev.chebfit(nodes, vals.T, deg - 1).T

    def __call__(self, x):
        """K_mu(x) (unscaled) by interpolation; x must lie in [xmin, xmax]."""
        x = np.asarray(x, dtype=float)
        lx = np.log(x)
        if np.any(x < self.xmin * (1 - 1e-12)) or np.any(x > self.xmax * (1 + 1e-12)):
            raise ValueError("KTable argument outside table range")
        i = np.clip(np.searchsorted(self.edges, lx) - 1, 0, len(self.edges) - 2)
        a, b = self.edges[i], self.edges[i + 1]
        tau = (2 * lx - a - b) / (b - a)
        c = self.coef[i]
        # Clenshaw
        b1 = np.zeros_like(tau, dtype=c.dtype)
        b2 = np.zeros_like(tau, dtype=c.dtype)
        for j in range(self.deg - 1, 0, -1):
            b1, b2 = c[..., j] + 2 * tau * b1 - b2, b1
        v = c[..., 0] + tau * b1 - b2
        with np.errstate(under="ignore"):
            return v * np.exp(-x) / np.sqrt(x)


def whittaker_w(kappa: float, mu: complex, y, dps: int = 30):
    """Classical Whittaker W_{kappa,mu}(y), decaying like y^kappa e^{-y/2}.

    Uses the Laplace integral representation when Re(mu - kappa + 1/2) > 0
    and the closed rows (kappa = 0 via K_mu, kappa = mu + 1/2 elementary)
    otherwise.
    """
    with mpmath.workdps(dps):
        y = mpmath.mpf(y)
        kappa = mpmath.mpf(kappa)
        mu = mpmath.mpmathify(mu)
        if abs(kappa - mu - mpmath.mpf(1) / 2) < mpmath.mpf(10) ** (-dps + 5):
            return y ** kappa * mpmath.exp(-y / 2)
        if kappa == 0:
            return mpmath.sqrt(y / mpmath.pi) * mpmath.besselk(mu, y / 2)
        a = mu - kappa + mpmath.mpf(1) / 2
        if mpmath.re(a) <= 0:
            raise ValueError("whittaker_w: parameters outside the integral representation")
        f = lambda u: mpmath.exp(-y * u) * u ** (a - 1) * (1 + u) ** (mu + kappa - mpmath.mpf(1) / 2)
        integral = mpmath.quad(f, [0, 1, mpmath.inf])
        return y ** (mu + mpmath.mpf(1) / 2) * mpmath.exp(-y / 2) / mpmath.gamma(a) * integral
