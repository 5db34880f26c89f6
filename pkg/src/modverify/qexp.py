"""Exact q-expansions, level-1 Hecke eigenforms and Satake parameters."""
from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import gmpy2
import mpmath

from .arith import divisors, is_prime, primes_upto


class PrecisionError(IndexError):
    pass


def _bernoulli(n: int) -> Fraction:
    b = mpmath.bernfrac(n)
    return Fraction(int(b[0]), int(b[1]))


def _pack_mul(a: Sequence[int], b: Sequence[int], n: int) -> list[int]:
    """Truncated product of integer sequences by Kronecker substitution (gmpy2 multiply)."""
    a = list(a[:n])
    b = list(b[:n])
    if not a or not b:
        return [0] * n
    bound = max(1, max(abs(x) for x in a)) * max(1, max(abs(x) for x in b)) * min(len(a), len(b))
    nbytes = (bound.bit_length() + 2) // 8 + 1

    def enc(v):
        return gmpy2.mpz(int.from_bytes(b"".join(x.to_bytes(nbytes, "little") for x in v), "little"))

    def dec(z):
        raw = int(z).to_bytes(nbytes * (len(a) + len(b)), "little")
        return [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") for i in range(n)]

    ap, am = [max(x, 0) for x in a], [max(-x, 0) for x in a]
    bp, bm = [max(x, 0) for x in b], [max(-x, 0) for x in b]
    Ap, Am, Bp, Bm = enc(ap), enc(am), enc(bp), enc(bm)
    pos = dec(Ap * Bp + Am * Bm)
    neg = dec(Ap * Bm + Am * Bp)
    return [x - y for x, y in zip(pos, neg)]


class QSeries:
    """Truncated q-series with exact rational coefficients, valid for n < precision.

    Stored as integer numerators over one common denominator.
    """

    def __init__(self, coeffs, weight: int = 0, precision: int | None = None, den: int | None = None):
        if den is None:
            fr = [Fraction(c) for c in coeffs]
            den = math.lcm(*(c.denominator for c in fr)) if fr else 1
            nums = [int(c * den) for c in fr]
        else:
            nums = [int(c) for c in coeffs]
        if precision is None:
            precision = len(nums)
        if precision < 1:
            raise ValueError("precision must be >= 1")
        nums = (nums + [0] * (precision - len(nums)))[:precision]
        g = math.gcd(den, *nums)
        if g > 1:
            nums = [x // g for x in nums]
            den //= g
        self.num = tuple(nums)
        self.den = den
        self.weight = weight
        self.precision = precision

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.den) for x in self.num)

    def __getitem__(self, n: int) -> Fraction:
        if n < 0 or n >= self.precision:
            raise PrecisionError(f"coefficient {n} outside precision {self.precision}")
        return Fraction(self.num[n], self.den)

    def __len__(self):
        return self.precision

    def __repr__(self):
        head = ", ".join(str(self[i]) for i in range(min(6, self.precision)))
        return f"QSeries(k={self.weight}, N={self.precision}, [{head}{', ...' if self.precision > 6 else ''}])"

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.precision == other.precision and self.den == other.den and self.num == other.num

    def __add__(self, other):
        if other.weight != self.weight:
            raise ValueError("weight mismatch")
        n = min(self.precision, other.precision)
        d = math.lcm(self.den, other.den)
        fa, fb = d // self.den, d // other.den
        return QSeries([a * fa + b * fb for a, b in zip(self.num[:n], other.num[:n])], self.weight, n, den=d)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "QSeries":
        c = Fraction(c)
        return QSeries([c.numerator * a for a in self.num], self.weight, self.precision, den=self.den * c.denominator)

    def __mul__(self, other):
        if not isinstance(other, QSeries):
            return self.scale(other)
        n = min(self.precision, other.precision)
        prod = _pack_mul(self.num, other.num, n)
        return QSeries(prod, self.weight + other.weight, n, den=self.den * other.den)

    __rmul__ = scale

    def __pow__(self, e: int):
        out = QSeries([1], 0, self.precision)
        base = self
        while e:
            if e & 1:
                out = out * base
            e >>= 1
            if e:
                base = base * base
        return out

    def truncate(self, n: int) -> "QSeries":
        if n > self.precision:
            raise PrecisionError(f"cannot extend precision {self.precision} to {n}")
        return QSeries(self.num[:n], self.weight, n, den=self.den)

    def valuation(self) -> int:
        for i, c in enumerate(self.num):
            if c:
                return i
        return self.precision


def sigma(k: int, n: int) -> int:
    return sum(d ** k for d in divisors(n))


def _sigma_table(k: int, N: int) -> list[int]:
    s = [0] * N
    for d in range(1, N):
        dk = d ** k
        for m in range(d, N, d):
            s[m] += dk
    return s


@lru_cache(maxsize=64)
def eisenstein_qexp(k: int, N: int) -> QSeries:
    """E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n."""
    if k < 4 or k % 2:
        raise ValueError("Eisenstein series needs even k >= 4")
    if N < 1:
        raise ValueError("precision must be >= 1")
    c = Fraction(-2 * k) / _bernoulli(k)
    s = _sigma_table(k - 1, N)
    nums = [c.denominator] + [c.numerator * s[n] for n in range(1, N)]
    return QSeries(nums, k, N, den=c.denominator)


@lru_cache(maxsize=16)
def delta_qexp(N: int) -> QSeries:
    e4, e6 = eisenstein_qexp(4, N), eisenstein_qexp(6, N)
    d = (e4 ** 3 - e6 * e6).scale(Fraction(1, 1728))
    return QSeries(d.num, 12, N, den=d.den)


def dim_modular(k: int) -> int:
    """Dimension of M_k(SL_2(Z)) (independent closed formula)."""
    if k < 0 or k % 2:
        return 0
    if k == 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def dim_cusp(k: int) -> int:
    if k < 12 or k % 2:
        return 0
    return dim_modular(k) - 1


@lru_cache(maxsize=32)
def miller_basis(k: int, N: int) -> tuple[QSeries, ...]:
    """Echelon basis g_i = q^i + O(q^{d+1}) of S_k, i = 1..d."""
    d = dim_cusp(k)
    if d == 0:
        return ()
    e4, e6, delta = eisenstein_qexp(4, N), eisenstein_qexp(6, N), delta_qexp(N)
    gens = []
    for j in range(1, d + 1):
        w = k - 12 * j
        b = 0
        while (w - 6 * b) % 4:
            b += 1
        a = (w - 6 * b) // 4
        g = delta ** j * e4 ** a * e6 ** b
        gens.append(QSeries(g.num, k, N, den=g.den))
    # back-substitute to clear entries q^1..q^d off the diagonal
    for i in range(d - 1, -1, -1):
        gi = gens[i].scale(1 / gens[i][i + 1])
        gens[i] = gi
        for j in range(i):
            c = gens[j][i + 1]
            if c:
                gens[j] = gens[j] - gi.scale(c)
    return tuple(QSeries(g.num, k, N, den=g.den) for g in gens)


def hecke_apply(f: QSeries, p: int, n: int = 1) -> QSeries:
    """T_{p^n} on a weight-k q-series: b_m = sum_{d | (m, p^n)} d^{k-1} a_{m p^n / d^2}."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p ** n
    out_n = f.precision // q
    if out_n < 1:
        raise PrecisionError(f"T_{q} needs precision >= {q}, have {f.precision}")
    k = f.weight
    a = f.num
    b = []
    for m in range(out_n):
        if m == 0:
            b.append(a[0] * sum(p ** (j * (k - 1)) for j in range(n + 1)))
            continue
        s = 0
        dd = 1
        for j in range(n + 1):
            if m % dd:
                break
            s += dd ** (k - 1) * a[m * q // (dd * dd)]
            dd *= p
        b.append(s)
    return QSeries(b, k, out_n, den=f.den)


# --- quadratic-field arithmetic for dim-2 eigenforms ---------------------------------

@dataclass(frozen=True)
class QuadElem:
    """u + v*theta with theta^2 = A*theta + B (A, B rational)."""

    u: Fraction
    v: Fraction
    A: Fraction
    B: Fraction

    def __add__(self, o):
        o = self._lift(o)
        return QuadElem(self.u + o.u, self.v + o.v, self.A, self.B)

    def __sub__(self, o):
        o = self._lift(o)
        return QuadElem(self.u - o.u, self.v - o.v, self.A, self.B)

    def __mul__(self, o):
        o = self._lift(o)
        vv = self.v * o.v
        return QuadElem(self.u * o.u + vv * self.B, self.u * o.v + self.v * o.u + vv * self.A, self.A, self.B)

    __rmul__ = __mul__
    __radd__ = __add__

    def _lift(self, o):
        if isinstance(o, QuadElem):
            return o
        return QuadElem(Fraction(o), Fraction(0), self.A, self.B)

    def is_zero(self):
        return self.u == 0 and self.v == 0

    def to_mp(self, theta):
        return mpmath.mpf(self.u.numerator) / self.u.denominator + \
            mpmath.mpf(self.v.numerator) / self.v.denominator * theta


class _QuadCoeffs:
    """Lazy exact coefficients g1_n + theta g2_n in Q(theta)."""

    def __init__(self, g1: QSeries, g2: QSeries, A: Fraction, B: Fraction):
        self.g1, self.g2, self.A, self.B = g1, g2, A, B

    def __getitem__(self, n: int) -> QuadElem:
        return QuadElem(self.g1[n], self.g2[n], self.A, self.B)

    def __len__(self):
        return self.g1.precision


# --- eigenforms ----------------------------------------------------------------------

@dataclass
class HoloEigenform:
    weight: int
    precision: int
    coeffs: list  # mpf, a_n for n < precision, a_0 = 0
    label: str = ""
    exact: list | None = None  # Fraction or QuadElem per n
    theta: object = None  # mpf root for QuadElem coefficients
    satake: dict = field(default_factory=dict)
    branch: dict = field(default_factory=dict)

    def a(self, n: int):
        if n >= self.precision:
            raise PrecisionError(f"a_{n} beyond precision {self.precision}")
        return self.coeffs[n]

    def lam(self, n: int) -> float:
        """Unitary eigenvalue lambda_n = a_n / n^{(k-1)/2}."""
        return float(self.a(n) / mpmath.mpf(n) ** (mpmath.mpf(self.weight - 1) / 2))

    def lam_array(self, nmax: int | None = None):
        import numpy as np

        nmax = self.precision - 1 if nmax is None else nmax
        if nmax >= self.precision:
            raise PrecisionError(f"need {nmax} coefficients, have {self.precision - 1}")
        cached = getattr(self, "_lam_cache", None)
        if cached is None or len(cached) <= nmax:
            h = mpmath.mpf(self.weight - 1) / 2
            cached = np.array([0.0] + [float(self.coeffs[n] / mpmath.mpf(n) ** h) for n in range(1, self.precision)])
            self._lam_cache = cached
        return cached[: nmax + 1]

    def get_satake(self, p: int):
        if p not in self.satake:
            s, br = satake_params(self.lam(p), p)
            self.satake[p] = s
            self.branch[p] = br
        return self.satake[p]

    def to_json(self) -> str:
        for p in primes_upto(min(self.precision - 1, 97)):
            self.get_satake(p)
        doc = {
            "weight": self.weight,
            "precision": self.precision,
            "label": self.label,
            "coefficients": [mpmath.nstr(c, 40, strip_zeros=False) if c else "0" for c in self.coeffs],
            "satake": {str(p): [repr(s[0].real), repr(s[0].imag)] for p, s in self.satake.items()},
        }
        return json.dumps(doc)

    @classmethod
    def from_json(cls, text: str) -> "HoloEigenform":
        doc = json.loads(text)
        with mpmath.workdps(50):
            coeffs = [mpmath.mpf(c) for c in doc["coefficients"]]
        f = cls(doc["weight"], doc["precision"], coeffs, doc.get("label", ""))
        for p, (re, im) in doc.get("satake", {}).items():
            s = complex(float(re), float(im))
            f.satake[int(p)] = (s, -s)
        return f


def _branch_label(k: int, i: int, d: int) -> str:
    return f"{k}" if d == 1 else f"{k}.{i + 1}"


@lru_cache(maxsize=32)
def cusp_eigenforms(k: int, N: int = 4096, dps: int = 50) -> tuple[HoloEigenform, ...]:
    """Hecke-normalised eigenbasis of S_k, diagonalising T_2 on the Miller basis."""
    if k < 12 or k % 2:
        if k % 2 == 0 and 0 <= k < 12:
            return ()
        raise ValueError("weight must be even")
    basis = miller_basis(k, N)
    d = len(basis)
    if d == 0:
        return ()
    if d == 1:
        g = basis[0]
        with mpmath.workdps(dps):
            coeffs = [mpmath.mpf(x) / g.den for x in g.num]
        return (HoloEigenform(k, N, coeffs, _branch_label(k, 0, 1), exact=list(g.coeffs)),)
    if d == 2:
        # T_2 in the basis (g1, g2): column j holds coefficients 1, 2 of T_2 g_j
        t = [hecke_apply(g.truncate(7), 2) for g in basis]
        M = [[t[j][i + 1] for j in range(2)] for i in range(2)]
        tr = M[0][0] + M[1][1]
        det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
        disc = tr * tr - 4 * det
        if disc == 0:
            raise ArithmeticError(f"T_2 degenerate on S_{k}")
        # eigenform f = g1 + a_2 g2, with a_2 = theta a root of x^2 - tr x + det
        A, B = tr, -det
        forms = []
        with mpmath.workdps(dps):
            sq = mpmath.sqrt(mpmath.mpf(disc.numerator) / disc.denominator)
            trf = mpmath.mpf(tr.numerator) / tr.denominator
            roots = [(trf - sq) / 2, (trf + sq) / 2]
            g1, g2 = basis
            den = mpmath.mpf(g1.den)
            den2 = mpmath.mpf(g2.den)
            for i, th in enumerate(roots):
                coeffs = [mpmath.mpf(u) / den + th * (mpmath.mpf(v) / den2) for u, v in zip(g1.num, g2.num)]
                f = HoloEigenform(k, N, coeffs, _branch_label(k, i, 2), theta=th)
                f.exact = _QuadCoeffs(g1, g2, A, B)
                forms.append(f)
        return tuple(forms)
    raise NotImplementedError(f"dim S_{k} = {d} > 2 not supported")


def all_eigenforms(kmax: int = 28, N: int = 4096):
    out = []
    for k in range(12, kmax + 1, 2):
        out.extend(cusp_eigenforms(k, N))
    return out


def satake_params(lam_p, p: int):
    """Satake pair (s_dot, s_ddot) of a unitary eigenvalue lam_p = a_p / p^{(k-1)/2}.

    p^{-s_dot}, p^{-s_ddot} are the roots of X^2 - lam_p X + 1.  In the Hecke
    normalisation Lambda_p = p^{1/2} lam_p this is X^2 - p^{-1/2} Lambda_p X + 1.
    """
    lam_p = complex(lam_p)
    disc = cmath.sqrt(lam_p * lam_p - 4)
    X1, X2 = (lam_p + disc) / 2, (lam_p - disc) / 2
    lp = math.log(p)
    if abs(abs(X1) - 1) < 1e-9 and abs(abs(X2) - 1) < 1e-9:
        # tempered: Im(s_dot log p) in [0, pi], i.e. Im X <= 0
        X = X1 if X1.imag < X2.imag else X2
        th = -cmath.phase(X)
        if th < 0:
            th = 0.0 if th > -1e-15 else th + 2 * math.pi
        sd = complex(0, th / lp)
        return (sd, -sd), "tempered"
    # exceptional: sigma = Re(s_dot) > 0, i.e. |X| < 1
    X = X1 if abs(X1) < abs(X2) else X2
    sd = -cmath.log(X) / lp
    return (sd, -sd), "exceptional"


def lambda_power(satake, p: int, n: int, normalization: str = "unitary"):
    """lambda_{p^n} from Satake parameters.

    unitary: sum_j p^{-j s_dot - (n-j) s_ddot}, equal to a_{p^n}/p^{n(k-1)/2}.
    hecke: the T_p^{[p^n]} eigenvalue, p^{n/2} times the unitary value.
    The coincident case uses the symmetric sum, its analytic limit.
    """
    if n < 0:
        raise ValueError("n >= 0")
    sd, sdd = complex(satake[0]), complex(satake[1])
    lp = math.log(p)
    x1, x2 = cmath.exp(-sd * lp), cmath.exp(-sdd * lp)
    if abs(x1 - x2) < 1e-6 * max(1.0, abs(x1)):
        v = sum(x1 ** j * x2 ** (n - j) for j in range(n + 1))
    else:
        v = (x1 ** (n + 1) - x2 ** (n + 1)) / (x1 - x2)
    if normalization == "hecke":
        v *= p ** (n / 2)
    elif normalization != "unitary":
        raise ValueError(normalization)
    return v.real if abs(v.imag) < 1e-12 * max(1.0, abs(v)) else v
