"""Local Langlands parameters: tensor, dual and adjoint, with local L, epsilon and conductor.

Archimedean irreducibles are (s, delta)^1 and (s, l)^2 (l > 0); non-archimedean
ones are ||.||^s (x) sp^n.  A parameter is a multiset of irreducibles at one place.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Union

import mpmath

ARCH = "inf"
_TOL = 1e-12
_DPS = 40


class PoleError(ZeroDivisionError):
    def __init__(self, s, factor):
        super().__init__(f"pole at s={s} from factor {factor}")
        self.s = s
        self.factor = factor


class UnsupportedFactor(NotImplementedError):
    pass


# --- the three local zeta functions ------------------------------------------------

def zeta_R(s):
    """pi^{-s/2} Gamma(s/2)."""
    s = mpmath.mpmathify(s)
    return mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2)


def zeta_C(s):
    """zeta_R(s) zeta_R(s+1) = 2 (2 pi)^{-s} Gamma(s) (Legendre duplication)."""
    s = mpmath.mpmathify(s)
    return 2 * (2 * mpmath.pi) ** (-s) * mpmath.gamma(s)


def zeta_p(s, p: int):
    s = mpmath.mpmathify(s)
    return 1 / (1 - mpmath.mpf(p) ** (-s))


def _is_gamma_pole(z) -> bool:
    z = complex(z)
    return abs(z.imag) < 1e-12 and z.real < 0.5 and abs(z.real - round(z.real)) < 1e-12


def _cround(z: complex, nd: int = 12) -> tuple:
    return (round(z.real, nd) + 0.0, round(z.imag, nd) + 0.0)


# --- irreducible factors -------------------------------------------------------------

@dataclass(frozen=True)
class ArchFactor:
    dim: int  # 1 or 2
    s: complex
    d: int  # delta in {0,1} for dim 1, l > 0 for dim 2

    def key(self):
        return (0, self.dim, self.d) + _cround(self.s)

    def render(self) -> str:
        return f"({_fmt(self.s)},{self.d})^{self.dim}_R"

    @property
    def degree(self) -> int:
        return self.dim

    def L(self, s):
        if self.dim == 1:
            z = mpmath.mpmathify(s) + self.s + self.d
            if _is_gamma_pole(z / 2):
                raise PoleError(s, self.render())
            return zeta_R(z)
        z = mpmath.mpmathify(s) + self.s + mpmath.mpf(self.d) / 2
        if _is_gamma_pole(z):
            raise PoleError(s, self.render())
        return zeta_C(z)

    def gamma_shift(self):
        """(kind, shift) with L(s) = zeta_kind(s + shift)."""
        if self.dim == 1:
            return ("R", complex(self.s) + self.d)
        return ("C", complex(self.s) + self.d / 2)

    def conductor(self, t: float) -> float:
        if self.dim == 1:
            return 1 + abs(complex(0, t) + self.s)
        return (1 + abs(complex(0, t) + self.s + self.d / 2)) ** 2

    def epsilon(self, s):
        return 1j ** self.d if self.dim == 1 else 1j ** (self.d + 1)

    def dual(self):
        return ArchFactor(self.dim, -self.s, self.d)

    def is_trivial(self):
        return self.dim == 1 and self.d == 0 and abs(self.s) < _TOL


@dataclass(frozen=True)
class NonArchFactor:
    s: complex
    n: int = 1

    def key(self):
        return (1, self.n, 0) + _cround(self.s)

    def render(self) -> str:
        base = f"||.||^{{{_fmt(self.s)}}}"
        return base if self.n == 1 else f"{base}⊗sp^{self.n}"

    @property
    def degree(self) -> int:
        return self.n

    def L(self, s, p):
        z = mpmath.mpmathify(s) + self.s + self.n - 1
        if abs(1 - mpmath.mpf(p) ** (-z)) < 1e-30:
            raise PoleError(s, self.render())
        return zeta_p(z, p)

    def conductor(self, p) -> int:
        return p ** (self.n - 1)

    def epsilon(self, s, p):
        if self.n == 1:
            return mpmath.mpf(1)
        z = mpmath.mpmathify(s) + self.s + mpmath.mpf(self.n - 2) / 2
        return (-(mpmath.mpf(p) ** (-z))) ** (self.n - 1)

    def dual(self):
        return NonArchFactor(-self.s + 1 - self.n, self.n)

    def is_trivial(self):
        return self.n == 1 and abs(self.s) < _TOL


Factor = Union[ArchFactor, NonArchFactor]


def _fmt(z: complex) -> str:
    z = complex(z)
    re = f"{z.real:g}"
    if abs(z.imag) < _TOL:
        return re
    if abs(z.real) < _TOL:
        return f"{z.imag:g}i"
    return f"{re}{z.imag:+g}i"


def arch(dim: int, s: complex, d: int) -> list[ArchFactor]:
    """Canonical archimedean factor list: (s,0)^2 splits, (s,-l)^2 flips to l."""
    s = complex(s)
    if dim == 1:
        if d not in (0, 1):
            d %= 2
        return [ArchFactor(1, s, d)]
    if d < 0:
        d = -d
    if d == 0:
        return [ArchFactor(1, s, 0), ArchFactor(1, s, 1)]
    return [ArchFactor(2, s, d)]


class LanglandsParam:
    """Multiset of irreducible local parameters at one place."""

    def __init__(self, place, factors: Iterable[Factor]):
        self.place = place
        fs = []
        for f in factors:
            if isinstance(f, ArchFactor):
                if place != ARCH:
                    raise ValueError("archimedean factor at a finite place")
                fs.extend(arch(f.dim, f.s, f.d))
            else:
                if place == ARCH:
                    raise ValueError("p-adic factor at the archimedean place")
                if f.n < 1:
                    raise ValueError("sp^n needs n >= 1")
                fs.append(NonArchFactor(complex(f.s), f.n))
        self.factors = tuple(sorted(fs, key=lambda f: f.key()))

    # constructors
    @classmethod
    def holomorphic(cls, k: int):
        """varrho^k = (0, k-1)^2."""
        return cls(ARCH, arch(2, 0, abs(k) - 1))

    @classmethod
    def maass(cls, s_inf: complex, delta: int):
        """varrho^0 = (s,delta)^1 + (-s,delta)^1."""
        return cls(ARCH, arch(1, s_inf, delta) + arch(1, -s_inf, delta))

    @classmethod
    def unramified(cls, p: int, s_dot: complex, s_ddot: complex):
        return cls(p, [NonArchFactor(s_dot), NonArchFactor(s_ddot)])

    @property
    def degree(self) -> int:
        return sum(f.degree for f in self.factors)

    def __eq__(self, other):
        if not isinstance(other, LanglandsParam):
            return NotImplemented
        return self.place == other.place and [f.key() for f in self.factors] == [f.key() for f in other.factors]

    def __hash__(self):
        return hash((self.place, tuple(f.key() for f in self.factors)))

    def __add__(self, other: "LanglandsParam") -> "LanglandsParam":
        _same_place(self, other)
        return LanglandsParam(self.place, self.factors + other.factors)

    def __repr__(self):
        return f"LanglandsParam({self.place}: {self.render()})"

    def render(self) -> str:
        return " ⊕ ".join(f.render() for f in self.factors) or "0"

    def remove_trivial(self) -> "LanglandsParam":
        fs = list(self.factors)
        for i, f in enumerate(fs):
            if f.is_trivial():
                del fs[i]
                return LanglandsParam(self.place, fs)
        raise ValueError(f"no trivial factor in {self.render()}")

    # analytic data
    def local_L(self, s):
        with mpmath.workdps(_DPS):
            out = mpmath.mpf(1)
            for f in self.factors:
                out *= f.L(s) if self.place == ARCH else f.L(s, self.place)
            return out

    def analytic_conductor(self, t: float = 0.0) -> float:
        if self.place != ARCH:
            raise ValueError("analytic conductor is archimedean; use conductor()")
        out = 1.0
        for f in self.factors:
            out *= f.conductor(t)
        return out

    def conductor(self) -> int:
        if self.place == ARCH:
            raise ValueError("use analytic_conductor at the archimedean place")
        return math.prod(f.conductor(self.place) for f in self.factors)

    def epsilon(self, s=0.5):
        with mpmath.workdps(_DPS):
            out = mpmath.mpc(1)
            for f in self.factors:
                out *= f.epsilon(s) if self.place == ARCH else f.epsilon(s, self.place)
            return complex(out)

    def gamma_shifts(self) -> list[tuple[str, complex]]:
        if self.place != ARCH:
            raise ValueError("gamma shifts are archimedean")
        return [f.gamma_shift() for f in self.factors]

    def local_roots(self) -> list[complex]:
        """For n = 1 factors: alpha = p^{-s} so that L = prod (1 - alpha p^{-s})^{-1}."""
        if self.place == ARCH:
            raise ValueError("local roots are p-adic")
        if any(f.n != 1 for f in self.factors):
            raise UnsupportedFactor("special representations have no semisimple root list")
        return [complex(mpmath.mpf(self.place) ** (-mpmath.mpc(f.s))) for f in self.factors]


def _same_place(a, b):
    if a.place != b.place:
        raise ValueError(f"place mismatch: {a.place} vs {b.place}")


def _tensor_arch(a: ArchFactor, b: ArchFactor) -> list[ArchFactor]:
    s = a.s + b.s
    if a.dim == 1 and b.dim == 1:
        return arch(1, s, (a.d + b.d) % 2)
    if a.dim == 1:
        return arch(2, s, b.d)
    if b.dim == 1:
        return arch(2, s, a.d)
    return arch(2, s, a.d + b.d) + arch(2, s, a.d - b.d)


def _tensor_nonarch(a: NonArchFactor, b: NonArchFactor) -> list[NonArchFactor]:
    m, n = max(a.n, b.n), min(a.n, b.n)
    s = a.s + b.s
    return [NonArchFactor(s + i, m + n - 2 * i - 1) for i in range(n)]


def tensor(a: LanglandsParam, b: LanglandsParam) -> LanglandsParam:
    _same_place(a, b)
    rule = _tensor_arch if a.place == ARCH else _tensor_nonarch
    out = []
    for x in a.factors:
        for y in b.factors:
            out.extend(rule(x, y))
    return LanglandsParam(a.place, out)


def dual(a: LanglandsParam) -> LanglandsParam:
    return LanglandsParam(a.place, [f.dual() for f in a.factors])


def adjoint(a: LanglandsParam) -> LanglandsParam:
    """Ad = a (x) a^dual minus one trivial factor."""
    if a.degree != 2:
        raise ValueError("adjoint needs a degree-2 parameter")
    return tensor(a, dual(a)).remove_trivial()


def local_L(s, a: LanglandsParam):
    return a.local_L(s)


def analytic_conductor(t: float, a: LanglandsParam) -> float:
    return a.analytic_conductor(t)


def epsilon(s, a: LanglandsParam) -> complex:
    return a.epsilon(s)


def triple(a: LanglandsParam, b: LanglandsParam, c: LanglandsParam) -> LanglandsParam:
    return tensor(tensor(a, b), c)
