"""Local normalising constants at level one, kept as exact rationals."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


def _check_eps(eps: int):
    if eps not in (1, -1):
        raise ValueError("sign eigenvalue must be +1 or -1")


@dataclass(frozen=True)
class ConstantTable:
    """c_v (norm), C_v (central zeta integral) and Q_v (triple product) at v = infinity.

    Finite places are trivial at level one: c_p = C_p = Q_p = 1.
    """

    @staticmethod
    def c_inf(k: int) -> Fraction:
        return Fraction(1) if k == 0 else Fraction(1, 2 ** (abs(k) + 1))

    @staticmethod
    def c_p() -> Fraction:
        return Fraction(1)

    @staticmethod
    def C_inf(k: int, eps_inf: int = 1) -> Fraction:
        """k is the largest absolute weight of the triple."""
        if k == 0:
            _check_eps(eps_inf)
            return Fraction(eps_inf + 1, 2)
        if k < 2:
            raise ValueError("holomorphic weights start at 2")
        return Fraction(1, 2 ** (2 * k + 2))

    @staticmethod
    def C_p() -> Fraction:
        return Fraction(1)

    @staticmethod
    def Q_inf(pattern: str, eps_inf: int = 1) -> Fraction:
        if pattern == "maass":
            _check_eps(eps_inf)
            return Fraction(1 + eps_inf, 2)
        if pattern == "kk0":
            return Fraction(1)
        if pattern == "holomorphic-balanced":
            return Fraction(2)
        raise ValueError(f"unknown weight pattern {pattern!r}")

    @staticmethod
    def Q_p() -> Fraction:
        return Fraction(1)

    @staticmethod
    def watson_prefactor(pattern: str, eps_inf: int = 1) -> Fraction:
        """prod_v Q_v * 2^{#{p | d_B N} - 3} / (d_B N)^2 with d_B N = 1."""
        return ConstantTable.Q_inf(pattern, eps_inf) * Fraction(1, 8)

    @classmethod
    def Q_from_zeta_constants(cls, weights, eps_inf: int = 1) -> Fraction:
        """Q_inf recomputed as C_inf / prod_j c_inf(k_j); agrees with every row of the table."""
        k = max(abs(w) for w in weights)
        C = cls.C_inf(k, eps_inf)
        prod_c = Fraction(1)
        for w in weights:
            prod_c *= cls.c_inf(w)
        return C / prod_c
