"""Coefficient-side evaluation of Rankin-Selberg unfolded integrals.

For psi = y^{k/2} f with f = sum a_n q^n and E(z, s) = sum Im(gz)^s over Gamma_inf \\ Gamma,

    int_X |psi|^2 E(., s) dmu = int_0^inf int_0^1 |psi|^2 y^{s-2} dx dy
                              = Gamma(s+k-1) (4 pi)^{1-s-k} sum_n lam_n^2 n^{-s}.

The Dirichlet sum converges slowly at s = 2, so its tail is estimated from the
linear growth of the partial sums of lam_n^2, fitted on the available range.
No L-function is used.
"""
from __future__ import annotations

import math

import numpy as np

from .quadrature import IntegralResult


def _tail_corrected(lam2: np.ndarray, s: float, M: int):
    n = np.arange(1, M + 1, dtype=float)
    part = float(np.sum(lam2[:M] * n ** (-s)))
    S = np.cumsum(lam2[:M])
    lo = M // 2
    R = float(np.polyfit(n[lo:], S[lo:], 1)[0])
    # sum_{n > M} lam_n^2 n^{-s} = int_M^inf x^{-s} dS(x) with S(x) = R x + E(x)
    E = float(S[-1] - R * M)
    tail = R * M ** (1 - s) / (s - 1) - E * M ** (-s)
    return part + tail, R


def unfolded_eisenstein(lam: np.ndarray, k: int, s: float) -> IntegralResult:
    """lam[n] = unitary eigenvalues for n >= 1 (lam[0] ignored); real s > 1."""
    s = float(s)
    if s <= 1:
        raise ValueError("unfolded sum needs Re s > 1")
    lam2 = np.asarray(lam[1:], dtype=float) ** 2
    N = len(lam2)
    full, R = _tail_corrected(lam2, s, N)
    half, _ = _tail_corrected(lam2, s, N // 2)
    pref = math.exp(math.lgamma(s + k - 1) - (s + k - 1) * math.log(4 * math.pi))
    return IntegralResult(pref * full, pref * abs(full - half),
                          {"coeffs": N, "mean_lam2": R, "half_range_value": pref * half})
