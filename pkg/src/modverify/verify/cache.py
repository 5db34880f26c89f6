"""Shared read-only cache of forms and L-values used across checks.

Entries are created once under a lock and then only read, so checks running
in worker threads can share them.
"""
from __future__ import annotations

import threading
from collections import Counter

from .. import lfun
from ..maass import MaassForm, extend_coefficients
from ..qexp import cusp_eigenforms


class FormCache:
    def __init__(self, coeff_count: int = 4096):
        self.coeff_count = coeff_count
        self._lock = threading.Lock()
        self._store: dict = {}
        self.hits = Counter()
        self.misses = Counter()

    def _get(self, kind: str, key, build):
        full = (kind, key)
        with self._lock:
            if full in self._store:
                self.hits[kind] += 1
                return self._store[full]
            self.misses[kind] += 1
        value = build()
        with self._lock:
            return self._store.setdefault(full, value)

    def eigenforms(self, k: int, N: int | None = None):
        N = N or self.coeff_count
        return self._get("forms", (k, N), lambda: cusp_eigenforms(k, N))

    def form_key(self, f):
        # L-values do not depend on how many coefficients a form carries

        if isinstance(f, MaassForm):
            return ("maass", round(f.t, 9), f.parity)
        return ("holo", f.weight, f.label)

    def adjoint_at_one(self, f, eps: float = 1e-12) -> lfun.AFEResult:
        """Completed L*(1, Ad f), shared by the norm and triple-product checks."""
        return self._get("adjoint", self.form_key(f), lambda: lfun.build_adjoint(f).value(1.0, eps))

    def triple_at_half(self, f1, f2, f3, eps: float = 1e-12) -> lfun.AFEResult:
        key = tuple(self.form_key(f) for f in (f1, f2, f3))
        return self._get("triple", key, lambda: lfun.build_triple(f1, f2, f3).value(0.5, eps))

    def rankin_selberg(self, f, s, eps: float = 1e-12) -> lfun.AFEResult:
        def build():
            ad = self.adjoint_at_one(f, eps)
            L = lfun.build_rankin_selberg(f, f, adjoint_value=lambda: ad.completed)
            return L.value(s, eps)

        return self._get("rankin", (self.form_key(f), complex(s)), build)


def with_coefficients(f, need: int):
    """Maass forms are extended on demand; holomorphic ones are rebuilt at higher precision."""
    if f.precision - 1 >= need:
        return f
    if isinstance(f, MaassForm):
        return extend_coefficients(f, int(need * 1.05) + 16)
    forms = cusp_eigenforms(f.weight, int(need * 1.05) + 16)
    for g in forms:
        if g.label == f.label:
            return g
    raise LookupError(f"no eigenform labelled {f.label}")
