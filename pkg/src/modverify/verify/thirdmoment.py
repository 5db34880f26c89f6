"""Third moments of even Maass forms against the lambda^{-1/12} trend."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from ..maass import MaassForm
from ..surface.forms import MaassFunction, Product
from ..surface.quadrature import integrate_function
from .cache import FormCache
from .constants import ConstantTable
from .identities import TOL_WATSON_MAASS, _default_cache, _l_values, _completed_error
from .report import IdentityReport

TREND_FACTOR = 10.0


@dataclass
class ThirdMomentRow:
    t: float
    eigenvalue: float
    moment: float  # |int psi^3| with ||psi|| = 1
    moment_error: float
    trend: float  # lambda^{-1/12}
    watson: IdentityReport

    @property
    def ratio(self) -> float:
        return self.moment / self.trend


@dataclass
class ThirdMomentReport:
    rows: list[ThirdMomentRow]
    excluded: list[str] = field(default_factory=list)
    wall_ms: float = 0.0

    @property
    def trend_ok(self) -> bool:
        """Each ratio |I_j| lambda_j^{1/12} stays within a factor 10 of every earlier one."""
        r = [row.ratio for row in self.rows]
        return all(r[j] <= TREND_FACTOR * r[i] for j in range(len(r)) for i in range(j))

    @property
    def watson_ok(self) -> bool:
        return all(row.watson.passed for row in self.rows)

    @property
    def passed(self) -> bool:
        return len(self.rows) >= 4 and self.trend_ok and self.watson_ok

    def trend_report(self) -> IdentityReport:
        r = [row.ratio for row in self.rows]
        worst = max((r[j] / r[i] for j in range(len(r)) for i in range(j)), default=0.0)
        return IdentityReport("thirdmoment-trend", worst, 0.0, TREND_FACTOR, 0.0, 0.0,
                              {"t": [row.t for row in self.rows]}, self.wall_ms, mode="bound",
                              diagnostics={"ratios": r, "excluded": self.excluded})

    def reports(self) -> list[IdentityReport]:
        return [row.watson for row in self.rows] + [self.trend_report()]

    def table(self) -> str:
        lines = [f"{'t':>14} {'lambda':>12} {'|int psi^3|':>14} {'lambda^-1/12':>13} {'ratio':>9} {'watson':>14}"]
        for row in self.rows:
            lines.append(f"{row.t:14.9f} {row.eigenvalue:12.4f} {row.moment:14.8e} {row.trend:13.6f} "
                         f"{row.ratio:9.5f} {row.watson.rhs.real:14.8e}")
        return "\n".join(lines)


def third_moment(form: MaassForm, eps: float = 1e-10) -> tuple[float, float]:
    """|int psi^3| / ||psi||^3 by quadrature, with its error bound."""
    F = MaassFunction(form)
    cube = integrate_function(Product(F, F, F), eps)
    norm = integrate_function(Product(F, F), eps)
    val = abs(cube.value) / norm.value ** 1.5
    err = val * (cube.error / max(abs(cube.value), 1e-300) + 1.5 * norm.error / norm.value)
    return val, err


def watson_route(form: MaassForm, eps: float = 1e-10, cache: FormCache | None = None) -> tuple[float, float]:
    """sqrt(Q_inf / 8 * L*(1/2, triple) / L*(1, Ad)^3) for an even form."""
    cache = cache or _default_cache
    Q = float(ConstantTable.watson_prefactor("maass", 1))
    _, tri, ads = _l_values([form] * 3, eps, cache)
    ad = ads[0]
    v = Q * tri.completed.real / ad.completed.real ** 3
    rel = _completed_error(tri) / abs(tri.completed) + 3 * _completed_error(ad) / abs(ad.completed)
    root = math.sqrt(max(v, 0.0))
    return root, 0.5 * rel * root


def run_thrd_experiment(maass_forms: list[MaassForm], eps: float = 1e-10,
                        cache: FormCache | None = None) -> ThirdMomentReport:
    t0 = time.perf_counter()
    rows, excluded = [], []
    for f in sorted(maass_forms, key=lambda g: g.t):
        if f.parity:
            excluded.append(f.label or f"odd t={f.t}")  # the cube is odd in x
            continue
        t1 = time.perf_counter()
        m, me = third_moment(f, eps)
        w, we = watson_route(f, eps, cache)
        rep = IdentityReport("thirdmoment-watson", m, me, w, we, TOL_WATSON_MAASS,
                             {"form": f.label, "t": f.t}, (time.perf_counter() - t1) * 1e3)
        lam = f.eigenvalue
        rows.append(ThirdMomentRow(f.t, lam, m, me, lam ** (-1 / 12), rep))
    return ThirdMomentReport(rows, excluded, (time.perf_counter() - t0) * 1e3)
