"""Identity reports and their JSON-lines / CSV serialisation."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field


def _c(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


@dataclass
class IdentityReport:
    identity_id: str
    lhs: complex
    lhs_error: float
    rhs: complex
    rhs_error: float
    tolerance: float
    inputs: dict = field(default_factory=dict)
    wall_ms: float = 0.0
    mode: str = "relative"  # "absolute" for identities whose sides vanish, "bound" for |lhs| <= |rhs|
    diagnostics: dict = field(default_factory=dict)
    rejected: str = ""  # non-empty when the inputs failed a precondition

    @property
    def relative_discrepancy(self) -> float:
        if self.mode == "bound":
            return max(0.0, abs(complex(self.lhs)) - abs(complex(self.rhs)))
        diff = abs(complex(self.lhs) - complex(self.rhs))
        if self.mode == "absolute":
            return diff
        denom = abs(complex(self.rhs))
        if denom == 0:
            return 0.0 if diff == 0 else math.inf
        return diff / denom

    @property
    def allowance(self) -> float:
        """tolerance plus the combined error bounds, in the units of relative_discrepancy."""
        err = self.lhs_error + self.rhs_error
        if self.mode in ("absolute", "bound"):
            return self.tolerance + err
        denom = abs(complex(self.rhs))
        return self.tolerance + (err / denom if denom else math.inf)

    @property
    def passed(self) -> bool:
        if self.rejected:
            return False
        return self.relative_discrepancy <= self.allowance

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lhs"] = _c(self.lhs)
        d["rhs"] = _c(self.rhs)
        d["relative_discrepancy"] = self.relative_discrepancy
        d["pass"] = self.passed
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), default=_jsonable)

    @classmethod
    def from_dict(cls, d: dict) -> "IdentityReport":
        keys = {f for f in cls.__dataclass_fields__}
        kw = {k: v for k, v in d.items() if k in keys}
        kw["lhs"] = complex(*d["lhs"])
        kw["rhs"] = complex(*d["rhs"])
        return cls(**kw)

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        if self.rejected:
            return f"{verdict} {self.identity_id}: rejected ({self.rejected})"
        return (f"{verdict} {self.identity_id}: lhs={complex(self.lhs):.12g} rhs={complex(self.rhs):.12g} "
                f"disc={self.relative_discrepancy:.3e} tol={self.tolerance:.0e}")


def _jsonable(x):
    if isinstance(x, complex):
        return _c(x)
    if hasattr(x, "tolist"):
        return x.tolist()
    if hasattr(x, "item"):
        return x.item()
    return str(x)


CSV_FIELDS = ("identity_id", "inputs", "lhs", "rhs", "rel_disc", "pass")


def write_jsonl(reports, fh) -> None:
    for r in reports:
        fh.write(r.to_json() + "\n")


def read_jsonl(fh) -> list[IdentityReport]:
    return [IdentityReport.from_dict(json.loads(line)) for line in fh if line.strip()]


def write_csv(reports, fh) -> None:
    w = csv.writer(fh)
    w.writerow(CSV_FIELDS)
    for r in reports:
        w.writerow([r.identity_id, json.dumps(r.inputs, default=_jsonable, sort_keys=True),
                    repr(complex(r.lhs)), repr(complex(r.rhs)), f"{r.relative_discrepancy:.6e}",
                    "pass" if r.passed else "fail"])


def csv_text(reports) -> str:
    buf = io.StringIO()
    write_csv(reports, buf)
    return buf.getvalue()
