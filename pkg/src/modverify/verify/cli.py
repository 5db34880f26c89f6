"""Command line front end: one verb per identity, JSON-lines and CSV output."""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import mpmath
import numpy as np

from ..maass import MaassForm, solve
from ..qexp import HoloEigenform, cusp_eigenforms
from . import identities as ids
from . import local
from .cache import FormCache
from .report import IdentityReport, read_jsonl, write_csv, write_jsonl
from .thirdmoment import run_thrd_experiment

# first even forms bracketed narrowly so the scan is quick
EVEN_BRACKETS = [(13.7, 13.85), (17.7, 17.8), (19.38, 19.46), (21.28, 21.36), (22.75, 22.82), (24.08, 24.14)]
ODD_BRACKETS = [(9.4, 9.7), (12.1, 12.25), (14.3, 14.4)]

DEFAULTS = {"precision_digits": 30, "coeff_count": 4096, "eps": 1e-10, "threads": 1, "out": "modverify-out"}


def read_config(path: str) -> dict:
    """Plain key=value lines; '#' starts a comment; keys use the long flag names."""
    out = {}
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line without '=': {raw!r}")
        k, v = (x.strip() for x in line.split("=", 1))
        out[k.replace("-", "_")] = v
    return out


def _complex(text: str) -> complex:
    return complex(text.replace(" ", "").replace("i", "j"))


def _holo_forms(weights, N, branch=None):
    forms = []
    for k in weights:
        fs = cusp_eigenforms(k, N)
        if branch is not None and len(fs) > 1:
            fs = (fs[branch - 1],)
        forms.extend(fs)
    return forms


def _load_form(path: str):
    text = Path(path).read_text()
    doc = json.loads(text)
    return MaassForm.from_json(text) if "t" in doc else HoloEigenform.from_json(text)


def _maass_forms(parity: int, count: int):
    brackets = ODD_BRACKETS if parity else EVEN_BRACKETS
    forms = []
    for a, b in brackets[:count]:
        forms.extend(solve((a, b), parity))
    return forms


def _run_jobs(jobs, threads: int) -> list[IdentityReport]:
    """Independent checks, optionally on a thread pool; each job returns a report or a list."""
    if threads > 1:
        with ThreadPoolExecutor(threads) as pool:
            results = list(pool.map(lambda j: j(), jobs))
    else:
        results = [j() for j in jobs]
    out = []
    for r in results:
        out.extend(r if isinstance(r, list) else [r])
    return out


# --- verbs ---------------------------------------------------------------------------

def cmd_forms(args, cache):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for k in args.weights:
        for f in cusp_eigenforms(k, args.coeff_count):
            path = out / f"form_{f.label}.json"
            path.write_text(f.to_json())
            a = [mpmath.nstr(f.a(n), 15) for n in range(1, 6)]
            print(f"{f.label}: a_1..a_5 = {a} -> {path}")
    return []


def cmd_maass(args, cache):
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    forms = solve((args.tmin, args.tmax), args.parity, step=args.step)
    for f in forms:
        path = out / f"maass_{'odd' if f.parity else 'even'}_{f.t:.6f}.json"
        path.write_text(f.to_json())
        print(f"t = {f.t:.10f} parity {f.parity} digits {f.certified_digits} "
              f"hecke residual {f.hecke_residual():.1e} -> {path}")
    if not forms:
        print("no eigenvalues in the interval")
    return []


def cmd_norm(args, cache):
    forms = [_load_form(p) for p in args.form] if args.form else _holo_forms(args.weights, args.coeff_count)
    return [ids.check_ransel(f, args.eps, cache) for f in forms]


def cmd_eis(args, cache):
    reports = []
    for f in _holo_forms(args.weights, args.coeff_count):
        for s in args.s:
            reports.extend(ids.check_eismth(f, _complex(s), args.eps, cache))
            if args.functional_equation:
                reports.append(ids.eismth_functional_equation(f, _complex(s), args.eps, cache))
    return reports


def cmd_watson(args, cache):
    if args.maass:
        parity = 1 if args.maass == "odd" else 0
        phi = _maass_forms(parity, 1)[0]
        return [ids.check_watson(phi, phi, phi, args.eps, cache)]
    if len(args.weights) != 3:
        raise SystemExit("watson needs three weights (or --maass even|odd)")
    branches = [args.branch] if args.branch else [1, 2] if len(cusp_eigenforms(max(args.weights), 16)) == 2 else [1]
    reports = []
    for b in branches:
        fs = [_holo_forms([k], args.coeff_count, b if k == max(args.weights) else None)[0] for k in args.weights]
        reports.append(ids.check_watson(*fs, eps=args.eps, cache=cache))
    return reports


def cmd_localzeta(args, cache):
    rng = np.random.default_rng(args.seed)
    jobs = []
    for i in range(args.trials):
        p = args.primes[i % len(args.primes)]
        s = args.s[(i // len(args.primes)) % len(args.s)]
        sat = [local.random_tempered_satake(rng, p) for _ in range(3)]
        jobs.append(lambda p=p, s=s, sat=sat: local.check_local_zeta_unramified(p, s, *sat, eps=args.eps))
    return _run_jobs(jobs, args.threads)


IKEDA_POINTS = [
    (1.0, (0.1j, 0.2j, 0.3j)),
    (1.25, (0.5j, 1j, 0.2j)),
    (0.75, (0.1, 0.2j, 0.15)),
    (2.0, (2j, 1j, 0.5j)),
    (1.5, (3j, 0.25, 1.5j)),
]
GK_POINTS = [(12, 8, 4), (28, 16, 12), (20, 12, 8)]
KK0_POINTS = [(12, 0.25j), (4, 0.2), (6, 1.5j)]


def arch_jobs(eps: float, which=("ikeda", "gk", "kk0", "boundary")) -> list:
    jobs = []
    if "ikeda" in which:
        jobs += [lambda s=s, sj=sj: local.check_ikeda_arch(s, *sj, eps=eps) for s, sj in IKEDA_POINTS]
    if "gk" in which:
        jobs += [lambda w=w, s=s: local.check_gross_kudla_arch(*w, s, eps=eps) for w in GK_POINTS for s in (0, 1)]
    if "kk0" in which:
        jobs += [lambda k=k, s3=s3: local.check_kk0_arch(k, s3, eps=eps) for k, s3 in KK0_POINTS]
    if "boundary" in which:
        jobs.append(local.check_boundary)
    return jobs


def cmd_arch(args, cache):
    return _run_jobs(arch_jobs(args.eps, args.which), args.threads)


def cmd_thirdmoment(args, cache):
    forms = _maass_forms(0, args.count)
    rep = run_thrd_experiment(forms, args.eps, cache)
    print(rep.table())
    return rep.reports()


def cmd_report(args, cache):
    reports = []
    for path in args.files:
        with open(path) as fh:
            reports.extend(read_jsonl(fh))
    return reports


# --- driver --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="modverify", description=__doc__)
    ap.add_argument("--precision-digits", type=int, help="mpmath working precision")
    ap.add_argument("--coeff-count", type=int, help="q-expansion length for holomorphic forms")
    ap.add_argument("--eps", type=float, help="target accuracy passed to quadrature and AFE")
    ap.add_argument("--threads", type=int, help="worker threads for independent checks")
    ap.add_argument("--out", help="output directory for reports.jsonl and summary.csv")
    ap.add_argument("--config", help="key=value file supplying any of the flags above")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("forms", help="Hecke eigenbases of S_k as JSON")
    p.add_argument("weights", type=int, nargs="+")
    p.set_defaults(run=cmd_forms)

    p = sub.add_parser("maass", help="locate even or odd Maass forms in a t interval")
    p.add_argument("tmin", type=float)
    p.add_argument("tmax", type=float)
    p.add_argument("--parity", type=int, choices=(0, 1), default=0)
    p.add_argument("--step", type=float, default=0.02)
    p.set_defaults(run=cmd_maass)

    p = sub.add_parser("norm", help="Petersson norm against 2 c_inf L*(1, Ad)")
    p.add_argument("weights", type=int, nargs="*", default=[12, 16, 20])
    p.add_argument("--form", action="append", help="eigenform JSON archive (repeatable)")
    p.set_defaults(run=cmd_norm)

    p = sub.add_parser("eis", help="Eisenstein lift against the Rankin-Selberg quotient")
    p.add_argument("weights", type=int, nargs="*", default=[12])
    p.add_argument("--s", action="append", help="spectral point, e.g. 2 or 0.5+3i (repeatable)")
    p.add_argument("--functional-equation", action="store_true", help="also check s <-> 1 - s")
    p.set_defaults(run=cmd_eis)

    p = sub.add_parser("watson", help="triple product identity")
    p.add_argument("weights", type=int, nargs="*", default=[28, 16, 12])
    p.add_argument("--branch", type=int, choices=(1, 2), help="Galois branch of the largest weight")
    p.add_argument("--maass", choices=("even", "odd"), help="(phi, phi, phi) for the first Maass form")
    p.set_defaults(run=cmd_watson)

    p = sub.add_parser("localzeta", help="unramified local zeta sum against its closed form")
    p.add_argument("--trials", type=int, default=30)
    p.add_argument("--primes", type=int, nargs="+", default=[2, 3, 5])
    p.add_argument("--s", type=float, nargs="+", default=[1.0, 1.25, 2.0])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=cmd_localzeta)

    p = sub.add_parser("arch", help="archimedean zeta integrals")
    p.add_argument("--which", nargs="+", choices=("ikeda", "gk", "kk0", "boundary"),
                   default=["ikeda", "gk", "kk0", "boundary"])
    p.set_defaults(run=cmd_arch)

    p = sub.add_parser("thirdmoment", help="third moments of the first even Maass forms")
    p.add_argument("--count", type=int, default=5)
    p.set_defaults(run=cmd_thirdmoment)

    p = sub.add_parser("report", help="re-evaluate stored JSON-lines reports")
    p.add_argument("files", nargs="+")
    p.set_defaults(run=cmd_report)
    return ap


def resolve_options(args) -> None:
    """Flags override the config file, which overrides the defaults."""
    cfg = read_config(args.config) if args.config else {}
    for key, default in DEFAULTS.items():
        if getattr(args, key, None) is None:
            setattr(args, key, type(default)(cfg.get(key, default)))
    if args.verb == "eis" and not args.s:
        args.s = ["2", "0.5+3i", "0.5+7i"]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    resolve_options(args)
    mpmath.mp.dps = args.precision_digits
    cache = FormCache(args.coeff_count)
    reports = args.run(args, cache)
    if not reports:
        return 0
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    mode = "w" if args.verb == "report" else "a"
    with open(out / "reports.jsonl", mode) as fh:
        write_jsonl(reports, fh)
    with open(out / "summary.csv", "w", newline="") as fh:
        write_csv(reports, fh)
    for r in reports:
        print(r.summary())
    bad = sum(not r.passed for r in reports)
    print(f"{len(reports) - bad}/{len(reports)} passed; reports in {out}")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
