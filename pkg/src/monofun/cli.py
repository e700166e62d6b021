"""Command-line front end.

    monofun eval      --fn f --p 0.5 --q 1 --t 4
    monofun verify    --rep canonical --p 0.5 --q 1 --t-grid 1e-3:1e3:40:log
    monofun verify    --suite monotonicity --p 0.3 --q 0.9 --dims 2,3,4 --trials 500 --seed 7
    monofun tabulate  --fn density --p 0.5 --q 1 --grid 0.01:10:100:log --out density.csv
    monofun metric    --p 0.5 --q 1 --rho rho.json --a a.json [--b b.json]

Exit codes: 0 success, 1 numerical failure / failed check / I/O or dimension
error, 2 invalid parameters.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import asdict, dataclass, field

import numpy as np

from . import representations as rep
from . import scalar
from .errors import ConvergenceError, DimensionError, DomainError
from .matrix import load_matrix, monotonicity_suite
from .metric import DensityMatrix, axiom_suite, metric_eval
from .quadrature import QuadratureConfig

SEED_ENV = "MONOFUN_SEED"


class UsageError(Exception):
    """Invalid command-line parameters (exit code 2)."""


@dataclass
class GridSpec:
    lo: float
    hi: float
    count: int
    spacing: str = "log"

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) != 4:
            raise UsageError(f"grid spec must be min:max:count:{{log|linear}}, got {text!r}")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"bad grid spec {text!r}: {exc}") from None
        spacing = parts[3]
        if spacing not in ("log", "linear"):
            raise UsageError(f"grid spacing must be 'log' or 'linear', got {spacing!r}")
        if count < 1 or not (lo <= hi) or (count > 1 and lo == hi):
            raise UsageError(f"grid needs min < max and count >= 1, got {text!r}")
        if spacing == "log" and lo <= 0:
            raise UsageError("log grids need a positive minimum")
        return cls(lo, hi, count, spacing)

    def points(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.logspace(math.log10(self.lo), math.log10(self.hi), self.count)
        return np.linspace(self.lo, self.hi, self.count)


@dataclass
class RunConfig:
    command: str
    pq: scalar.ExponentPair
    seed: int
    quad: QuadratureConfig = field(default_factory=QuadratureConfig)
    options: dict = field(default_factory=dict)


def format_number(x: float) -> str:
    """Fixed 15-decimal form when it re-parses to the same double, otherwise
    the shortest round-trip representation."""
    x = float(x)
    fixed = f"{x:.15f}"
    return fixed if float(fixed) == x else repr(x)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=True)


def _emit(text: str, path: str | None):
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


# ---------------------------------------------------------------- eval

EVAL_FNS = ("f", "g", "sharp", "c", "h", "density", "beta", "fop-weight")


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"--{flag} is required for this function")
    return value


def cmd_eval(cfg: RunConfig) -> int:
    o = cfg.options
    fn, pq = o["fn"], cfg.pq
    if fn == "f":
        value = scalar.eval_f(pq, _need(o["t"], "t"))
    elif fn == "g":
        value = scalar.eval_g(pq, _need(o["t"], "t"))
    elif fn == "sharp":
        value = scalar.sharp(pq, _need(o["t"], "t"))
    elif fn == "c":
        value = scalar.mc_function(pq, _need(o["x"], "x"), _need(o["y"], "y"))
    elif fn == "h":
        value = scalar.weight_h(pq, _need(o["lam"], "lambda"))
    elif fn == "density":
        value = scalar.canonical_density(pq, _need(o["lam"], "lambda"))
    elif fn == "fop-weight":
        value = scalar.fop_weight(pq, _need(o["lam"], "lambda"))
    else:
        value = scalar.beta_closed_form(pq)
    if not math.isfinite(value):
        print(f"error: non-finite result {value!r}", file=sys.stderr)
        return 1
    print(format_number(value))
    return 0


# ---------------------------------------------------------------- verify

REPRESENTATIONS = {
    # name: (reconstruction, reference, absolute floor, error estimate is relative)
    "ando": (rep.ando_average, scalar.eval_f, 1e-8, False),
    "canonical": (rep.canonical_reconstruct, scalar.eval_f, 1e-7, False),
    "exponential": (rep.exponential_reconstruct, scalar.eval_f, 1e-7, True),
    "fop": (rep.fop_reconstruct, scalar.eval_g, 1e-7, True),
}


def verify_representation(name: str, pq: scalar.ExponentPair, ts, quad: QuadratureConfig) -> dict:
    """Compare one reconstruction against its closed form at each t.

    A point passes when |reconstruction - closed form| is within
    max(floor, 10 * error estimate), the estimate being scaled by |value|
    for the exponential forms.
    """
    fn, ref_fn, floor, relative = REPRESENTATIONS[name]
    points = []
    for t in ts:
        t = float(t)
        out = fn(pq, t, quad)
        ref = float(ref_fn(pq, t))
        dev = abs(out.value - ref)
        est = out.abs_error_estimate * (abs(out.value) if relative else 1.0)
        allowed = max(floor, 10.0 * est)
        points.append(
            {
                "t": t,
                "value": out.value,
                "reference": ref,
                "deviation": dev,
                "abs_error_estimate": out.abs_error_estimate,
                "allowed": allowed,
                "converged": out.converged,
                "pass": bool(dev <= allowed),
            }
        )
    worst = max(points, key=lambda pt: pt["deviation"] / pt["allowed"])
    return {
        "check": f"representation:{name}",
        "p": pq.p,
        "q": pq.q,
        "points": points,
        "max_deviation": max(pt["deviation"] for pt in points),
        "worst": worst,
        "passed": all(pt["pass"] for pt in points),
    }


def pick_grid(pq: scalar.ExponentPair, r_values, theta_count: int) -> dict:
    """Count sign violations of Im f(z), b and a on an (r, theta) grid of the
    open upper half-plane."""
    theta = np.linspace(0.0, np.pi, theta_count + 2)[1:-1]
    r, th = np.meshgrid(np.asarray(r_values, dtype=float), theta, indexing="ij")
    z = scalar.ComplexPoint(r, th)
    im_f = np.imag(scalar.eval_f_complex(pq, z))
    a, b = scalar.im_log_parts(pq, z)
    a, b = np.asarray(a), np.asarray(b)
    report = {"check": "pick-grid", "p": pq.p, "q": pq.q, "points": int(r.size)}
    # for p == q, f is constant: Im f and b vanish identically
    for label, arr in (("im_f", im_f), ("b", b), ("a", a)):
        if pq.is_trivial and label != "a":
            bad = arr != 0
        else:
            bad = ~(arr > 0)
        report[f"{label}_violations"] = int(np.count_nonzero(bad))
        report[f"{label}_min"] = float(arr.min())
        if np.any(bad):
            i = np.unravel_index(np.argmin(arr), arr.shape)
            report[f"{label}_worst_point"] = {"r": float(r[i]), "theta": float(th[i])}
    report["passed"] = all(report[f"{k}_violations"] == 0 for k in ("im_f", "b", "a"))
    return report


def cmd_verify(cfg: RunConfig) -> int:
    o = cfg.options
    if o["rep"]:
        ts = GridSpec.parse(o["t_grid"]).points()
        if np.any(ts <= 0):
            raise UsageError("t grid must be positive")
        result = verify_representation(o["rep"], cfg.pq, ts, cfg.quad)
    elif o["suite"] == "monotonicity":
        rpt = monotonicity_suite(
            cfg.pq, o["which"], _int_list(o["dims"]), o["trials"], o["tol"], cfg.seed
        )
        result = {"check": "monotonicity", "p": cfg.pq.p, "q": cfg.pq.q, **asdict(rpt), "passed": rpt.passed}
    elif o["suite"] == "metric-axioms":
        reports = [asdict(axiom_suite(cfg.pq, d, o["trials"], cfg.seed)) for d in _int_list(o["dims"])]
        for r in reports:
            r["passed"] = all(
                r[k] == 0
                for k in (
                    "positivity_violations",
                    "symmetry_violations",
                    "continuity_violations",
                    "contraction_violations",
                    "unitary_equality_violations",
                )
            )
        result = {"check": "metric-axioms", "p": cfg.pq.p, "q": cfg.pq.q, "dims": reports,
                  "passed": all(r["passed"] for r in reports)}
    else:
        r_values = GridSpec.parse(o["r_grid"]).points()
        result = pick_grid(cfg.pq, r_values, o["theta_count"])
    _emit(_dump(result), o["out"])
    if not result["passed"]:
        worst = result.get("worst")
        print(f"verification failed{': worst point ' + _dump(worst) if worst else ''}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- tabulate

TABULATE_FNS = {
    "density": ("lambda", scalar.canonical_density),
    "h": ("lambda", scalar.weight_h),
    "fop-weight": ("lambda", scalar.fop_weight),
    "f": ("t", scalar.eval_f),
    "g": ("t", scalar.eval_g),
}


def cmd_tabulate(cfg: RunConfig) -> int:
    o = cfg.options
    x_name, fn = TABULATE_FNS[o["fn"]]
    xs = GridSpec.parse(o["grid"]).points()
    values = np.atleast_1d(fn(cfg.pq, xs))
    if o["format"] == "json":
        text = _dump({"fn": o["fn"], "p": cfg.pq.p, "q": cfg.pq.q, "x_name": x_name,
                      "x": xs.tolist(), "value": values.tolist()})
    else:
        lines = [f"# fn={o['fn']} p={cfg.pq.p!r} q={cfg.pq.q!r}", f"{x_name},value"]
        lines += [f"{float(x)!r},{float(v)!r}" for x, v in zip(xs, values)]
        text = "\n".join(lines)
    try:
        _emit(text, o["out"])
    except OSError as exc:
        print(f"error: cannot write {o['out']}: {exc}", file=sys.stderr)
        return 1
    return 0


# ---------------------------------------------------------------- metric


def cmd_metric(cfg: RunConfig) -> int:
    o = cfg.options
    try:
        rho = DensityMatrix(load_matrix(o["rho"]))
    except (DomainError, DimensionError) as exc:
        raise UsageError(f"invalid density matrix {o['rho']}: {exc}") from None
    a = load_matrix(o["a"], hermitian=False)
    b = load_matrix(o["b"], hermitian=False) if o["b"] else None
    value = metric_eval(cfg.pq, rho, a, b).value
    print(f"{format_number(value.real)} {format_number(value.imag)}")
    return 0


# ---------------------------------------------------------------- parsing


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monofun", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--p", type=float, required=True)
        sp.add_argument("--q", type=float, required=True)
        sp.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
        sp.add_argument("--quad-tol", type=float, default=1e-10)
        sp.add_argument("--max-subdivisions", type=int, default=60)
        sp.add_argument("--panel-order", type=int, default=15)

    sp = sub.add_parser("eval", help="evaluate a scalar function")
    common(sp)
    sp.add_argument("--fn", choices=EVAL_FNS, required=True)
    sp.add_argument("--t", type=float)
    sp.add_argument("--x", type=float)
    sp.add_argument("--y", type=float)
    sp.add_argument("--lambda", dest="lam", type=float)

    sp = sub.add_parser("verify", help="check a representation or run a property suite")
    common(sp)
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--rep", choices=sorted(REPRESENTATIONS))
    group.add_argument("--suite", choices=("monotonicity", "metric-axioms", "pick-grid"))
    sp.add_argument("--t-grid", default="1e-3:1e3:20:log")
    sp.add_argument("--r-grid", default="1e-3:1e3:50:log")
    sp.add_argument("--theta-count", type=int, default=50)
    sp.add_argument("--dims", default="2,3,4")
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--which", choices=("f", "g"), default="f")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("--out")

    sp = sub.add_parser("tabulate", help="write a function table")
    common(sp)
    sp.add_argument("--fn", choices=sorted(TABULATE_FNS), required=True)
    sp.add_argument("--grid", required=True)
    sp.add_argument("--out")
    sp.add_argument("--format", choices=("csv", "json"), default="csv")

    sp = sub.add_parser("metric", help="evaluate K_rho(A, B)")
    common(sp)
    sp.add_argument("--rho", required=True)
    sp.add_argument("--a", required=True)
    sp.add_argument("--b")
    return parser


def _config(args: argparse.Namespace) -> RunConfig:
    pq = scalar.ExponentPair(args.p, args.q)
    seed = args.seed
    if seed is None:
        env = os.environ.get(SEED_ENV)
        try:
            seed = int(env) if env else 0
        except ValueError:
            raise UsageError(f"${SEED_ENV} must be an integer, got {env!r}") from None
    try:
        quad = QuadratureConfig(args.quad_tol, args.max_subdivisions, args.panel_order)
    except DomainError as exc:
        raise UsageError(str(exc)) from None
    skip = {"command", "p", "q", "seed", "quad_tol", "max_subdivisions", "panel_order"}
    options = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(args.command, pq, seed, quad, options)


COMMANDS = {"eval": cmd_eval, "verify": cmd_verify, "tabulate": cmd_tabulate, "metric": cmd_metric}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DimensionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ConvergenceError, FloatingPointError, OverflowError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
