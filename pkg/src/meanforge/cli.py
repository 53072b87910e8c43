"""
Command-line interface: ``meanforge {mean,verify,kernel,classcheck,contour,grid}``.

Results go to stdout as CSV (default) or JSON; diagnostics and wall time go
to stderr so stdout is byte-stable across runs with identical flags.  Numbers
are written with 17 significant digits, complex values as separate real and
imaginary columns.

Parameter lists are separated by ``;`` and may use ``lin:a:b:n`` or
``log:a:b:n``; a complex value is written ``re,im``; a tuple for ``--a`` is
comma separated.  Every combination of the given lists is evaluated.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 quadrature non-convergence.

Settings are resolved as flags > the key=value file named by
``MEANFORGE_CONFIG`` > built-in defaults.  Recognised keys: ``format``,
``abs_tol``, ``rel_tol``, ``max_depth``, ``max_evals``, ``jobs``, ``step``,
``order``, ``margin_tol``.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import math
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Sequence

import numpy as np

from . import __version__
from .classcheck import (
    DEFAULT_MARGIN_TOL,
    MAX_ORDER,
    Claim,
    ClassVerdict,
    claims_corpus,
    named_function,
    negative_controls,
    run_claim,
)
from .contour import ContourSpec, cauchy_contour_eval
from .errors import DomainError, QuadratureError
from .kernels import f_kernel, h_density, p_kernel, q_lambda, q_weight, rho
from .means import (
    MeanPair,
    PositiveTuple,
    StolarskyParams,
    WeightedPair,
    an,
    gn,
    mean,
    stolarsky,
    weighted_geometric,
)
from .quadrature import QuadConfig
from .representations import (
    ResidualReport,
    a_l_diff,
    geometric_repr_rho,
    gn_repr,
    h_alpha_repr,
    harmonic_repr,
    log_mean_integral_form,
    log_mean_repr,
    weighted_am_gm_diff,
    weighted_geometric_repr,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NONCONVERGED = 0, 1, 2, 3

DEFAULTS: dict[str, Any] = {
    "format": "csv",
    "abs_tol": 1e-12,
    "rel_tol": 1e-10,
    "max_depth": 12,
    "max_evals": 2_000_000,
    "jobs": 1,
    "step": 1e-2,
    "order": MAX_ORDER,
    "margin_tol": DEFAULT_MARGIN_TOL,
}
_CASTS: dict[str, Callable[[str], Any]] = {
    "format": str, "abs_tol": float, "rel_tol": float, "max_depth": int,
    "max_evals": int, "jobs": int, "step": float, "order": int, "margin_tol": float,
}

IDENTITIES = ("h-alpha", "weighted-geometric", "am-gm", "log-mean", "a-l",
              "geometric-rho", "harmonic", "gn", "log-integral")

RESIDUAL_COLUMNS = ("identity", "x", "y", "lambda", "alpha", "z", "s", "a",
                    "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_res", "rel_res",
                    "err_est", "evals", "converged", "passed")


class UsageError(Exception):
    pass


# --- parsing -------------------------------------------------------------------

def parse_number(text: str) -> float | complex:
    """``"1.5"`` -> 1.5, ``"1,-2"`` -> (1-2j)."""
    parts = text.strip().split(",")
    try:
        if len(parts) == 1:
            return float(parts[0])
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"cannot parse number {text!r}; use 'x' or 're,im'")


def parse_list(text: str, item: Callable[[str], Any] = parse_number) -> list:
    out: list = []
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if chunk.startswith(("lin:", "log:")):
            try:
                kind, a, b, n = chunk.split(":")
                a, b, n = float(a), float(b), int(n)
            except ValueError:
                raise UsageError(f"range spec {chunk!r} must be lin:a:b:n or log:a:b:n") from None
            if n < 1 or (kind == "log" and not (a > 0 and b > 0)):
                raise UsageError(f"invalid range spec {chunk!r}")
            pts = np.linspace(a, b, n) if kind == "lin" else np.geomspace(a, b, n)
            out.extend(float(p) for p in pts)
        else:
            out.append(item(chunk))
    if not out:
        raise UsageError(f"empty list {text!r}")
    return out


def parse_tuple(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(v) for v in text.split(","))
    except ValueError:
        raise UsageError(f"cannot parse tuple {text!r}") from None


def _real(v, name: str) -> float:
    if isinstance(v, complex):
        raise UsageError(f"{name} must be real")
    return float(v)


def read_config_file(path: str) -> dict[str, Any]:
    out: dict[str, Any] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise UsageError(f"{path}:{lineno}: expected key=value")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CASTS:
                raise UsageError(f"{path}:{lineno}: unknown key {key!r}")
            try:
                out[key] = _CASTS[key](value)
            except ValueError:
                raise UsageError(f"{path}:{lineno}: bad value for {key}") from None
    return out


def resolve_config(args: argparse.Namespace, environ=None) -> dict[str, Any]:
    environ = os.environ if environ is None else environ
    cfg = dict(DEFAULTS)
    path = environ.get("MEANFORGE_CONFIG")
    if path:
        try:
            cfg.update(read_config_file(path))
        except OSError as exc:
            raise UsageError(f"cannot read MEANFORGE_CONFIG file: {exc}") from None
    for key in DEFAULTS:
        v = getattr(args, key, None)
        if v is not None:
            cfg[key] = v
    if cfg["format"] not in ("csv", "json"):
        raise UsageError("format must be csv or json")
    if cfg["jobs"] < 1:
        raise UsageError("jobs must be >= 1")
    return cfg


def quad_config(cfg: dict[str, Any]) -> QuadConfig:
    try:
        return QuadConfig(cfg["abs_tol"], cfg["rel_tol"], cfg["max_depth"], cfg["max_evals"])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


# --- output --------------------------------------------------------------------

def fmt_number(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    if isinstance(v, complex):
        return f"{format(v.real, '.17g')},{format(v.imag, '.17g')}"
    if isinstance(v, tuple):
        return ",".join(fmt_number(t) for t in v)
    return str(v)


def _json_value(v) -> str:
    if v is None:
        return "null"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        return format(v, ".17g") if math.isfinite(v) else "null"
    if isinstance(v, complex):
        return f"[{_json_value(v.real)}, {_json_value(v.imag)}]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(x)}" for k, x in v.items()) + "}"
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_json_value(x) for x in v) + "]"
    return json.dumps(str(v))


@dataclass
class RunReport:
    command: list[str]
    config: dict[str, Any]
    columns: Sequence[str]
    rows: list[dict[str, Any]] = field(default_factory=list)
    summary: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0

    def render(self, fmt: str) -> str:
        if fmt == "json":
            doc = {"command": self.command, "config": self.config,
                   "rows": [{c: r.get(c) for c in self.columns} for r in self.rows],
                   "summary": self.summary}
            return _json_value(doc) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.columns)
        for r in self.rows:
            writer.writerow([fmt_number(r.get(c)) for c in self.columns])
        return buf.getvalue()


def residual_row(rep: ResidualReport) -> dict[str, Any]:
    inp = rep.inputs
    lhs, rhs = complex(rep.lhs), complex(rep.rhs)
    return {
        "identity": rep.identity,
        "x": inp.get("x"), "y": inp.get("y"), "lambda": inp.get("lambda"),
        "alpha": inp.get("alpha"), "z": inp.get("z"), "s": inp.get("s"),
        "a": inp.get("a"),
        "lhs_re": lhs.real, "lhs_im": lhs.imag, "rhs_re": rhs.real, "rhs_im": rhs.imag,
        "abs_res": rep.abs_residual, "rel_res": rep.rel_residual,
        "err_est": rep.rhs_err_estimate, "evals": rep.evals,
        "converged": rep.converged, "passed": rep.passed,
    }


def _pmap(fn, items, jobs: int) -> list:
    if jobs <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


# --- verify --------------------------------------------------------------------

def _verify_tasks(identity: str, p: dict[str, list]) -> list[Callable[[QuadConfig], list[ResidualReport]]]:
    """One closure per grid point; each returns a list of reports."""
    tasks = []
    if identity == "h-alpha":
        for alpha, z in itertools.product(p["alpha"], p["z"]):
            tasks.append(lambda q, a=_real(alpha, "alpha"), z=z: [h_alpha_repr(a, z, q)])
    elif identity == "weighted-geometric":
        for x, y, lam, z in itertools.product(p["x"], p["y"], p["lambda"], p["z"]):
            w = WeightedPair(MeanPair(_real(x, "x"), _real(y, "y")), _real(lam, "lambda"))
            tasks.append(lambda q, w=w, z=z: [weighted_geometric_repr(w, z, q)])
    elif identity == "am-gm":
        for x, y, lam in itertools.product(p["x"], p["y"], p["lambda"]):
            w = WeightedPair(MeanPair(_real(x, "x"), _real(y, "y")), _real(lam, "lambda"))
            tasks.append(lambda q, w=w: [weighted_am_gm_diff(w, q)])
    elif identity in ("log-mean", "geometric-rho"):
        fn = log_mean_repr if identity == "log-mean" else geometric_repr_rho
        for x, y, z in itertools.product(p["x"], p["y"], p["z"]):
            m = MeanPair(_real(x, "x"), _real(y, "y"))
            tasks.append(lambda q, m=m, z=z, fn=fn: [fn(m, z, q)])
    elif identity in ("a-l", "log-integral"):
        fn = a_l_diff if identity == "a-l" else log_mean_integral_form
        for x, y in itertools.product(p["x"], p["y"]):
            m = MeanPair(_real(x, "x"), _real(y, "y"))
            tasks.append(lambda q, m=m, fn=fn: [fn(m, q)])
    elif identity == "harmonic":
        for x, y, s in itertools.product(p["x"], p["y"], p["s"]):
            m = MeanPair(_real(x, "x"), _real(y, "y"))
            tasks.append(lambda q, m=m, s=_real(s, "s"): harmonic_repr(m, s, q))
    elif identity == "gn":
        for a, z in itertools.product(p["a"], p["z"]):
            tasks.append(lambda q, a=PositiveTuple(a), z=z: [gn_repr(a, z, q)])
    else:
        raise UsageError(f"unknown identity {identity!r}")
    return tasks


_VERIFY_DEFAULTS = {"x": "2", "y": "1", "lambda": "0.5", "alpha": "0.5", "z": "1", "s": "1",
                    "a": "1,2,4"}


def _grid_from_args(args) -> dict[str, list]:
    p = {}
    for key in ("x", "y", "lambda", "alpha", "z", "s"):
        text = getattr(args, key.replace("lambda", "lam"), None) or _VERIFY_DEFAULTS[key]
        p[key] = parse_list(text)
    text = args.a or _VERIFY_DEFAULTS["a"]
    p["a"] = [parse_tuple(t) for t in text.split(";") if t.strip()]
    return p


def run_residuals(identity_tasks, cfg: dict[str, Any]) -> tuple[list[dict], dict[str, Any]]:
    q = quad_config(cfg)
    tasks = [t for t in identity_tasks]
    results = _pmap(lambda t: t(q), tasks, cfg["jobs"])
    reports = [r for group in results for r in group]
    rows = [residual_row(r) for r in reports]
    summary = {
        "rows": len(rows),
        "passed": sum(r.passed for r in reports),
        "failed": sum(not r.passed for r in reports),
        "nonconverged": sum(not r.converged for r in reports),
        "max_rel_res": max((r.rel_residual for r in reports), default=0.0),
        "max_abs_res": max((r.abs_residual for r in reports), default=0.0),
    }
    return rows, summary


def _residual_exit(summary) -> int:
    if summary["nonconverged"]:
        return EXIT_NONCONVERGED
    return EXIT_OK if summary["failed"] == 0 else EXIT_FAIL


# --- acceptance sweeps for `grid` ------------------------------------------------

ACCEPTANCE_GRIDS: dict[str, tuple[str, dict[str, str]]] = {
    "h-alpha": ("h-alpha", {"alpha": "0.1;0.3;0.5;0.7;0.9", "z": "0.5;1;2;10;1,1;3,-2"}),
    "weighted-geometric": ("weighted-geometric", {}),
    "log-mean": ("log-mean", {}),
    "am-gm": ("am-gm", {}),
    "a-l": ("a-l", {}),
    "harmonic": ("harmonic", {"x": "2;3;5", "y": "1", "s": "-0.5;0.5;1;5"}),
    "geometric-rho": ("geometric-rho", {"x": "2;3;5", "y": "1", "z": "0.5;1;5;1,1"}),
    "gn": ("gn", {"a": "1,4;1,2,4;1,2,3,5", "z": "0;1;5;0,1"}),
    "log-integral": ("log-integral", {"x": "2;3;5;10", "y": "0.5;1"}),
}
_WG_PAIRS = ((2.0, 1.0), (5.0, 1.0), (3.0, 2.0), (10.0, 0.5))
_WG_LAMBDAS = (0.1, 0.25, 0.5, 0.75, 0.9)
_WG_Z = (0.1, 1.0, 10.0, 1j, 2 + 3j)
_LOG_PAIRS = ((2.0, 1.0), (3.0, 2.0), (5.0, 1.0))
_LOG_Z = (0.5, 1.0, 5.0, 1 + 1j)


def acceptance_tasks(name: str) -> list:
    if name == "weighted-geometric":
        return [lambda q, w=WeightedPair(MeanPair(*xy), lam), z=z: [weighted_geometric_repr(w, z, q)]
                for xy in _WG_PAIRS for lam in _WG_LAMBDAS for z in _WG_Z]
    if name == "am-gm":
        return [lambda q, w=WeightedPair(MeanPair(*xy), lam): [weighted_am_gm_diff(w, q)]
                for xy in _WG_PAIRS for lam in _WG_LAMBDAS]
    if name == "log-mean":
        return [lambda q, m=MeanPair(*xy), z=z: [log_mean_repr(m, z, q)]
                for xy in _LOG_PAIRS for z in _LOG_Z]
    if name == "a-l":
        return [lambda q, m=MeanPair(*xy): [a_l_diff(m, q)] for xy in _LOG_PAIRS]
    identity, spec = ACCEPTANCE_GRIDS[name]
    p = {}
    for key in ("x", "y", "lambda", "alpha", "z", "s"):
        p[key] = parse_list(spec.get(key, _VERIFY_DEFAULTS[key]))
    p["a"] = [parse_tuple(t) for t in spec.get("a", _VERIFY_DEFAULTS["a"]).split(";")]
    return _verify_tasks(identity, p)


# --- commands ----------------------------------------------------------------------

MEAN_COLUMNS = ("kind", "x", "y", "r", "s", "lambda", "a", "z", "value_re", "value_im")


def cmd_mean(args, cfg) -> tuple[RunReport, int]:
    kind = args.kind
    z = parse_number(args.z) if args.z else 0.0
    row: dict[str, Any] = {"kind": kind}
    if kind in ("gn", "an"):
        if not args.a:
            raise UsageError("--a is required for gn/an")
        a = PositiveTuple(parse_tuple(args.a))
        value = gn(a, z) if kind == "gn" else an(a)
        row.update(a=a.values, z=z if kind == "gn" else None)
    else:
        if args.x is None or args.y is None:
            raise UsageError("--x and --y are required")
        m = MeanPair(args.x, args.y)
        row.update(x=m.x, y=m.y)
        if kind == "stolarsky":
            if args.r is None or args.s is None:
                raise UsageError("--r and --s are required for stolarsky")
            value = stolarsky(StolarskyParams(args.r, args.s), m)
            row.update(r=args.r, s=args.s)
        elif kind == "weighted-geometric":
            if args.lam is None:
                raise UsageError("--lambda is required")
            value = weighted_geometric(WeightedPair(m, float(args.lam)), z)
            row.update({"lambda": float(args.lam), "z": z})
        else:
            if z != 0:
                if isinstance(z, complex):
                    raise UsageError("complex shifts are supported for weighted-geometric and gn")
                m = MeanPair(m.x + z, m.y + z)
                row["z"] = z
            value = mean(kind, m, args.r)
            if kind == "power":
                row["r"] = args.r
    value = complex(value)
    row.update(value_re=value.real, value_im=value.imag)
    return RunReport(sys.argv[1:], cfg, MEAN_COLUMNS, [row]), EXIT_OK


def cmd_verify(args, cfg) -> tuple[RunReport, int]:
    tasks = _verify_tasks(args.identity, _grid_from_args(args))
    rows, summary = run_residuals(tasks, cfg)
    return RunReport(sys.argv[1:], cfg, RESIDUAL_COLUMNS, rows, summary), _residual_exit(summary)


def cmd_grid(args, cfg) -> tuple[RunReport, int]:
    names = list(ACCEPTANCE_GRIDS) if args.name == "all" else [args.name]
    tasks = [t for n in names for t in acceptance_tasks(n)]
    rows, summary = run_residuals(tasks, cfg)
    return RunReport(sys.argv[1:], cfg, RESIDUAL_COLUMNS, rows, summary), _residual_exit(summary)


KERNEL_COLUMNS = ("kernel", "lambda", "s", "x", "y", "u", "alpha", "mode",
                  "value", "err_est")


def cmd_kernel(args, cfg) -> tuple[RunReport, int]:
    q = quad_config(cfg)
    rows = []
    name = args.name
    s_list = parse_list(args.s) if args.s else [1.0]
    if name == "rho":
        for s in s_list:
            kv = rho(_real(s, "s"), q)
            rows.append({"kernel": name, "s": s, "value": kv.value, "err_est": kv.err_estimate})
    elif name == "F":
        for lam, s in itertools.product(parse_list(args.lam or "0.5"), s_list):
            kv = f_kernel(_real(lam, "lambda"), _real(s, "s"), q)
            rows.append({"kernel": name, "lambda": lam, "s": s, "value": kv.value,
                         "err_est": kv.err_estimate})
    elif name == "P":
        m = MeanPair(args.x if args.x is not None else 2.0, args.y if args.y is not None else 1.0)
        for s in s_list:
            kv = p_kernel(m, _real(s, "s"), q, mode=args.mode)
            rows.append({"kernel": name, "x": m.x, "y": m.y, "s": s, "mode": args.mode,
                         "value": kv.value, "err_est": kv.err_estimate})
    elif name in ("q", "q_lambda", "h_density"):
        for u in parse_list(args.u or "0.25"):
            u = _real(u, "u")
            if name == "q":
                rows.append({"kernel": name, "u": u, "value": q_weight(u), "err_est": 0.0})
            elif name == "q_lambda":
                lam = float(args.lam or 0.5)
                rows.append({"kernel": name, "lambda": lam, "u": u,
                             "value": q_lambda(lam, u), "err_est": 0.0})
            else:
                alpha = float(args.alpha or 0.5)
                rows.append({"kernel": name, "alpha": alpha, "u": u,
                             "value": h_density(alpha, u), "err_est": 0.0})
    else:
        raise UsageError(f"unknown kernel {name!r}")
    return RunReport(sys.argv[1:], cfg, KERNEL_COLUMNS, rows, {"rows": len(rows)}), EXIT_OK


CLASS_COLUMNS = ("name", "class", "expect", "passed", "status", "order", "step",
                 "worst_margin", "witness_t", "witness_k", "as_expected")


def _verdict_row(c: Claim, v: ClassVerdict) -> dict[str, Any]:
    wt, wk = v.witness if v.witness else (None, None)
    return {"name": c.name, "class": c.klass, "expect": c.expect, "passed": v.passed,
            "status": v.status, "order": v.order_tested, "step": v.step,
            "worst_margin": v.worst_margin, "witness_t": wt, "witness_k": wk,
            "as_expected": v.passed == c.expect}


def cmd_classcheck(args, cfg) -> tuple[RunReport, int]:
    order, step, tol = cfg["order"], cfg["step"], cfg["margin_tol"]
    if args.f:
        handle = named_function(args.f)
        grid = tuple(_real(t, "grid") for t in parse_list(args.grid)) if args.grid else None
        claims = [Claim(args.f, args.klass, handle, True, grid)]
    else:
        claims = claims_corpus() + negative_controls()
    verdicts = _pmap(lambda c: run_claim(c, order, step, tol), claims, cfg["jobs"])
    rows = [_verdict_row(c, v) for c, v in zip(claims, verdicts)]
    ok = all(r["as_expected"] for r in rows)
    summary = {"rows": len(rows), "as_expected": sum(r["as_expected"] for r in rows)}
    return RunReport(sys.argv[1:], cfg, CLASS_COLUMNS, rows, summary), EXIT_OK if ok else EXIT_FAIL


CONTOUR_COLUMNS = ("alpha", "z", "epsilon", "r", "lhs_re", "lhs_im", "rhs_re", "rhs_im",
                   "abs_res", "rel_res", "small_arc_abs", "large_arc_dev", "segments_re",
                   "segments_im", "err_est", "evals", "converged", "passed")


def cmd_contour(args, cfg) -> tuple[RunReport, int]:
    q = quad_config(cfg)
    alpha = float(args.alpha)
    z = parse_number(args.z)
    pts = [(e, r) for e in parse_list(args.eps) for r in parse_list(args.r)]

    def one(er):
        e, r = er
        return cauchy_contour_eval(alpha, z, ContourSpec(_real(e, "eps"), _real(r, "r")), q)

    reports = _pmap(one, pts, cfg["jobs"])
    rows = []
    for (e, r), rep in zip(pts, reports):
        pc = rep.inputs["pieces"]
        lhs, rhs = complex(rep.lhs), complex(rep.rhs)
        rows.append({"alpha": alpha, "z": complex(z), "epsilon": e, "r": r,
                     "lhs_re": lhs.real, "lhs_im": lhs.imag, "rhs_re": rhs.real,
                     "rhs_im": rhs.imag, "abs_res": rep.abs_residual,
                     "rel_res": rep.rel_residual, "small_arc_abs": abs(pc.small_arc),
                     "large_arc_dev": abs(pc.large_arc - 1.0),
                     "segments_re": pc.segments.real, "segments_im": pc.segments.imag,
                     "err_est": rep.rhs_err_estimate, "evals": rep.evals,
                     "converged": rep.converged, "passed": rep.passed})
    summary = {"rows": len(rows), "max_rel_res": max(r["rel_res"] for r in rows),
               "nonconverged": sum(not r["converged"] for r in rows),
               "failed": sum(not r["passed"] for r in rows)}
    return RunReport(sys.argv[1:], cfg, CONTOUR_COLUMNS, rows, summary), _residual_exit(summary)


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default=None)
    common.add_argument("--abs-tol", dest="abs_tol", type=float, default=None)
    common.add_argument("--rel-tol", dest="rel_tol", type=float, default=None)
    common.add_argument("--max-depth", dest="max_depth", type=int, default=None)
    common.add_argument("--max-evals", dest="max_evals", type=int, default=None)
    common.add_argument("--jobs", type=int, default=None,
                        help="worker threads; output order is unaffected")

    parser = argparse.ArgumentParser(prog="meanforge", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mean", parents=[common], help="evaluate a mean")
    p.add_argument("--kind", required=True,
                   choices=("arithmetic", "geometric", "harmonic", "logarithmic", "identric",
                            "power", "stolarsky", "weighted-geometric", "gn", "an"))
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--r", type=float, help="power exponent, or Stolarsky r")
    p.add_argument("--s", type=float, help="Stolarsky s")
    p.add_argument("--lambda", dest="lam", type=float)
    p.add_argument("--a", help="comma separated tuple for gn/an")
    p.add_argument("--z", help="shift, real or 're,im'")
    p.set_defaults(func=cmd_mean)

    p = sub.add_parser("verify", parents=[common], help="residuals of one identity over a grid")
    p.add_argument("identity", choices=IDENTITIES)
    for name in ("x", "y", "alpha", "z", "s"):
        p.add_argument(f"--{name}", help=f"list (default {_VERIFY_DEFAULTS[name]})")
    p.add_argument("--lambda", dest="lam", help="list (default 0.5)")
    p.add_argument("--a", help="tuples separated by ';' (default 1,2,4)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("grid", parents=[common], help="run a predefined residual sweep")
    p.add_argument("name", choices=tuple(ACCEPTANCE_GRIDS) + ("all",))
    p.set_defaults(func=cmd_grid)

    p = sub.add_parser("kernel", parents=[common], help="evaluate a representation kernel")
    p.add_argument("name", choices=("rho", "F", "P", "q", "q_lambda", "h_density"))
    p.add_argument("--s", help="list of arguments (default 1)")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--x", type=float)
    p.add_argument("--y", type=float)
    p.add_argument("--u")
    p.add_argument("--alpha")
    p.add_argument("--mode", choices=("fast", "direct", "checked"), default="fast")
    p.set_defaults(func=cmd_kernel)

    p = sub.add_parser("classcheck", parents=[common],
                       help="function-class tests (built-in corpus by default)")
    p.add_argument("--f", help="built-in function name, or h:<alpha>")
    p.add_argument("--class", dest="klass", default="cm",
                   choices=("cm", "bernstein", "lcm", "cm-order-1"))
    p.add_argument("--grid", help="list of test points")
    p.add_argument("--order", type=int, default=None)
    p.add_argument("--step", type=float, default=None)
    p.add_argument("--margin-tol", dest="margin_tol", type=float, default=None)
    p.set_defaults(func=cmd_classcheck)

    p = sub.add_parser("contour", parents=[common], help="Cauchy contour reconstruction")
    p.add_argument("--alpha", default="0.5")
    p.add_argument("--z", default="1")
    p.add_argument("--eps", default="1e-2;1e-3;1e-4")
    p.add_argument("--r", default="1e2;1e3;1e4")
    p.set_defaults(func=cmd_contour)
    return parser


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        cfg = resolve_config(args)
        report, code = args.func(args, cfg)
    except (UsageError, DomainError) as exc:
        print(f"meanforge: error: {exc}", file=stderr)
        return EXIT_USAGE
    except QuadratureError as exc:
        print(f"meanforge: quadrature failed: {exc}", file=stderr)
        return EXIT_NONCONVERGED
    report.command = list(argv) if argv is not None else sys.argv[1:]
    report.wall_time = time.perf_counter() - start
    stdout.write(report.render(cfg["format"]))
    if report.summary:
        print("summary: " + ", ".join(f"{k}={fmt_number(v)}" for k, v in report.summary.items()),
              file=stderr)
    print(f"wall time: {report.wall_time:.3f} s", file=stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
