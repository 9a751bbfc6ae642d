"""Batch command line front end.

Subcommands::

    sylvkit solve --spec job.json
    sylvkit fp --a A.mtx --b B.mtx
    sylvkit classify --a A.mtx --class k_quasi --k 2
    sylvkit approx --a A.mtx --c C.mtx --b B.mtx
    sylvkit separation --a A.mtx --b B.mtx

Global flags (accepted after the subcommand): ``--tol``, ``--seed``,
``--out``, ``--format {json,csv}``. Reports go to ``--out`` (or stdout);
diagnostics go to stderr. Exit status: 0 success, 1 usage or parse error,
2 solver-declared failure (including a residual above ``--tol``).

A job file looks like::

    {
      "equation": {"kind": "sylvester", "A": "A.mtx", "B": "B.mtx", "C": "C.mtx"},
      "method": "auto",
      "tolerances": {"tol": 1e-8, "contour_tol": 1e-12},
      "seed": 0,
      "output": {"path": "report.json", "format": "json", "solution": "X.mtx"}
    }

Matrix paths are resolved relative to the job file. Equation kinds and their
coefficients: ``sylvester`` (A, B, C), ``pencil`` (A, B, C, D, E), ``stein``
(T1, T2, Y), ``monkeypox`` (A, t, Y).
"""
import argparse
import csv
import io
import json
import math
import os
import sys
import time
from dataclasses import dataclass, field, fields
from pathlib import Path

import numpy as np

from . import __version__
from .approx import best_commutator_approx_frobenius
from .config import DEFAULT, Config
from .equations import EQUATION_KINDS
from .errors import ParseError, QuadratureNotConverged, SylvkitError, UnsupportedFormat
from .mmio import read_matrix_market, write_matrix_market
from .roth import ClassQuery, check_fp_pair, check_operator_class
from .solvers import choose_method, solve, spectral_separation

SCHEMA = 1
METHODS = ("auto", "direct", "contour", "stein", "exp_integral", "power_series")
CLASS_NAMES = {
    "normal": "normal",
    "hyponormal": "hyponormal",
    "p_hyponormal": "p_hyponormal",
    "k_quasi": "k_quasihyponormal",
    "k_quasihyponormal": "k_quasihyponormal",
    "quasihyponormal": "quasihyponormal",
}
_CONFIG_KEYS = {f.name for f in fields(Config)}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Exit status 1 on bad arguments, matching the other usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def max_dim():
    raw = os.environ.get("SYLVKIT_MAX_DIM", "256")
    try:
        value = int(raw)
    except ValueError:
        raise UsageError(f"SYLVKIT_MAX_DIM must be an integer, got {raw!r}") from None
    if value < 1:
        raise UsageError("SYLVKIT_MAX_DIM must be positive")
    return value


def load_matrix(path):
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"matrix file not found: {path}")
    M = read_matrix_market(path)
    limit = max_dim()
    if max(M.shape) > limit:
        raise UsageError(f"{path}: dimension {max(M.shape)} exceeds SYLVKIT_MAX_DIM={limit}")
    return M


@dataclass
class JobSpec:
    kind: str
    paths: dict
    t: float | None = None
    method: str = "auto"
    tolerances: dict = field(default_factory=dict)
    seed: int = 0
    output_path: Path | None = None
    output_format: str = "json"
    solution_path: Path | None = None

    @classmethod
    def load(cls, path):
        path = Path(path)
        if not path.is_file():
            raise UsageError(f"job file not found: {path}")
        try:
            raw = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc.msg}", exc.lineno) from None
        return cls.from_dict(raw, path.parent)

    @classmethod
    def from_dict(cls, raw, base=Path(".")):
        if not isinstance(raw, dict) or not isinstance(raw.get("equation"), dict):
            raise UsageError("job needs an 'equation' object")
        eq = dict(raw["equation"])
        kind = eq.pop("kind", None)
        if kind not in EQUATION_KINDS:
            raise UsageError(f"equation kind must be one of {sorted(EQUATION_KINDS)}, got {kind!r}")
        t = None
        if kind == "monkeypox":
            if "t" not in eq:
                raise UsageError("monkeypox equation needs a positive 't'")
            t = eq.pop("t")
            if not isinstance(t, (int, float)) or not t > 0:
                raise UsageError(f"'t' must be a positive number, got {t!r}")
        names = [n for n in EQUATION_KINDS[kind]._fields]
        missing = [n for n in names if n not in eq]
        extra = [n for n in eq if n not in names]
        if missing or extra:
            raise UsageError(f"{kind} equation needs {names}; missing {missing}, unexpected {extra}")
        paths = {n: base / eq[n] for n in names}

        method = raw.get("method", "auto")
        if method not in METHODS:
            raise UsageError(f"method must be one of {METHODS}, got {method!r}")
        tolerances = dict(raw.get("tolerances", {}))
        unknown = set(tolerances) - _CONFIG_KEYS - {"tol"}
        if unknown:
            raise UsageError(f"unknown tolerance keys: {sorted(unknown)}")
        out = raw.get("output", {})
        fmt = out.get("format", "json")
        if fmt not in ("json", "csv"):
            raise UsageError(f"output format must be json or csv, got {fmt!r}")
        seed = raw.get("seed", 0)
        if not isinstance(seed, int):
            raise UsageError(f"seed must be an integer, got {seed!r}")
        return cls(
            kind=kind,
            paths=paths,
            t=t,
            method=method,
            tolerances=tolerances,
            seed=seed,
            output_path=base / out["path"] if "path" in out else None,
            output_format=fmt,
            solution_path=base / out["solution"] if "solution" in out else None,
        )

    def build_equation(self):
        mats = {name: load_matrix(p) for name, p in self.paths.items()}
        cls = EQUATION_KINDS[self.kind]
        if self.kind == "monkeypox":
            return cls(mats["A"], self.t, mats["Y"])
        return cls(**mats)

    def config(self):
        return DEFAULT.replace(**{k: v for k, v in self.tolerances.items() if k != "tol"})


def _clean(obj):
    """Make a report JSON-safe: numpy scalars to Python, non-finite floats to strings."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, (np.integer, int)):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        x = float(obj)
        return x if math.isfinite(x) else repr(x)
    if isinstance(obj, Path):
        return obj.as_posix()
    return obj


def render(report, fmt):
    report = _clean(report)
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["key", "value"])
    for key, value in _flatten(report):
        writer.writerow([key, value])
    return buf.getvalue()


def _flatten(report, prefix=""):
    """Scalar leaves only; matrices and lists are left to the JSON format."""
    for key in sorted(report):
        value = report[key]
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        elif not isinstance(value, list):
            yield name, "" if value is None else value


def _envelope(command, seed):
    return {"schema": SCHEMA, "tool": "sylvkit", "version": __version__,
            "command": command, "seed": seed}


def run_job(spec, tol=None):
    """Execute a job; return ``(exit_code, report_dict)``."""
    config = spec.config()
    tol = spec.tolerances.get("tol", 1e-8) if tol is None else tol
    report = _envelope("solve", spec.seed)
    report.update(equation=spec.kind, method_requested=spec.method, tol=tol,
                  config=config.as_dict(), error=None, message=None)
    eq = spec.build_equation()
    report["shape"] = list(eq.shape)
    start = time.perf_counter()
    try:
        method = choose_method(eq, config) if spec.method == "auto" else spec.method
        report["method"] = method
        result = solve(eq, method, config)
    except QuadratureNotConverged as exc:
        report.update(error=type(exc).__name__, message=str(exc), accepted=False)
        if exc.report is not None:
            report["solve"] = exc.report.to_dict()
        code = 2
    except SylvkitError as exc:
        report.update(error=type(exc).__name__, message=str(exc), accepted=False)
        code = 2
    else:
        report["solve"] = result.to_dict()
        accepted = result.relative_residual <= tol
        report["accepted"] = accepted
        if not accepted:
            report.update(error="ResidualAboveTolerance",
                          message=f"relative residual {result.relative_residual:.3e} > {tol:.1e}")
        if spec.solution_path is not None:
            write_matrix_market(spec.solution_path, result.X,
                                f"solution of {spec.kind} equation, method {result.method.value}")
        code = 0 if accepted else 2
    report["wall_time_s"] = time.perf_counter() - start
    return code, report


def _common(parser):
    parser.add_argument("--tol", type=float, default=None, help="acceptance / decision tolerance")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None, help="report path (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)


def build_parser():
    parser = _Parser(prog="sylvkit", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=f"sylvkit {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="run a JSON job file")
    p.add_argument("--spec", required=True)
    _common(p)

    p = sub.add_parser("fp", help="Fuglede-Putnam check for a pair (A, B)")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p)

    p = sub.add_parser("classify", help="operator class membership")
    p.add_argument("--a", required=True)
    p.add_argument("--class", dest="cls", required=True, choices=sorted(CLASS_NAMES))
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--p", type=float, default=None)
    _common(p)

    p = sub.add_parser("approx", help="best Frobenius approximation of B by AX - XC")
    p.add_argument("--a", required=True)
    p.add_argument("--c", required=True)
    p.add_argument("--b", required=True)
    _common(p)

    p = sub.add_parser("separation", help="spectral separation of A and B")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    _common(p)
    return parser


def _dispatch(args):
    """Return ``(exit_code, report, out_path, format)``."""
    out, fmt = args.out, args.format
    if args.command == "solve":
        spec = JobSpec.load(args.spec)
        if args.seed is not None:
            spec.seed = args.seed
        code, report = run_job(spec, args.tol)
        return code, report, out or spec.output_path, fmt or spec.output_format

    report = _envelope(args.command, 0 if args.seed is None else args.seed)
    config = DEFAULT
    if args.command == "fp":
        if args.tol is not None:
            config = config.replace(fp_tol=args.tol)
        A, B = load_matrix(args.a), load_matrix(args.b)
        report["fp"] = check_fp_pair(A, B, config).to_dict()
    elif args.command == "classify":
        if args.tol is not None:
            config = config.replace(psd_tol=args.tol)
        try:
            query = ClassQuery(CLASS_NAMES[args.cls], p=args.p, k=args.k)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        result = check_operator_class(load_matrix(args.a), query, config)
        report["class"] = {"kind": query.kind, "p": query.p, "k": query.k,
                           "holds": result.holds, "margin": result.margin,
                           "tolerance": result.tolerance}
    elif args.command == "approx":
        if args.tol is not None:
            config = config.replace(null_tol=args.tol)
        A, C, B = load_matrix(args.a), load_matrix(args.c), load_matrix(args.b)
        report["approx"] = best_commutator_approx_frobenius(A, C, B, config).to_dict()
    elif args.command == "separation":
        if args.tol is not None:
            config = config.replace(sep_tol=args.tol)
        A, B = load_matrix(args.a), load_matrix(args.b)
        report["separation"] = spectral_separation(A, B, config).to_dict()
    report["config"] = config.as_dict()
    return 0, report, out, fmt or "json"


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help, --version or a bad argument
        return exc.code
    try:
        code, report, out, fmt = _dispatch(args)
    except (UsageError, ParseError, UnsupportedFormat) as exc:
        print(f"sylvkit: error: {exc}", file=sys.stderr)
        return 1
    except SylvkitError as exc:
        print(f"sylvkit: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    text = render(report, fmt)
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
    if report.get("error"):
        print(f"sylvkit: {report['error']}: {report['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
