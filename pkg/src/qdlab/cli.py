"""Command-line front end: ``qdlab eval``, ``suite``, ``sweep`` and ``batch``.

Exit codes: 0 success, 1 a suite ran but some check failed, 2 evaluation
error (pole hit, pinched contour, lost accuracy), 3 configuration error.
Complex numbers are ``[re, im]`` in JSON and paired ``re,im`` columns in CSV.
"""

from __future__ import annotations

import argparse
import cmath
import csv
import io
import itertools
import json
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import contour, opalg, qcluster, qseries, wavefun
from .errors import ConfigError, EvaluationError
from .qdilog import QdContext, double_sine_via_phib, log_phib

log = logging.getLogger("qdlab")

EXIT_OK, EXIT_FAIL, EXIT_EVAL, EXIT_CONFIG = 0, 1, 2, 3
THREADS_ENV = "QDLAB_THREADS"
RNG_NAME = "numpy.random.PCG64"


@dataclass(frozen=True)
class RunConfig:
    b: float = 0.79
    tau: float = 0.1
    tol: float = 1e-10
    precision: str = "double"
    format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not (0 < self.b <= 1):
            raise ConfigError(f"b must lie in (0, 1], got {self.b}")
        if not self.tol >= 1e-12:
            raise ConfigError(f"tol must be at least 1e-12, got {self.tol}")
        if self.precision not in ("double", "extended"):
            raise ConfigError("precision must be 'double' or 'extended'")
        if self.format not in ("json", "csv"):
            raise ConfigError("format must be 'json' or 'csv'")
        frac = Fraction(self.b).limit_denominator(12)
        if abs(float(frac) - self.b) < 1e-12:
            log.warning("b = %s is a ratio of small integers; pole lattices collide at some points", frac)

    def context(self) -> QdContext:
        return QdContext(b=self.b, tau=self.tau, precision=self.precision)


# ---------------------------------------------------------------------------
# parameter parsing
# ---------------------------------------------------------------------------

def parse_complex(s: str) -> complex:
    try:
        return complex(s.replace(" ", "").replace("i", "j"))
    except ValueError as exc:
        raise ConfigError(f"not a complex number: {s!r}") from exc


def parse_pair(s: str) -> Tuple[complex, complex]:
    parts = s.split(",")
    if len(parts) != 2:
        raise ConfigError(f"expected two comma-separated values, got {s!r}")
    return parse_complex(parts[0]), parse_complex(parts[1])


def parse_partition(s: str) -> qseries.GeneralizedPartition2:
    try:
        a, b = (int(p) for p in s.split(","))
        return qseries.GeneralizedPartition2(a, b)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"expected n1,n2 with n1 <= n2, got {s!r}") from exc


# input name -> kind; pair inputs expand to <name>1, <name>2 in CSV
INPUT_KINDS = {"z": "complex", "lambda": "pair", "mu": "pair", "x": "pair", "n": "partition", "nt": "partition"}


def _signature(function: str, extrapolate: bool) -> Tuple[str, ...]:
    if function in ("phib", "s2"):
        return ("z",)
    if function in ("whittaker_gg", "whittaker_mb", "toda_h1_residual", "toda_h2_residual"):
        return ("lambda", "x")
    if function == "whittaker_tilde":
        return ("lambda", "n", "nt") if extrapolate else ("lambda", "x")
    if function == "hr_renorm":
        return ("lambda", "n", "nt") if extrapolate else ("mu", "lambda")
    if function in ("hr", "phi_mc", "macdonald_m1_residual", "macdonald_m2_residual"):
        return ("mu", "lambda")
    if function in ("macdonald_poly", "whittaker_poly"):
        return ("lambda", "n", "nt")
    raise ConfigError(f"unknown function {function!r}")


FUNCTIONS = ("phib", "s2", "whittaker_gg", "whittaker_mb", "whittaker_tilde", "hr", "hr_renorm", "phi_mc",
             "macdonald_poly", "whittaker_poly", "toda_h1_residual", "toda_h2_residual",
             "macdonald_m1_residual", "macdonald_m2_residual")


def evaluate(function: str, inputs: Dict[str, object], cfg: RunConfig, extrapolate: bool = False
             ) -> Tuple[complex, float]:
    """(value, error estimate) of one function at one input record.

    Integrals report their quadrature estimate, closed forms the context's
    target accuracy, extrapolated lattice values the spread of the offsets.
    """
    ctx = cfg.context()
    tol = cfg.tol
    g = inputs.get
    if function == "phib":
        v = cmath.exp(log_phib(g("z"), ctx))
        return v, abs(v) * ctx.rel_tol
    if function == "s2":
        v = double_sine_via_phib(g("z"), ctx)
        return v, abs(v) * ctx.rel_tol
    if function == "whittaker_gg":
        return wavefun.whittaker_gg(g("lambda"), g("x"), ctx, tol, with_error=True)
    if function == "whittaker_mb":
        return wavefun.whittaker_mb(g("lambda"), g("x"), ctx, tol, with_error=True)
    if function == "whittaker_tilde":
        if extrapolate:
            v, vals = wavefun.whittaker_tilde_extrapolated(g("lambda"), g("n"), g("nt"), ctx, tol=min(tol, 1e-12))
            return v, abs(vals[-1] - v)
        return wavefun.whittaker_tilde(g("lambda"), g("x"), ctx, tol, with_error=True)
    if function == "hr":
        return wavefun.hr_wavefunction(g("mu"), g("lambda"), ctx, tol, with_error=True)
    if function == "hr_renorm":
        if extrapolate:
            v, vals = wavefun.hr_renormalized_extrapolated(g("lambda"), g("n"), g("nt"), ctx, tol=min(tol, 1e-12))
            return v, abs(vals[-1] - v)
        v, e = wavefun.hr_wavefunction(g("mu"), g("lambda"), ctx, tol, with_error=True)
        c = wavefun.hr_renorm_prefactor(g("mu"), ctx)
        return c * v, abs(c) * e
    if function == "phi_mc":
        v, e = wavefun.hr_wavefunction(g("mu"), g("lambda"), ctx, tol, with_error=True)
        c = wavefun.mc_constant(ctx)
        return c * v, abs(c) * e
    if function == "macdonald_poly":
        return wavefun.macdonald_polynomial_value(g("lambda"), g("n"), g("nt"), ctx), 0.0
    if function == "whittaker_poly":
        return wavefun.whittaker_polynomial_value(g("lambda"), g("n"), g("nt"), ctx), 0.0
    if function in ("toda_h1_residual", "toda_h2_residual"):
        j = 1 if "h1" in function else 2
        return complex(wavefun.toda_eigen_residual(j, g("lambda"), g("x"), ctx, tol=tol)), 0.0
    if function in ("macdonald_m1_residual", "macdonald_m2_residual"):
        j = 1 if "m1" in function else 2
        return complex(wavefun.macdonald_eigen_residual(j, g("mu"), g("lambda"), ctx, tol=tol)), 0.0
    raise ConfigError(f"unknown function {function!r}")


# ---------------------------------------------------------------------------
# encoding
# ---------------------------------------------------------------------------

def enc_complex(z) -> List[float]:
    z = complex(z)
    return [z.real, z.imag]


def enc_input(kind: str, v):
    if kind == "complex":
        return enc_complex(v)
    if kind == "pair":
        return [enc_complex(v[0]), enc_complex(v[1])]
    return [v.n1, v.n2]


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def csv_columns(sig: Sequence[str]) -> List[str]:
    cols = []
    for name in sig:
        kind = INPUT_KINDS[name]
        if kind == "complex":
            cols += [f"{name}_re", f"{name}_im"]
        elif kind == "pair":
            for k in (1, 2):
                cols += [f"{name}{k}_re", f"{name}{k}_im"]
        else:
            cols += [f"{name}1", f"{name}2"]
    return cols + ["value_re", "value_im", "error"]


def csv_row(sig: Sequence[str], inputs: Dict[str, object], value: complex, err: float) -> List[str]:
    row = []
    for name in sig:
        kind = INPUT_KINDS[name]
        v = inputs[name]
        if kind == "complex":
            row += [fmt(v.real), fmt(v.imag)]
        elif kind == "pair":
            for c in v:
                row += [fmt(complex(c).real), fmt(complex(c).imag)]
        else:
            row += [str(v.n1), str(v.n2)]
    value = complex(value)
    return row + [fmt(value.real), fmt(value.imag), fmt(err)]


def dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=True) + "\n"


def _emit(text: str, out: Optional[str]):
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def _collect_inputs(args, sig) -> Dict[str, object]:
    parsers = {"complex": parse_complex, "pair": parse_pair, "partition": parse_partition}
    out = {}
    for name in sig:
        raw = getattr(args, name if name != "lambda" else "lam")
        if raw is None:
            raise ConfigError(f"--{name} is required for {args.function}")
        out[name] = parsers[INPUT_KINDS[name]](raw)
    return out


def cmd_eval(args, cfg: RunConfig) -> int:
    sig = _signature(args.function, args.extrapolate)
    inputs = _collect_inputs(args, sig)
    value, err = evaluate(args.function, inputs, cfg, args.extrapolate)
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(csv_columns(sig))
        w.writerow(csv_row(sig, inputs, value, err))
        text = buf.getvalue()
    else:
        text = dump_json({
            "function": args.function,
            "config": asdict(cfg),
            "inputs": {k: enc_input(INPUT_KINDS[k], v) for k, v in inputs.items()},
            "value": enc_complex(value),
            "error": err,
        })
    _emit(text, args.out)
    return EXIT_OK


def _suite_records(name: str, cfg: RunConfig, quick: bool) -> List[dict]:
    recs: List[dict] = []
    if name in ("appendix", "all"):
        draws = 5 if quick else 25
        for r in contour.appendix_suite(draws=draws, seed=cfg.seed, tol=max(cfg.tol, 1e-8)):
            d = r.to_json()
            d["suite"] = "appendix"
            recs.append(d)
    if name in ("wavefun", "all"):
        ctx = cfg.context()
        for r in wavefun.wavefun_suite(ctx, seed=cfg.seed, quick=quick):
            d = r.to_json()
            d["suite"] = "wavefun"
            recs.append(d)
    if name in ("cluster", "all"):
        for r in qcluster.cluster_suite(depth=3 if quick else 4) + opalg.operator_suite(seed=cfg.seed):
            d = r.to_json()
            d["suite"] = "cluster"
            recs.append(d)
    return recs


def cmd_suite(args, cfg: RunConfig) -> int:
    if args.name not in ("appendix", "wavefun", "cluster", "all"):
        raise ConfigError(f"unknown suite {args.name!r}")
    recs = _suite_records(args.name, cfg, args.quick)
    failed = sum(not r["pass"] for r in recs)
    report = {"suite": args.name, "config": asdict(cfg), "rng": RNG_NAME, "quick": args.quick,
              "checks": recs, "passed": len(recs) - failed, "failed": failed, "ok": failed == 0}
    if cfg.format == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["suite", "check", "pass"])
        for r in recs:
            w.writerow([r["suite"], r.get("identity") or r.get("check"), int(bool(r["pass"]))])
        _emit(buf.getvalue(), args.out)
    else:
        _emit(dump_json(report), args.out)
    return EXIT_OK if failed == 0 else EXIT_FAIL


def parse_grid(spec: str, rng: np.random.Generator) -> Tuple[str, List[object]]:
    """``name=start:stop:step`` (inclusive) or ``name=random:N``.

    ``name`` is an input (``z``, ``mu``, ...) or one component of a pair
    input (``lambda1``). Random draws are real, uniform in [-0.5, 0.5].
    """
    if "=" not in spec:
        raise ConfigError(f"grid spec needs name=..., got {spec!r}")
    name, rhs = spec.split("=", 1)
    parts = rhs.split(":")
    if parts[0] == "random":
        if len(parts) != 2:
            raise ConfigError(f"expected random:N, got {rhs!r}")
        count = int(parts[1])
        if name in ("lambda", "mu", "x"):
            vals = [(complex(rng.uniform(-0.5, 0.5)), complex(rng.uniform(-0.5, 0.5))) for _ in range(count)]
        else:
            vals = [complex(rng.uniform(-0.5, 0.5)) for _ in range(count)]
        return name, vals
    if len(parts) != 3:
        raise ConfigError(f"expected start:stop:step, got {rhs!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError as exc:
        raise ConfigError(f"bad grid numbers in {rhs!r}") from exc
    if step <= 0 or stop < start:
        raise ConfigError("grid needs step > 0 and stop >= start")
    count = int(round((stop - start) / step)) + 1
    return name, [complex(start + k * step) for k in range(count)]


def _assign(inputs: Dict[str, object], name: str, value) -> Dict[str, object]:
    out = dict(inputs)
    if name in INPUT_KINDS:
        out[name] = value
        return out
    base, idx = name[:-1], name[-1:]
    if base in ("lambda", "mu", "x") and idx in ("1", "2"):
        pair = list(out.get(base) or (0j, 0j))
        pair[int(idx) - 1] = complex(value)
        out[base] = tuple(pair)
        return out
    raise ConfigError(f"cannot sweep over {name!r}")


def cmd_sweep(args, cfg: RunConfig) -> int:
    sig = _signature(args.function, args.extrapolate)
    rng = np.random.default_rng(cfg.seed)
    grids = [parse_grid(g, rng) for g in args.grid]
    swept = {g[0] for g in grids} | {g[0][:-1] for g in grids}
    base = {}
    parsers = {"complex": parse_complex, "pair": parse_pair, "partition": parse_partition}
    for name in sig:
        raw = getattr(args, name if name != "lambda" else "lam")
        if raw is not None:
            base[name] = parsers[INPUT_KINDS[name]](raw)
        elif name not in swept:
            raise ConfigError(f"--{name} is required for {args.function}")
    points = []
    for combo in itertools.product(*[vals for _, vals in grids]):
        inp = base
        for (name, _), v in zip(grids, combo):
            inp = _assign(inp, name, v)
        points.append(inp)

    results = _run_points(args.function, points, cfg, args.extrapolate)
    _emit(_csv_table(sig, points, results), args.out)
    return EXIT_OK


def _run_points(function, points, cfg: RunConfig, extrapolate: bool):
    """Evaluate every point, threaded when the thread-count variable asks for it; order is kept."""
    run = lambda inp: evaluate(function, inp, cfg, extrapolate)
    threads = max(1, int(os.environ.get(THREADS_ENV, "1") or 1))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            return list(ex.map(run, points))
    return [run(p) for p in points]


def _csv_table(sig, points, results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(csv_columns(sig))
    for inp, (v, e) in zip(points, results):
        w.writerow(csv_row(sig, inp, v, e))
    return buf.getvalue()


def _json_value(kind: str, raw):
    # numbers, [re, im] pairs, or strings accepted by the flag parsers
    if kind == "partition":
        return qseries.GeneralizedPartition2(*[int(v) for v in raw])
    if isinstance(raw, str):
        return parse_pair(raw) if kind == "pair" else parse_complex(raw)
    if kind == "complex":
        return complex(*raw) if isinstance(raw, list) else complex(raw)
    if len(raw) != 2:
        raise ConfigError(f"expected two components, got {raw!r}")
    return tuple(complex(*c) if isinstance(c, list) else complex(c) for c in raw)


def read_batch(path: str, function: str, cfg: RunConfig, extrapolate: bool = False):
    """Load {b, tau, tol, points: [{lambda, mu, x, ...}]}; document values override the flags."""
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read batch file: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("points"), list):
        raise ConfigError("batch file needs a 'points' list")
    try:
        cfg = replace(cfg, **{k: float(doc[k]) for k in ("b", "tau", "tol") if k in doc})
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad batch parameter: {exc}") from exc
    sig = _signature(function, extrapolate)
    points = []
    for i, pt in enumerate(doc["points"]):
        missing = [n for n in sig if n not in pt]
        if missing:
            raise ConfigError(f"point {i} lacks {', '.join(missing)}")
        points.append({n: _json_value(INPUT_KINDS[n], pt[n]) for n in sig})
    return cfg, sig, points


def cmd_batch(args, cfg: RunConfig) -> int:
    cfg, sig, points = read_batch(args.file, args.function, cfg, args.extrapolate)
    results = _run_points(args.function, points, cfg, args.extrapolate)
    if cfg.format == "json":
        text = dump_json({"function": args.function, "config": asdict(cfg), "points": [
            {"inputs": {k: enc_input(INPUT_KINDS[k], v) for k, v in inp.items()},
             "value": enc_complex(v), "error": e} for inp, (v, e) in zip(points, results)]})
    else:
        text = _csv_table(sig, points, results)
    _emit(text, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _common(p: argparse.ArgumentParser):
    p.add_argument("--b", type=float, default=0.79)
    p.add_argument("--tau", type=float, default=0.1)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--precision", default="double")
    p.add_argument("--format", default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=None)


def _inputs(p: argparse.ArgumentParser):
    p.add_argument("function")
    p.add_argument("--z")
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--mu")
    p.add_argument("--x")
    p.add_argument("--n")
    p.add_argument("--nt")
    p.add_argument("--extrapolate", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qdlab", description="Quantum dilogarithm wavefunctions and cluster checks.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    pe = sub.add_parser("eval", help="evaluate one function at one point")
    _inputs(pe)
    _common(pe)
    ps = sub.add_parser("suite", help="run an identity suite")
    ps.add_argument("name")
    ps.add_argument("--quick", action="store_true")
    _common(ps)
    pw = sub.add_parser("sweep", help="evaluate over a grid, CSV output")
    _inputs(pw)
    pw.add_argument("--grid", action="append", default=[], help="name=start:stop:step or name=random:N")
    _common(pw)
    pb = sub.add_parser("batch", help="evaluate the points of a JSON batch file")
    pb.add_argument("function")
    pb.add_argument("file")
    pb.add_argument("--extrapolate", action="store_true")
    _common(pb)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="qdlab: %(message)s")
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise ConfigError("a command is required: eval, suite, sweep or batch")
        fmt_default = "csv" if args.command in ("sweep", "batch") else "json"
        cfg = RunConfig(b=args.b, tau=args.tau, tol=args.tol, precision=args.precision,
                        format=args.format or fmt_default, seed=args.seed)
        if args.command == "eval":
            return cmd_eval(args, cfg)
        if args.command == "suite":
            return cmd_suite(args, cfg)
        if args.command == "batch":
            return cmd_batch(args, cfg)
        return cmd_sweep(args, cfg)
    except ConfigError as exc:
        sys.stderr.write(f"qdlab: configuration error: {exc}\n")
        return EXIT_CONFIG
    except EvaluationError as exc:
        sys.stderr.write(f"qdlab: evaluation error: {type(exc).__name__}: {exc}\n")
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
