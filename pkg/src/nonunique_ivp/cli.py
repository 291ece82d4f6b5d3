"""Command-line front end.

Exit codes: 0 success, 1 verification failed, 2 usage error, 3 domain
escape, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from . import emit
from .analysis import (
    convergence_study,
    lipschitz_per_x,
    nonuniform_witness,
)
from .integrators import DomainEscape, IntegrationSpec, SlopeAt, integrate
from .rhs_core import (
    COUNTEREXAMPLE,
    EXTENDED,
    PHI1,
    PHI1_EXTENDED,
    PHI2,
    PHI2_EXTENDED,
    DomainError,
    solution_residuals,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_IO = 4

RHS = {"counterexample": COUNTEREXAMPLE, "extended": EXTENDED}
SOLUTIONS = {
    "counterexample": {"phi1": PHI1, "phi2": PHI2},
    "extended": {"phi1": PHI1_EXTENDED, "phi2": PHI2_EXTENDED},
}
COMMANDS = ("integrate", "lipschitz", "witness", "converge", "figure", "verify")
FIGURE_STEPS = (0.1, 0.05, 0.01)
FIGURE_PUSH = 1.0
FIGURE_DIGITS = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class RunConfig:
    command: str
    rhs_id: str = "counterexample"
    params: dict = field(default_factory=dict)
    output_path: Optional[Path] = None
    format: str = "csv"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.rhs_id not in RHS:
            raise UsageError(f"unknown rhs {self.rhs_id!r}")
        if self.format not in ("csv", "svg"):
            raise UsageError(f"unknown format {self.format!r}")
        if self.format == "svg" and self.command not in ("integrate", "figure"):
            raise UsageError(f"{self.command} only writes csv")

    @property
    def rhs(self):
        return RHS[self.rhs_id]


def _float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return v


def _float_list(text: str) -> list[float]:
    return [_float(t) for t in text.split(",") if t.strip()]


def _grid(text: str) -> list[float]:
    """``lo:hi:step`` as an inclusive list of ``lo + i*step``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"grid must be lo:hi:step, got {text!r}")
    lo, hi, step = (_float(p) for p in parts)
    if step <= 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}")
    n = math.floor((hi - lo) / step + 1e-9)
    return [lo + i * step for i in range(n + 1)]


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nonunique-ivp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=False):
        p.add_argument("--rhs", choices=sorted(RHS), default="counterexample")
        p.add_argument("--out", type=Path, default=None, help="output file (stdout if omitted)")
        p.add_argument("--format", choices=("csv", "svg") if fmt else ("csv",), default="csv")
        p.add_argument("--digits", type=int, default=None, help="round CSV values to this many places")

    def stepping(p):
        p.add_argument("--x0", type=_float, default=0.0)
        p.add_argument("--y0", type=_float, default=0.0)
        p.add_argument("--k", type=_float, default=None, help="push slope for the first step")
        p.add_argument("--slope-at", choices=("left", "right"), default="left")

    p = sub.add_parser("integrate", help="write the nodes of one Euler/PushEuler polygon")
    common(p, fmt=True)
    stepping(p)
    p.add_argument("--h", type=_float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--clip-y", type=_float, default=None)

    p = sub.add_parser("lipschitz", help="difference-quotient Lipschitz estimates of f(x, .)")
    common(p)
    p.add_argument("--x", type=_float_list, required=True)
    p.add_argument("--y-grid", type=_grid, default="0:1:0.01")

    p = sub.add_parser("witness", help="quotient across the middle sector, 5/x")
    common(p)
    p.add_argument("--x", type=_float_list, required=True)

    p = sub.add_parser("converge", help="sup distances to phi1/phi2 under mesh refinement")
    common(p)
    stepping(p)
    p.add_argument("--h", type=_float_list, required=True)
    p.add_argument("--x-end", type=_float, required=True)

    p = sub.add_parser("verify", help="residuals of an exact solution")
    common(p)
    p.add_argument("--solution", choices=("phi1", "phi2"), required=True)
    p.add_argument("--grid", type=_grid, required=True)
    p.add_argument("--tol", type=_float, default=1e-12)

    p = sub.add_parser("figure", help="PushEuler polygons for h = 0.1, 0.05, 0.01 (K = 1)")
    p.add_argument("--out", type=Path, default=Path("figure"), help="output directory")
    p.add_argument("--format", choices=("csv", "svg"), default="csv")
    p.add_argument("--clip-y", type=_float, default=1.0)
    p.add_argument("--digits", type=int, default=FIGURE_DIGITS)
    return parser


def parse_config(argv: Optional[Sequence[str]] = None) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    command = ns.pop("command")
    rhs_id = ns.pop("rhs", "counterexample")
    out = ns.pop("out")
    fmt = ns.pop("format")
    if "slope_at" in ns:
        ns["slope_at"] = SlopeAt(ns["slope_at"])
    config = RunConfig(command, rhs_id, ns, out, fmt)
    _validate(config)
    return config


def _validate(config: RunConfig) -> None:
    p = config.params
    if p.get("digits") is not None and p["digits"] < 0:
        raise UsageError("--digits must be nonnegative")
    if config.command in ("integrate", "converge"):
        hs = p["h"] if isinstance(p["h"], list) else [p["h"]]
        if not hs or any(h <= 0 for h in hs):
            raise UsageError("--h must be positive")
    if config.command == "integrate" and p["n"] < 1:
        raise UsageError("--n must be at least 1")
    if config.command == "converge":
        if any(b >= a for a, b in zip(p["h"], p["h"][1:])):
            raise UsageError("--h values must be strictly decreasing")
    if config.command in ("lipschitz", "witness") and not p["x"]:
        raise UsageError("--x needs at least one value")
    if config.command == "witness" and any(x <= 0 for x in p["x"]):
        raise UsageError("witness needs x > 0")
    if config.command == "lipschitz" and len(set(p["y_grid"])) < 2:
        raise UsageError("--y-grid needs two distinct points")
    if config.command == "figure" and config.output_path.exists() and not config.output_path.is_dir():
        raise UsageError(f"{config.output_path} is not a directory")


def _emit(config: RunConfig, text: str, summary: str) -> None:
    # summary goes to stderr when the data itself occupies stdout
    if config.output_path is None:
        sys.stdout.write(text)
        print(summary, file=sys.stderr)
    else:
        emit.write_files({config.output_path: text})
        print(summary)


def cmd_integrate(config: RunConfig) -> int:
    p = config.params
    spec = IntegrationSpec(
        config.rhs, p["x0"], p["y0"], p["h"], p["n"],
        push=p["k"], slope_at=p["slope_at"], clip_y=p["clip_y"],
    )
    curve = integrate(spec)
    if config.format == "svg":
        text = emit.render_figure_svg(curve, f"h={emit.format_value(spec.h)}")
    else:
        text = emit.curve_csv(curve, p["digits"])
    _emit(config, text, f"integrate: {len(curve)} nodes, last ({curve.xs[-1]!r}, {curve.ys[-1]!r})")
    return EXIT_OK


def cmd_lipschitz(config: RunConfig) -> int:
    rows = []
    for x in config.params["x"]:
        est = lipschitz_per_x(config.rhs, x, config.params["y_grid"])
        rows.append((est.x, est.estimate, est.analytic if est.analytic is not None else math.nan))
    text = emit.to_csv(("x", "estimate", "analytic"), rows, config.params["digits"])
    worst = max(abs(e - a) for _, e, a in rows)
    _emit(config, text, f"lipschitz: {len(rows)} abscissas, max |estimate - analytic| = {worst:.3g}")
    return EXIT_OK


def cmd_witness(config: RunConfig) -> int:
    rows = [(x, nonuniform_witness(x, config.rhs)) for x in config.params["x"]]
    text = emit.to_csv(("x", "quotient"), rows, config.params["digits"])
    summary = "witness: " + ", ".join(f"x={x:.12g} quotient={q:.12g}" for x, q in rows)
    _emit(config, text, summary)
    return EXIT_OK


def cmd_converge(config: RunConfig) -> int:
    p = config.params
    sols = SOLUTIONS[config.rhs_id]
    report = convergence_study(
        config.rhs, p["k"], p["h"], p["x_end"],
        x0=p["x0"], y0=p["y0"], slope_at=p["slope_at"],
        references=(sols["phi1"], sols["phi2"]),
    )
    rows = [(e.h, e.dist_phi1, e.dist_phi2) for e in report.entries]
    text = emit.to_csv(("h", "dist_phi1", "dist_phi2"), rows, p["digits"])
    col = "dist_phi2" if report.target == "phi2" else "dist_phi1"
    trend = "strictly decreasing" if report.strictly_decreasing(col) else "not monotone"
    last = rows[-1]
    _emit(
        config, text,
        f"converge: target {report.target}, {col} {trend}, "
        f"final h={last[0]:.6g} dist_phi1={last[1]:.6g} dist_phi2={last[2]:.6g}",
    )
    return EXIT_OK


def cmd_verify(config: RunConfig) -> int:
    p = config.params
    sol = SOLUTIONS[config.rhs_id][p["solution"]]
    res = solution_residuals(sol, config.rhs, p["grid"])
    text = emit.to_csv(("x", "residual"), res, p["digits"])
    worst = max(r for _, r in res)
    ok = worst <= p["tol"]
    _emit(
        config, text,
        f"verify: {p['solution']} max residual {worst:.3g} "
        f"({'within' if ok else 'exceeds'} tol {p['tol']:.3g})",
    )
    return EXIT_OK if ok else EXIT_FAILED


def figure_curves(clip_y: float = 1.0, steps: Sequence[float] = FIGURE_STEPS):
    """PushEuler polygons (K = 1, slope at the right abscissa) clipped at ``clip_y``."""
    curves = {}
    for h in steps:
        # enough steps to reach the clip line from the origin
        n = math.ceil(2.0 / h)
        spec = IntegrationSpec(
            COUNTEREXAMPLE, 0.0, 0.0, h, n,
            push=FIGURE_PUSH, slope_at=SlopeAt.RIGHT, clip_y=clip_y,
        )
        curves[h] = integrate(spec)
    return curves


def figure_files(out_dir: Path, fmt: str, clip_y: float = 1.0, digits: Optional[int] = FIGURE_DIGITS):
    files = {}
    for h, curve in figure_curves(clip_y).items():
        tag = emit.format_value(h)
        if fmt == "svg":
            files[out_dir / f"figure_h{tag}.svg"] = emit.render_figure_svg(curve, f"h={tag}")
        else:
            files[out_dir / f"pusheuler_h{tag}.csv"] = emit.curve_csv(curve, digits)
    if fmt == "csv":
        files[out_dir / "phi1.csv"] = emit.to_csv(("x", "y"), emit.sample(PHI1, 0.0, 1.0), digits)
        files[out_dir / "phi2.csv"] = emit.to_csv(
            ("x", "y"), emit.sample(PHI2, 0.0, PHI2_EXTENDED.validity.hi), digits
        )
    return files


def cmd_figure(config: RunConfig) -> int:
    out_dir = config.output_path
    files = figure_files(out_dir, config.format, config.params["clip_y"], config.params["digits"])
    out_dir.mkdir(parents=True, exist_ok=True)
    emit.write_files(files)
    print(f"figure: wrote {len(files)} files to {out_dir}")
    return EXIT_OK


HANDLERS = {
    "integrate": cmd_integrate,
    "lipschitz": cmd_lipschitz,
    "witness": cmd_witness,
    "converge": cmd_converge,
    "verify": cmd_verify,
    "figure": cmd_figure,
}


def run(config: RunConfig) -> int:
    return HANDLERS[config.command](config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    prog = "nonunique-ivp"
    try:
        config = parse_config(argv)
        return run(config)
    except UsageError as e:
        print(f"{prog}: usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DomainEscape as e:
        print(f"{prog}: domain escape: {e}", file=sys.stderr)
        return EXIT_DOMAIN
    except (DomainError, ValueError) as e:
        print(f"{prog}: invalid argument: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"{prog}: I/O error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
