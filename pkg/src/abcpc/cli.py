"""Command-line entry point: ``abcpc {solve,convergence,epidemic,weights,mlf,plot}``."""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

from .errors import NumericalError, ValidationError
from .harness import reports_to_csv, reports_to_json, run_convergence, run_epidemic
from .models import EpidemicRun, problem_from_id
from .params import ABCParams, Grid
from .plot import emit_plot
from .solver import solve
from .special import mittag_leffler
from .weights import WeightTable

EXIT_OK, EXIT_VALIDATION, EXIT_NUMERICAL = 0, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse's own exit code 2 matches ours
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--alpha", type=float, nargs="+", default=None,
                   help="fractional order(s) in (0, 1); default 0.9 (0.99 for epidemic)")
    p.add_argument("--ab", choices=["unit", "gamma"], default="unit",
                   help="normalization AB(alpha): 1 or 1 - alpha + alpha/Gamma(alpha)")
    p.add_argument("--steps", type=int, nargs="+", default=None, help="step count(s) N")
    p.add_argument("--t-end", type=float, default=None, help="final time")
    p.add_argument("--out-dir", type=Path, default=None,
                   help="output directory (stdout when omitted, where supported)")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--paper-literal-predictor", action="store_true",
                   help="use the printed extrapolation coefficients (for comparison only)")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="abcpc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", parents=[common], help="solve one problem and dump the trajectory")
    s.add_argument("problem", help="example1-n<k>, example2, zero, or a JSON problem file")
    s.add_argument("--include-startup", action="store_true",
                   help="also emit the quarter and half start-up nodes")

    c = sub.add_parser("convergence", parents=[common], help="AE/EOC table against an exact solution")
    c.add_argument("problem", help="example1-n<k>, example2 or zero")
    c.add_argument("--no-timing", action="store_true",
                   help="omit wall-clock seconds so reports are byte-reproducible")

    e = sub.add_parser("epidemic", parents=[common], help="run SI presets or a JSON problem file")
    e.add_argument("source", help="set1..set4 or path to a JSON problem file")
    e.add_argument("--incidence", choices=["bilinear", "saturated"], default="bilinear")
    e.add_argument("--initial", type=float, nargs=2, action="append", metavar=("U0", "V0"),
                   help="initial data; repeat for several runs")
    e.add_argument("--plot", action="store_true", help="also write an SVG overlay")

    w = sub.add_parser("weights", parents=[common], help="dump lag weights as CSV")
    w.add_argument("--target", type=int, nargs="+", default=None,
                   help="targets to dump (default: every target 1..N)")

    m = sub.add_parser("mlf", help="evaluate E_{alpha,beta}(z)")
    m.add_argument("--alpha", type=float, required=True)
    m.add_argument("--beta", type=float, default=1.0)
    m.add_argument("--z", type=float, nargs="+", required=True)

    pl = sub.add_parser("plot", help="SVG overlay of trajectory CSV files")
    pl.add_argument("files", nargs="+", type=Path)
    pl.add_argument("--output", "-o", type=Path, required=True)
    pl.add_argument("--title", default="")
    return parser


def _emit(text: str, out_dir: Path | None, name: str) -> None:
    if out_dir is None:
        sys.stdout.write(text)
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / name).write_text(text)


def _single(values, flag: str):
    if values is None:
        return None
    if len(values) != 1:
        raise ValidationError(f"{flag} takes exactly one value here, got {values}")
    return values[0]


def _cmd_solve(args) -> None:
    jobs = []
    if args.problem.endswith(".json"):
        try:
            data = json.loads(Path(args.problem).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read {args.problem}: {exc}") from None
        run = EpidemicRun.from_dict(data)
        steps = args.steps or [run.n_steps]
        t_end = args.t_end if args.t_end is not None else run.t_end
        for n in steps:
            prob = dataclasses.replace(run.problem(), t_end=t_end)
            jobs.append((Path(args.problem).stem, run.params, prob, n))
    else:
        for a in args.alpha or [0.9]:
            params = ABCParams.from_choice(a, args.ab)
            prob = problem_from_id(args.problem, params)
            if args.t_end is not None:
                prob = dataclasses.replace(prob, t_end=args.t_end)
            for n in args.steps or [40]:
                jobs.append((args.problem, params, prob, n))
    for label, params, prob, n in jobs:
        traj = solve(prob, params, Grid(prob.t_end, n),
                     paper_literal=args.paper_literal_predictor,
                     include_startup=args.include_startup)
        stem = f"{label}_a{params.alpha:g}_{params.normalization.value}_N{n}"
        if args.format == "csv":
            _emit(traj.to_csv(), args.out_dir, stem + ".csv")
        else:
            doc = {
                "problem": label, "alpha": params.alpha, "ab": params.normalization.value,
                "n": n, "t_end": prob.t_end, "t": traj.times.tolist(),
                "y": traj.states.tolist(), "startup": traj.startup_mask.tolist(),
            }
            _emit(json.dumps(doc, indent=2) + "\n", args.out_dir, stem + ".json")


def _cmd_convergence(args) -> None:
    if args.t_end is not None:
        raise ValidationError("convergence problems have fixed final times; drop --t-end")
    steps = args.steps or [10, 20, 40, 80, 160, 320]
    reports = run_convergence(args.problem, args.alpha or [0.9], steps, args.ab,
                              paper_literal=args.paper_literal_predictor,
                              timing=not args.no_timing)
    stem = f"convergence_{args.problem}_{args.ab}"
    if args.format == "csv":
        _emit(reports_to_csv(reports), args.out_dir, stem + ".csv")
    else:
        _emit(reports_to_json(reports), args.out_dir, stem + ".json")


def _cmd_epidemic(args) -> None:
    n = _single(args.steps, "--steps") or 2000
    summary = run_epidemic(args.source, args.alpha, args.initial,
                           out_dir=args.out_dir or Path("epidemic-out"),
                           incidence=args.incidence, ab_choice=args.ab, n_steps=n,
                           t_end=args.t_end if args.t_end is not None else 200.0,
                           paper_literal=args.paper_literal_predictor, plot=args.plot)
    for r in summary["runs"]:
        print(f"{r['trajectory']}: final=({r['final_state'][0]:.6g}, {r['final_state'][1]:.6g}) "
              f"distance={r['distance_to_limit']:.3e}")


def _cmd_weights(args) -> None:
    n = _single(args.steps, "--steps") or 10
    t_end = args.t_end if args.t_end is not None else 1.0
    a = _single(args.alpha, "--alpha") or 0.9
    table = WeightTable(ABCParams.from_choice(a, args.ab), Grid(t_end, n))
    lines = ["target,k,j,value"]
    for target in args.target or range(1, n + 1):
        lw = table.lag_weights(target)
        for k in range(target):
            for j in range(3):
                lines.append(f"{target},{k},{j},{lw.weights[j, k]:.17g}")
    _emit("\n".join(lines) + "\n", args.out_dir, "weights.csv")


def _cmd_mlf(args) -> None:
    for z in args.z:
        print(f"{mittag_leffler(z, args.alpha, args.beta):.16g}")


def _cmd_plot(args) -> None:
    emit_plot(args.files, args.output, title=args.title)


COMMANDS = {
    "solve": _cmd_solve,
    "convergence": _cmd_convergence,
    "epidemic": _cmd_epidemic,
    "weights": _cmd_weights,
    "mlf": _cmd_mlf,
    "plot": _cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"abcpc: error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (NumericalError, FloatingPointError, OverflowError) as exc:
        print(f"abcpc: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
