"""Convergence sweeps and epidemic runs with CSV/JSON reporting."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ValidationError
from .models import (PRESET_U0, EpidemicParams, EpidemicRun, Incidence, equilibria,
                     in_feasible_region, preset, problem_from_id)
from .params import ABCParams, Grid, Normalization
from .plot import emit_plot
from .solver import ProblemSpec, solve


def experimental_order(ae_coarse: float, ae_fine: float) -> float | None:
    """log2 of the error ratio under halving h; None when either error is exactly zero."""
    if ae_coarse == 0.0 or ae_fine == 0.0:
        return None
    return math.log2(ae_coarse / ae_fine)


def absolute_error(problem: ProblemSpec, params: ABCParams, n_steps: int,
                   paper_literal: bool = False) -> float:
    """max_{1<=k<=N} |y(t_k) - y~_k|; start-up quarter/half nodes are not included."""
    traj = solve(problem, params, Grid(problem.t_end, n_steps), paper_literal=paper_literal)
    t, y = traj.grid_part()
    exact = np.array([problem.exact_at(tk) for tk in t[1:]])
    return float(np.max(np.abs(exact - y[1:])))


@dataclass
class ConvergenceRow:
    n: int
    ae: float
    eoc: float | None
    seconds: float | None


@dataclass
class ConvergenceReport:
    problem_id: str
    alpha: float
    ab_normalization: str
    rows: list[ConvergenceRow] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "problem": self.problem_id,
            "alpha": self.alpha,
            "ab": self.ab_normalization,
            "rows": [{"n": r.n, "ae": r.ae, "eoc": r.eoc, "seconds": r.seconds}
                     for r in self.rows],
        }

    @property
    def ae(self) -> list[float]:
        return [r.ae for r in self.rows]

    @property
    def eoc(self) -> list[float | None]:
        return [r.eoc for r in self.rows]


def _check_doubling(n_list) -> list[int]:
    ns = [int(n) for n in n_list]
    if not ns:
        raise ValidationError("n_list is empty")
    for a, b in zip(ns, ns[1:]):
        if b != 2 * a:
            raise ValidationError(f"step counts must double: {ns}")
    return ns


def run_convergence(problem_id: str, alpha_list, n_list, ab_choice: str = "unit",
                    paper_literal: bool = False, timing: bool = True) -> list[ConvergenceReport]:
    ns = _check_doubling(n_list)
    ab = Normalization(ab_choice).value
    reports = []
    for alpha in alpha_list:
        params = ABCParams.from_choice(float(alpha), ab)
        problem = problem_from_id(problem_id, params)
        if problem.exact is None:
            raise ValidationError(f"{problem_id} has no exact solution")
        report = ConvergenceReport(problem_id, params.alpha, ab)
        prev = None
        for n in ns:
            start = time.perf_counter()
            ae = absolute_error(problem, params, n, paper_literal=paper_literal)
            elapsed = time.perf_counter() - start
            eoc = None if prev is None else experimental_order(prev, ae)
            report.rows.append(ConvergenceRow(n, ae, eoc, elapsed if timing else None))
            prev = ae
        reports.append(report)
    return reports


def _num(x) -> str:
    return "" if x is None else f"{x:.17g}"


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["problem", "alpha", "ab", "n", "ae", "eoc", "seconds"])
    for rep in reports:
        for r in rep.rows:
            w.writerow([rep.problem_id, _num(rep.alpha), rep.ab_normalization, r.n,
                        _num(r.ae), _num(r.eoc), _num(r.seconds)])
    return buf.getvalue()


def reports_to_json(reports) -> str:
    return json.dumps([rep.to_dict() for rep in reports], indent=2) + "\n"


def write_reports(reports, out_dir: str | Path, fmt: str = "csv",
                  stem: str = "convergence") -> Path:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        path = out_dir / f"{stem}.csv"
        path.write_text(reports_to_csv(reports))
    elif fmt == "json":
        path = out_dir / f"{stem}.json"
        path.write_text(reports_to_json(reports))
    else:
        raise ValidationError(f"unknown format {fmt!r}")
    return path


def _tag(x: float) -> str:
    return f"{x:g}".replace(".", "p").replace("-", "m")


def load_runs(source: str | Path, alpha_list=None, initial_data_list=None,
              incidence: str = "bilinear", ab_choice: str = "unit",
              n_steps: int = 2000, t_end: float = 200.0) -> tuple[str, list[EpidemicRun]]:
    """Expand a preset name or a JSON problem file into individual runs."""
    source = str(source)
    if source.endswith(".json") or Path(source).is_file():
        try:
            data = json.loads(Path(source).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read problem file {source}: {exc}") from None
        items = data if isinstance(data, list) else [data]
        runs = [EpidemicRun.from_dict(item) for item in items]
        return Path(source).stem, runs
    ep = preset(source, incidence)
    alphas = list(alpha_list) if alpha_list else [0.99]
    if initial_data_list:
        starts = [tuple(map(float, iv)) for iv in initial_data_list]
    else:
        starts = [(u0, ep.capacity - u0) for u0 in PRESET_U0[source]]
    runs = [EpidemicRun(ep, ABCParams.from_choice(a, ab_choice), u0, v0, t_end, n_steps)
            for a in alphas for (u0, v0) in starts]
    return f"{source}-{Incidence(incidence).value}", runs


def run_epidemic(source: str | Path, alpha_list=None, initial_data_list=None,
                 out_dir: str | Path = "epidemic", incidence: str = "bilinear",
                 ab_choice: str = "unit", n_steps: int = 2000, t_end: float = 200.0,
                 paper_literal: bool = False, plot: bool = False) -> dict:
    """Run every (alpha, initial data) pair; write trajectories, problem files and a summary."""
    label, runs = load_runs(source, alpha_list, initial_data_list, incidence,
                            ab_choice, n_steps, t_end)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    written: list[Path] = []
    for run in runs:
        problem = run.problem()
        traj = solve(problem, run.params, Grid(run.t_end, run.n_steps),
                     paper_literal=paper_literal)
        eq = equilibria(run.epidemic)
        target = eq.endemic if eq.endemic is not None else eq.disease_free
        final = traj.states[-1]
        stem = (f"{label}_a{_tag(run.params.alpha)}_u{_tag(run.u0)}_v{_tag(run.v0)}")
        traj_path = out_dir / f"{stem}.csv"
        traj.to_csv(traj_path)
        (out_dir / f"{stem}.problem.json").write_text(json.dumps(run.to_dict(), indent=2) + "\n")
        written.append(traj_path)
        ok = all(in_feasible_region(run.epidemic, u, v, slack=1e-3) for u, v in traj.states)
        entries.append({
            "trajectory": traj_path.name,
            "alpha": run.params.alpha,
            "u0": run.u0,
            "v0": run.v0,
            "final_state": [float(final[0]), float(final[1])],
            "limit_point": list(target),
            "distance_to_limit": float(np.linalg.norm(final - np.asarray(target))),
            "distance_to_disease_free": float(np.linalg.norm(final - np.asarray(eq.disease_free))),
            "distance_to_endemic": (None if eq.endemic is None else
                                    float(np.linalg.norm(final - np.asarray(eq.endemic)))),
            "stays_feasible": ok,
        })
    first = runs[0].epidemic
    summary = {
        "source": label,
        "epidemic": first.to_dict(),
        "equilibria": equilibria(first).to_dict(),
        "runs": entries,
    }
    (out_dir / f"{label}_summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    if plot:
        emit_plot(written, out_dir / f"{label}.svg", title=label)
    return summary


def epidemic_params_equal(a: EpidemicParams, b: EpidemicParams) -> bool:
    return a.to_dict() == b.to_dict()
