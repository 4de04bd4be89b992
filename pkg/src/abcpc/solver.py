"""Third-order predictor-corrector stepper for ABC-fractional initial-value problems.

The problem D^alpha y = f(t, y), y(0) = y0 is solved through its Volterra form

    y(t) = y0 + (1-alpha)/AB * f(t, y(t)) + alpha/(AB Gamma(alpha)) * int_0^t (t-s)**(alpha-1) f ds.

At each target t_{n+1} the history integral over [0, t_n] (the lag term) is
assembled once from stored f values with quadratic Lagrange weights, then
shared by an explicit predictor (quadratic extrapolation on the last panel)
and a single correction that evaluates f at the predicted state.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .errors import NumericalError, ValidationError
from .params import ABCParams, Grid
from .weights import WeightTable, kernel_interpolation_weights

RHS = Callable[[float, np.ndarray], np.ndarray]


@dataclass
class ProblemSpec:
    rhs: RHS
    y0: np.ndarray
    t_end: float
    exact: Callable[[float], np.ndarray] | None = None
    name: str = "custom"

    def __post_init__(self) -> None:
        self.y0 = np.atleast_1d(np.asarray(self.y0, dtype=float)).copy()
        if self.y0.ndim != 1 or self.y0.size == 0:
            raise ValidationError("y0 must be a non-empty vector")
        if not np.all(np.isfinite(self.y0)):
            raise ValidationError("y0 must be finite")
        if not (self.t_end > 0.0 and math.isfinite(self.t_end)):
            raise ValidationError(f"t_end must be positive, got {self.t_end!r}")

    @property
    def dimension(self) -> int:
        return self.y0.size

    def exact_at(self, t: float) -> np.ndarray:
        if self.exact is None:
            raise ValidationError(f"problem {self.name!r} has no exact solution")
        val = np.atleast_1d(np.asarray(self.exact(t), dtype=float))
        if val.shape != self.y0.shape:
            raise ValidationError(
                f"exact solution has shape {val.shape}, expected {self.y0.shape}"
            )
        return val


@dataclass
class SolverState:
    """Mutable history of one run.

    ``f_hist``/``y_hist`` have shape (d, N + 1) and hold integer nodes; the
    quarter and half nodes of the start-up are kept separately.
    """

    problem: ProblemSpec
    params: ABCParams
    grid: Grid
    weights: WeightTable
    f_hist: np.ndarray
    y_hist: np.ndarray
    filled: int = -1
    f_quarter: np.ndarray | None = None
    y_quarter: np.ndarray | None = None
    f_half: np.ndarray | None = None
    y_half: np.ndarray | None = None
    lag_cache: np.ndarray | None = None
    lag_target: int | None = None
    lag_evaluations: int = 0
    rhs_evaluations: int = 0
    paper_literal: bool = False
    step_log: list = field(default_factory=list)

    @classmethod
    def empty(cls, problem: ProblemSpec, params: ABCParams, grid: Grid,
              paper_literal: bool = False) -> "SolverState":
        d = problem.dimension
        n = grid.n_steps
        return cls(
            problem=problem,
            params=params,
            grid=grid,
            weights=WeightTable(params, grid),
            f_hist=np.zeros((d, n + 1)),
            y_hist=np.zeros((d, n + 1)),
            paper_literal=paper_literal,
        )

    def eval_rhs(self, t: float, y: np.ndarray, where: str) -> np.ndarray:
        self.rhs_evaluations += 1
        with np.errstate(all="ignore"):
            val = np.atleast_1d(np.asarray(self.problem.rhs(t, y), dtype=float))
        if val.shape != y.shape:
            raise ValidationError(f"rhs returned shape {val.shape}, expected {y.shape}")
        if not np.all(np.isfinite(val)):
            raise NumericalError(f"rhs produced non-finite values at {where} (t={t!r})")
        return val

    def store(self, k: int, y: np.ndarray, f: np.ndarray) -> None:
        self.y_hist[:, k] = y
        self.f_hist[:, k] = f
        self.filled = k


def _kernel_sum(weights: np.ndarray, values: list[np.ndarray]) -> np.ndarray:
    out = weights[0] * values[0]
    for w, v in zip(weights[1:], values[1:]):
        out = out + w * v
    return out


def startup(problem: ProblemSpec, params: ABCParams, grid: Grid,
            paper_literal: bool = False) -> SolverState:
    """Seed t_{1/4}, t_{1/2}, t_1 and t_2 with a ladder of constant, linear and
    quadratic interpolation stages.

    ``paper_literal`` swaps in the extrapolation ``6 f_b - 8 f_a - 3 f_0`` and
    drops the memory coefficient on the t_2 stages, for comparison runs.
    """
    if grid.n_steps < 3:
        raise ValidationError("the predictor stencil needs n_steps >= 3")
    if not math.isclose(grid.t_end, problem.t_end, rel_tol=1e-15):
        raise ValidationError(f"grid ends at {grid.t_end}, problem at {problem.t_end}")
    st = SolverState.empty(problem, params, grid, paper_literal=paper_literal)
    a = params.alpha
    loc = params.local_coeff
    mem = params.memory_coeff
    h = grid.h
    y0 = problem.y0
    f = st.eval_rhs

    def K(nodes, t_star):
        return kernel_interpolation_weights(a, nodes, t_star)

    f0 = f(0.0, y0, "t_0")
    st.store(0, y0.copy(), f0)

    tq = 0.25 * h
    yp = y0 + loc * f(tq, y0, "t_1/4 predictor") + mem * (tq**a / a) * f0
    fp = f(tq, yp, "t_1/4 corrector")
    yq = y0 + loc * fp + mem * _kernel_sum(K([0.0, tq], tq), [f0, fp])
    fq = f(tq, yq, "t_1/4")
    st.y_quarter, st.f_quarter = yq, fq

    th = 0.5 * h
    yp1 = y0 + loc * (2.0 * fq - f0) + mem * (th**a / a) * fq
    fp1 = f(th, yp1, "t_1/2 stage 1")
    yp2 = y0 + loc * fp1 + mem * _kernel_sum(K([tq, th], th), [fq, fp1])
    fp2 = f(th, yp2, "t_1/2 stage 2")
    yh = y0 + loc * fp2 + mem * _kernel_sum(K([0.0, tq, th], th), [f0, fq, fp2])
    fh = f(th, yh, "t_1/2")
    st.y_half, st.f_half = yh, fh

    c0 = -3.0 if paper_literal else 3.0
    yp1 = y0 + loc * (6.0 * fh - 8.0 * fq + c0 * f0) + mem * (h**a / a) * fh
    fp1 = f(h, yp1, "t_1 stage 1")
    yp2 = y0 + loc * fp1 + mem * _kernel_sum(K([th, h], h), [fh, fp1])
    fp2 = f(h, yp2, "t_1 stage 2")
    y1 = y0 + loc * fp2 + mem * _kernel_sum(K([0.0, th, h], h), [f0, fh, fp2])
    f1 = f(h, y1, "t_1")
    st.store(1, y1, f1)

    t2 = 2.0 * h
    mem2 = 1.0 if paper_literal else mem
    yp1 = y0 + loc * (6.0 * f1 - 8.0 * fh + c0 * f0) + mem2 * (t2**a / a) * f1
    fp1 = f(t2, yp1, "t_2 stage 1")
    yp2 = y0 + loc * fp1 + mem2 * _kernel_sum(K([h, t2], t2), [f1, fp1])
    fp2 = f(t2, yp2, "t_2 stage 2")
    y2 = y0 + loc * fp2 + mem2 * _kernel_sum(K([0.0, h, t2], t2), [f0, f1, fp2])
    f2 = f(t2, y2, "t_2")
    st.store(2, y2, f2)
    return st


def lag_term(state: SolverState, target: int) -> np.ndarray:
    """History contribution int_0^{t_n} for target = n + 1, cached on ``state``."""
    n = target - 1
    if target < 2 or state.f_half is None or state.filled < n:
        raise ValidationError(f"history incomplete for lag term at target {target}")
    W = state.weights
    F = state.f_hist
    w0 = W.first[:, target]
    acc = w0[0] * F[:, 0] + w0[1] * state.f_half + w0[2] * F[:, 1]
    if n >= 2:
        # panels k = 1 .. n-1 have d = target - k running from n down to 2
        r0 = W.interior[0, n:1:-1]
        r1 = W.interior[1, n:1:-1]
        r2 = W.interior[2, n:1:-1]
        hist = np.empty(state.problem.dimension)
        for i in range(hist.size):
            row = F[i]
            hist[i] = r0 @ row[0:n - 1] + r1 @ row[1:n] + r2 @ row[2:n + 1]
        acc = acc + hist
    lag = (state.params.memory_coeff * W.h_alpha) * acc
    state.lag_cache = lag
    state.lag_target = target
    state.lag_evaluations += 1
    return lag


def _require_lag(state: SolverState, target: int) -> np.ndarray:
    if state.lag_target != target or state.lag_cache is None:
        raise ValidationError(f"lag term not assembled for target {target}")
    return state.lag_cache


def predict(state: SolverState, target: int) -> np.ndarray:
    """Explicit predictor for y(t_{target}); needs f at target-3 .. target-1."""
    n = target - 1
    if target < 3 or state.filled < n:
        raise ValidationError(f"predictor at target {target} needs start-up history")
    lag = _require_lag(state, target)
    F = state.f_hist
    fm2, fm1, fn = F[:, n - 2], F[:, n - 1], F[:, n]
    p = state.params
    if state.paper_literal:
        extrap = fm2 - 3.0 * fm1 - 3.0 * fn
    else:
        extrap = 3.0 * fn - 3.0 * fm1 + fm2
    inc = state.weights.increment
    tail = inc.b0 * fm2 + inc.b1 * fm1 + inc.b2 * fn
    return (state.problem.y0 + p.local_coeff * extrap + lag
            + (p.memory_coeff * inc.scale_B) * tail)


def correct(state: SolverState, target: int, predicted: np.ndarray) -> np.ndarray:
    """One correction using f at the predicted state; no fixed-point iteration."""
    n = target - 1
    lag = _require_lag(state, target)
    t = state.grid.t(target)
    fp = state.eval_rhs(t, predicted, f"step {target}")
    F = state.f_hist
    w = state.weights.interior[:, 1]
    last = w[0] * F[:, n - 1] + w[1] * F[:, n] + w[2] * fp
    p = state.params
    return (state.problem.y0 + p.local_coeff * fp + lag
            + (p.memory_coeff * state.weights.h_alpha) * last)


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    startup_mask: np.ndarray
    includes_startup_nodes: bool = False
    rhs_evaluations: int = 0
    lag_evaluations: int = 0

    @property
    def dimension(self) -> int:
        return self.states.shape[1]

    def grid_part(self) -> tuple[np.ndarray, np.ndarray]:
        keep = ~self.startup_mask
        return self.times[keep], self.states[keep]

    def to_csv(self, path: str | Path | None = None) -> str:
        buf = io.StringIO()
        buf.write(",".join(["t"] + [f"y_{i}" for i in range(self.dimension)]) + "\n")
        for t, row, aux in zip(self.times, self.states, self.startup_mask):
            line = ",".join(f"{v:.17g}" for v in (t, *row))
            buf.write(("#startup " + line if aux else line) + "\n")
        text = buf.getvalue()
        if path is not None:
            Path(path).write_text(text)
        return text


def read_trajectory_csv(path: str | Path) -> Trajectory:
    """Parse a file written by :meth:`Trajectory.to_csv`."""
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("t"):
        raise ValidationError(f"{path}: missing 't,y_0,...' header")
    header = next(csv.reader([lines[0]]))
    times, rows, mask = [], [], []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        aux = line.startswith("#startup ")
        if aux:
            line = line[len("#startup "):]
        try:
            vals = [float(v) for v in next(csv.reader([line]))]
        except ValueError as exc:
            raise ValidationError(f"{path}:{lineno}: {exc}") from None
        if len(vals) != len(header):
            raise ValidationError(f"{path}:{lineno}: expected {len(header)} columns")
        times.append(vals[0])
        rows.append(vals[1:])
        mask.append(aux)
    if not times:
        raise ValidationError(f"{path}: no data rows")
    return Trajectory(np.array(times), np.array(rows), np.array(mask, dtype=bool),
                      includes_startup_nodes=any(mask))


def run(problem: ProblemSpec, params: ABCParams, grid: Grid | int,
        paper_literal: bool = False) -> SolverState:
    """Advance a full run and return the final state (history included)."""
    if not isinstance(grid, Grid):
        grid = Grid(problem.t_end, grid)
    st = startup(problem, params, grid, paper_literal=paper_literal)
    for target in range(3, grid.n_steps + 1):
        lag_term(st, target)
        yp = predict(st, target)
        y = correct(st, target, yp)
        st.store(target, y, st.eval_rhs(grid.t(target), y, f"step {target}"))
    return st


def solve(problem: ProblemSpec, params: ABCParams, grid: Grid | int,
          paper_literal: bool = False, include_startup: bool = False) -> Trajectory:
    st = run(problem, params, grid, paper_literal=paper_literal)
    g = st.grid
    times = g.nodes
    states = st.y_hist.T.copy()
    mask = np.zeros(times.size, dtype=bool)
    if include_startup:
        times = np.concatenate([times[:1], [g.t(0.25), g.t(0.5)], times[1:]])
        states = np.vstack([states[:1], st.y_quarter, st.y_half, states[1:]])
        mask = np.concatenate([[False, True, True], mask[1:]])
    return Trajectory(times, states, mask, includes_startup_nodes=include_startup,
                      rhs_evaluations=st.rhs_evaluations, lag_evaluations=st.lag_evaluations)
