"""Acceptance checks, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line; the same lines are
repeated in the pytest terminal summary.  Run directly with
``python tests/test_acceptance.py`` for the lines alone.
"""

from __future__ import annotations

import math
import time

import numpy as np
import pytest

from abcpc import ABCParams, Grid, ProblemSpec, WeightTable, increment_weights, solve
from abcpc.harness import run_convergence
from abcpc.models import (PRESET_U0, PRESETS, equilibria, example1_problem, example2_problem,
                          in_feasible_region, preset, reproduction_number, si_problem,
                          zero_problem)
from abcpc.reference import EX1_N2_AE, EX1_N3, EX2_GAMMA, EX2_UNIT, N_LIST, R0
from abcpc.solver import run, startup
from abcpc.special import gamma, mittag_leffler
from abcpc.weights import first_panel_weights, interior_basis_weights, panel_moments
from oracles import increment_oracle, lag_weight_oracle

RESULTS: dict[int, str] = {}
SEED = 20261014


def report(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def within_factor(value: float, ref: float, factor: float = 2.0) -> bool:
    return ref / factor <= value <= ref * factor


def compare_table(reports, table, eoc_tol, eoc_from_n=20):
    """Return a list of human-readable mismatches against a reference table."""
    bad = []
    for rep in reports:
        ref = table[rep.alpha]
        for i, row in enumerate(rep.rows):
            if not within_factor(row.ae, ref["ae"][i]):
                bad.append(f"a={rep.alpha} N={row.n} AE {row.ae:.2e} vs {ref['ae'][i]:.1e}")
            if i > 0 and row.n >= eoc_from_n:
                want = ref["eoc"][i - 1]
                if row.eoc is None or abs(row.eoc - want) > eoc_tol:
                    bad.append(f"a={rep.alpha} N={row.n} EOC {row.eoc:.2f} vs {want:.2f}")
    return bad


def test_criterion_1_quadratic_forcing_roundoff():
    worst, slowest = 0.0, 0.0
    for ab in ("unit", "gamma"):
        for alpha in EX1_N2_AE:
            params = ABCParams.from_choice(alpha, ab)
            start = time.perf_counter()
            (rep,) = run_convergence("example1-n2", [alpha], [40], ab)
            slowest = max(slowest, time.perf_counter() - start)
            worst = max(worst, rep.rows[0].ae)
            assert params.alpha == rep.alpha
    report(1, worst <= 1e-12 and slowest < 1.0,
           f"max AE {worst:.1e} (<= 1e-12), slowest run {slowest:.3f}s (< 1s)")


def test_criterion_2_cubic_forcing_table():
    start = time.perf_counter()
    reps = run_convergence("example1-n3", list(EX1_N3), N_LIST, "gamma")
    elapsed = time.perf_counter() - start
    bad = compare_table(reps, EX1_N3, eoc_tol=0.1, eoc_from_n=40)
    report(2, not bad and elapsed < 30.0,
           f"{len(bad)} mismatches {bad[:3]}, total {elapsed:.2f}s (< 30s)")


def test_criterion_3_mittag_leffler_problem_tables():
    start = time.perf_counter()
    bad = []
    for ab, table in (("unit", EX2_UNIT), ("gamma", EX2_GAMMA)):
        reps = run_convergence("example2", list(table), N_LIST, ab)
        bad += [f"[{ab}] {m}" for m in compare_table(reps, table, eoc_tol=0.3)]
    elapsed = time.perf_counter() - start
    report(3, not bad and elapsed < 60.0,
           f"{len(bad)} mismatches {bad}, total {elapsed:.2f}s (< 60s)")


def test_criterion_4_weights_match_quadrature_oracle():
    rng = np.random.default_rng(SEED)
    worst_lag = worst_inc = 0.0
    for _ in range(200):
        alpha = float(rng.uniform(0.01, 0.99))
        n = int(rng.integers(3, 2001))
        target = int(rng.integers(1, n + 1))
        k = int(rng.integers(0, target))
        j = int(rng.integers(0, 3))
        table = WeightTable(ABCParams(alpha), Grid(1.0, n))
        w = table.lag_weights(target).weights[j, k] / table.h_alpha
        ref = float(lag_weight_oracle(alpha, target, k, j))
        worst_lag = max(worst_lag, abs(w - ref) / abs(ref))
        inc = increment_weights(alpha, 1.0)
        ref_b = float(increment_oracle(alpha, j))
        worst_inc = max(worst_inc, abs(inc.scale_B * inc.b[j] - ref_b) / abs(ref_b))
    report(4, max(worst_lag, worst_inc) <= 1e-12,
           f"200 tuples, worst relative error lag {worst_lag:.1e}, increment {worst_inc:.1e}")


def test_criterion_5_weight_identities():
    rng = np.random.default_rng(SEED + 1)
    worst = 0.0
    for _ in range(1000):
        alpha = float(rng.uniform(0.01, 0.99))
        d = float(np.exp(rng.uniform(0.0, np.log(1e5)))) if rng.random() < 0.8 else 1.0
        b = increment_weights(alpha, 1.0).b
        worst = max(worst, abs(b.sum() - (alpha + 1) * (alpha + 2)) / ((alpha + 1) * (alpha + 2)))
        m = panel_moments(alpha, [d])
        # constant reproduction: each panel's weights sum to its kernel mass M_0(d)
        for w in (interior_basis_weights(m), first_panel_weights(m)):
            worst = max(worst, abs(w[:, 0].sum() - m[0, 0]) / m[0, 0])
    report(5, worst <= 1e-13, f"1000 samples, worst relative residual {worst:.1e}")


def test_criterion_6_special_functions():
    rng = np.random.default_rng(SEED + 2)
    worst = 0.0
    for _ in range(100):
        z = float(rng.uniform(-50.0, 50.0))
        zp = abs(z)
        checks = [
            (mittag_leffler(z, 1.0, 1.0), math.exp(z)),
            (mittag_leffler(z, 1.0, 2.0), math.expm1(z) / z),
            (mittag_leffler(zp, 2.0, 1.0), math.cosh(math.sqrt(zp))),
        ]
        worst = max(worst, *(abs(v - r) / abs(r) for v, r in checks))
    worst_gamma = 0.0
    for x in rng.uniform(1e-3, 150.0, size=100):
        worst_gamma = max(worst_gamma, abs(gamma(x + 1) - x * gamma(x)) / (x * gamma(x)))
    report(6, worst <= 1e-11 and worst_gamma <= 1e-12,
           f"Mittag-Leffler identities worst rel {worst:.1e}, gamma recurrence {worst_gamma:.1e}")


def test_criterion_7_epidemic_behaviour():
    start = time.perf_counter()
    problems = []
    r0_ok = all(round(reproduction_number(preset(n, inc)), 4) == R0[n]
                for n in PRESETS for inc in ("bilinear", "saturated"))
    if not r0_ok:
        problems.append("R0")
    params = ABCParams(0.99)
    worst = {}
    for name in PRESETS:
        for inc in ("bilinear", "saturated"):
            ep = preset(name, inc)
            eq = equilibria(ep)
            for u0 in PRESET_U0[name]:
                traj = solve(si_problem(ep, (u0, ep.capacity - u0), params), params,
                             Grid(200.0, 2000))
                u, v = traj.states[-1]
                if not all(in_feasible_region(ep, a, b, slack=1e-3) for a, b in traj.states):
                    problems.append(f"{name}/{inc}/{u0} left the feasible region")
                if eq.endemic is None:
                    score, limit = v, 1e-3
                else:
                    score, limit = math.dist((u, v), eq.endemic), 1e-2
                worst[name] = max(worst.get(name, 0.0), score)
                if not score < limit:
                    problems.append(f"{name}/{inc}/u0={u0}: {score:.2e}")
    elapsed = time.perf_counter() - start
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(7, not problems and elapsed < 60.0,
           f"R0 ok={r0_ok}; worst final v (sets 1/3) or distance (sets 2/4): {detail}; "
           f"{elapsed:.1f}s (< 60s) {problems}")


def _startup_errors(prob, params, n):
    g = Grid(prob.t_end, n)
    st = startup(prob, params, g)
    return (abs(st.y_hist[0, 1] - prob.exact_at(g.t(1))[0]),
            abs(st.y_hist[0, 2] - prob.exact_at(g.t(2))[0]),
            abs(st.y_half[0] - prob.exact_at(g.t(0.5))[0]))


def test_criterion_8_startup_order():
    alphas, ns = (0.5, 0.7, 0.9, 0.99), (40, 80, 160, 320)
    # quadratic forcing: the start-up integrates t^2 exactly, the slope is unbounded
    worst_n2 = max(max(_startup_errors(example1_problem(2, ABCParams(a)), ABCParams(a), n))
                   for a in alphas for n in ns)
    # cubic forcing: finite errors, measured slopes
    ok, slopes = worst_n2 <= 1e-13, []
    for a in alphas:
        params = ABCParams(a)
        errs = [_startup_errors(example1_problem(3, params), params, n) for n in ns]
        for c, need in ((0, 2.7), (1, 2.7), (2, 2.7 - a - 0.1)):
            s = min(math.log2(errs[i][c] / errs[i + 1][c]) for i in range(len(ns) - 1))
            slopes.append(s)
            ok &= s >= need
    report(8, ok, f"n=2 start-up error {worst_n2:.1e} (exact); n=3 minimum slope "
                  f"{min(slopes):.2f}")


def test_criterion_9_invariants():
    failures = []
    params = ABCParams(0.7, "gamma")
    if not np.all(solve(zero_problem(y0=2.5), params, 40, include_startup=True).states == 2.5):
        failures.append("f=0")

    def forced(g):
        return ProblemSpec(lambda t, y: np.full_like(y, g(t)), [0.0], 1.0)

    a = solve(forced(np.sin), params, 30, include_startup=True).states
    b = solve(forced(np.exp), params, 30, include_startup=True).states
    c = solve(forced(lambda t: 2 * np.sin(t) - 3 * np.exp(t)), params, 30,
              include_startup=True).states
    if not np.allclose(c, 2 * a - 3 * b, rtol=1e-12, atol=1e-13):
        failures.append("linearity")
    st = run(example2_problem(params), params, 50)
    if st.lag_evaluations != 48 or st.rhs_evaluations != 13 + 2 * 48:
        failures.append("lag/rhs counters")

    def pair(t, y):
        return np.array([t - y[0], -y[1] ** 2])

    vec = solve(ProblemSpec(pair, [0.0, 1.0], 1.0), params, 50).states
    s1 = solve(ProblemSpec(lambda t, y: t - y, [0.0], 1.0), params, 50).states[:, 0]
    s2 = solve(ProblemSpec(lambda t, y: -y**2, [1.0], 1.0), params, 50).states[:, 0]
    if not (np.array_equal(vec[:, 0], s1) and np.array_equal(vec[:, 1], s2)):
        failures.append("vector/scalar")
    r1 = solve(example2_problem(params), params, 64, include_startup=True).to_csv()
    r2 = solve(example2_problem(params), params, 64, include_startup=True).to_csv()
    if r1 != r2:
        failures.append("determinism")
    report(9, not failures, f"invariant failures: {failures or 'none'}")


if __name__ == "__main__":
    import sys
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
