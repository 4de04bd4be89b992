"""Rebuild the AE/EOC tables for both test problems and compare with the reference values.

    python scripts/reproduce_tables.py --out-dir results/tables
"""

from __future__ import annotations

import argparse
from pathlib import Path

from abcpc.harness import run_convergence, write_reports
from abcpc.reference import EX1_N3, EX2_GAMMA, EX2_UNIT, N_LIST

TABLES = [
    ("example1-n3", "gamma", EX1_N3),
    ("example2", "unit", EX2_UNIT),
    ("example2", "gamma", EX2_GAMMA),
]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", type=Path, default=Path("results/tables"))
    ap.add_argument("--no-timing", action="store_true")
    args = ap.parse_args()
    for problem, ab, ref in TABLES:
        reports = run_convergence(problem, list(ref), N_LIST, ab, timing=not args.no_timing)
        path = write_reports(reports, args.out_dir, "csv", stem=f"{problem}_{ab}")
        write_reports(reports, args.out_dir, "json", stem=f"{problem}_{ab}")
        print(f"\n{problem}  AB={ab}  -> {path}")
        print(f"{'alpha':>6} {'N':>5} {'AE':>10} {'ref AE':>8} {'EOC':>6} {'ref':>6}")
        for rep in reports:
            for i, row in enumerate(rep.rows):
                eoc = "" if row.eoc is None else f"{row.eoc:.2f}"
                ref_eoc = "" if i == 0 else f"{ref[rep.alpha]['eoc'][i - 1]:.2f}"
                print(f"{rep.alpha:>6} {row.n:>5} {row.ae:>10.2e} "
                      f"{ref[rep.alpha]['ae'][i]:>8.1e} {eoc:>6} {ref_eoc:>6}")


if __name__ == "__main__":
    main()
