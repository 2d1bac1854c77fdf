#!/usr/bin/env python3
"""Run the shipped experiment configs and their paired stats end to end.

Everything goes through the public CLI so this script doubles as a worked
example.  Results land in --out-dir (default results/).  With --figures the
plot tool in plots/ (build it first: npm install && npm run build) renders a
violin and, where a pairing exists, an effect heatmap per experiment.
"""
from __future__ import annotations

import argparse
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
PLOT_CLI = ROOT / "plots" / "dist" / "cli.js"

# config name -> list of (variant_a, variant_b, per_run) pairings for stats
EXPERIMENTS = {
    "smoke": [("uniform", "degree", False)],
    "ba_scaling": [("uniform", "eigenvector", False)],
    "dd_pagerank": [("uniform", "pagerank", False)],
    "grid_betweenness": [("uniform", "betweenness", True)],
    "er_null": [
        ("uniform", kind, False)
        for kind in ("degree", "eigenvector", "pagerank", "clustering", "betweenness")
    ],
}


def run(cmd: list[str]) -> None:
    print("+", " ".join(str(c) for c in cmd), flush=True)
    subprocess.run([str(c) for c in cmd], check=True)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default=ROOT / "results", type=Path)
    ap.add_argument("--only", action="append", choices=sorted(EXPERIMENTS),
                    help="run just these configs (repeatable)")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--figures", action="store_true",
                    help="also render SVG figures with plots/dist/cli.js")
    args = ap.parse_args()

    if args.figures and not PLOT_CLI.exists():
        ap.error(f"{PLOT_CLI} not built; run npm install && npm run build in plots/")

    names = args.only or sorted(EXPERIMENTS)
    args.out_dir.mkdir(parents=True, exist_ok=True)
    for name in names:
        csv_path = args.out_dir / f"{name}.csv"
        run([sys.executable, "-m", "approxsym.cli", "experiment",
             ROOT / "configs" / f"{name}.toml", "-o", csv_path,
             "--workers", args.workers])
        for variant_a, variant_b, per_run in EXPERIMENTS[name]:
            stats_path = args.out_dir / f"{name}_stats_{variant_a}_vs_{variant_b}.csv"
            cmd = [sys.executable, "-m", "approxsym.cli", "stats", csv_path,
                   "--pair", f"{variant_a},{variant_b}", "-o", stats_path]
            if per_run:
                cmd.append("--per-run")
            run(cmd)
            if args.figures:
                run(["node", PLOT_CLI, "heatmap", stats_path,
                     "-o", stats_path.with_suffix(".svg")])
        if args.figures:
            run(["node", PLOT_CLI, "violin", csv_path,
                 "-o", args.out_dir / f"{name}_violin.svg",
                 "--group", "model,params"])
    return 0


if __name__ == "__main__":
    sys.exit(main())
