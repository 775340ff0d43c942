#!/usr/bin/env python3
"""Plot summary CSVs produced by `hdc summarize`.

Draws median error vs. planned queries per (method, d, rho) group, with the
empirical 5th-95th percentile band, on log-log axes.

Usage: plot_results.py summary.csv [more.csv ...] [-o out.png]
"""

import argparse
import collections
import csv
import sys


def load(paths):
    groups = collections.defaultdict(list)
    for path in paths:
        with open(path, newline="") as fh:
            for row in csv.DictReader(fh):
                key = (row["method"], int(row["d"]), float(row["rho"]))
                groups[key].append(
                    (
                        int(row["budget_or_T"]),
                        float(row["median_error"]),
                        float(row["p5_error"]),
                        float(row["p95_error"]),
                    )
                )
    for rows in groups.values():
        rows.sort()
    return groups


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv", nargs="+", help="summary CSV files")
    parser.add_argument("-o", "--out", default="summary.png", help="output image")
    args = parser.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required to plot; install it or use the CSVs directly")

    groups = load(args.csv)
    if not groups:
        sys.exit("no rows found")

    fig, ax = plt.subplots(figsize=(7, 5))
    for (method, d, rho), rows in sorted(groups.items()):
        xs = [r[0] for r in rows]
        med = [r[1] for r in rows]
        lo = [r[2] for r in rows]
        hi = [r[3] for r in rows]
        (line,) = ax.plot(xs, med, marker="o", label=f"{method} d={d} rho={rho:g}")
        ax.fill_between(xs, lo, hi, alpha=0.15, color=line.get_color())

    ax.set_xscale("log")
    ax.set_yscale("log")
    ax.set_xlabel("queries")
    ax.set_ylabel("estimation error")
    ax.legend(fontsize=8)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
