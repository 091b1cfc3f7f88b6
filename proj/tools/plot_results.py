#!/usr/bin/env python3
"""Quick-look plots for semicircle_lab CSV output.

Reads a results.csv produced by `semicircle_lab scan` (or the counting /
rigidity / edge studies) and renders the standard diagnostic figures.

    python3 tools/plot_results.py out/results.csv --kind scan -o scan.png
"""

import argparse
import csv
import sys
from collections import defaultdict


def read_rows(path):
    with open(path, newline="") as f:
        return list(csv.DictReader(f))


def median(values):
    s = sorted(values)
    n = len(s)
    if n == 0:
        raise SystemExit("no data rows")
    return s[n // 2] if n % 2 else 0.5 * (s[n // 2 - 1] + s[n // 2])


def plot_scan(rows, ax):
    by_cell = defaultdict(list)
    for r in rows:
        by_cell[(int(r["N"]), float(r["eta"]), float(r["E"]))].append(float(r["abs_lambda"]))
    series = defaultdict(list)
    for (N, eta, E), values in sorted(by_cell.items()):
        series[(N, E)].append((N * eta, median(values)))
    for (N, E), points in sorted(series.items()):
        xs, ys = zip(*sorted(points))
        ax.loglog(xs, ys, "o-", label=f"N={N}, E={E}")
    ax.set_xlabel(r"$N\eta$")
    ax.set_ylabel(r"median $|m - m_{sc}|$")
    ax.legend(fontsize=8)
    ax.set_title("fluctuation scan")


def plot_edge(rows, ax):
    by_n = defaultdict(list)
    for r in rows:
        by_n[int(r["N"])].append(float(r["lambda_max"]))
    ns, iqrs = [], []
    for N, values in sorted(by_n.items()):
        s = sorted(values)
        q1 = s[len(s) // 4]
        q3 = s[(3 * len(s)) // 4]
        ns.append(N)
        iqrs.append(q3 - q1)
    ax.loglog(ns, iqrs, "s-")
    ref = [iqrs[0] * (n / ns[0]) ** (-2.0 / 3.0) for n in ns]
    ax.loglog(ns, ref, "--", label=r"$N^{-2/3}$")
    ax.set_xlabel("N")
    ax.set_ylabel(r"IQR$(\lambda_{max})$")
    ax.legend(fontsize=8)
    ax.set_title("edge scaling")


def plot_study(rows, column, ax):
    by_n = defaultdict(list)
    for r in rows:
        by_n[int(r["N"])].append(float(r[column]))
    ns = sorted(by_n)
    ax.boxplot([by_n[n] for n in ns], tick_labels=[str(n) for n in ns])
    ax.set_xlabel("N")
    ax.set_ylabel(column)
    ax.set_yscale("log")
    ax.set_title(column)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("csv_path")
    parser.add_argument("--kind", choices=["scan", "counting", "rigidity", "edge"],
                        default="scan")
    parser.add_argument("-o", "--output", default=None, help="write PNG instead of showing")
    args = parser.parse_args()

    try:
        import matplotlib
        if args.output:
            matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        sys.exit("matplotlib is required for plotting")

    rows = read_rows(args.csv_path)
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if args.kind == "scan":
        plot_scan(rows, ax)
    elif args.kind == "edge":
        plot_edge(rows, ax)
    elif args.kind == "counting":
        plot_study(rows, "normalized_counting", ax)
    else:
        plot_study(rows, "rigidity_stat", ax)
    fig.tight_layout()
    if args.output:
        fig.savefig(args.output, dpi=150)
        print(f"wrote {args.output}")
    else:
        plt.show()


if __name__ == "__main__":
    main()
