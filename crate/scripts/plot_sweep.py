#!/usr/bin/env python3
"""Plot the long-format CSV written by `gentile sweep`.

    gentile sweep --s 1 --k 1,2,4,inf --n 10..200 --out s1.csv
    python3 scripts/plot_sweep.py s1.csv s1.png

Solid lines are exact counts, dashed lines the default estimate (est_eq21,
which holds the unbounded-k formula for k = inf). Counts go on a log axis.
"""
import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def main(src, dst):
    series = defaultdict(lambda: ([], [], []))
    with open(src, newline="") as f:
        for row in csv.DictReader(f):
            n, exact, est = series[row["k"]]
            n.append(int(row["n"]))
            exact.append(float(row["exact"]) or float("nan"))
            est.append(float(row["est_eq21"]))

    fig, ax = plt.subplots(figsize=(7, 5))
    for k, (n, exact, est) in series.items():
        (line,) = ax.plot(n, exact, label=f"k={k} exact")
        ax.plot(n, est, "--", color=line.get_color(), label=f"k={k} asymptotic")
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("count")
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(dst, dpi=150)


if __name__ == "__main__":
    if len(sys.argv) != 3:
        sys.exit(__doc__)
    main(sys.argv[1], sys.argv[2])
