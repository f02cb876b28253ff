#!/usr/bin/env python3
"""Plot a conditioning-study CSV (as written by `bbpyr cond-study`).

Usage:
    python3 -m bbpyr cond-study --order 8 --out study.csv
    python3 scripts/plot_cond_study.py study.csv cond.png
"""

import csv
import sys
from collections import defaultdict

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

MARKERS = {"pyramid": "o", "tetrahedron": "s"}


def main(argv):
    if len(argv) != 3:
        print(__doc__, file=sys.stderr)
        return 2
    src, dst = argv[1], argv[2]
    series = defaultdict(list)
    with open(src) as fh:
        for row in csv.DictReader(fh):
            series[(row["shape"], row["kind"])].append((int(row["N"]), float(row["cond"])))

    kinds = sorted({kind for _, kind in series})
    fig, axes = plt.subplots(1, len(kinds), figsize=(5 * len(kinds), 4), squeeze=False)
    for ax, kind in zip(axes[0], kinds):
        for (shape, k), pts in sorted(series.items()):
            if k != kind:
                continue
            pts.sort()
            ax.semilogy([n for n, _ in pts], [c for _, c in pts],
                        marker=MARKERS.get(shape, "x"), label=shape)
        ax.set_xlabel("order N")
        ax.set_ylabel("2-norm condition number")
        ax.set_title(f"{kind} matrix")
        ax.grid(True, which="both", alpha=0.3)
        ax.legend()
    fig.tight_layout()
    fig.savefig(dst, dpi=150)
    print(f"wrote {dst}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))
