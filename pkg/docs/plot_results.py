"""Plot CSV output of the experiment commands (needs matplotlib).

    python docs/plot_results.py results/between_vs_within.csv
    python docs/plot_results.py results/greedy_vs_optimal.csv
"""
import csv
import sys
from collections import defaultdict

import matplotlib.pyplot as plt


def load(path):
    with open(path) as fh:
        rows = list(csv.DictReader(line for line in fh if not line.startswith("#")))
    by_mode = defaultdict(list)
    for row in rows:
        by_mode[row["d_mode"]].append(row)
    return by_mode


def main(path):
    by_mode = load(path)
    fig, axes = plt.subplots(1, len(by_mode), figsize=(5 * len(by_mode), 4), squeeze=False)
    for ax, (mode, rows) in zip(axes[0], by_mode.items()):
        k = [int(r["k"]) for r in rows]
        if "mean_ratio" in rows[0]:
            ax.plot(k, [float(r["mean_ratio"]) for r in rows], "o-", label="mean")
            ax.plot(k, [float(r["max_ratio"]) for r in rows], "s--", label="max")
            ax.set_ylabel("greedy / optimal H_S")
        else:
            ax.plot(k, [float(r["mean_h_s_between"]) for r in rows], "o-", label="between")
            ax.plot(k, [float(r["mean_h_s_within"]) for r in rows], "s--", label="within")
            ax.set_ylabel("mean H_S")
        ax.set_xlabel("edges added")
        ax.set_title(f"D = {mode}")
        ax.legend()
    fig.tight_layout()
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=120)
    print("wrote", out)


if __name__ == "__main__":
    main(sys.argv[1])
