"""Text tables, CSV files and figures for census results.

Output conventions: aligned fixed-width text for the terminal, plain
CSV for the delimited output, and a PNG figure saved next to it when a
report directory is given.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt


def format_table(headers: list[str], rows: list[list]) -> str:
    cells = [[str(v) for v in row] for row in rows]
    widths = [max(len(h), *(len(r[i]) for r in cells)) if cells else len(h)
              for i, h in enumerate(headers)]
    def line(parts):
        return "  ".join(p.rjust(w) for p, w in zip(parts, widths))
    out = [line(headers), line(["-" * w for w in widths])]
    out.extend(line(r) for r in cells)
    return "\n".join(out)


def write_csv(path: Path, headers: list[str], rows: list[list]) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(headers)
        writer.writerows(rows)


def write_json(path: Path, payload) -> None:
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")


def type_label(factors: tuple[int, ...]) -> str:
    return "x".join(str(d) for d in factors) if factors else "1"


def save_table1_figure(rows: list[dict], path: Path) -> None:
    sizes = [r["size"] for r in rows]
    totals = [r["total"] for r in rows]
    abelian = [r["abelian"] for r in rows]
    cyclic = [r["cyclic"] for r in rows]
    fig, ax = plt.subplots(figsize=(8, 4.5))
    ax.bar(sizes, totals, color="#4878cf", label="all")
    ax.plot(sizes, abelian, "o-", color="#d65f5f", label="abelian G")
    ax.plot(sizes, cyclic, "s--", color="#6acc65", label="cyclic G")
    ax.set_yscale("log")
    ax.set_xticks(sizes)
    ax.set_xlabel("size")
    ax.set_ylabel("indecomposable solutions of level <= 2")
    ax.legend()
    ax.grid(True, axis="y", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def save_census_figure(size: int, breakdown: dict, path: Path) -> None:
    """Bar chart of one size's counts, split by (m, group type)."""
    labels = [f"m={m}\nA={type_label(t)}" for (m, t) in breakdown]
    counts = list(breakdown.values())
    fig, ax = plt.subplots(figsize=(1.2 * max(4, len(labels)), 4))
    ax.bar(range(len(counts)), counts, color="#4878cf")
    for i, v in enumerate(counts):
        ax.text(i, v, str(v), ha="center", va="bottom")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels)
    ax.set_ylabel("solutions")
    ax.set_title(f"size {size}: {sum(counts)} solutions")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
