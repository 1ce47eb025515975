"""Matplotlib renderings of the report tables, written next to the
delimited output."""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def decay_figure(report: dict, path: str) -> str:
    """Bar chart: minimum coefficient valuation per parameter degree."""
    degs = sorted(report["per_degree_min_valuation"])
    vals = [report["per_degree_min_valuation"][d] for d in degs]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(degs, vals, color="#355e8d")
    ax.set_xlabel("degree in %s" % report["variable"])
    ax.set_ylabel("min valuation")
    ax.set_title("coefficient decay along %s" % report["variable"])
    ax.axhline(0, color="black", linewidth=0.8)
    return _finish(fig, path)


def margins_figure(report: dict, path: str) -> str:
    """Analyticity margins per character component."""
    margins = report["margins"]
    xs = list(range(1, len(margins) + 1))
    cap = max([float(m) for m in margins if m != math.inf] + [2.0]) + 1
    ys = [cap if m == math.inf else float(m) for m in margins]
    colors = ["#2e7d32" if m == math.inf or m > 0 else "#b23b3b" for m in margins]
    fig, ax = plt.subplots(figsize=(6, 3.5))
    ax.bar(xs, ys, color=colors)
    ax.axhline(0, color="black", linewidth=0.8)
    ax.set_xlabel("character component")
    ax.set_ylabel("margin over e/(p-1) - 1")
    ax.set_title("analyticity margins (clipped at %.1f)" % cap)
    return _finish(fig, path)


def weight_rank_figure(report: dict, path: str) -> str:
    """Reached rank vs monomial count per weight space."""
    weights = report["weights"]
    labels = [",".join(str(x) for x in w["offset"]) for w in weights]
    xs = list(range(len(weights)))
    fig, ax = plt.subplots(figsize=(max(6, 0.45 * len(weights)), 3.5))
    ax.bar(xs, [w["monomial_count"] for w in weights], color="#c9d4e3", label="monomials")
    ax.bar(xs, [w["reached_rank"] for w in weights], color="#355e8d", width=0.5, label="reached rank")
    ax.set_xticks(xs)
    ax.set_xticklabels(labels, rotation=90, fontsize=7)
    ax.set_xlabel("weight offset from -mu")
    ax.legend()
    ax.set_title("weight-space saturation")
    return _finish(fig, path)


def timings_figure(results, path: str) -> str:
    """Horizontal bars: per-criterion wall time, red on failure."""
    names = [r["name"] for r in results]
    secs = [r["seconds"] for r in results]
    colors = ["#2e7d32" if r["passed"] else "#b23b3b" for r in results]
    fig, ax = plt.subplots(figsize=(7, 0.4 * len(results) + 1.5))
    ax.barh(range(len(results)), secs, color=colors)
    ax.set_yticks(range(len(results)))
    ax.set_yticklabels(names, fontsize=8)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("acceptance suite timings")
    return _finish(fig, path)


def figure_dir(base: str) -> str:
    os.makedirs(base, exist_ok=True)
    return base
