"""Tabular output and matplotlib figures for bound reports and constructions."""

from __future__ import annotations

import csv
import io
import json
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .bounds import (BoundReport, asymptotic_lower_bound, expected_codewords,  # noqa: E402
                     optimal_p, recommended_p)

FIGSIZE = (6.4, 4.0)


def format_report(report: BoundReport, fmt: str = "text") -> str:
    rows = report.as_dict()
    if fmt == "json":
        return json.dumps(rows) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(rows.keys())
        writer.writerow(rows.values())
        return buf.getvalue()
    if fmt == "text":
        width = max(map(len, rows))
        return "".join(f"{k:<{width}}  {_fmt(v)}\n" for k, v in rows.items())
    raise ValueError(f"unknown format {fmt!r}")


def _fmt(v) -> str:
    if isinstance(v, float):
        return f"{v:.7g}"
    return str(v)


def plot_bounds(report: BoundReport, path) -> Path:
    """Expected code size against ``p``, and the asymptotic curves against ``m``."""
    path = Path(path)
    m, d = report.m, report.d
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(2 * FIGSIZE[0], FIGSIZE[1]))

    p_opt = optimal_p(m, d)
    p_rec = recommended_p(m, d)
    hi = min(1.0, 3 * max(p_opt, p_rec, report.p))
    ps = np.linspace(0.0, hi, 200)
    ax1.plot(ps, [expected_codewords(m, d, float(p)) for p in ps], color="k", lw=1.5)
    for p, label, style in ((p_rec, "recommended", "--"), (p_opt, "optimal", ":")):
        ax1.axvline(p, ls=style, color="0.4", lw=1, label=f"{label} p={p:.3g}")
    ax1.axhline(0, color="0.8", lw=0.8)
    ax1.set_xlabel("sampling probability p")
    ax1.set_ylabel("expected code size")
    ax1.set_title(f"m={m}, d={d}")
    ax1.legend(frameon=False, fontsize=8)

    ms = np.unique(np.geomspace(10, max(10 * m, 1000), 60).astype(int))
    for dd in (2, 3, 4):
        ax2.loglog(ms, [asymptotic_lower_bound(int(v), dd) for v in ms], label=f"d={dd}" if dd < 4 else "d>=4")
    ax2.loglog(ms, ms * (ms - 1) / 6, color="k", ls="--", lw=1, label="d=1 upper bound")
    ax2.set_xlabel("m")
    ax2.set_ylabel("codewords")
    ax2.legend(frameon=False, fontsize=8)

    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path


def plot_trace(trace, path, *, title: str = "") -> Path:
    """Conditional expectation after each greedy decision."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=FIGSIZE)
    ax.plot(np.arange(len(trace)), trace, color="k", lw=1.2)
    ax.set_xlabel("triples decided")
    ax.set_ylabel("conditional expectation")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)
    return path
