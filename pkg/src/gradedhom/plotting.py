"""Figures for the CLI's ``--figures`` directory (non-interactive backend)."""

from __future__ import annotations

import re
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .homology import BigradedTable  # noqa: E402


def _slug(name: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", name).strip("_") or "figure"


def _save(fig, outdir: Path, name: str) -> Path:
    outdir.mkdir(parents=True, exist_ok=True)
    path = outdir / f"{_slug(name)}.png"
    # fixed metadata keeps the files byte-stable across runs
    fig.savefig(path, dpi=100, metadata={"Software": None})
    plt.close(fig)
    return path


def table_heatmap(table: BigradedTable, title: str, outdir: Path, row_label: str = "s") -> Path | None:
    """Heatmap of a bigraded table; hatched cells are uncertified."""
    if not table.dims:
        return None
    rows = sorted({s for s, _ in table.dims})
    cols = sorted({d for _, d in table.dims})
    grid = np.full((len(rows), len(cols)), np.nan)
    for (s, d), v in table.dims.items():
        grid[rows.index(s), cols.index(d)] = v
    fig, ax = plt.subplots(figsize=(max(4, 0.5 * len(cols) + 2), max(2.5, 0.5 * len(rows) + 1.5)))
    im = ax.imshow(grid, cmap="viridis", aspect="auto", origin="lower")
    for (s, d), v in table.dims.items():
        y, x = rows.index(s), cols.index(d)
        cert = table.certified[(s, d)]
        ax.text(x, y, f"{v}" if cert else f"{v}?", ha="center", va="center",
                color="white" if cert else "red", fontsize=8)
        if not cert:
            ax.add_patch(plt.Rectangle((x - 0.5, y - 0.5), 1, 1, fill=False, hatch="//", edgecolor="red", lw=0))
    ax.set_xticks(range(len(cols)), [str(c) for c in cols])
    ax.set_yticks(range(len(rows)), [str(r) for r in rows])
    ax.set_xlabel("internal degree")
    ax.set_ylabel(row_label)
    ax.set_title(title)
    fig.colorbar(im, ax=ax, label="dimension")
    fig.tight_layout()
    return _save(fig, outdir, title)


def limit_stages(limit, title: str, outdir: Path) -> Path | None:
    """Dimension of each direct-system stage for every nonzero limit cell."""
    series = {}
    for key, e in sorted(limit.entries.items()):
        stages = limit.stages.get(key) or []
        if e.get("value") or any(stages):
            series[key] = stages
    if not series:
        return None
    fig, ax = plt.subplots(figsize=(6, 4))
    for (i, d, v), stages in series.items():
        ks = list(range(1, len(stages) + 1))
        ax.plot(ks, [np.nan if x is None else x for x in stages], marker="o",
                label=f"i={i} t={d} v={v + 1} ({limit.entries[(i, d, v)]['status']})")
    ax.set_xlabel("stage k")
    ax.set_ylabel("dim Ext^i(A/A>=k, M)_t")
    ax.set_title(title)
    if len(series) <= 12:
        ax.legend(fontsize=6)
    fig.tight_layout()
    return _save(fig, outdir, title)


def hilbert_bars(mod, title: str, outdir: Path) -> Path | None:
    hil = mod.hilbert()
    if not hil:
        return None
    degs = sorted(hil)
    data = np.array([hil[d] for d in degs])
    fig, ax = plt.subplots(figsize=(max(4, 0.4 * len(degs) + 2), 3.5))
    bottom = np.zeros(len(degs))
    for v in range(data.shape[1]):
        ax.bar(degs, data[:, v], bottom=bottom, label=f"vertex {v + 1}")
        bottom += data[:, v]
    ax.set_xlabel("degree")
    ax.set_ylabel("dimension")
    ax.set_title(title)
    if data.shape[1] > 1:
        ax.legend(fontsize=7)
    fig.tight_layout()
    return _save(fig, outdir, title)


def criteria_summary(results, title: str, outdir: Path) -> Path | None:
    """Pass/fail per acceptance criterion (bar height is 1 for pass, 0 for fail)."""
    if not results:
        return None
    fig, ax = plt.subplots(figsize=(6, 3))
    nums = [r.number for r in results]
    ax.bar(nums, [1 if r.passed else 0.05 for r in results],
           color=["tab:green" if r.passed else "tab:red" for r in results])
    ax.set_xticks(nums, [str(n) for n in nums])
    ax.set_yticks([])
    ax.set_xlabel("criterion")
    ax.set_title(title)
    fig.tight_layout()
    return _save(fig, outdir, title)


__all__ = ["table_heatmap", "limit_stages", "hilbert_bars", "criteria_summary"]
