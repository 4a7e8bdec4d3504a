"""Render spectral-flow CSV traces as publication-style figures.

Input is the flow CSV schema (header ``t, re_1..re_N, im_1..im_N,
real_1..real_N``) plus an optional ``<csv>.markers.json`` sidecar with
degeneracy markers. Real eigenvalue branches are drawn against time;
non-real stretches are masked out (or grayed, per style), and an optional
second panel overlays their |Im| growth. Rendering is read-only and
deterministic for a pinned style.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from dataclasses import dataclass, field

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

DEFAULT_STYLE = {
    "quantity": "real",          # "real" or "both"
    "suppressed": "hide",        # "hide" or "gray"
    "title": "",
    "xlabel": "t",
    "ylabel": "eigenvalue",
    "figsize": [7.0, 4.5],
    "dpi": 150,
    "line_color": "#1f4e79",
    "gray_color": "#b0b0b0",
    "marker_color": "#c23b22",
    "linewidth": 1.4,
}


@dataclass(frozen=True)
class PlotSpec:
    csv_path: str
    out_path: str
    style: dict = field(default_factory=dict)


@dataclass(frozen=True)
class Trace:
    times: np.ndarray
    curves: np.ndarray   # complex, branches x steps
    reality: np.ndarray  # bool, branches x steps
    markers: list

    @property
    def n_branches(self) -> int:
        return self.curves.shape[0]


def load_trace(csv_path: str) -> Trace:
    """Parse a flow CSV plus its markers sidecar, validating the schema."""
    with open(csv_path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{csv_path}: empty flow CSV") from None
        if not header or header[0] != "t" or (len(header) - 1) % 3 != 0:
            raise ValueError(f"{csv_path}: header does not match the flow schema")
        n = (len(header) - 1) // 3
        expected = (
            ["t"]
            + [f"re_{i}" for i in range(1, n + 1)]
            + [f"im_{i}" for i in range(1, n + 1)]
            + [f"real_{i}" for i in range(1, n + 1)]
        )
        if header != expected:
            raise ValueError(f"{csv_path}: header does not match the flow schema")
        times, cols, flags = [], [], []
        for row in reader:
            if len(row) != len(header):
                raise ValueError(f"{csv_path}: row width does not match the header")
            times.append(float(row[0]))
            re = np.asarray(row[1 : n + 1], dtype=float)
            im = np.asarray(row[n + 1 : 2 * n + 1], dtype=float)
            cols.append(re + 1j * im)
            flags.append([bool(int(x)) for x in row[2 * n + 1 :]])
    if not times:
        raise ValueError(f"{csv_path}: no data rows")
    markers = []
    sidecar = f"{csv_path}.markers.json"
    if os.path.exists(sidecar):
        with open(sidecar, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
        markers = [(float(t), int(m)) for t, m in payload.get("degeneracy_markers", [])]
    return Trace(
        times=np.asarray(times),
        curves=np.stack(cols, axis=1),
        reality=np.asarray(flags, dtype=bool).T,
        markers=markers,
    )


def build_figure(trace: Trace, style: dict | None = None):
    """Figure with one line per real branch; returns the matplotlib figure."""
    cfg = dict(DEFAULT_STYLE)
    cfg.update(style or {})
    if cfg["quantity"] not in ("real", "both"):
        raise ValueError(f"unknown quantity {cfg['quantity']!r}")

    panels = 2 if cfg["quantity"] == "both" else 1
    fig, axes = plt.subplots(
        panels, 1, figsize=tuple(cfg["figsize"]), squeeze=False, sharex=True
    )
    ax = axes[0][0]

    any_real = False
    for i in range(trace.n_branches):
        masked = np.where(trace.reality[i], trace.curves[i].real, np.nan)
        if np.isfinite(masked).any():
            any_real = True
        ax.plot(
            trace.times,
            masked,
            color=cfg["line_color"],
            linewidth=cfg["linewidth"],
            label=f"branch {i + 1}",
        )
        if cfg["suppressed"] == "gray":
            hidden = np.where(~trace.reality[i], trace.curves[i].real, np.nan)
            ax.plot(
                trace.times,
                hidden,
                color=cfg["gray_color"],
                linewidth=0.8 * cfg["linewidth"],
                linestyle=":",
            )

    for t_mark, mult in trace.markers:
        ax.axvline(
            t_mark, color=cfg["marker_color"], linestyle="--", linewidth=0.9, alpha=0.7
        )
        ax.annotate(
            f"x{mult}",
            xy=(t_mark, 0.02),
            xycoords=("data", "axes fraction"),
            color=cfg["marker_color"],
            fontsize=8,
        )

    if not any_real:
        ax.annotate(
            "no real eigenvalue branches in this trace",
            xy=(0.5, 0.5),
            xycoords="axes fraction",
            ha="center",
            va="center",
            color=cfg["marker_color"],
        )

    ax.set_xlabel(cfg["xlabel"])
    ax.set_ylabel(cfg["ylabel"])
    if cfg["title"]:
        ax.set_title(cfg["title"])

    if panels == 2:
        ax2 = axes[1][0]
        for i in range(trace.n_branches):
            im_abs = np.where(~trace.reality[i], np.abs(trace.curves[i].imag), np.nan)
            ax2.plot(
                trace.times,
                im_abs,
                color=cfg["gray_color"],
                linestyle=":",
                linewidth=cfg["linewidth"],
            )
        ax2.set_xlabel(cfg["xlabel"])
        ax2.set_ylabel("|Im eigenvalue|")

    fig.tight_layout()
    return fig


def render_flow(ps: PlotSpec) -> str:
    """Render one trace to an image file and return the output path."""
    trace = load_trace(ps.csv_path)
    fig = build_figure(trace, ps.style)
    try:
        fig.savefig(
            ps.out_path,
            dpi=ps.style.get("dpi", DEFAULT_STYLE["dpi"]),
            metadata={"Software": None},
        )
    finally:
        plt.close(fig)
    return ps.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="flowfigs",
        description="Render a spectral-flow CSV as a figure.",
    )
    parser.add_argument("csv_path", help="flow CSV in the trace schema")
    parser.add_argument("style_json", help="style JSON (use '-' for defaults)")
    parser.add_argument("out_path", help="output image path")
    args = parser.parse_args(argv)
    try:
        style = {}
        if args.style_json != "-":
            with open(args.style_json, "r", encoding="utf-8") as fh:
                style = json.load(fh)
        if not isinstance(style, dict):
            raise ValueError("style JSON must hold an object")
        render_flow(PlotSpec(csv_path=args.csv_path, out_path=args.out_path, style=style))
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
