"""Figure rendering for run reports.

Every report path that writes delimited data also renders a PNG of the
same curves next to it, plus a small standalone plot script so the
figure can be regenerated (or restyled) from the data file alone
without this package installed.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_curves(
    path: str | Path,
    series: dict[str, tuple[np.ndarray, np.ndarray]],
    xlabel: str,
    ylabel: str,
    title: str | None = None,
    logy: bool = False,
) -> Path:
    """Render labelled (x, y) curves to a PNG file."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for label, (x, y) in series.items():
        ax.plot(x, y, label=label)
    if logy:
        ax.set_yscale("log")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title, fontsize=9)
    ax.grid(True, alpha=0.3)
    if series:
        ax.legend(fontsize=8)
    fig.tight_layout()
    out = Path(path)
    fig.savefig(out, dpi=150)
    plt.close(fig)
    return out


_SCRIPT_TEMPLATE = '''\
#!/usr/bin/env python3
"""Regenerate the figure from the data file(s) written next to it."""

import csv
import json
from pathlib import Path

import matplotlib.pyplot as plt

HERE = Path(__file__).resolve().parent
DATA_FILES = {data_files!r}
XLABEL = {xlabel!r}
YLABEL = {ylabel!r}
LOG_Y = {logy!r}
LABELS = {labels!r}


def load_columns(path):
    if path.suffix == ".json":
        return json.loads(path.read_text())["columns"]
    with path.open(newline="") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {{name: [float(r[i]) for r in body] for i, name in enumerate(header)}}


fig, ax = plt.subplots(figsize=(6.4, 4.2))
for data_file in DATA_FILES:
    columns = load_columns(HERE / data_file)
    names = list(columns)
    x = columns[names[0]]
    for name in names[1:]:
        if name.endswith("_stderr"):
            continue
        label = LABELS.get(data_file, "") or name
        if len(names) > 2:
            label = f"{{label}} {{name}}".strip()
        ax.plot(x, columns[name], label=label)
if LOG_Y:
    ax.set_yscale("log")
ax.set_xlabel(XLABEL)
ax.set_ylabel(YLABEL)
ax.grid(True, alpha=0.3)
ax.legend(fontsize=8)
fig.tight_layout()
out = HERE / (Path(__file__).stem.replace("_plot", "") + "_replot.png")
fig.savefig(out, dpi=150)
print(f"wrote {{out}}")
'''


def write_plot_script(
    path: str | Path,
    data_files: list[str],
    xlabel: str,
    ylabel: str,
    logy: bool = False,
    labels: dict[str, str] | None = None,
) -> Path:
    """Write a standalone matplotlib script for the given data files."""
    out = Path(path)
    out.write_text(
        _SCRIPT_TEMPLATE.format(
            data_files=list(data_files),
            xlabel=xlabel,
            ylabel=ylabel,
            logy=bool(logy),
            labels=labels or {},
        )
    )
    return out
