"""Render figure tables to PNG files.

Plots are a convenience layer over the CSV tables: curves become line
plots, surfaces become heat maps.  Uses the non-interactive Agg backend so
rendering works headless.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_CURVE_STYLES = [
    ("black", "-"),
    ("tab:red", "--"),
    ("tab:blue", ":"),
    ("tab:green", "-."),
    ("tab:purple", (0, (3, 1, 1, 1, 1, 1))),
]

_AXIS_LABELS = {
    "v_a": "discording noise $V_A$",
    "v_b": "ancilla noise $V_B$",
    "g": "gain $g$",
    "r": "squeezing $r$",
    "t": "attenuation $T$",
    "t1": "attenuation $T_1$",
    "t2": "attenuation $T_2$",
}


def _label(name: str) -> str:
    return _AXIS_LABELS.get(name, name)


def render_figure(name: str, tables, out_path) -> Path:
    """Render the tables of one figure into a single PNG."""
    out_path = Path(out_path)
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    surface = any(t.shape for t in tables)
    if surface:
        table = tables[0]
        n1, n2 = table.shape
        data = np.asarray(table.rows, dtype=float)
        x = data[:, 0].reshape(n1, n2)
        y = data[:, 1].reshape(n1, n2)
        z = data[:, table.header.index("discord")].reshape(n1, n2)
        mesh = ax.pcolormesh(x, y, z, shading="auto", cmap="viridis")
        fig.colorbar(mesh, ax=ax, label="discord")
        ax.set_xlabel(_label(table.header[0]))
        ax.set_ylabel(_label(table.header[1]))
    else:
        for table, (color, style) in zip(tables, _CURVE_STYLES):
            data = np.asarray(table.rows, dtype=float)
            label = table.name.split("_", 1)[1] if "_" in table.name else table.name
            ax.plot(
                data[:, 0],
                data[:, table.header.index("discord")],
                color=color,
                linestyle=style,
                label=label,
            )
        ax.set_xlabel(_label(tables[0].header[0]))
        ax.set_ylabel("discord")
        ax.legend(frameon=False, fontsize=9)
    ax.set_title(name)
    fig.tight_layout()
    fig.savefig(out_path, dpi=200)
    plt.close(fig)
    return out_path
