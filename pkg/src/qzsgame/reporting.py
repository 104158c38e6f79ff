"""File output: surface tables, key/value reports, plot scripts, figures.

Surface files are plain CSV with ``#``-prefixed metadata lines, a
``p,q,payoff_A`` header, and one row per grid node, row-major in p then q,
all numbers at 12 significant digits.  Reports are ``key = value`` lines
(or two-column CSV when requested).  Every surface export also gets a
standalone companion script that replots the CSV, and by default a
rendered PNG alongside, so the data stays the diffable artifact and the
picture is a convenience.
"""

import numpy as np

from .equilibrium import PayoffSurface

VERSION = "0.1.0"

__all__ = [
    "VERSION",
    "format_kv_report",
    "format_number",
    "plot_script_for",
    "read_surface_csv",
    "render_heatmap_png",
    "render_surface_png",
    "surface_metadata",
    "write_kv_report",
    "write_plot_script",
    "write_surface_csv",
]


def format_number(v):
    """12 significant digits, the package-wide text form for reals."""
    return f"{float(v):.12g}"


def surface_metadata(game, state, extra=None):
    """Standard header fields recorded with every exported surface."""
    meta = {
        "tool": f"qzsgame {VERSION}",
        "game_shape": f"{game.rows}x{game.cols}",
        "state": ",".join(format_number(c) for c in state.coeffs),
    }
    if extra:
        meta.update(extra)
    return meta


def write_surface_csv(path, surface, metadata):
    """Write a payoff surface as CSV with metadata comment lines."""
    lines = [f"# {k}: {v}" for k, v in metadata.items()]
    lines.append("p,q,payoff_A")
    for i, p in enumerate(surface.p_values):
        for j, q in enumerate(surface.q_values):
            lines.append(
                f"{format_number(p)},{format_number(q)},{format_number(surface.values[i, j])}"
            )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def read_surface_csv(path):
    """Parse a surface CSV back into (PayoffSurface, metadata dict)."""
    metadata = {}
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, value = line[1:].partition(":")
                metadata[key.strip()] = value.strip()
            elif line != "p,q,payoff_A":
                rows.append([float(x) for x in line.split(",")])
    data = np.array(rows)
    ps = np.unique(data[:, 0])
    qs = np.unique(data[:, 1])
    values = data[:, 2].reshape(ps.size, qs.size)
    return PayoffSurface(p_values=ps, q_values=qs, values=values), metadata


def format_kv_report(mapping):
    return "\n".join(f"{k} = {v}" for k, v in mapping.items()) + "\n"


def format_csv_report(mapping):
    return "key,value\n" + "\n".join(f"{k},{v}" for k, v in mapping.items()) + "\n"


def write_kv_report(path, mapping, fmt="kv"):
    """Write a report mapping as `key = value` lines (or two-column CSV)."""
    text = format_csv_report(mapping) if fmt == "csv" else format_kv_report(mapping)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


_PLOT_SCRIPT = '''#!/usr/bin/env python3
"""Replot a payoff surface exported by qzsgame.

Usage: python3 {script_name} [surface.csv] [--show]
Renders <surface>.png next to the CSV unless --show is given.
"""
import sys

import numpy as np
import matplotlib
args = [a for a in sys.argv[1:] if a != "--show"]
show = "--show" in sys.argv[1:]
if not show:
    matplotlib.use("Agg")
import matplotlib.pyplot as plt

path = args[0] if args else {csv_name!r}
with open(path, "r", encoding="utf-8") as fh:
    rows = [l.strip() for l in fh if l.strip() and not l.startswith("#")]
data = np.array([[float(x) for x in r.split(",")] for r in rows[1:]])
ps, qs = np.unique(data[:, 0]), np.unique(data[:, 1])
z = data[:, 2].reshape(ps.size, qs.size)
pp, qq = np.meshgrid(ps, qs, indexing="ij")

fig = plt.figure(figsize=(7.5, 5.5))
ax = fig.add_subplot(projection="3d")
ax.plot_surface(pp, qq, z, cmap="viridis", linewidth=0, antialiased=True)
ax.set_xlabel("p (player A)")
ax.set_ylabel("q (player B)")
ax.set_zlabel("payoff of A")
ax.set_title(path)
if show:
    plt.show()
else:
    out = path.rsplit(".", 1)[0] + ".png"
    fig.savefig(out, dpi=150)
    print(out)
'''


def plot_script_for(csv_name, script_name="plot_surface.py"):
    return _PLOT_SCRIPT.format(csv_name=csv_name, script_name=script_name)


def write_plot_script(path, csv_name):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(plot_script_for(csv_name, script_name=path.name if hasattr(path, "name") else str(path)))


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def render_surface_png(path, surface, title, marker=None):
    """Render the surface to a PNG; ``marker`` highlights a (p, q, value)."""
    plt = _pyplot()
    pp, qq = np.meshgrid(surface.p_values, surface.q_values, indexing="ij")
    fig = plt.figure(figsize=(7.5, 5.5))
    ax = fig.add_subplot(projection="3d")
    ax.plot_surface(pp, qq, surface.values, cmap="viridis", linewidth=0, antialiased=True)
    ax.set_xlabel("p (player A)")
    ax.set_ylabel("q (player B)")
    ax.set_zlabel("payoff of A")
    ax.set_title(title)
    if marker is not None:
        p, q, v = marker
        ax.scatter([p], [q], [v], color="crimson", s=45, depthshade=False)
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_heatmap_png(path, surface, title, point=None):
    """Render the surface as a 2-D heatmap with an optional marked point."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6.5, 5.0))
    extent = (
        float(surface.q_values[0]),
        float(surface.q_values[-1]),
        float(surface.p_values[0]),
        float(surface.p_values[-1]),
    )
    im = ax.imshow(
        surface.values,
        origin="lower",
        extent=extent,
        aspect="auto",
        cmap="viridis",
    )
    fig.colorbar(im, ax=ax, label="payoff of A")
    if point is not None:
        ax.plot([point[1]], [point[0]], "o", color="crimson")
    ax.set_xlabel("q (player B)")
    ax.set_ylabel("p (player A)")
    ax.set_title(title)
    fig.savefig(path, dpi=150)
    plt.close(fig)
