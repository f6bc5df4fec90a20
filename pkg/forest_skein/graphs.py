"""
Graph output
------------
CSV and SVG writers for PiecewiseGraph.

CSV: header `x0,x1,y0,y1,slope_log2`, exact rationals as `p/q`; singular
intervals follow as `#singular,x0,x1` rows.
SVG: unit viewBox, one polyline per piece (y flipped), singular intervals as
shaded full-height rectangles.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path

from forest_skein.dynamics import PiecewiseGraph
from forest_skein.errors import DomainError

_GRAPH_FIELDS = ["x0", "x1", "y0", "y1", "slope_log2"]


def format_fraction(q: Fraction) -> str:
    """Lowest terms; integers keep a /1 denominator."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def graph_csv(graph: PiecewiseGraph) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=_GRAPH_FIELDS, lineterminator="\n")
    w.writeheader()
    for p in graph.pieces:
        w.writerow(
            {
                "x0": format_fraction(p.x0),
                "x1": format_fraction(p.x1),
                "y0": format_fraction(p.y0),
                "y1": format_fraction(p.y1),
                "slope_log2": p.slope_log2,
            }
        )
    rows = csv.writer(buf, lineterminator="\n")
    for a, b in graph.singular:
        rows.writerow(["#singular", format_fraction(a), format_fraction(b)])
    return buf.getvalue()


def _f(q: Fraction) -> str:
    return f"{float(q):.9g}"


def graph_svg(graph: PiecewiseGraph, size: int = 512) -> str:
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 1 1">',
        '<rect x="0" y="0" width="1" height="1" fill="white" stroke="#999" stroke-width="0.002"/>',
    ]
    for a, b in graph.singular:
        parts.append(
            f'<rect class="singular" x="{_f(a)}" y="0" width="{_f(b - a)}" height="1" '
            'fill="#e45756" fill-opacity="0.25"/>'
        )
    for p in graph.pieces:
        parts.append(
            f'<polyline points="{_f(p.x0)},{_f(1 - p.y0)} {_f(p.x1)},{_f(1 - p.y1)}" '
            'fill="none" stroke="#4c78a8" stroke-width="0.004"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_graph(graph: PiecewiseGraph, out: str | Path, fmt: str = "csv") -> list[Path]:
    """Write `out`.csv and/or `out`.svg (fmt in csv | svg | both); returns the paths."""
    if fmt not in ("csv", "svg", "both"):
        raise DomainError(f"format must be csv, svg or both, got {fmt!r}")
    base = Path(out)
    if base.suffix in (".csv", ".svg"):
        base = base.with_suffix("")
    base.parent.mkdir(parents=True, exist_ok=True)
    written = []
    if fmt in ("csv", "both"):
        path = base.with_suffix(".csv")
        path.write_text(graph_csv(graph))
        written.append(path)
    if fmt in ("svg", "both"):
        path = base.with_suffix(".svg")
        path.write_text(graph_svg(graph))
        written.append(path)
    return written
