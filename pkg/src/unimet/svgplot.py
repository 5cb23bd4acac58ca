"""Native SVG rendering of scatter results (no plotting dependencies).

One plot per (dimension, weight, variant) group: sample points plus the
``y = x`` reference diagonal.  The two variants of the same group share
axis limits so their point clouds are directly comparable.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path

__all__ = ["scatter_svg", "write_scatter_svgs"]

_SIZE = 480          # drawing canvas, px
_MARGIN = 56         # room for axis labels
_POINT_RADIUS = 2.0


def _fmt(v: float) -> str:
    return format(v, ".6g")


def scatter_svg(points, *, title: str, axis_limit: float) -> str:
    """Render ``(x, y)`` pairs into a standalone SVG document.

    Parameters
    ----------
    points : iterable of (float, float)
        ``x`` is the summed measure, ``y`` the measure of the product.
    title : str
    axis_limit : float
        Upper edge of both axes (same scale on x and y).

    Returns
    -------
    str
        Serialized XML.
    """
    if axis_limit <= 0:
        raise ValueError("axis_limit must be positive")
    span = _SIZE - 2 * _MARGIN

    def to_px(x: float, y: float) -> tuple[float, float]:
        return (
            _MARGIN + span * (x / axis_limit),
            _SIZE - _MARGIN - span * (y / axis_limit),
        )

    svg = ET.Element(
        "svg",
        {
            "xmlns": "http://www.w3.org/2000/svg",
            "width": str(_SIZE),
            "height": str(_SIZE),
            "viewBox": f"0 0 {_SIZE} {_SIZE}",
        },
    )
    ET.SubElement(svg, "title").text = title

    x0, y0 = to_px(0.0, 0.0)
    x1, y1 = to_px(axis_limit, axis_limit)
    ET.SubElement(
        svg,
        "rect",
        {
            "x": _fmt(min(x0, x1)),
            "y": _fmt(min(y0, y1)),
            "width": _fmt(abs(x1 - x0)),
            "height": _fmt(abs(y0 - y1)),
            "fill": "none",
            "stroke": "#888888",
            "stroke-width": "1",
        },
    )
    # reference diagonal y = x
    ET.SubElement(
        svg,
        "line",
        {
            "x1": _fmt(x0),
            "y1": _fmt(y0),
            "x2": _fmt(x1),
            "y2": _fmt(y1),
            "stroke": "#000000",
            "stroke-width": "1",
            "class": "diagonal",
        },
    )
    group = ET.SubElement(svg, "g", {"fill": "#1f77b4", "fill-opacity": "0.45"})
    for x, y in points:
        px, py = to_px(float(x), float(y))
        ET.SubElement(
            group,
            "circle",
            {"cx": _fmt(px), "cy": _fmt(py), "r": _fmt(_POINT_RADIUS)},
        )
    label = ET.SubElement(
        svg,
        "text",
        {"x": _fmt(_SIZE / 2), "y": _fmt(_MARGIN / 2), "text-anchor": "middle",
         "font-family": "sans-serif", "font-size": "14"},
    )
    label.text = title
    xlabel = ET.SubElement(
        svg,
        "text",
        {"x": _fmt(_SIZE / 2), "y": _fmt(_SIZE - _MARGIN / 4), "text-anchor": "middle",
         "font-family": "sans-serif", "font-size": "12"},
    )
    xlabel.text = "measure(U) + measure(V)"
    ylabel = ET.SubElement(
        svg,
        "text",
        {"x": _fmt(_MARGIN / 4), "y": _fmt(_SIZE / 2), "text-anchor": "middle",
         "font-family": "sans-serif", "font-size": "12",
         "transform": f"rotate(-90 {_fmt(_MARGIN / 4)} {_fmt(_SIZE / 2)})"},
    )
    ylabel.text = "measure(UV)"
    ET.indent(svg)
    return ET.tostring(svg, encoding="unicode", xml_declaration=True) + "\n"


def write_scatter_svgs(result, out_dir) -> list[Path]:
    """Write one SVG per (n, weight, variant) group of a scatter result.

    Axis limits are shared between the two variants of the same
    (n, weight) pair.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    groups: dict[tuple[int, str, str], list] = {}
    for r in result.records:
        groups.setdefault((r.n, r.weight_label, r.variant), []).append(r)

    limits: dict[tuple[int, str], float] = {}
    for (n, label, _variant), recs in groups.items():
        extent = max(max(r.rhs for r in recs), max(r.lhs for r in recs))
        key = (n, label)
        limits[key] = max(limits.get(key, 0.0), extent * 1.05)

    paths = []
    for (n, label, variant), recs in sorted(groups.items()):
        doc = scatter_svg(
            [(r.rhs, r.lhs) for r in recs],
            title=f"{variant} triangle slack, n={n}, {label}",
            axis_limit=limits[(n, label)] or 1.0,
        )
        path = out / f"scatter_n{n}_{label}_{variant}.svg"
        path.write_text(doc, encoding="utf-8")
        paths.append(path)
    return paths
