#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

r"""Static SVG plot of one run: the input boundary, the visibility polygon,
the viewpoint, the effective critical vertices and their windows.

The document has exactly two ``<path>`` elements (boundary first) and one
``<circle>`` per marker. The y axis points up; the view box is the input
bounding box grown by a fixed margin.
"""

import xml.etree.ElementTree as ET
from typing import Optional, Sequence, Tuple

import numpy as np

from visarea.config import Config
from visarea.core.geometry import Point
from visarea.core.polygon import PolygonInput

SVG_NS = "http://www.w3.org/2000/svg"


def _path_data(points: Sequence[Point], flip: float) -> str:
    coords = " L ".join(f"{p.x!r} {flip - p.y!r}" for p in points)
    return f"M {coords} Z"


def render_svg(
    polygon: PolygonInput,
    visibility: Sequence[Point],
    config: Config,
    criticals: Sequence[Point] = (),
    windows: Sequence[Tuple[Point, Point]] = (),
) -> str:
    r"""SVG document as text.

    :param config: the ``SVG`` config node (margin and colours).
    :param criticals: effective critical vertices to mark.
    :param windows: ``(vertex, shadow)`` segments to draw.
    """
    lo = polygon.vertices.min(axis=0)
    hi = polygon.vertices.max(axis=0)
    size = np.maximum(hi - lo, 1e-12)
    pad = config.MARGIN * float(size.max())
    x0, y0 = float(lo[0]) - pad, float(lo[1]) - pad
    width, height = float(size[0]) + 2 * pad, float(size[1]) + 2 * pad
    # y is mirrored about the middle of the view box
    flip = 2 * y0 + height
    stroke = 0.004 * max(width, height)

    root = ET.Element(
        "svg",
        {
            "xmlns": SVG_NS,
            "viewBox": f"{x0!r} {y0!r} {width!r} {height!r}",
        },
    )
    ET.SubElement(
        root,
        "path",
        {
            "id": "boundary",
            "d": _path_data(polygon.points, flip),
            "fill": "none",
            "stroke": config.BOUNDARY_COLOR,
            "stroke-width": repr(stroke),
        },
    )
    ET.SubElement(
        root,
        "path",
        {
            "id": "visibility",
            "d": _path_data(visibility, flip) if visibility else "",
            "fill": config.VISIBILITY_COLOR,
            "fill-opacity": "0.6",
            "stroke": "none",
        },
    )
    for a, b in windows:
        ET.SubElement(
            root,
            "line",
            {
                "class": "window",
                "x1": repr(a.x),
                "y1": repr(flip - a.y),
                "x2": repr(b.x),
                "y2": repr(flip - b.y),
                "stroke": config.WINDOW_COLOR,
                "stroke-width": repr(stroke),
            },
        )
    for p in criticals:
        _marker(root, p, flip, 2.0 * stroke, config.CRITICAL_COLOR, "critical")
    q = polygon.viewpoint
    _marker(root, q, flip, 3.0 * stroke, config.VIEWPOINT_COLOR, "viewpoint")
    return ET.tostring(root, encoding="unicode")


def _marker(
    root: ET.Element, p: Point, flip: float, r: float, color: str, cls: str
) -> None:
    ET.SubElement(
        root,
        "circle",
        {
            "class": cls,
            "cx": repr(p.x),
            "cy": repr(flip - p.y),
            "r": repr(r),
            "fill": color,
        },
    )


def write_svg(path: str, document: str, header: Optional[str] = None) -> None:
    with open(path, "w", encoding="utf8") as f:
        f.write(header or '<?xml version="1.0" encoding="UTF-8"?>\n')
        f.write(document)
        f.write("\n")
