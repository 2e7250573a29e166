"""
Minimal SVG line charts for result time series.

One polyline per requested column over the iteration axis, linear axes
scaled to the data extents, and a legend labelled with the column names.
The output is a standalone SVG document with no external renderer involved.
"""

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import List, Sequence, Tuple, Union

import pandas as pd

WIDTH, HEIGHT = 800, 480
MARGIN_LEFT, MARGIN_RIGHT, MARGIN_TOP, MARGIN_BOTTOM = 70, 170, 30, 50
TICKS = 5
# tab10
PALETTE = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"]
SVG_NS = "http://www.w3.org/2000/svg"


class PlotError(ValueError):
    """Input data cannot be plotted."""


def _extent(values: Sequence[float]) -> Tuple[float, float]:
    low, high = float(min(values)), float(max(values))
    if low == high:
        pad = abs(low) * 0.5 or 1.0
        return low - pad, high + pad
    return low, high


def _fmt(value: float) -> str:
    return f"{value:.6g}"


def render_svg(
    frame: pd.DataFrame, columns: Sequence[str], title: str = "", x_column: str = "iteration"
) -> ET.ElementTree:
    """
    Build the chart for the given columns of a frame, plotted against x_column
    (row number when the frame has no such column).

    Raises:
        PlotError: missing column or fewer than two data points
    """
    missing = [column for column in columns if column not in frame.columns]
    if missing:
        raise PlotError(f"missing column(s): {', '.join(missing)}")
    if not columns:
        raise PlotError("no columns requested")
    if len(frame) < 2:
        raise PlotError("need ≥ 2 points")

    x_values: List[float] = (
        frame[x_column].astype(float).tolist() if x_column in frame.columns else list(map(float, range(len(frame))))
    )
    series = {column: pd.to_numeric(frame[column], errors="coerce").tolist() for column in columns}
    finite = [v for values in series.values() for v in values if pd.notna(v)]
    if not finite:
        raise PlotError("no numeric data in requested columns")

    x_low, x_high = _extent(x_values)
    y_low, y_high = _extent(finite)
    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM

    def sx(x: float) -> float:
        return MARGIN_LEFT + (x - x_low) / (x_high - x_low) * plot_w

    def sy(y: float) -> float:
        return MARGIN_TOP + plot_h - (y - y_low) / (y_high - y_low) * plot_h

    svg = ET.Element(
        "svg",
        {"xmlns": SVG_NS, "width": str(WIDTH), "height": str(HEIGHT), "viewBox": f"0 0 {WIDTH} {HEIGHT}"},
    )
    ET.SubElement(svg, "rect", {"x": "0", "y": "0", "width": str(WIDTH), "height": str(HEIGHT), "fill": "white"})
    if title:
        heading = ET.SubElement(svg, "text", {"x": str(WIDTH / 2), "y": "20", "text-anchor": "middle", "font-size": "14"})
        heading.text = title

    axis_style = {"stroke": "black", "stroke-width": "1"}
    bottom, right = MARGIN_TOP + plot_h, MARGIN_LEFT + plot_w
    ET.SubElement(svg, "line", {"x1": str(MARGIN_LEFT), "y1": str(bottom), "x2": str(right), "y2": str(bottom), **axis_style})
    ET.SubElement(svg, "line", {"x1": str(MARGIN_LEFT), "y1": str(MARGIN_TOP), "x2": str(MARGIN_LEFT), "y2": str(bottom), **axis_style})

    for tick in range(TICKS + 1):
        fraction = tick / TICKS
        x_value = x_low + fraction * (x_high - x_low)
        y_value = y_low + fraction * (y_high - y_low)
        x_label = ET.SubElement(
            svg, "text", {"x": f"{sx(x_value):.2f}", "y": str(bottom + 18), "text-anchor": "middle", "font-size": "11"}
        )
        x_label.text = _fmt(x_value)
        y_label = ET.SubElement(
            svg, "text", {"x": str(MARGIN_LEFT - 6), "y": f"{sy(y_value) + 4:.2f}", "text-anchor": "end", "font-size": "11"}
        )
        y_label.text = _fmt(y_value)
    x_title = ET.SubElement(svg, "text", {"x": f"{MARGIN_LEFT + plot_w / 2:.2f}", "y": str(HEIGHT - 10), "text-anchor": "middle", "font-size": "12"})
    x_title.text = x_column

    for index, column in enumerate(columns):
        color = PALETTE[index % len(PALETTE)]
        points = " ".join(
            f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(x_values, series[column]) if pd.notna(y)
        )
        ET.SubElement(svg, "polyline", {"points": points, "fill": "none", "stroke": color, "stroke-width": "1.5"})

        legend_y = MARGIN_TOP + 10 + index * 18
        ET.SubElement(
            svg, "line", {"x1": str(right + 12), "y1": str(legend_y), "x2": str(right + 32), "y2": str(legend_y), "stroke": color, "stroke-width": "2"}
        )
        label = ET.SubElement(svg, "text", {"x": str(right + 38), "y": str(legend_y + 4), "font-size": "12"})
        label.text = column

    return ET.ElementTree(svg)


def plot_csv(in_path: Union[str, Path], out_path: Union[str, Path], columns: Sequence[str]) -> Path:
    """Read a result CSV and write the chart of the requested columns."""
    try:
        frame = pd.read_csv(in_path)
    except pd.errors.EmptyDataError:
        raise PlotError(f"no data in {in_path}")
    tree = render_svg(frame, columns, title=Path(in_path).name)
    out_path = Path(out_path)
    tree.write(out_path, encoding="utf-8", xml_declaration=True)
    return out_path
