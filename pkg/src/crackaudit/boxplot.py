"""Deterministic SVG box plots of per-app indicator spreads.

Each app gets two boxes side by side, official then cracked, spanning
the minimum and maximum of the indicator across OS versions with a tick
at the mean. A degenerate spread (min equals max) is drawn as a single
tick mark. Output depends only on the input values, so identical inputs
produce byte-identical SVG.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import NoData
from .telemetry import SpreadStats

_MARGIN_LEFT = 56.0
_MARGIN_RIGHT = 16.0
_MARGIN_TOP = 24.0
_MARGIN_BOTTOM = 44.0
_SLOT_WIDTH = 34.0
_BOX_WIDTH = 12.0
_PLOT_HEIGHT = 280.0

_OFFICIAL_FILL = "#b8cbe0"
_CRACKED_FILL = "#5a5a5a"


@dataclass(frozen=True)
class BoxplotEntry:
    """One app's spreads; either side may be missing."""

    label: str
    official: SpreadStats | None
    cracked: SpreadStats | None


def _fmt(value: float) -> str:
    return f"{value:.2f}"


def _tick_values(low: float, high: float, count: int = 5) -> list[float]:
    step = (high - low) / (count - 1)
    return [low + i * step for i in range(count)]


def render_boxplot(entries: Sequence[BoxplotEntry], title: str) -> bytes:
    """Render one SVG chart for the given indicator spreads."""
    drawable = [e for e in entries if e.official is not None or e.cracked is not None]
    if not drawable:
        raise NoData("no spreads to draw")

    values = []
    for entry in drawable:
        for spread in (entry.official, entry.cracked):
            if spread is not None:
                values.extend((spread.minimum, spread.maximum))
    low, high = min(values), max(values)
    if low == high:
        low, high = low - 1.0, high + 1.0
    pad = 0.05 * (high - low)
    low, high = low - pad, high + pad

    width = _MARGIN_LEFT + _SLOT_WIDTH * len(drawable) + _MARGIN_RIGHT
    height = _MARGIN_TOP + _PLOT_HEIGHT + _MARGIN_BOTTOM

    def y_of(value: float) -> float:
        frac = (value - low) / (high - low)
        return _MARGIN_TOP + _PLOT_HEIGHT * (1.0 - frac)

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{_fmt(width)}" height="{_fmt(height)}" '
        f'viewBox="0 0 {_fmt(width)} {_fmt(height)}">',
        f'<title>{title}</title>',
        f'<text x="{_fmt(width / 2)}" y="14" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">{title}</text>',
        f'<rect x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(_MARGIN_TOP)}" '
        f'width="{_fmt(width - _MARGIN_LEFT - _MARGIN_RIGHT)}" '
        f'height="{_fmt(_PLOT_HEIGHT)}" fill="none" stroke="#999" stroke-width="0.5"/>',
    ]

    for tick in _tick_values(low, high):
        y = y_of(tick)
        parts.append(
            f'<line x1="{_fmt(_MARGIN_LEFT - 4)}" y1="{_fmt(y)}" '
            f'x2="{_fmt(_MARGIN_LEFT)}" y2="{_fmt(y)}" stroke="#333" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{_fmt(_MARGIN_LEFT - 7)}" y="{_fmt(y + 3)}" text-anchor="end" '
            f'font-family="sans-serif" font-size="9">{tick:.2f}</text>'
        )

    def draw_box(x: float, spread: SpreadStats, kind: str) -> None:
        top = y_of(spread.maximum)
        bottom = y_of(spread.minimum)
        fill = _OFFICIAL_FILL if kind == "official" else _CRACKED_FILL
        if spread.minimum == spread.maximum:
            parts.append(
                f'<line class="box {kind}" x1="{_fmt(x)}" y1="{_fmt(top)}" '
                f'x2="{_fmt(x + _BOX_WIDTH)}" y2="{_fmt(top)}" '
                f'stroke="{fill}" stroke-width="2"/>'
            )
            return
        parts.append(
            f'<rect class="box {kind}" x="{_fmt(x)}" y="{_fmt(top)}" '
            f'width="{_fmt(_BOX_WIDTH)}" height="{_fmt(bottom - top)}" '
            f'fill="{fill}" stroke="#222" stroke-width="0.75"/>'
        )
        mean_y = y_of(spread.mean)
        parts.append(
            f'<line class="mean {kind}" x1="{_fmt(x)}" y1="{_fmt(mean_y)}" '
            f'x2="{_fmt(x + _BOX_WIDTH)}" y2="{_fmt(mean_y)}" '
            f'stroke="#ffffff" stroke-width="1"/>'
        )

    for i, entry in enumerate(drawable):
        slot_x = _MARGIN_LEFT + _SLOT_WIDTH * i
        if entry.official is not None:
            draw_box(slot_x + 3.0, entry.official, "official")
        if entry.cracked is not None:
            draw_box(slot_x + 3.0 + _BOX_WIDTH + 4.0, entry.cracked, "cracked")
        parts.append(
            f'<text class="app-label" x="{_fmt(slot_x + _SLOT_WIDTH / 2)}" '
            f'y="{_fmt(_MARGIN_TOP + _PLOT_HEIGHT + 14)}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="9">{entry.label}</text>'
        )

    legend_y = height - 12.0
    parts += [
        f'<rect x="{_fmt(_MARGIN_LEFT)}" y="{_fmt(legend_y - 8)}" width="10" height="8" '
        f'fill="{_OFFICIAL_FILL}" stroke="#222" stroke-width="0.5"/>',
        f'<text x="{_fmt(_MARGIN_LEFT + 14)}" y="{_fmt(legend_y)}" '
        f'font-family="sans-serif" font-size="9">official</text>',
        f'<rect x="{_fmt(_MARGIN_LEFT + 70)}" y="{_fmt(legend_y - 8)}" width="10" height="8" '
        f'fill="{_CRACKED_FILL}" stroke="#222" stroke-width="0.5"/>',
        f'<text x="{_fmt(_MARGIN_LEFT + 84)}" y="{_fmt(legend_y)}" '
        f'font-family="sans-serif" font-size="9">cracked</text>',
        "</svg>",
    ]
    return ("\n".join(parts) + "\n").encode("utf-8")
