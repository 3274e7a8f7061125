"""Deterministic SVG drawings of a front and its resolved diagram.

Both panels are drawn from event words on a fixed lattice: event j sits in
column j, strand level k at row k.  No randomness and no floating-point
formatting beyond fixed two-decimal output, so identical inputs give
byte-identical files.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .diagram import (
    CAP_LEFT,
    CAP_RIGHT,
    CROSSING,
    LEFT_CUSP,
    RIGHT_CUSP,
    FrontWord,
    LagrangianDiagram,
    resolve_front,
)
from .dga import DGAPresentation, build_dga

DX = 40.0
DY = 24.0
MARGIN = 20.0
PANEL_GAP = 40.0


def _n(v: float) -> str:
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _path(points: Sequence[tuple[float, float]], cls: str) -> str:
    d = "M" + " L".join(f"{_n(x)},{_n(y)}" for x, y in points)
    return f'<path class="{cls}" d="{d}"/>'


def _curve(p0, c0, c1, p1, cls: str) -> str:
    pts = " ".join(f"{_n(x)},{_n(y)}" for x, y in (c0, c1, p1))
    return f'<path class="{cls}" d="M{_n(p0[0])},{_n(p0[1])} C{pts}"/>'


def _text(x: float, y: float, s: str) -> str:
    s = s.replace("&", "&amp;").replace("<", "&lt;")
    return f'<text x="{_n(x)}" y="{_n(y)}">{s}</text>'


class _Canvas:
    def __init__(self, top: float):
        self.top = top
        self.items: list[str] = []
        self.labels: list[str] = []
        self.width = 0.0
        self.height = 0.0

    def y(self, level: int) -> float:
        return self.top + level * DY

    def x(self, column: float) -> float:
        return MARGIN + column * DX

    def extend(self, columns: int, rows: int) -> None:
        self.width = max(self.width, self.x(columns) + MARGIN)
        self.height = max(self.height, self.y(rows + 1))


def _front_panel(f: FrontWord, top: float, names: dict[int, str]) -> _Canvas:
    cv = _Canvas(top)
    m = 0
    for j, (kind, lvl) in enumerate(f.events):
        x0, x1 = cv.x(j), cv.x(j + 1)
        k = lvl - 1
        if kind == LEFT_CUSP:
            for i in range(m):
                cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i if i < k else i + 2))], "front"))
            tip = (x0 + DX / 3, (cv.y(k) + cv.y(k + 1)) / 2)
            cv.items.append(_path([(x1, cv.y(k)), tip, (x1, cv.y(k + 1))], "front"))
            m += 2
        elif kind == RIGHT_CUSP:
            for i in range(m):
                if i in (k, k + 1):
                    continue
                cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i if i < k else i - 2))], "front"))
            tip = (x1 - DX / 3, (cv.y(k) + cv.y(k + 1)) / 2)
            cv.items.append(_path([(x0, cv.y(k)), tip, (x0, cv.y(k + 1))], "front"))
            if j in names:
                cv.labels.append(_text(tip[0] + 4, tip[1] + 3, names[j]))
            m -= 2
        else:
            for i in range(m):
                if i == k:
                    cv.items.append(_path([(x0, cv.y(k)), (x1, cv.y(k + 1))], "front"))
                elif i == k + 1:
                    cv.items.append(_path([(x0, cv.y(k + 1)), (x1, cv.y(k))], "front"))
                else:
                    cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i))], "front"))
        if kind == CROSSING and j in names:
            cv.labels.append(_text((x0 + x1) / 2 + 4, (cv.y(k) + cv.y(k + 1)) / 2 - 4, names[j]))
    cv.extend(len(f.events), max(f.strand_count_profile))
    return cv


def _lagrangian_panel(d: LagrangianDiagram, top: float, names: dict[int, str]) -> _Canvas:
    cv = _Canvas(top)
    m = 0
    for j, (kind, k, chord) in enumerate(d.events):
        x0, x1 = cv.x(j), cv.x(j + 1)
        if kind == CAP_LEFT:
            for i in range(m):
                cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i if i < k else i + 2))], "lag"))
            ya, yb = cv.y(k), cv.y(k + 1)
            cv.items.append(_curve((x1, ya), (x0, ya), (x0, yb), (x1, yb), "lag"))
            m += 2
        elif kind == CAP_RIGHT:
            for i in range(m):
                if i in (k, k + 1):
                    continue
                cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i if i < k else i - 2))], "lag"))
            ya, yb = cv.y(k), cv.y(k + 1)
            cv.items.append(_curve((x0, ya), (x1, ya), (x1, yb), (x0, yb), "lag"))
            m -= 2
        else:
            ya, yb = cv.y(k), cv.y(k + 1)
            xm, ym = (x0 + x1) / 2, (ya + yb) / 2
            gap = 4.0
            # over strand drawn whole, under strand broken at the double point
            cv.items.append(_path([(x0, ya), (x1, yb)], "lag"))
            cv.items.append(_path([(x0, yb), (xm - gap, ym + gap * DY / DX)], "lag"))
            cv.items.append(_path([(xm + gap, ym - gap * DY / DX), (x1, ya)], "lag"))
            for i in range(m):
                if i not in (k, k + 1):
                    cv.items.append(_path([(x0, cv.y(i)), (x1, cv.y(i))], "lag"))
            if chord in names:
                cv.labels.append(_text(xm + 4, ym - 6, names[chord]))
    cv.extend(len(d.events), max(d.slice_sizes()))
    return cv


def render_svg(f: FrontWord, labels: bool = True, dga: Optional[DGAPresentation] = None) -> str:
    """Front on top, resolved diagram below; crossings labelled ``id (degree)``."""
    d = resolve_front(f)
    if dga is None:
        dga = build_dga(d)
    chord_names = {i: f"{g.id} ({g.degree})" for i, g in enumerate(dga.generators)}
    front_names = {c.front_event: chord_names[c.index] for c in d.crossings}
    upper = _front_panel(f, MARGIN, front_names if labels else {})
    lower = _lagrangian_panel(d, upper.height + PANEL_GAP, chord_names if labels else {})
    width = max(upper.width, lower.width)
    height = lower.height + MARGIN
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_n(width)}" height="{_n(height)}" '
        f'viewBox="0 0 {_n(width)} {_n(height)}">',
        "<style>path{fill:none;stroke:#000;stroke-width:1.5}"
        "path.lag{stroke:#1f4e99}text{font:10px sans-serif}</style>",
        '<g id="front">',
        *upper.items,
        "</g>",
        '<g id="lagrangian">',
        *lower.items,
        "</g>",
    ]
    if labels:
        out += ['<g id="labels">', *upper.labels, *lower.labels, "</g>"]
    out.append("</svg>")
    return "\n".join(out) + "\n"


def count_text_nodes(svg: str) -> int:
    return svg.count("<text ")
