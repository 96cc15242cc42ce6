"""Deterministic SVG rendering of the (b, w)-plane.

Coordinates are computed exactly and printed as fixed-point decimals, and
elements are drawn in a sorted order, so equal specs give equal bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Any
from xml.sax.saxutils import escape

from .errors import InputError
from .plane import PlaneLine, PlanePoint, parabola_roots
from .serialize import line_from_json, parse_rat, point_from_json, point_to_json, rat

WIDTH = 640
HEIGHT = 480
SAMPLES = 160
KINDS = ("region", "parabola", "line", "point")


@dataclass(frozen=True)
class PlotSpec:
    b_range: tuple[Fraction, Fraction]
    w_range: tuple[Fraction, Fraction]
    elements: tuple = ()
    precision: int = 12

    def __post_init__(self) -> None:
        if not self.b_range[0] < self.b_range[1] or not self.w_range[0] < self.w_range[1]:
            raise InputError("plot ranges must be nonempty")
        labels = [e.get("label") for e in self.elements if e.get("label") is not None]
        if len(labels) != len(set(labels)):
            raise InputError("element labels must be unique")
        for e in self.elements:
            if e.get("type") not in KINDS:
                raise InputError(f"unknown element type {e.get('type')!r}")
        if not 0 < self.precision <= 40:
            raise InputError("precision must be between 1 and 40")

    def to_json(self) -> dict:
        return {
            "b_range": [rat(x) for x in self.b_range],
            "w_range": [rat(x) for x in self.w_range],
            "elements": list(self.elements),
            "precision": self.precision,
        }

    @staticmethod
    def from_json(obj: Any) -> PlotSpec:
        if not isinstance(obj, dict):
            raise InputError("plot spec must be a JSON object")
        try:
            b = tuple(parse_rat(x) for x in obj["b_range"])
            w = tuple(parse_rat(x) for x in obj["w_range"])
        except (KeyError, TypeError) as exc:
            raise InputError("plot spec needs b_range and w_range") from exc
        if len(b) != 2 or len(w) != 2:
            raise InputError("ranges are pairs")
        elements = obj.get("elements", [])
        if not isinstance(elements, list) or not all(isinstance(e, dict) for e in elements):
            raise InputError("elements must be a list of objects")
        return PlotSpec(b, w, tuple(elements), int(obj.get("precision", 12)))


class _Canvas:
    def __init__(self, spec: PlotSpec):
        self.spec = spec
        (self.b0, self.b1), (self.w0, self.w1) = spec.b_range, spec.w_range

    def fmt(self, x: Fraction) -> str:
        with localcontext() as ctx:
            ctx.prec = 60
            d = Decimal(x.numerator) / Decimal(x.denominator)
            return f"{d:.{self.spec.precision}f}"

    def xy(self, b: Fraction, w: Fraction) -> str:
        x = (b - self.b0) / (self.b1 - self.b0) * WIDTH
        y = HEIGHT - (w - self.w0) / (self.w1 - self.w0) * HEIGHT
        return f"{self.fmt(x)},{self.fmt(y)}"

    def samples(self) -> list[Fraction]:
        step = (self.b1 - self.b0) / SAMPLES
        return [self.b0 + k * step for k in range(SAMPLES + 1)]


def _clip_line(line: PlaneLine, cv: _Canvas) -> tuple[tuple, tuple] | None:
    """Segment of the line inside the plot box, exactly."""
    if line.is_vertical:
        b = Fraction(line.C, line.A)
        if not cv.b0 <= b <= cv.b1:
            return None
        return (b, cv.w0), (b, cv.w1)
    slope = line.slope
    pts = []
    for b in (cv.b0, cv.b1):
        pts.append((b, line.w_at(b)))
    if slope != 0:
        for w in (cv.w0, cv.w1):
            b = (line.C - line.B * w) / line.A
            pts.append((b, w))
    inside = sorted({p for p in pts if cv.b0 <= p[0] <= cv.b1 and cv.w0 <= p[1] <= cv.w1})
    if len(inside) < 2:
        return None
    return inside[0], inside[-1]


def _sort_key(e: dict) -> tuple:
    return (KINDS.index(e["type"]), str(e.get("label", "")), str(sorted(e.items(), key=str)))


def render_svg(spec: PlotSpec) -> str:
    cv = _Canvas(spec)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    elements = sorted(spec.elements, key=_sort_key)
    if not any(e["type"] == "parabola" for e in elements):
        elements = [{"type": "parabola"}] + elements
        elements.sort(key=_sort_key)
    for e in elements:
        kind = e["type"]
        label = escape(str(e.get("label", "")))
        if kind == "region":
            out.append(_region(e, cv))
        elif kind == "parabola":
            pts = " ".join(cv.xy(b, b * b / 2) for b in cv.samples())
            out.append(f'<polyline points="{pts}" fill="none" stroke="black" stroke-width="1.5"/>')
        elif kind == "line":
            line = line_from_json(e["line"])
            seg = _clip_line(line, cv)
            if seg is None:
                continue
            (ba, wa), (bb, wb) = seg
            xa, ya = cv.xy(ba, wa).split(",")
            xb, yb = cv.xy(bb, wb).split(",")
            dash = ' stroke-dasharray="6,4"' if e.get("dashed") else ""
            out.append(
                f'<line x1="{xa}" y1="{ya}" x2="{xb}" y2="{yb}" stroke="{escape(e.get("color", "blue"))}" '
                f'stroke-width="1"{dash}/>'
            )
            if label:
                out.append(f'<text x="{xb}" y="{yb}" font-size="12" text-anchor="end">{label}</text>')
        elif kind == "point":
            p = point_from_json(e["point"])
            x, y = cv.xy(p.b, p.w).split(",")
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="black"/>')
            if label:
                out.append(f'<text x="{x}" y="{y}" dx="5" dy="-5" font-size="12">{label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _region(e: dict, cv: _Canvas) -> str:
    """Shade U, optionally cut below by a line and on the left by b > right_of."""
    cut = line_from_json(e["above_line"]) if "above_line" in e else None
    left = parse_rat(e["right_of"]) if "right_of" in e else None
    top = []
    bottom = []
    for b in cv.samples():
        if left is not None and b <= left:
            continue
        floor_w = b * b / 2
        if cut is not None and not cut.is_vertical:
            floor_w = max(floor_w, cut.w_at(b))
        if floor_w >= cv.w1:
            continue
        bottom.append(cv.xy(b, max(floor_w, cv.w0)))
        top.append(cv.xy(b, cv.w1))
    if not bottom:
        return "<!-- empty region -->"
    pts = " ".join(bottom + list(reversed(top)))
    fill = escape(e.get("color", "#dde8f4"))
    return f'<polygon points="{pts}" fill="{fill}" stroke="none"/>'


def spec_from_walls(walls_json: Any) -> PlotSpec:
    """Plot spec for the output of the walls command."""
    walls = walls_json.get("walls", []) if isinstance(walls_json, dict) else walls_json
    if not isinstance(walls, list):
        raise InputError("expected a wall list")
    elements: list[dict] = [{"type": "region"}, {"type": "parabola"}]
    bs: list[Fraction] = []
    for i, w in enumerate(walls):
        line = line_from_json(w["line"])
        elements.append({"type": "line", "line": line.as_triple(), "label": f"wall {i}"})
        try:
            b1, b2 = parabola_roots(line)
            bs += [Fraction(b1.floor()), Fraction(b2.ceil())]
        except InputError:
            pass
    if isinstance(walls_json, dict) and "pi" in walls_json and walls_json["pi"] is not None:
        p = point_from_json(walls_json["pi"])
        elements.append({"type": "point", "point": point_to_json(p), "label": "Pi(v)"})
        bs.append(p.b)
    return _auto_ranges(bs, elements)


def _auto_ranges(bs: list[Fraction], elements: list[dict]) -> PlotSpec:
    if bs:
        lo, hi = min(bs) - 1, max(bs) + 1
    else:
        lo, hi = Fraction(-4), Fraction(4)
    wmax = max(lo * lo, hi * hi) / 2 + 1
    return PlotSpec((lo, hi), (Fraction(0), wmax), tuple(elements))


def figure_spec(v, n0, X) -> PlotSpec:
    """l_f, the JS wall and U(v_{n0}) for v - [O(-n0)]."""
    from .plane import pi
    from .walls import js_wall, lf_line
    from .threefold import subtract_line_bundle

    vn = subtract_line_bundle(v, n0)
    lf = lf_line(v, n0)
    js = js_wall(vn, n0, X).line
    p = pi(vn)
    bs = [p.b]
    for line in (lf, js):
        b1, b2 = parabola_roots(line)
        bs += [Fraction(b1.floor()), Fraction(b2.ceil())]
    elements = [
        {"type": "region", "above_line": lf.as_triple(), "right_of": rat(p.b), "label": "U(v)"},
        {"type": "parabola"},
        {"type": "line", "line": lf.as_triple(), "label": "l_f"},
        {"type": "line", "line": js.as_triple(), "label": "l_JS", "dashed": True, "color": "red"},
        {"type": "point", "point": point_to_json(p), "label": "Pi(v_n0)"},
    ]
    return _auto_ranges(bs, elements)


__all__ = ["PlotSpec", "render_svg", "spec_from_walls", "figure_spec"]
