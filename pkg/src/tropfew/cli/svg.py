"""Static SVG 1.1 pictures of tropical curves, their arrangement and the fan E."""

from __future__ import annotations

from fractions import Fraction
from xml.sax.saxutils import escape

from ..tropical import TropicalCurve, positive_part

WIDTH = HEIGHT = 640
INSET = 170
COLORS = ("#1f5fa8", "#c0392b")
POSITIVE = "#f1c40f"


def _f(v: float) -> str:
    return f"{v:.2f}"


class _Frame:
    """Affine map from plane coordinates to the picture (y pointing up)."""

    def __init__(self, points, left, top, width, height, pad=0.12):
        xs = [float(p[0]) for p in points] or [0.0]
        ys = [float(p[1]) for p in points] or [0.0]
        x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
        span = max(x1 - x0, y1 - y0, 1.0)
        cx, cy = (x0 + x1) / 2, (y0 + y1) / 2
        half = span * (0.5 + pad)
        self.x0, self.y0, self.size = cx - half, cy - half, 2 * half
        self.left, self.top, self.width, self.height = left, top, width, height

    def __call__(self, p) -> tuple[float, float]:
        u = (float(p[0]) - self.x0) / self.size
        v = (float(p[1]) - self.y0) / self.size
        return self.left + u * self.width, self.top + (1 - v) * self.height

    @property
    def reach(self) -> float:
        return 3 * self.size


def _far(frame: _Frame, start, direction) -> tuple[float, float]:
    n = (direction[0] ** 2 + direction[1] ** 2) ** 0.5
    s = frame.reach / n
    return float(start[0]) + s * direction[0], float(start[1]) + s * direction[1]


def _curve_elements(curve: TropicalCurve, frame: _Frame, color: str, positive: frozenset[int],
                    tag: str) -> list[str]:
    out = []
    for i, e in enumerate(curve.edges):
        if e.kind == "segment":
            a, b = e.start, e.end
        elif e.kind == "ray":
            a, b = e.start, _far(frame, e.start, e.direction)
        else:
            a = _far(frame, e.start, (-e.direction[0], -e.direction[1]))
            b = _far(frame, e.start, e.direction)
        (x1, y1), (x2, y2) = frame(a), frame(b)
        if i in positive:
            out.append(f'<line class="positive" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" '
                       f'y2="{_f(y2)}" stroke="{POSITIVE}" stroke-width="7" stroke-opacity="0.6"/>')
        out.append(f'<line class="edge {tag}" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                   f'stroke="{color}" stroke-width="{1 + e.weight}"/>')
        if e.kind == "segment":
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        else:
            sx, sy = frame(e.start)
            ex, ey = frame(_far(frame, e.start, e.direction))
            k = 0.04
            mx, my = sx + k * (ex - sx), sy + k * (ey - sy)
        out.append(f'<text class="weight" x="{_f(mx + 4)}" y="{_f(my - 4)}" font-size="11" '
                   f'fill="{color}">{e.weight}</text>')
    for v in curve.vertices:
        x, y = frame(v.point)
        out.append(f'<circle class="vertex {tag}" cx="{_f(x)}" cy="{_f(y)}" r="3.5" fill="{color}"/>')
    return out


def _inset(curves, left: float, top: float, colors) -> list[str]:
    pts = [w for c in curves for w in c.dual.heights]
    frame = _Frame(pts, left, top, INSET, INSET, pad=0.08)
    out = [f'<rect x="{_f(left)}" y="{_f(top)}" width="{INSET}" height="{INSET}" '
           f'fill="white" stroke="#888"/>',
           f'<text x="{_f(left + 4)}" y="{_f(top + 12)}" font-size="10" fill="#444">dual subdivision</text>']
    for curve, color in zip(curves, colors):
        for cell in curve.dual.of_dim(1):
            (x1, y1), (x2, y2) = frame(cell.vertices[0]), frame(cell.vertices[1])
            out.append(f'<line class="dual" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                       f'stroke="{color}" stroke-width="1"/>')
        for w in sorted(curve.dual.heights):
            x, y = frame(w)
            fill = color if curve.signs.get(w, 1) > 0 else "white"
            out.append(f'<circle cx="{_f(x)}" cy="{_f(y)}" r="2.5" fill="{fill}" stroke="{color}"/>')
    return out


def render(curves, points=(), fan=None, title: str | None = None) -> str:
    """SVG document for one or two curves.

    ``points`` are ``(point, positive)`` pairs (transversal intersections);
    ``fan`` is a mapping ``name -> primitive ray`` drawn from the origin.
    """
    curves = list(curves)
    anchors = [v.point for c in curves for v in c.vertices]
    anchors += [e.start for c in curves for e in c.edges]
    anchors += [p for p, _ in points]
    if fan is not None:
        anchors.append((Fraction(0), Fraction(0)))
    frame = _Frame(anchors, 0, 0, WIDTH, HEIGHT)
    body = [f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>', '<g clip-path="url(#plot)">']
    if fan is not None:
        for name, ray in sorted(fan.items()):
            (x1, y1), (x2, y2) = frame((0, 0)), frame(_far(frame, (0, 0), ray))
            body.append(f'<line class="fan" x1="{_f(x1)}" y1="{_f(y1)}" x2="{_f(x2)}" y2="{_f(y2)}" '
                        f'stroke="#27ae60" stroke-dasharray="6 4" stroke-width="1.5"/>')
            lx, ly = frame((0.3 * frame.size * ray[0] / max(abs(ray[0]), abs(ray[1])),
                            0.3 * frame.size * ray[1] / max(abs(ray[0]), abs(ray[1]))))
            body.append(f'<text class="fan-label" x="{_f(lx + 4)}" y="{_f(ly)}" font-size="12" '
                        f'fill="#27ae60">{escape(name)}</text>')
    for k, (curve, color) in enumerate(zip(curves, COLORS)):
        body.extend(_curve_elements(curve, frame, color, positive_part(curve), f"curve{k + 1}"))
    for p, pos in points:
        x, y = frame(p)
        fill = "#111" if pos else "white"
        body.append(f'<rect class="intersection" x="{_f(x - 4)}" y="{_f(y - 4)}" width="8" height="8" '
                    f'fill="{fill}" stroke="#111"/>')
    body.append("</g>")
    body.extend(_inset(curves, WIDTH - INSET - 8, 8, COLORS))
    if title:
        body.append(f'<text x="8" y="{HEIGHT - 10}" font-size="13" fill="#222">{escape(title)}</text>')
    head = (f'<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" '
            f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
            f'<defs><clipPath id="plot"><rect width="{WIDTH}" height="{HEIGHT}"/></clipPath></defs>\n')
    return head + "\n".join(body) + "\n</svg>\n"
