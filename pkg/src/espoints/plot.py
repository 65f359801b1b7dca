"""Static SVG figures: points, a witness polygon, and the cap skeleton from a trace."""

from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import PointSet, convex_hull

MARGIN = 20


class _Viewport:
    def __init__(self, S: PointSet, size: int):
        xs = [p.x for p in S.points] or [0]
        ys = [p.y for p in S.points] or [0]
        self.x0, self.y0 = min(xs), min(ys)
        span = max(max(xs) - self.x0, max(ys) - self.y0, 1)
        self.span = span
        self.inner = size - 2 * MARGIN
        self.size = size

    def __call__(self, p) -> tuple[float, float]:
        # exact integer offsets first, one float division at the end
        u = MARGIN + (p[0] - self.x0) * self.inner / self.span
        v = self.size - MARGIN - (p[1] - self.y0) * self.inner / self.span
        return round(u, 2), round(v, 2)


def _polyline(points, closed: bool, style: str) -> str:
    coords = " ".join(f"{u},{v}" for u, v in points)
    tag = "polygon" if closed else "polyline"
    return f'<{tag} points="{coords}" {style}/>'


def render_svg(S: PointSet, witness=None, trace=None, size: int = 600, title: str = "") -> str:
    """A standalone SVG document.

    ``witness`` is a sequence of indices, drawn as their convex polygon;
    ``trace`` is a witness trace, from which the chosen cap and the lines
    bounding its support regions are drawn.
    """
    n = len(S)
    if witness is not None:
        bad = [i for i in witness if not (isinstance(i, int) and 0 <= i < n)]
        if bad:
            raise IndexError(f"witness index {bad[0]} out of range for {n} points")
    vp = _Viewport(S, size)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           f'viewBox="0 0 {size} {size}">']
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect width="{size}" height="{size}" fill="white"/>')
    for step in trace or []:
        if step.get("step") == "fractional_cap" and step.get("X"):
            cap = [vp(S.points[i]) for i in step["X"] if 0 <= i < n]
            out.append(_polyline(cap, False, 'fill="none" stroke="#888" stroke-dasharray="4 3"'))
            for a, b in zip(cap, cap[1:]):
                # extend each skeleton edge to hint at the region boundaries
                du, dv = b[0] - a[0], b[1] - a[1]
                out.append(_polyline([(a[0] - du, a[1] - dv), (b[0] + du, b[1] + dv)], False,
                                     'fill="none" stroke="#ccc" stroke-width="0.7"'))
    if witness:
        hull = convex_hull(S, list(witness))
        out.append(_polyline([vp(S.points[i]) for i in hull], True,
                             'fill="#fdd" fill-opacity="0.5" stroke="#c00" stroke-width="1.5"'))
    chosen = set(witness or [])
    for i, p in enumerate(S.points):
        u, v = vp(p)
        color = "#c00" if i in chosen else "#000"
        out.append(f'<circle cx="{u}" cy="{v}" r="2.5" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
