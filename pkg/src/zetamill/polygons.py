"""Lower-convex polygons in Q^2 with exact rational vertices.

One type serves both roles in the package: Hodge polygons assembled from
lattice combinatorics and q-adic Newton polygons of integer polynomials.
All comparisons are exact; nothing here touches floating point.
"""

from dataclasses import dataclass
from fractions import Fraction


def lower_hull(points):
    """Lower convex hull of (x, y) pairs, x-increasing.

    Ties at equal abscissa keep the minimal ordinate (canonical polygon).
    Returns the hull vertex list; input needs no particular order.
    """
    best = {}
    for x, y in points:
        x, y = Fraction(x), Fraction(y)
        if x not in best or y < best[x]:
            best[x] = y
    pts = sorted(best.items())
    if len(pts) <= 2:
        return [tuple(p) for p in pts]
    hull = []
    for p in pts:
        # drop last vertex while it lies on or above the new support line
        while len(hull) >= 2:
            (x0, y0), (x1, y1) = hull[-2], hull[-1]
            if (y1 - y0) * (p[0] - x0) >= (p[1] - y0) * (x1 - x0):
                hull.pop()
            else:
                break
        hull.append(tuple(p))
    return hull


@dataclass(frozen=True)
class ConvexPolygonQ:
    """A lower-convex polygon: vertices in Q^2, x-increasing, slopes strictly
    increasing across sides.  The first vertex is normalised to sit at the
    origin of comparisons (for all polygons in this package it is (0,0))."""

    vertices: tuple

    @staticmethod
    def from_points(points) -> "ConvexPolygonQ":
        return ConvexPolygonQ(tuple(lower_hull(points)))

    @staticmethod
    def from_slopes(slopes) -> "ConvexPolygonQ":
        """Build from (slope, horizontal length) pairs, starting at (0,0)."""
        x, y = Fraction(0), Fraction(0)
        verts = [(x, y)]
        for s, h in sorted(slopes):
            if h == 0:
                continue
            x, y = x + Fraction(h), y + Fraction(s) * Fraction(h)
            verts.append((x, y))
        return ConvexPolygonQ(tuple(verts))

    @property
    def start(self):
        return self.vertices[0]

    @property
    def end(self):
        return self.vertices[-1]

    @property
    def width(self) -> Fraction:
        return self.vertices[-1][0] - self.vertices[0][0]

    def slopes(self):
        """(slope, horizontal length) per side, slopes strictly increasing."""
        out = []
        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            out.append(((y1 - y0) / (x1 - x0), x1 - x0))
        return out

    def slope_multiset(self):
        """Each slope repeated by its horizontal length (integer lengths)."""
        out = []
        for s, h in self.slopes():
            if h.denominator != 1:
                raise ValueError("slope multiset needs integer horizontal lengths")
            out.extend([s] * int(h))
        return out

    def value_at(self, x) -> Fraction:
        """Height of the polygon at abscissa x (within its span), exact."""
        x = Fraction(x)
        vs = self.vertices
        if not (vs[0][0] <= x <= vs[-1][0]):
            raise ValueError(f"abscissa {x} outside polygon span")
        for (x0, y0), (x1, y1) in zip(vs, vs[1:]):
            if x0 <= x <= x1:
                if x0 == x1:
                    return min(y0, y1)
                return y0 + (y1 - y0) * (x - x0) / (x1 - x0)
        return vs[-1][1]

    def to_json(self):
        return {"vertices": [[f"{v[0].numerator}/{v[0].denominator}",
                              f"{v[1].numerator}/{v[1].denominator}"] for v in self.vertices]}

    @staticmethod
    def from_json(obj) -> "ConvexPolygonQ":
        verts = tuple((Fraction(a), Fraction(b)) for a, b in obj["vertices"])
        return ConvexPolygonQ(verts)


@dataclass(frozen=True)
class PolygonComparison:
    above: bool
    endpoints_match: bool
    first_gap: tuple | None  # (abscissa, gap size) at the first strict gap
    strictly_above_somewhere: bool


def lies_above(upper: ConvexPolygonQ, lower: ConvexPolygonQ) -> PolygonComparison:
    """Pointwise comparison of two polygons at all vertex abscissae of both."""
    endpoints = (upper.start == lower.start and upper.end == lower.end)
    xs = sorted({v[0] for v in upper.vertices} | {v[0] for v in lower.vertices})
    lo, hi = max(upper.start[0], lower.start[0]), min(upper.end[0], lower.end[0])
    above = True
    first_gap = None
    strict = False
    for x in xs:
        if not (lo <= x <= hi):
            above = False
            continue
        gap = upper.value_at(x) - lower.value_at(x)
        if gap < 0:
            above = False
        elif gap > 0:
            strict = True
            if first_gap is None:
                first_gap = (x, gap)
    return PolygonComparison(above=above, endpoints_match=endpoints,
                             first_gap=first_gap, strictly_above_somewhere=strict)


def render_svg(polygons, labels=None, size=420, shade_between=None):
    """Small standalone SVG of one or more polygons, optional gap shading.

    shade_between = (i, j) fills the region between polygons[i] (upper) and
    polygons[j] (lower) over their common span.
    """
    labels = labels or [f"polygon {i}" for i in range(len(polygons))]
    allv = [v for poly in polygons for v in poly.vertices]
    xs = [float(v[0]) for v in allv]
    ys = [float(v[1]) for v in allv]
    xmin, xmax = min(xs), max(xs)
    ymin, ymax = min(ys), max(ys)
    spanx = (xmax - xmin) or 1.0
    spany = (ymax - ymin) or 1.0
    pad = 30.0

    def sx(x):
        return pad + (float(x) - xmin) / spanx * (size - 2 * pad)

    def sy(y):
        return size - pad - (float(y) - ymin) / spany * (size - 2 * pad)

    colors = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"]
    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">',
             f'<rect width="{size}" height="{size}" fill="white"/>']
    if shade_between is not None:
        up, lo = polygons[shade_between[0]], polygons[shade_between[1]]
        fwd = [(sx(v[0]), sy(v[1])) for v in up.vertices]
        back = [(sx(v[0]), sy(v[1])) for v in reversed(lo.vertices)]
        pts = " ".join(f"{x:.2f},{y:.2f}" for x, y in fwd + back)
        parts.append(f'<polygon points="{pts}" fill="#ffd8a8" stroke="none" opacity="0.7"/>')
    for i, poly in enumerate(polygons):
        pts = " ".join(f"{sx(v[0]):.2f},{sy(v[1]):.2f}" for v in poly.vertices)
        c = colors[i % len(colors)]
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{c}" stroke-width="2"/>')
        for v in poly.vertices:
            parts.append(f'<circle cx="{sx(v[0]):.2f}" cy="{sy(v[1]):.2f}" r="3" fill="{c}"/>')
        parts.append(f'<text x="{pad}" y="{16 + 14 * i}" fill="{c}" '
                     f'font-size="12" font-family="monospace">{labels[i]}</text>')
    parts.append("</svg>")
    return "\n".join(parts)
