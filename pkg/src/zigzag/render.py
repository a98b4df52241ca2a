"""Deterministic exporters: SVG and TikZ for 0-2D views, ASCII STL.

The 2D picture is assembled per strip: between two adjacent heights,
every wire crossing the strip contributes a segment, the gaps between
consecutive segments are filled as region trapezoids labelled from
the regular slice, wires are stroked over the fills and top cells are
drawn as dots.  All coordinates print with four decimals and all
iteration follows the zigzag order, so output is byte stable.
"""

from __future__ import annotations

from .diagram import Diagram, Generator, KernelError, diagram_dimension
from .explode import explode, visible_generator
from .geometry import Geometry, GeometryError
from .layout import Layout
from .signature import DEFAULT_COLORS

SCALE = 40.0
MARGIN = 1.0
WIRE_WIDTH = 2.0
DOT_RADIUS = 5.0
TIKZ_WIRE = "very thick"
TIKZ_DOT_RADIUS = 0.12


class RenderError(KernelError):
    pass


def _fmt(x: float) -> str:
    out = f"{x:.4f}"
    return "0.0000" if out == "-0.0000" else out


class _Style:
    """Color and shape lookup, from the signature when available."""

    def __init__(self, sig=None):
        self.sig = sig

    def color(self, g: Generator) -> str:
        if self.sig is not None:
            return self.sig.entry(g).color
        return DEFAULT_COLORS[(5 * g.dimension + g.id) % len(DEFAULT_COLORS)]

    def shape(self, g: Generator) -> str:
        if self.sig is not None:
            return self.sig.entry(g).shape
        return "circle"


def _scene(d: Diagram, l: Layout):
    """Regions, wires and dots of the 0-2D picture, in diagram units."""
    n = diagram_dimension(d)
    k = len(next(iter(l.positions.values())))
    if k > 2:
        raise RenderError("flat exports need a view of dimension at most 2")
    graph = explode(d, k)
    pos = l.positions

    if k == 0:
        label = visible_generator(graph.nodes[()])
        box = (-MARGIN, MARGIN, -MARGIN, MARGIN)
        return box, [((box[0], box[2]), (box[1], box[2]), (box[1], box[3]), (box[0], box[3]), label)], [], []

    ys = [p[0] for p in pos.values()]
    xs = [p[1] for p in pos.values()] if k == 2 else [0.0]
    y_lo, y_hi = min(ys), max(ys)
    if y_lo == y_hi:
        y_lo, y_hi = y_lo - MARGIN, y_hi + MARGIN
    box = (min(xs) - MARGIN, max(xs) + MARGIN, y_lo, y_hi)
    x_lo, x_hi, y_lo, y_hi = box

    regions, wires, dots = [], [], []
    levels = 2 * len(d.cospans) + 1

    if k == 1:
        points = range((levels - 1) // 2)
        splits = [y_lo] + [2.0 * i + 1.0 for i in points] + [y_hi]
        for i in range(len(splits) - 1):
            label = visible_generator(graph.nodes[(("R", i),)])
            regions.append(
                ((x_lo, splits[i]), (x_hi, splits[i]), (x_hi, splits[i + 1]), (x_lo, splits[i + 1]), label)
            )
        for i in points:
            y = 2.0 * i + 1.0
            label = visible_generator(graph.nodes[(("S", i),)])
            wires.append((((0.0, y - 1.0), (0.0, y), (0.0, y + 1.0)), label))
            if label.dimension >= n:
                dots.append(((0.0, y), label))
        return box, regions, wires, dots

    # k == 2: one strip per gap between adjacent heights
    crossing = {}
    for e in graph.edges:
        if e.axis == 0 and e.src[1][0] == "S" and e.dst[1][0] == "S":
            crossing.setdefault((e.src[0], e.dst[0]), {})[e.src[1][1]] = (e.src, e.dst)
    for level in range(levels - 1):
        if level % 2 == 0:
            regular, singular = ("R", level // 2), ("S", level // 2)
            flip = False
        else:
            regular, singular = ("R", level // 2 + 1), ("S", level // 2)
            flip = True
        y0, y1 = float(level), float(level + 1)
        segs = crossing.get((regular, singular), {})
        m = len([c for c in graph.nodes if c[0] == regular and c[1][0] == "S"])
        lower, upper = [x_lo], [x_lo]
        for u in range(m):
            src, dst = segs[u]
            a, b = (pos[src][1], pos[dst][1])
            lo, hi = (b, a) if flip else (a, b)
            lower.append(lo)
            upper.append(hi)
            wires.append((((lo, y0), (hi, y1)), visible_generator(graph.nodes[src])))
        lower.append(x_hi)
        upper.append(x_hi)
        for j in range(m + 1):
            label = visible_generator(graph.nodes[(regular, ("R", j))])
            quad = (
                (lower[j], y0),
                (lower[j + 1], y0),
                (upper[j + 1], y1),
                (upper[j], y1),
                label,
            )
            regions.append(quad)
    for c in sorted(graph.nodes, key=lambda c: (c[0][1], c[0][0], c[1][1], c[1][0])):
        g = visible_generator(graph.nodes[c])
        if c[0][0] == "S" and c[1][0] == "S" and g.dimension >= n:
            dots.append(((pos[c][1], pos[c][0]), g))
    return box, regions, wires, dots


def emit_svg(d: Diagram, l: Layout, sig=None) -> str:
    """SVG 1.1 text for a 0-, 1- or 2-dimensional view."""
    style = _Style(sig)
    box, regions, wires, dots = _scene(d, l)
    x_lo, x_hi, y_lo, y_hi = box

    def sx(x):
        return (x - x_lo) * SCALE

    def sy(y):
        return (y_hi - y) * SCALE

    width, height = _fmt(sx(x_hi)), _fmt(sy(y_lo))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
    ]
    for quad in regions:
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in quad[:-1])
        out.append(f'<polygon points="{pts}" fill="{style.color(quad[-1])}" stroke="none"/>')
    for chain, label in wires:
        pts = " ".join(f"{_fmt(sx(x))},{_fmt(sy(y))}" for x, y in chain)
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{style.color(label)}" '
            f'stroke-width="{_fmt(WIRE_WIDTH)}" stroke-linecap="round"/>'
        )
    for (x, y), label in dots:
        cx, cy, r = _fmt(sx(x)), _fmt(sy(y)), _fmt(DOT_RADIUS)
        if style.shape(label) == "square":
            half = DOT_RADIUS
            out.append(
                f'<rect x="{_fmt(sx(x) - half)}" y="{_fmt(sy(y) - half)}" '
                f'width="{_fmt(2 * half)}" height="{_fmt(2 * half)}" fill="{style.color(label)}"/>'
            )
        else:
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{r}" fill="{style.color(label)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def emit_tikz(d: Diagram, l: Layout, sig=None) -> str:
    """TikZ picture with four-decimal coordinates in diagram units."""
    style = _Style(sig)
    box, regions, wires, dots = _scene(d, l)
    used: dict = {}

    def name(g: Generator) -> str:
        color = style.color(g)
        if color not in used:
            used[color] = f"zz{len(used)}"
        return used[color]

    body = []
    for quad in regions:
        pts = " -- ".join(f"({_fmt(x)},{_fmt(y)})" for x, y in quad[:-1])
        body.append(f"\\fill[{name(quad[-1])}] {pts} -- cycle;")
    for chain, label in wires:
        pts = " -- ".join(f"({_fmt(x)},{_fmt(y)})" for x, y in chain)
        body.append(f"\\draw[{name(label)}, {TIKZ_WIRE}] {pts};")
    for (x, y), label in dots:
        r = _fmt(TIKZ_DOT_RADIUS)
        if style.shape(label) == "square":
            half = TIKZ_DOT_RADIUS
            body.append(
                f"\\fill[{name(label)}] ({_fmt(x - half)},{_fmt(y - half)}) rectangle "
                f"({_fmt(x + half)},{_fmt(y + half)});"
            )
        else:
            body.append(f"\\fill[{name(label)}] ({_fmt(x)},{_fmt(y)}) circle ({r});")
    head = [
        f"\\definecolor{{{nick}}}{{HTML}}{{{color.lstrip('#').upper()}}}"
        for color, nick in used.items()
    ]
    lines = head + ["\\begin{tikzpicture}[y=1cm, x=1cm]"] + body + ["\\end{tikzpicture}"]
    return "\n".join(lines) + "\n"


def emit_stl(g: Geometry, name: str = "diagram") -> bytes:
    """ASCII STL: every 2-cube in 3-space becomes two triangles."""
    if g.dimension != 3:
        raise GeometryError("STL export needs 3-dimensional coordinates")
    squares = [c for c in g.cubes if c.k == 2]
    if not squares:
        raise GeometryError("no surface squares to export")
    out = [f"solid {name}"]
    for cube in squares:
        a, b, c, d = (g.vertices[i] for i in (cube.vertices[j] for j in (0, 1, 3, 2)))
        for tri in ((a, b, c), (a, c, d)):
            nx, ny, nz = _normal(*tri)
            out.append(f"  facet normal {_fmt(nx)} {_fmt(ny)} {_fmt(nz)}")
            out.append("    outer loop")
            for p in tri:
                out.append(f"      vertex {_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])}")
            out.append("    endloop")
            out.append("  endfacet")
    out.append(f"endsolid {name}")
    return ("\n".join(out) + "\n").encode("ascii")


def _normal(a, b, c):
    u = [b[i] - a[i] for i in range(3)]
    v = [c[i] - a[i] for i in range(3)]
    n = (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )
    norm = (n[0] ** 2 + n[1] ** 2 + n[2] ** 2) ** 0.5
    if norm == 0.0:
        return (0.0, 0.0, 0.0)
    return (n[0] / norm, n[1] / norm, n[2] / norm)


def scene_elements(d: Diagram, l: Layout) -> dict:
    """Hit-test payload: the picture's pieces with raw coordinates."""
    box, regions, wires, dots = _scene(d, l)
    return {
        "box": list(box),
        "regions": [
            {"points": [list(p) for p in quad[:-1]], "generator": _gen(quad[-1])}
            for quad in regions
        ],
        "wires": [
            {"points": [list(p) for p in chain], "generator": _gen(label)}
            for chain, label in wires
        ],
        "vertices": [
            {"point": list(point), "generator": _gen(label)} for point, label in dots
        ],
    }


def _gen(g: Generator) -> dict:
    return {"dimension": g.dimension, "id": g.id}
