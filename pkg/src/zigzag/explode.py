"""Explosion of a diagram into its graph of slices.

Exploding an n-diagram to depth k lays out every slice-of-a-slice
along the outermost k axes.  Nodes are coordinate tuples whose
components are ('R', i) for regular levels and ('S', i) for singular
heights; the node weight is the (n-k)-diagram living there.  Edges
carry the rewrite mapping the source weight onto the target weight,
the orientation of the cospan leg they descend from ('f' or 'b'), and
the axis they cross.  Every edge raises the number of singular
components by exactly one, so the graph is graded and triangle free.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Diagram,
    Diagram0,
    DiagramN,
    Generator,
    Rewrite,
    all_slices,
    diagram_dimension,
    identity_rewrite,
    regular_preimage,
    regular_slice,
    singular_image,
    singular_slice,
    slice_rewrite,
)
from .interner import current_interner


@dataclass(frozen=True)
class Edge:
    src: tuple
    dst: tuple
    weight: Rewrite
    orientation: str
    axis: int


@dataclass(frozen=True)
class ExplosionGraph:
    depth: int
    nodes: dict
    edges: tuple

    def singular_count(self, coord: tuple) -> int:
        return sum(1 for kind, _ in coord if kind == "S")


def explode(d: Diagram, depth: int) -> ExplosionGraph:
    """Explode the outermost `depth` axes of d."""
    if depth < 0 or depth > diagram_dimension(d):
        raise ValueError("explosion depth must lie within the dimension")
    itn = current_interner()
    return itn.memoize(f"explode@{depth}", [d], lambda: _explode(d, depth))


def _explode(d: Diagram, depth: int) -> ExplosionGraph:
    if depth == 0:
        return ExplosionGraph(0, {(): d}, ())
    nodes: dict = {}
    edges: list = []
    slices = all_slices(d)
    k = len(d.cospans)
    for idx, sl in enumerate(slices):
        comp = ("R", idx // 2) if idx % 2 == 0 else ("S", idx // 2)
        sub = explode(sl, depth - 1)
        for c, w in sub.nodes.items():
            nodes[(comp,) + c] = w
        for e in sub.edges:
            edges.append(
                Edge((comp,) + e.src, (comp,) + e.dst, e.weight, e.orientation, e.axis + 1)
            )
    for i in range(k):
        cs = d.cospans[i]
        _explode_edge(
            (("R", i),), (("S", i),), cs.forward, slices[2 * i], slices[2 * i + 1],
            "f", 0, depth - 1, edges,
        )
        _explode_edge(
            (("R", i + 1),), (("S", i),), cs.backward, slices[2 * i + 2], slices[2 * i + 1],
            "b", 0, depth - 1, edges,
        )
    return ExplosionGraph(depth, nodes, tuple(edges))


def _explode_edge(src, dst, w, x, y, orientation, axis, rem, out) -> None:
    if rem == 0:
        out.append(Edge(src, dst, w, orientation, axis))
        return
    for u in range(len(x.cospans)):
        v = singular_image(w, u)
        _explode_edge(
            src + (("S", u),), dst + (("S", v),), slice_rewrite(w, u),
            singular_slice(x, u), singular_slice(y, v), orientation, axis, rem - 1, out,
        )
    dim = diagram_dimension(x) - 1
    for v in range(len(y.cospans) + 1):
        pv = regular_preimage(w, v)
        _explode_edge(
            src + (("R", pv),), dst + (("R", v),), identity_rewrite(dim),
            regular_slice(x, pv), regular_slice(y, v), orientation, axis, rem - 1, out,
        )


def visible_generator(d: Diagram) -> Generator:
    """Descend to the generator shown when d is projected to a point.

    Singular content wins over regular; among singular heights the
    topmost is on top of the projection.
    """
    while isinstance(d, DiagramN):
        if d.cospans:
            d = singular_slice(d, len(d.cospans) - 1)
        else:
            d = d.source
    return d.generator


def project_generators(d: Diagram, depth: int) -> dict:
    """Visible generator per explosion coordinate of the outer axes.

    Axes of height zero are squeezed out of the keys, so projections
    are invariant under taking identities.
    """
    if depth < 0 or depth > diagram_dimension(d):
        raise ValueError("projection depth must lie within the dimension")
    if depth == 0:
        return {(): visible_generator(d)}
    out = {}
    slices = all_slices(d)
    degenerate = len(d.cospans) == 0
    for idx, sl in enumerate(slices):
        comp = ("R", idx // 2) if idx % 2 == 0 else ("S", idx // 2)
        for key, g in project_generators(sl, depth - 1).items():
            out[key if degenerate else (comp,) + key] = g
    return out
