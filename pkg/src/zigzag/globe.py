"""Globe construction and boundary attachment.

The globe of a generator g with boundary s -> t is the diagram with a
single singular height whose content is a "pillar": every slice of s
is rewritten into a copy of g, and symmetrically for t.  Frames on the
leaf atoms record which wall of the pillar an atom belongs to: the
input side counts -1, -2, ... and the output side +1, +2, ... in
construction order, so all leaves are distinct.
"""

from __future__ import annotations

from .diagram import (
    Diagram,
    Diagram0,
    DiagramN,
    Generator,
    KernelError,
    diagram_dimension,
    diagram_source,
    diagram_target,
    mk_atom0,
    mk_cone,
    mk_cospan,
    mk_diagramn,
    mk_rewriten,
    regular_slice,
    singular_slices,
    Rewrite,
    RewriteN,
    Cospan,
)
from .interner import current_interner


class BoundaryError(KernelError):
    """Boundaries do not line up for a globe or an attachment."""


class _Alloc:
    def __init__(self, step: int):
        self.step = step
        self.value = 0

    def next(self) -> int:
        self.value += self.step
        return self.value


def make_globe(s: Diagram, t: Diagram, g: Generator) -> DiagramN:
    """The (n+1)-diagram presenting g with source s and target t."""
    n = diagram_dimension(s)
    if diagram_dimension(t) != n:
        raise BoundaryError("globe boundaries must have equal dimension")
    if g.dimension != n + 1:
        raise BoundaryError("generator dimension must exceed the boundary by one")
    if n >= 1:
        if diagram_source(s) != diagram_source(t) or diagram_target(s) != diagram_target(t):
            raise BoundaryError("globe boundaries must share their own boundary")
    neg = _Alloc(-1)
    pos = _Alloc(+1)
    pillars: dict = {}
    itn = current_interner()

    def pillar(bs: Diagram, bt: Diagram) -> Cospan:
        # one shared cospan per boundary pair, so both walls meet in it
        key = (itn.nid(bs), itn.nid(bt))
        got = pillars.get(key)
        if got is None:
            got = mk_cospan(leg(bs, neg), leg(bt, pos))
            pillars[key] = got
        return got

    def leg(b: Diagram, alloc: _Alloc) -> Rewrite:
        if isinstance(b, Diagram0):
            return mk_atom0(b.generator, g, alloc.next())
        target = pillar(diagram_source(b), diagram_target(b))
        slices = [leg(si, alloc) for si in singular_slices(b)]
        return mk_rewriten(
            b.dimension, [mk_cone(0, b.cospans, target, slices)]
        )

    forward = leg(s, neg)
    backward = leg(t, pos)
    return mk_diagramn(s, [mk_cospan(forward, backward)])


def whisker(r: Rewrite, offset: int) -> Rewrite:
    """Shift every top-level cone of r to act `offset` heights later."""
    if not isinstance(r, RewriteN) or offset == 0:
        return r
    return mk_rewriten(
        r.dimension,
        [mk_cone(c.index + offset, c.source, c.target, c.slices) for c in r.cones],
    )


def _window(d: DiagramN, offset: int, heights: int) -> DiagramN:
    return mk_diagramn(regular_slice(d, offset), d.cospans[offset : offset + heights])


def attach(host: Diagram, boundary: str, piece: Diagram, offset: int = 0) -> DiagramN:
    """Glue `piece` onto the source or target boundary of `host`.

    Both diagrams must have the same dimension n.  The facing boundary
    of `piece` (its source when attaching at the target, and vice
    versa) must occur in the matching boundary of `host` at `offset`;
    lower levels must agree at full width.
    """
    n = diagram_dimension(host)
    if diagram_dimension(piece) != n or n == 0:
        raise BoundaryError("attachment needs matching dimensions >= 1")
    if boundary not in ("source", "target"):
        raise BoundaryError("boundary must be 'source' or 'target'")
    if boundary == "target":
        face = diagram_target(host)
        glue = diagram_source(piece)
    else:
        face = diagram_source(host)
        glue = diagram_target(piece)

    if isinstance(face, Diagram0):
        if face != glue:
            raise BoundaryError("attachment boundary does not match")
        shifted = piece.cospans
        new_source = piece.source if boundary == "source" else host.source
    else:
        h = len(glue.cospans)
        if offset < 0 or offset + h > len(face.cospans):
            raise BoundaryError("attachment offset out of range")
        if _window(face, offset, h) != glue:
            raise BoundaryError("attachment boundary does not match")
        shifted = tuple(
            mk_cospan(whisker(c.forward, offset), whisker(c.backward, offset))
            for c in piece.cospans
        )
        if boundary == "source":
            inner = diagram_source(piece)
            new_source = mk_diagramn(
                face.source,
                face.cospans[:offset]
                + inner.cospans
                + face.cospans[offset + h :],
            )
        else:
            new_source = host.source

    if boundary == "target":
        return mk_diagramn(host.source, host.cospans + shifted)
    return mk_diagramn(new_source, shifted + host.cospans)


def reflect(d: DiagramN) -> DiagramN:
    """Flip the outermost direction: source and target swap roles."""
    return mk_diagramn(
        diagram_target(d),
        [mk_cospan(c.backward, c.forward) for c in reversed(d.cospans)],
    )
