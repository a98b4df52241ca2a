"""Typechecking: every point of a diagram must have the neighbourhood
its generator was declared with.

The diagram is exploded to full depth.  Each fully singular coordinate
is a point of the diagram; its piece is the induced subgraph on every
node that flows into it (explosion edges always raise the singular
count, so this is the closed neighbourhood below the point).  The
piece collapses to a quotient which must match the collapsed globe of
the point's generator.  Degenerate directions disappear under
collapse, which is what lets an n-dimensional piece match the globe
of a lower-dimensional generator.

Invertible generators are matched without regard to leg orientation:
a bent wire has both of its legs entering the turning point from the
same side, so its quotient is the wire's with the forward/backward
distinction erased.
"""

from __future__ import annotations

from collections import defaultdict

from .collapse import collapse, quotients_equal
from .diagram import Diagram, KernelError, diagram_dimension
from .explode import ExplosionGraph, explode
from .interner import current_interner


class IllTypedError(KernelError):
    def __init__(self, location: tuple, generator, name: str):
        self.location = location
        self.generator = generator
        self.name = name
        super().__init__(
            f"ill-typed at {format_location(location)}: "
            f"expected neighbourhood of {name}"
        )


def format_location(coord: tuple) -> str:
    if not coord:
        return "*"
    return ".".join(f"{'s' if kind == 'S' else 'R'}{i}" for kind, i in coord)


def _coord_key(coord: tuple) -> tuple:
    return tuple(i for _, i in coord)


def atomic_pieces(d: Diagram) -> list:
    """(coordinate, piece graph) per point of the diagram.

    Points are the fully singular coordinates of the full-depth
    explosion, in coordinate order.
    """
    n = diagram_dimension(d)
    graph = explode(d, n)
    into = defaultdict(list)
    for e in graph.edges:
        into[e.dst].append(e.src)
    points = sorted(
        (c for c in graph.nodes if all(kind == "S" for kind, _ in c)),
        key=_coord_key,
    )
    pieces = []
    for coord in points:
        closure = {coord}
        stack = [coord]
        while stack:
            v = stack.pop()
            for u in into[v]:
                if u not in closure:
                    closure.add(u)
                    stack.append(u)
        sub = ExplosionGraph(
            graph.depth,
            {k: graph.nodes[k] for k in closure},
            tuple(e for e in graph.edges if e.src in closure and e.dst in closure),
        )
        pieces.append((coord, sub))
    return pieces


def canonical_neighbourhood(g, sig):
    """The collapsed globe of g: what a piece labelled g must look like."""
    entry = sig.entry(g)
    globe = entry.globe()

    def build():
        pieces = atomic_pieces(globe)
        if len(pieces) != 1:
            raise KernelError(f"globe of {entry.name} has {len(pieces)} points")
        return collapse(pieces[0][1]).quotient

    return current_interner().memoize("canonical-neighbourhood", [globe], build)


def typecheck(d: Diagram, sig) -> None:
    """Raise IllTypedError at the first point whose piece does not
    collapse to its generator's neighbourhood; raise SignatureError on
    generators the signature does not know."""
    n = diagram_dimension(d)
    for weight in explode(d, n).nodes.values():
        sig.entry(weight.generator)
    for coord, piece in atomic_pieces(d):
        g = piece.nodes[coord].generator
        entry = sig.entry(g)
        expected = canonical_neighbourhood(g, sig)
        got = collapse(piece).quotient
        if not quotients_equal(got, expected, oriented=not entry.invertible):
            raise IllTypedError(coord, g, entry.name)


def is_well_typed(d: Diagram, sig) -> bool:
    try:
        typecheck(d, sig)
    except IllTypedError:
        return False
    return True
