"""Zigzag encoding of n-dimensional diagrams and their rewrites.

An n-diagram is a list of cospans of (n-1)-rewrites over a source
(n-1)-diagram.  Regular slices r_0..r_k and singular slices s_0..s_{k-1}
interleave as r_0 -f_0-> s_0 <-b_0- r_1 -f_1-> s_1 ...  A rewrite of
dimension n >= 1 is a sparse list of cones, each replacing a contiguous
block of cospans by a single cospan; dimension-0 rewrites relabel the
single generator at a point.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .interner import Interned, current_interner


class KernelError(Exception):
    """Base for all domain failures raised by the kernel."""


class ApplicationError(KernelError):
    """A rewrite does not match the diagram it is applied to."""


class CompositionError(KernelError):
    """Two rewrites do not share the middle diagram."""


# ---------------------------------------------------------------------------
# values


@dataclass(frozen=True, repr=False)
class Generator(Interned):
    dimension: int
    id: int

    def _intern_scalars(self):
        return (self.dimension, self.id)

    def _intern_rebuild(self, children):
        return self

    def __repr__(self):
        return f"Generator(d{self.dimension}#{self.id})"


class Rewrite(Interned):
    """Marker base: Identity0, Atom0 or RewriteN."""


@dataclass(frozen=True, repr=False)
class Identity0(Rewrite):
    def _intern_rebuild(self, children):
        return self

    def __repr__(self):
        return "Identity0()"


@dataclass(frozen=True, repr=False)
class Atom0(Rewrite):
    source: Generator
    target: Generator
    frame: int

    def _intern_scalars(self):
        return (self.frame,)

    def _intern_children(self):
        return (self.source, self.target)

    def _intern_rebuild(self, children):
        return Atom0(children[0], children[1], self.frame)

    def __repr__(self):
        return f"Atom0({self.source!r}->{self.target!r}, frame={self.frame})"


@dataclass(frozen=True, repr=False)
class Cospan(Interned):
    forward: Rewrite
    backward: Rewrite

    def _intern_children(self):
        return (self.forward, self.backward)

    def _intern_rebuild(self, children):
        return Cospan(children[0], children[1])

    def __repr__(self):
        return f"Cospan({self.forward!r}, {self.backward!r})"


@dataclass(frozen=True, repr=False)
class Cone(Interned):
    """Replaces cospans [index, index+len(source)) by the target cospan.

    slices[i] rewrites the singular slice under source[i] into the
    singular slice under target, so len(slices) == len(source).
    """

    index: int
    source: tuple
    target: Cospan
    slices: tuple

    def _intern_scalars(self):
        return (self.index, len(self.source))

    def _intern_children(self):
        return (*self.source, self.target, *self.slices)

    def _intern_rebuild(self, children):
        m = len(self.source)
        return Cone(self.index, children[:m], children[m], children[m + 1 :])

    def __repr__(self):
        return f"Cone(at {self.index}, {len(self.source)}->1)"


@dataclass(frozen=True, repr=False)
class RewriteN(Rewrite):
    dimension: int
    cones: tuple

    def _intern_scalars(self):
        return (self.dimension,)

    def _intern_children(self):
        return self.cones

    def _intern_rebuild(self, children):
        return RewriteN(self.dimension, children)

    def __repr__(self):
        return f"RewriteN(dim={self.dimension}, cones={len(self.cones)})"


class Diagram(Interned):
    """Marker base: Diagram0 or DiagramN."""


@dataclass(frozen=True, repr=False)
class Diagram0(Diagram):
    generator: Generator

    def _intern_children(self):
        return (self.generator,)

    def _intern_rebuild(self, children):
        return Diagram0(children[0])

    def __repr__(self):
        return f"Diagram0({self.generator!r})"


@dataclass(frozen=True, repr=False)
class DiagramN(Diagram):
    dimension: int
    source: Diagram
    cospans: tuple

    def _intern_scalars(self):
        return (self.dimension,)

    def _intern_children(self):
        return (self.source, *self.cospans)

    def _intern_rebuild(self, children):
        return DiagramN(self.dimension, children[0], children[1:])

    def __repr__(self):
        return f"DiagramN(dim={self.dimension}, heights={len(self.cospans)})"


AnyRewrite = Union[Identity0, Atom0, RewriteN]
AnyDiagram = Union[Diagram0, DiagramN]


# ---------------------------------------------------------------------------
# dimensions


def rewrite_dimension(r: Rewrite) -> int:
    if isinstance(r, RewriteN):
        return r.dimension
    return 0


def diagram_dimension(d: Diagram) -> int:
    if isinstance(d, DiagramN):
        return d.dimension
    return 0


def is_identity_rewrite(r: Rewrite) -> bool:
    if isinstance(r, Identity0):
        return True
    return isinstance(r, RewriteN) and len(r.cones) == 0


def cone_dimension(c: Cone) -> int:
    return rewrite_dimension(c.target.forward)


def is_identity_cone(c: Cone) -> bool:
    """A cone that carries one height onto itself unchanged.

    Such cones denote the same height map as no cone at all, so
    rewrites are kept in a normal form without them."""
    return (
        len(c.source) == 1
        and c.source[0] == c.target
        and is_identity_rewrite(c.slices[0])
    )


# ---------------------------------------------------------------------------
# factories: every value is canonicalized through the current interner


def mk_generator(dimension: int, id: int) -> Generator:
    if dimension < 0:
        raise ValueError("generator dimension must be >= 0")
    return current_interner().node(Generator(dimension, id))


def mk_identity0() -> Identity0:
    return current_interner().node(Identity0())


def mk_atom0(source: Generator, target: Generator, frame: int) -> Atom0:
    if source.dimension > target.dimension:
        raise ValueError("atom must not lower the generator dimension")
    return current_interner().node(Atom0(source, target, frame))


def mk_cospan(forward: Rewrite, backward: Rewrite) -> Cospan:
    if rewrite_dimension(forward) != rewrite_dimension(backward):
        raise ValueError("cospan legs must have equal dimension")
    return current_interner().node(Cospan(forward, backward))


def mk_cone(index: int, source, target: Cospan, slices) -> Cone:
    source = tuple(source)
    slices = tuple(slices)
    if index < 0:
        raise ValueError("cone index must be >= 0")
    if len(slices) != len(source):
        raise ValueError("cone needs one slice per source cospan")
    dim = rewrite_dimension(target.forward)
    for cs in source:
        if rewrite_dimension(cs.forward) != dim:
            raise ValueError("cone source cospan has wrong dimension")
    for s in slices:
        if rewrite_dimension(s) != dim:
            raise ValueError("cone slice has wrong dimension")
    return current_interner().node(Cone(index, source, target, slices))


def mk_rewriten(dimension: int, cones) -> RewriteN:
    cones = tuple(cones)
    if dimension < 1:
        raise ValueError("RewriteN dimension must be >= 1")
    floor = 0
    for c in cones:
        if c.index < floor:
            raise ValueError("cones must not overlap and must stay ordered")
        if cone_dimension(c) != dimension - 1:
            raise ValueError("cone dimension must be one below the rewrite")
        floor = c.index + len(c.source)
    # normal form: identity-shaped cones say nothing and are dropped,
    # so equal rewrites always have equal representations
    cones = tuple(c for c in cones if not is_identity_cone(c))
    return current_interner().node(RewriteN(dimension, cones))


def mk_diagram0(generator: Generator) -> Diagram0:
    return current_interner().node(Diagram0(generator))


def mk_diagramn(source: Diagram, cospans) -> DiagramN:
    cospans = tuple(cospans)
    dim = diagram_dimension(source) + 1
    for cs in cospans:
        if rewrite_dimension(cs.forward) != dim - 1:
            raise ValueError("cospan dimension must match the source diagram")
    return current_interner().node(DiagramN(dim, source, cospans))


def identity_rewrite(dimension: int) -> Rewrite:
    if dimension == 0:
        return mk_identity0()
    return mk_rewriten(dimension, ())


def identity_diagram(d: Diagram) -> DiagramN:
    """The (n+1)-diagram with no singular heights over d."""
    return mk_diagramn(d, ())


# ---------------------------------------------------------------------------
# rewrite application


def forward_apply(d: Diagram, r: Rewrite) -> Diagram:
    """Push d through r (d must be the source side of r)."""
    if isinstance(r, Identity0):
        if not isinstance(d, Diagram0):
            raise ApplicationError("dimension mismatch in forward application")
        return d
    if isinstance(r, Atom0):
        if not isinstance(d, Diagram0) or d.generator != r.source:
            raise ApplicationError("atom source does not match the diagram")
        return mk_diagram0(r.target)
    if not isinstance(d, DiagramN) or d.dimension != r.dimension:
        raise ApplicationError("dimension mismatch in forward application")
    out = []
    pos = 0
    for c in r.cones:
        m = len(c.source)
        if c.index + m > len(d.cospans):
            raise ApplicationError("cone reaches past the end of the diagram")
        out.extend(d.cospans[pos : c.index])
        if d.cospans[c.index : c.index + m] != c.source:
            raise ApplicationError("cone source does not match the diagram")
        out.append(c.target)
        pos = c.index + m
    out.extend(d.cospans[pos:])
    return mk_diagramn(d.source, out)


def backward_apply(d: Diagram, r: Rewrite) -> Diagram:
    """Recover the source side of r from its target side d."""
    if isinstance(r, Identity0):
        if not isinstance(d, Diagram0):
            raise ApplicationError("dimension mismatch in backward application")
        return d
    if isinstance(r, Atom0):
        if not isinstance(d, Diagram0) or d.generator != r.target:
            raise ApplicationError("atom target does not match the diagram")
        return mk_diagram0(r.source)
    if not isinstance(d, DiagramN) or d.dimension != r.dimension:
        raise ApplicationError("dimension mismatch in backward application")
    out = []
    pos = 0
    shift = 0
    for c in r.cones:
        t = c.index - shift
        if t >= len(d.cospans):
            raise ApplicationError("cone reaches past the end of the diagram")
        out.extend(d.cospans[pos:t])
        if d.cospans[t] != c.target:
            raise ApplicationError("cone target does not match the diagram")
        out.extend(c.source)
        pos = t + 1
        shift += len(c.source) - 1
    out.extend(d.cospans[pos:])
    return mk_diagramn(d.source, out)


# ---------------------------------------------------------------------------
# slices


def all_slices(d: DiagramN) -> tuple:
    """(r_0, s_0, r_1, s_1, ..., r_k) for a diagram with k heights."""
    itn = current_interner()
    return itn.memoize("all_slices", [d], lambda: _compute_slices(d))


def _compute_slices(d: DiagramN) -> tuple:
    out = [d.source]
    for cs in d.cospans:
        s = forward_apply(out[-1], cs.forward)
        out.append(s)
        out.append(backward_apply(s, cs.backward))
    return tuple(out)


def regular_slice(d: DiagramN, i: int) -> Diagram:
    return all_slices(d)[2 * i]


def singular_slice(d: DiagramN, i: int) -> Diagram:
    return all_slices(d)[2 * i + 1]


def singular_slices(d: DiagramN) -> tuple:
    return all_slices(d)[1::2]


def regular_slices(d: DiagramN) -> tuple:
    return all_slices(d)[0::2]


def diagram_source(d: DiagramN) -> Diagram:
    return d.source


def diagram_target(d: DiagramN) -> Diagram:
    return all_slices(d)[-1]


def check_diagram(d: Diagram) -> None:
    """Force every slice at every level, surfacing any inconsistency."""
    if isinstance(d, Diagram0):
        return
    for s in all_slices(d):
        check_diagram(s)


# ---------------------------------------------------------------------------
# height bookkeeping along a rewrite


def rewrite_source_height(r: RewriteN, target_height: int) -> int:
    """Number of source heights for a rewrite into a given target height."""
    return target_height + sum(len(c.source) - 1 for c in r.cones)


def singular_image(r: RewriteN, u: int) -> int:
    """Map a singular height of the source diagram into the target."""
    delta = 0
    for c in r.cones:
        m = len(c.source)
        if u < c.index:
            break
        if u < c.index + m:
            return c.index + delta
        delta += 1 - m
    return u + delta


def cone_target_index(r: RewriteN, j: int) -> int:
    """Index of cone j's target cospan in the target diagram."""
    return r.cones[j].index - sum(len(c.source) - 1 for c in r.cones[:j])


def regular_preimage(r: RewriteN, v: int) -> int:
    """Map a regular level of the target diagram back into the source.

    The regular slice at the preimage equals the regular slice at v.
    """
    out = v
    for j, c in enumerate(r.cones):
        if cone_target_index(r, j) < v:
            out += len(c.source) - 1
        else:
            break
    return out


def slice_rewrite(r: RewriteN, u: int) -> Rewrite:
    """The rewrite r induces between the singular slices at height u
    of its source and at singular_image(r, u) of its target."""
    for c in r.cones:
        if c.index <= u < c.index + len(c.source):
            return c.slices[u - c.index]
        if u < c.index:
            break
    return identity_rewrite(r.dimension - 1)
