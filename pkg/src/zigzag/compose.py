"""Sequential composition of rewrites and deep validity checking."""

from __future__ import annotations

from .diagram import (
    ApplicationError,
    Atom0,
    CompositionError,
    Diagram,
    Identity0,
    Rewrite,
    RewriteN,
    check_diagram,
    cone_target_index,
    forward_apply,
    is_identity_rewrite,
    mk_atom0,
    mk_cone,
    mk_rewriten,
    rewrite_dimension,
    identity_rewrite,
    singular_slice,
)


def strip_frames(r: Rewrite) -> Rewrite:
    """Erase atom frames.  Frames decorate atoms for collapse and
    layout; the categorical laws hold modulo them."""
    if isinstance(r, Atom0):
        return mk_atom0(r.source, r.target, 0)
    if isinstance(r, Identity0):
        return r
    return mk_rewriten(
        r.dimension,
        [
            mk_cone(
                c.index,
                [_strip_cospan(cs) for cs in c.source],
                _strip_cospan(c.target),
                [strip_frames(s) for s in c.slices],
            )
            for c in r.cones
        ],
    )


def _strip_cospan(cs):
    from .diagram import mk_cospan

    return mk_cospan(strip_frames(cs.forward), strip_frames(cs.backward))


def strip_diagram(d: Diagram):
    """The diagram with every atom frame erased, for comparisons that
    should not care how construction allocated frames."""
    from .diagram import Diagram0, mk_diagramn

    if isinstance(d, Diagram0):
        return d
    return mk_diagramn(
        strip_diagram(d.source),
        [_strip_cospan(cs) for cs in d.cospans],
    )


def compose(r1: Rewrite, r2: Rewrite) -> Rewrite:
    """The composite rewrite `r1 then r2`.

    r1 must end where r2 starts.  For dimension 0 the composite keeps
    the second atom's frame; for higher dimensions cones of r2 absorb
    the cones of r1 whose image lands in their source range.  Cones
    that turn out to do nothing are dropped, so composing with an
    identity rewrite returns the other operand unchanged.
    """
    if isinstance(r1, RewriteN) or isinstance(r2, RewriteN):
        if not (isinstance(r1, RewriteN) and isinstance(r2, RewriteN)):
            raise CompositionError("cannot compose rewrites of different dimension")
        if r1.dimension != r2.dimension:
            raise CompositionError("cannot compose rewrites of different dimension")
        return _compose_n(r1, r2)
    if isinstance(r1, Identity0):
        return r2
    if isinstance(r2, Identity0):
        return r1
    if r1.target != r2.source:
        raise CompositionError("atoms do not share the middle generator")
    return mk_atom0(r1.source, r2.target, r2.frame)


def _compose_n(r1: RewriteN, r2: RewriteN) -> RewriteN:
    cones1 = r1.cones
    t1 = [cone_target_index(r1, j) for j in range(len(cones1))]
    out = []
    i = 0
    shift = 0  # middle height -> source height offset from passed r1 cones
    for c2 in r2.cones:
        a = c2.index
        while i < len(cones1) and t1[i] < a:
            out.append(cones1[i])
            shift += len(cones1[i].source) - 1
            i += 1
        start = a + shift
        src = []
        slc = []
        for v in range(a, a + len(c2.source)):
            l2 = c2.slices[v - a]
            if i < len(cones1) and t1[i] == v:
                c1 = cones1[i]
                src.extend(c1.source)
                for l1 in c1.slices:
                    slc.append(compose(l1, l2))
                shift += len(c1.source) - 1
                i += 1
            else:
                src.append(c2.source[v - a])
                slc.append(l2)
        out.append(mk_cone(start, src, c2.target, slc))
    while i < len(cones1):
        out.append(cones1[i])
        i += 1
    return mk_rewriten(r1.dimension, out)


def check_rewrite(d: Diagram, r: Rewrite) -> Diagram:
    """Verify r is a valid rewrite out of d and return its target.

    Beyond the structural match that forward application performs,
    this checks that every cone commutes: the target cospan legs must
    factor through the slice rewrites, and slices must themselves be
    valid on the singular slices they act on.
    """
    result = forward_apply(d, r)
    check_diagram(result)
    if isinstance(r, RewriteN):
        for c in r.cones:
            m = len(c.source)

            def eq(a, b):
                return strip_frames(a) == strip_frames(b)

            if m == 0:
                if not eq(c.target.forward, c.target.backward):
                    raise ApplicationError("an inserted height must have equal legs")
            else:
                if not eq(compose(c.source[0].forward, c.slices[0]), c.target.forward):
                    raise ApplicationError("cone fails to commute on its left leg")
                for p in range(m - 1):
                    left = compose(c.source[p].backward, c.slices[p])
                    right = compose(c.source[p + 1].forward, c.slices[p + 1])
                    if not eq(left, right):
                        raise ApplicationError("cone fails to commute between slices")
                if not eq(compose(c.source[m - 1].backward, c.slices[m - 1]), c.target.backward):
                    raise ApplicationError("cone fails to commute on its right leg")
            for p in range(m):
                check_rewrite(singular_slice(d, c.index + p), c.slices[p])
    return result
