"""Seeded random builders shared by the property tests.

Diagrams are generated dimension-correct by construction: 1-diagrams
by a zigzag walk over generators, rewrites out of a diagram by packing
non-overlapping cones whose target legs are defined as the required
composites, and 2-diagrams by alternating a forward rewrite with a
backward sample into its target.
"""

from __future__ import annotations

import random

from zigzag.diagram import (
    Cospan,
    all_slices,
    forward_apply,
    mk_atom0,
    mk_cone,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
    mk_generator,
    mk_identity0,
    mk_rewriten,
    regular_slice,
    singular_slice,
)
from zigzag.globe import make_globe, reflect


class GenPool:
    """Allocates generators with unique ids, grouped by dimension."""

    def __init__(self, rng: random.Random, dims=(0, 1, 2), per_dim=3):
        self._next = 0
        self.by_dim = {}
        for d in dims:
            self.by_dim[d] = [self.fresh(d) for _ in range(per_dim)]

    def fresh(self, dimension: int):
        g = mk_generator(dimension, self._next)
        self._next += 1
        self.by_dim.setdefault(dimension, []).append(g)
        return g

    def pick(self, rng: random.Random, min_dim=0, max_dim=99):
        opts = [
            g
            for d, gs in self.by_dim.items()
            if min_dim <= d <= max_dim
            for g in gs
        ]
        return rng.choice(opts)


def rand_frame(rng: random.Random) -> int:
    return rng.randrange(-99, 100)


def _leg(rng, pool, src_gen, dst_gen):
    if src_gen == dst_gen and rng.random() < 0.5:
        return mk_identity0()
    return mk_atom0(src_gen, dst_gen, rand_frame(rng))


def rand_diagram1(rng: random.Random, pool: GenPool, heights: int):
    """A valid 1-diagram built by a zigzag walk."""
    cur = pool.pick(rng)
    src = mk_diagram0(cur)
    cospans = []
    for _ in range(heights):
        s = pool.pick(rng, min_dim=cur.dimension)
        f = _leg(rng, pool, cur, s)
        nxt = pool.pick(rng, max_dim=s.dimension)
        b = _leg(rng, pool, nxt, s)
        cospans.append(mk_cospan(f, b))
        cur = nxt
    return mk_diagramn(src, cospans)


def rand_rewrite1(rng: random.Random, pool: GenPool, d):
    """A valid 1-rewrite out of d, cones packed left to right.

    Every cone routes into a fresh generator with one shared frame, so
    the commutation laws hold by construction and no cone is identity
    shaped.
    """
    k = len(d.cospans)
    slices_of = all_slices(d)
    cones = []
    pos = 0
    while pos <= k:
        if rng.random() < 0.55:
            pos += 1
            continue
        m = rng.choice([0, 1, 1, 2, min(3, k - pos)])
        if pos + m > k:
            pos += 1
            continue
        involved = [slices_of[2 * pos].generator]
        involved += [slices_of[2 * (pos + p) + 1].generator for p in range(m)]
        involved.append(slices_of[2 * (pos + m)].generator)
        dmax = max(g.dimension for g in involved)
        h = pool.fresh(dmax)
        phi = rand_frame(rng)
        target = mk_cospan(
            mk_atom0(slices_of[2 * pos].generator, h, phi),
            mk_atom0(slices_of[2 * (pos + m)].generator, h, phi),
        )
        slc = [
            mk_atom0(slices_of[2 * (pos + p) + 1].generator, h, phi)
            for p in range(m)
        ]
        cones.append(mk_cone(pos, d.cospans[pos : pos + m], target, slc))
        pos += m + 1
    return mk_rewriten(1, cones)


def rand_into(rng: random.Random, d):
    """Sample (w, b) with b a rewrite from w into d.

    Heights of d are kept, duplicated through identity-shaped cones,
    or deleted where the neighbouring regular slices agree.
    """
    slices_of = all_slices(d)
    cospans = []
    cones = []
    for t, c in enumerate(d.cospans):
        roll = rng.random()
        deletable = slices_of[2 * t] == slices_of[2 * t + 2]
        if deletable and roll < 0.25:
            cones.append(mk_cone(len(cospans), (), c, ()))
        elif roll < 0.5:
            cones.append(mk_cone(len(cospans), (c,), c, (mk_identity0(),)))
            cospans.append(c)
        else:
            cospans.append(c)
    w = mk_diagramn(d.source, cospans)
    return w, mk_rewriten(1, cones)


def rand_diagram2(rng: random.Random, pool: GenPool, heights: int, width: int = 3):
    """A valid 2-diagram: forward rewrites paired with backward samples."""
    reg = rand_diagram1(rng, pool, rng.randrange(width + 1))
    src = reg
    cospans = []
    for _ in range(heights):
        f = rand_rewrite1(rng, pool, reg)
        s = forward_apply(reg, f)
        reg, b = rand_into(rng, s)
        cospans.append(mk_cospan(f, b))
    return mk_diagramn(src, cospans)


def make_counit(x, y, f):
    """The cap diagram bending a wire f: x -> y over its inverse.

    Source is f then f reversed; the single singular slice holds the
    bent wire, and the target is the identity on x.
    """
    wire = make_globe(mk_diagram0(x), mk_diagram0(y), f)
    c_f = wire.cospans[0]
    c_inv = reflect(wire).cospans[0]
    cap = mk_cospan(c_f.forward, c_f.forward)
    top = mk_rewriten(
        1, [mk_cone(0, (c_f, c_inv), cap, (mk_identity0(), mk_identity0()))]
    )
    bottom = mk_rewriten(1, [mk_cone(0, (), cap, ())])
    src = mk_diagramn(mk_diagram0(x), (c_f, c_inv))
    return mk_diagramn(src, [mk_cospan(top, bottom)])


def rand_chain1(rng: random.Random, pool: GenPool, length: int, heights: int = 4):
    """(d0, [r1..rk]) with each r valid out of the previous target."""
    d = rand_diagram1(rng, pool, heights)
    chain = []
    cur = d
    for _ in range(length):
        r = rand_rewrite1(rng, pool, cur)
        chain.append(r)
        cur = forward_apply(cur, r)
    return d, chain
