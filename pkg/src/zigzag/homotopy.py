"""Homotopy moves: contraction and expansion of diagram heights.

A contraction merges a range of adjacent singular heights into a single
height whose content is the colimit of the connecting zigzag of slices.
An expansion splits one singular height in two by factoring its cospan
legs around an interior height of the content.  Both return the moved
diagram together with a rewrite witnessing the move; the witness always
points from the taller diagram to the shorter one.

The colimit of a graph of diagrams is computed recursively: heights of
the result are equivalence classes of the nodes' singular heights,
identified along the edges and ordered by the within-node order; the
content of each class is the colimit of the class's slices.  At
dimension zero the colimit is the shared maximum of the label order,
with cocone legs propagated by composition.
"""

from __future__ import annotations

from collections import defaultdict

from .collapse import UnionFind
from .compose import check_rewrite, compose, strip_frames
from .diagram import (
    ApplicationError,
    CompositionError,
    Cone,
    Cospan,
    Diagram0,
    DiagramN,
    KernelError,
    RewriteN,
    all_slices,
    backward_apply,
    cone_target_index,
    diagram_dimension,
    forward_apply,
    identity_rewrite,
    is_identity_rewrite,
    mk_cone,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
    mk_rewriten,
    regular_preimage,
    regular_slice,
    singular_image,
    singular_slice,
    slice_rewrite,
)

BIASES = (None, "left", "right")


class ContractionError(KernelError):
    pass


class ExpansionError(KernelError):
    pass


# ---------------------------------------------------------------------------
# colimits of diagram graphs


def colimit(nodes, edges, bias=None):
    """Colimit of a connected graph of same-dimension diagrams.

    ``edges`` is a list of ``(src, dst, rewrite)`` triples with the
    rewrite mapping ``nodes[src]`` to ``nodes[dst]``.  Returns the
    colimit diagram and one cocone leg per node; for every edge the
    source leg equals the edge composed with the destination leg.
    ``bias`` breaks ties when the heights of the result admit more
    than one order: ``"right"`` puts content from lower positions
    first, ``"left"`` the opposite, ``None`` refuses to choose.
    """
    if bias not in BIASES:
        raise ContractionError(f"unknown bias {bias!r}")
    if not nodes:
        raise ContractionError("colimit of an empty graph")
    dims = {diagram_dimension(d) for d in nodes}
    if len(dims) != 1:
        raise ContractionError("colimit nodes must share a dimension")
    for src, dst, _ in edges:
        if not (0 <= src < len(nodes) and 0 <= dst < len(nodes)):
            raise ContractionError("colimit edge endpoint out of range")
    if dims.pop() == 0:
        return _colimit_base(nodes, edges)
    return _colimit_recursive(nodes, edges, bias)


def _colimit_base(nodes, edges):
    """Dimension-zero colimit: everything maps into a shared maximum."""
    labels = [d.generator for d in nodes]
    uf = UnionFind(range(len(nodes)))
    for src, dst, r in edges:
        if is_identity_rewrite(r):
            if nodes[src] != nodes[dst]:
                raise ContractionError("identity edge between distinct points")
            uf.union(src, dst)

    out = defaultdict(list)
    arcs = set()
    for src, dst, r in edges:
        if is_identity_rewrite(r):
            continue
        cs, cd = uf.find(src), uf.find(dst)
        if cs == cd:
            raise ContractionError("a point maps into its own merge class")
        out[cs].append((cd, r))
        arcs.add((cs, cd))

    classes = sorted({uf.find(i) for i in range(len(nodes))})
    indeg = {c: 0 for c in classes}
    for _, cd in arcs:
        indeg[cd] += 1
    queue = [c for c in classes if indeg[c] == 0]
    topo = []
    while queue:
        c = queue.pop()
        topo.append(c)
        for cd in {d for (s, d) in arcs if s == c}:
            indeg[cd] -= 1
            if indeg[cd] == 0:
                queue.append(cd)
    if len(topo) != len(classes):
        raise ContractionError("cyclic point maps have no colimit")

    maxima = [c for c in classes if not out[c]]
    apex = labels[maxima[0]]
    for c in maxima:
        if labels[c] != apex:
            raise ContractionError(
                f"maximal points differ: {labels[c]} vs {apex}"
            )

    legs = {}
    for c in reversed(topo):
        if not out[c]:
            legs[c] = identity_rewrite(0)
            continue
        cands = [compose(r, legs[cd]) for cd, r in out[c]]
        for cand in cands[1:]:
            if cand != cands[0]:
                raise ContractionError("cocone legs disagree at a point")
        legs[c] = cands[0]
    return mk_diagram0(apex), [legs[uf.find(i)] for i in range(len(nodes))]


def _tarjan(vertices, adj):
    """Strongly connected components, iterative."""
    index = {}
    low = {}
    on_stack = set()
    stack = []
    sccs = []
    counter = [0]
    for root in vertices:
        if root in index:
            continue
        work = [(root, iter(sorted(adj.get(root, ()))))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter[0]
                    counter[0] += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(sorted(adj.get(w, ())))))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(comp)
    return sccs


def _linearize(classes, arcs, members, bias):
    """Order the height classes; ``bias`` resolves genuine ties."""
    indeg = {c: 0 for c in classes}
    succ = defaultdict(set)
    for a, b in arcs:
        if b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    available = {c for c in classes if indeg[c] == 0}
    order = []
    key = {c: min(members[c]) for c in classes}
    while available:
        if len(available) == 1:
            pick = next(iter(available))
        elif bias == "right":
            pick = min(available, key=lambda c: key[c])
        elif bias == "left":
            pick = max(available, key=lambda c: key[c])
        else:
            raise ContractionError(
                "height order is ambiguous; a left or right bias is needed"
            )
        available.discard(pick)
        order.append(pick)
        for nxt in succ[pick]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                available.add(nxt)
    if len(order) != len(classes):
        raise ContractionError("height order has a cycle after condensation")
    return order


def _colimit_recursive(nodes, edges, bias):
    dim = nodes[0].dimension
    source = nodes[0].source
    for d in nodes:
        if d.source != source:
            raise ContractionError("colimit nodes must share a source")
    heights = [len(d.cospans) for d in nodes]

    uf = UnionFind([(i, u) for i, h in enumerate(heights) for u in range(h)])
    for src, dst, r in edges:
        for u in range(heights[src]):
            uf.union((src, u), (dst, singular_image(r, u)))

    def order_arcs():
        arcs = set()
        for i, h in enumerate(heights):
            for u in range(h - 1):
                a, b = uf.find((i, u)), uf.find((i, u + 1))
                if a != b:
                    arcs.add((a, b))
        return arcs

    arcs = order_arcs()
    adj = defaultdict(set)
    for a, b in arcs:
        adj[a].add(b)
    for comp in _tarjan(sorted({uf.find((i, u)) for i, h in enumerate(heights) for u in range(h)}), adj):
        for other in comp[1:]:
            uf.union(comp[0], other)
    arcs = order_arcs()

    members = defaultdict(list)
    for i, h in enumerate(heights):
        for u in range(h):
            members[uf.find((i, u))].append((i, u))
    for ms in members.values():
        ms.sort()
    order = _linearize(sorted(members), arcs, members, bias)

    # Per-class recursive content, gluing consecutive in-node heights
    # through their regular slice and crossing edges through their
    # slice rewrites.
    sublegs = {}
    contents = []
    for cls in order:
        sub_nodes = []
        sub_ids = {}
        for i, u in members[cls]:
            sub_ids[(i, u)] = len(sub_nodes)
            sub_nodes.append(singular_slice(nodes[i], u))
        sub_edges = []
        for i, u in members[cls]:
            if (i, u + 1) in sub_ids:
                glue = len(sub_nodes)
                sub_nodes.append(regular_slice(nodes[i], u + 1))
                sub_edges.append((glue, sub_ids[(i, u)], nodes[i].cospans[u].backward))
                sub_edges.append((glue, sub_ids[(i, u + 1)], nodes[i].cospans[u + 1].forward))
        for src, dst, r in edges:
            for u in range(heights[src]):
                if (src, u) in sub_ids:
                    img = singular_image(r, u)
                    sub_edges.append((sub_ids[(src, u)], sub_ids[(dst, img)], slice_rewrite(r, u)))
        content, legs = colimit(sub_nodes, sub_edges, bias)
        contents.append(content)
        for key, idx in sub_ids.items():
            sublegs[key] = legs[idx]

    runs = defaultdict(list)
    for cls in order:
        for i, u in members[cls]:
            runs[(i, cls)].append(u)

    cospans = []
    for cls in order:
        fwd = bwd = None
        inserted = False
        for i in range(len(nodes)):
            run = runs.get((i, cls))
            if not run:
                inserted = True
                continue
            f = compose(nodes[i].cospans[run[0]].forward, sublegs[(i, run[0])])
            b = compose(nodes[i].cospans[run[-1]].backward, sublegs[(i, run[-1])])
            if fwd is None:
                fwd, bwd = f, b
            elif strip_frames(f) != strip_frames(fwd) or strip_frames(b) != strip_frames(bwd):
                raise ContractionError("cocone legs disagree across a height")
        if inserted and strip_frames(fwd) != strip_frames(bwd):
            raise ContractionError("an inserted height must have equal legs")
        cospans.append(mk_cospan(fwd, bwd))
    out = mk_diagramn(source, tuple(cospans))

    legs = []
    for i in range(len(nodes)):
        cones = []
        pos = 0
        for v, cls in enumerate(order):
            run = runs.get((i, cls), [])
            cone = mk_cone(
                pos,
                tuple(nodes[i].cospans[u] for u in run),
                out.cospans[v],
                tuple(sublegs[(i, u)] for u in run),
            )
            pos += len(run)
            cones.append(cone)
        legs.append(mk_rewriten(dim, tuple(cones)))
    return out, legs


# ---------------------------------------------------------------------------
# contraction


def contract(diagram, lo, hi, bias=None):
    """Merge singular heights ``[lo, hi)`` into one.

    Returns ``(contracted, witness)`` with ``witness`` mapping the
    input onto the contracted diagram.
    """
    if not isinstance(diagram, DiagramN):
        raise ContractionError("only positive-dimensional diagrams contract")
    n = len(diagram.cospans)
    if not (0 <= lo < hi <= n) or hi - lo < 2:
        raise ContractionError(f"bad contraction range [{lo}, {hi}) for {n} heights")

    nodes = list(all_slices(diagram))[2 * lo : 2 * hi + 1]
    edges = []
    for t, u in enumerate(range(lo, hi)):
        edges.append((2 * t, 2 * t + 1, diagram.cospans[u].forward))
        edges.append((2 * t + 2, 2 * t + 1, diagram.cospans[u].backward))
    content, legs = colimit(nodes, edges, bias)

    cone = mk_cone(
        lo,
        diagram.cospans[lo:hi],
        mk_cospan(legs[0], legs[-1]),
        tuple(legs[1::2]),
    )
    witness = mk_rewriten(diagram.dimension, (cone,))
    try:
        out = forward_apply(diagram, witness)
        check_rewrite(diagram, witness)
    except (ApplicationError, CompositionError) as e:
        raise ContractionError(f"contraction witness failed validation: {e}") from e
    return out, witness


# ---------------------------------------------------------------------------
# expansion


def _shift_cone(cone, delta):
    if delta == 0:
        return cone
    return mk_cone(cone.index + delta, cone.source, cone.target, cone.slices)


def expand(diagram, height, split):
    """Split singular height ``height`` before content height ``split``.

    The cospan legs factor through the split: cones aimed below it
    fire in the lower half, the rest in the upper half.  Returns
    ``(expanded, witness)`` with ``witness`` mapping the expanded
    diagram back onto the input.
    """
    if not isinstance(diagram, DiagramN) or diagram.dimension < 2:
        raise ExpansionError("expansion needs at least two dimensions")
    if not (0 <= height < len(diagram.cospans)):
        raise ExpansionError(f"no singular height {height}")
    content = singular_slice(diagram, height)
    q = len(content.cospans)
    if not (0 < split < q):
        raise ExpansionError(f"split {split} is not interior to {q} heights")

    f = diagram.cospans[height].forward
    b = diagram.cospans[height].backward
    below = regular_slice(diagram, height)
    above = regular_slice(diagram, height + 1)

    a = sum(1 for j in range(len(f.cones)) if cone_target_index(f, j) < split)
    c = sum(1 for j in range(len(b.cones)) if cone_target_index(b, j) < split)

    try:
        f_lo = mk_rewriten(f.dimension, f.cones[:a])
        lower = forward_apply(below, f_lo)
        delta = sum(1 - len(cn.source) for cn in f.cones[:a])
        into_lower = mk_rewriten(f.dimension, tuple(_shift_cone(cn, delta) for cn in f.cones[a:]))

        b_hi = mk_rewriten(b.dimension, b.cones[c:])
        upper = forward_apply(above, b_hi)
        into_upper = mk_rewriten(b.dimension, b.cones[:c])

        b_lo = into_upper
        middle = backward_apply(lower, b_lo)
        f_hi = mk_rewriten(
            f.dimension,
            tuple(
                _shift_cone(cn, regular_preimage(b_lo, cn.index) - cn.index)
                for cn in into_lower.cones
            ),
        )

        cospans = (
            diagram.cospans[:height]
            + (mk_cospan(f_lo, b_lo), mk_cospan(f_hi, b_hi))
            + diagram.cospans[height + 1 :]
        )
        expanded = mk_diagramn(diagram.source, cospans)
        witness = mk_rewriten(
            diagram.dimension,
            (
                mk_cone(
                    height,
                    (mk_cospan(f_lo, b_lo), mk_cospan(f_hi, b_hi)),
                    diagram.cospans[height],
                    (into_lower, into_upper),
                ),
            ),
        )
        if forward_apply(middle, f_hi) != upper:
            raise ExpansionError("split halves do not meet in the middle")
        if forward_apply(expanded, witness) != diagram:
            raise ExpansionError("expansion does not reassemble the diagram")
        check_rewrite(expanded, witness)
    except (ApplicationError, CompositionError) as e:
        raise ExpansionError(f"height {height} does not split at {split}: {e}") from e
    return expanded, witness
