"""Collapsing exploded diagrams into their string-diagram shape.

Nodes joined by identity-weighted edges carry equal slice content, so
they denote the same cell of the picture and get merged.  Merging runs
in batched rounds: every eligible edge is judged against the classes
from the previous round and all passes merge simultaneously, which
makes the result independent of edge order.  An edge passes when its
weight is an identity, its endpoint labels agree, and the two classes
look alike towards every common neighbour class (same weights,
orientations and directions); in a freshly exploded graph every edge
raises the singular count, so the last condition only starts biting
once merged classes produce triangles.
"""

from __future__ import annotations

import hashlib
from collections import defaultdict
from dataclasses import dataclass
from itertools import permutations

from .diagram import Diagram0, Generator, KernelError, is_identity_rewrite
from .explode import Edge, ExplosionGraph
from .interner import current_interner


class CollapseError(KernelError):
    """The graph cannot be collapsed consistently."""


class UnionFind:
    def __init__(self, keys):
        self.parent = {k: k for k in keys}

    def find(self, k):
        p = self.parent
        root = k
        while p[root] != root:
            root = p[root]
        while p[k] != root:
            p[k], k = root, p[k]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # deterministic root choice
        lo, hi = sorted((ra, rb), key=repr)
        self.parent[hi] = lo
        return True


def node_label(d) -> Generator:
    if not isinstance(d, Diagram0):
        raise CollapseError("collapse needs a fully exploded graph")
    return d.generator


def edge_collapsible(graph: ExplosionGraph, e: Edge) -> bool:
    """Identity weight with matching endpoint labels; never raises."""
    if not is_identity_rewrite(e.weight):
        return False
    try:
        return node_label(graph.nodes[e.src]) == node_label(graph.nodes[e.dst])
    except (CollapseError, KeyError):
        return False


def collapse_classes(node_labels: dict, edges) -> dict:
    """Map every node key to its class representative."""
    itn = current_interner()
    uf = UnionFind(node_labels)
    while True:
        desc = defaultdict(lambda: defaultdict(set))
        for e in edges:
            cu, cv = uf.find(e.src), uf.find(e.dst)
            if cu == cv:
                continue
            w = itn.nid(e.weight)
            desc[cu][cv].add(("out", e.orientation, w))
            desc[cv][cu].add(("in", e.orientation, w))
        pairs = []
        for e in edges:
            cu, cv = uf.find(e.src), uf.find(e.dst)
            if cu == cv:
                continue
            if not is_identity_rewrite(e.weight):
                continue
            if node_labels[e.src] != node_labels[e.dst]:
                continue
            if not _mergeable(desc, cu, cv):
                continue
            pairs.append((e.src, e.dst))
        merged = False
        for a, b in pairs:
            merged |= uf.union(a, b)
        if not merged:
            break
    return {k: uf.find(k) for k in node_labels}


def _mergeable(desc, cu, cv) -> bool:
    common = set(desc[cu]) & set(desc[cv]) - {cu, cv}
    for w in common:
        if desc[cu][w] != desc[cv][w]:
            return False
    return True


@dataclass(frozen=True)
class QuotientGraph:
    """Class labels plus deduplicated class-level edges.

    Edges are (src, dst, frame, orientation) with frame None for
    identity weights; the atom endpoints are implied by the labels.
    """

    labels: tuple
    edges: frozenset


@dataclass(frozen=True)
class Collapsed:
    quotient: QuotientGraph
    class_of: dict
    members: dict


def collapse(graph: ExplosionGraph) -> Collapsed:
    labels = {k: node_label(d) for k, d in graph.nodes.items()}
    class_of_key = collapse_classes(labels, graph.edges)
    roots = sorted(set(class_of_key.values()), key=repr)
    index = {r: i for i, r in enumerate(roots)}
    class_of = {k: index[r] for k, r in class_of_key.items()}
    members = defaultdict(list)
    for k, i in class_of.items():
        members[i].append(k)
    quotient = build_quotient(
        tuple(labels[r] for r in roots), class_of, graph.edges
    )
    return Collapsed(quotient, class_of, dict(members))


def build_quotient(labels: tuple, class_of: dict, edges) -> QuotientGraph:
    out = set()
    for e in edges:
        s, d = class_of[e.src], class_of[e.dst]
        if s == d:
            if not is_identity_rewrite(e.weight):
                raise CollapseError("non-identity edge inside a class")
            continue
        frame = None if is_identity_rewrite(e.weight) else e.weight.frame
        out.add((s, d, frame, e.orientation))
    return QuotientGraph(labels, frozenset(out))


def framing(graph: ExplosionGraph, coord: tuple) -> tuple:
    """Frames of the atom edges incident to a node, as
    (direction, orientation, frame), sorted."""
    out = []
    for e in graph.edges:
        if is_identity_rewrite(e.weight):
            continue
        if e.src == coord:
            out.append(("out", e.orientation, e.weight.frame))
        if e.dst == coord:
            out.append(("in", e.orientation, e.weight.frame))
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# quotient graph comparison


def _digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()[:16]


def canonical_form(q: QuotientGraph, oriented: bool = True):
    """A value equal across isomorphic quotients (labels respected).

    Colors start from class labels and refine by neighbourhood
    signatures; ambiguous groups fall back to trying their orderings.
    """
    n = len(q.labels)
    adj = defaultdict(set)
    for s, d, frame, orient in q.edges:
        desc = (frame, orient) if oriented else (frame,)
        adj[s].add(("out", desc, d))
        adj[d].add(("in", desc, s))
    color = {v: _digest(repr((q.labels[v].dimension, q.labels[v].id))) for v in range(n)}
    for _ in range(n):
        new = {
            v: _digest(color[v] + repr(sorted(((d, desc, color[w]) for d, desc, w in adj[v]), key=repr)))
            for v in range(n)
        }
        if _partition(new) == _partition(color):
            break
        color = new
    groups = defaultdict(list)
    for v in range(n):
        groups[color[v]].append(v)
    ordered_groups = [sorted(groups[c]) for c in sorted(groups)]
    total = 1
    for g in ordered_groups:
        for i in range(2, len(g) + 1):
            total *= i
        if total > 40320:
            raise CollapseError("quotient graph too symmetric to canonicalize")
    best = None
    for perm in _orderings(ordered_groups):
        pos = {v: i for i, v in enumerate(perm)}
        labels = tuple((q.labels[v].dimension, q.labels[v].id) for v in perm)
        if oriented:
            edges = tuple(sorted({(pos[s], pos[d], f, o) for s, d, f, o in q.edges}, key=repr))
        else:
            edges = tuple(sorted({(pos[s], pos[d], f) for s, d, f, _ in q.edges}, key=repr))
        cand = (labels, edges)
        if best is None or repr(cand) < repr(best):
            best = cand
    return best


def _partition(color: dict) -> frozenset:
    acc = defaultdict(list)
    for v, c in color.items():
        acc[c].append(v)
    return frozenset(frozenset(vs) for vs in acc.values())


def _orderings(groups):
    if not groups:
        yield ()
        return
    head, *rest = groups
    for tail in _orderings(rest):
        for p in permutations(head):
            yield tuple(p) + tail


def quotients_equal(q1: QuotientGraph, q2: QuotientGraph, oriented: bool = True) -> bool:
    if len(q1.labels) != len(q2.labels):
        return False
    return canonical_form(q1, oriented) == canonical_form(q2, oriented)
