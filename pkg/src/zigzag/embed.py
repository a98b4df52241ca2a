"""Finding occurrences of one diagram inside another.

A same-dimension occurrence is a contiguous range of heights whose
extraction (window source plus the cospans in range) equals the
needle; everything below the top level must agree at full width.  A
lower-dimensional needle may occur in any slice, recursively, so an
embedding is a slice path plus a height offset.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import (
    Diagram,
    Diagram0,
    DiagramN,
    all_slices,
    diagram_dimension,
    mk_diagramn,
    regular_slice,
)


@dataclass(frozen=True, order=True)
class Embedding:
    path: tuple
    offset: int


def window(d: DiagramN, offset: int, heights: int) -> DiagramN:
    """Extract the sub-diagram spanning [offset, offset + heights)."""
    if offset < 0 or offset + heights > len(d.cospans):
        raise ValueError("window out of range")
    return mk_diagramn(regular_slice(d, offset), d.cospans[offset : offset + heights])


def find_embeddings(needle: Diagram, haystack: Diagram) -> list:
    """All embeddings of needle into haystack, sorted."""
    out = []
    _search(needle, haystack, (), out)
    out.sort()
    return out


def _search(needle: Diagram, haystack: Diagram, path: tuple, out: list) -> None:
    nd = diagram_dimension(needle)
    hd = diagram_dimension(haystack)
    if nd > hd:
        return
    if nd == hd:
        if isinstance(needle, Diagram0):
            if needle == haystack:
                out.append(Embedding(path, 0))
            return
        h = len(needle.cospans)
        for o in range(len(haystack.cospans) - h + 1):
            if window(haystack, o, h) == needle:
                out.append(Embedding(path, o))
        return
    slices = all_slices(haystack)
    for idx, sl in enumerate(slices):
        comp = ("R", idx // 2) if idx % 2 == 0 else ("S", idx // 2)
        _search(needle, sl, path + (comp,), out)


def extract_embedding(haystack: Diagram, emb: Embedding, heights: int = None, needle: Diagram = None):
    """The sub-diagram an embedding points at.

    Pass either the needle (to take its height count) or an explicit
    height count; a 0-dimensional extraction ignores both.
    """
    d = haystack
    for kind, i in emb.path:
        idx = 2 * i if kind == "R" else 2 * i + 1
        d = all_slices(d)[idx]
    if isinstance(d, Diagram0):
        return d
    if heights is None:
        if needle is None:
            raise ValueError("need a needle or a height count")
        heights = len(needle.cospans) if isinstance(needle, DiagramN) else 0
    return window(d, emb.offset, heights)


def filter_embeddings(embs, lo: int, hi: int, heights: int) -> list:
    """Keep top-level embeddings whose interval lies inside [lo, hi)."""
    return [
        e
        for e in embs
        if e.path == () and lo <= e.offset and e.offset + heights <= hi
    ]
