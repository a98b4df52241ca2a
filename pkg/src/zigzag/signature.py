"""The generator table: names, display metadata, boundaries.

A signature owns the generators a workspace may use.  Cells of
dimension zero carry no boundary; higher cells store the source and
target diagrams they were declared with, which is enough to rebuild
their globes on demand.  Entries are immutable records; the table
itself mutates by replacing entries, so snapshots of the entry tuple
stay valid.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .diagram import (
    Diagram,
    Generator,
    KernelError,
    diagram_dimension,
    mk_diagram0,
    mk_generator,
)
from .globe import make_globe


class SignatureError(KernelError):
    pass


DEFAULT_COLORS = (
    "#2b6cb0",
    "#c53030",
    "#2f855a",
    "#b7791f",
    "#6b46c1",
    "#0d9488",
    "#b83280",
    "#4a5568",
)

SHAPES = ("circle", "square")


@dataclass(frozen=True)
class SignatureEntry:
    generator: Generator
    name: str
    color: str
    shape: str
    invertible: bool
    boundary: tuple | None  # (source, target) diagrams for dimension >= 1

    def globe(self) -> Diagram:
        if self.boundary is None:
            return mk_diagram0(self.generator)
        return make_globe(self.boundary[0], self.boundary[1], self.generator)


class Signature:
    """Ordered, id-keyed table of signature entries."""

    def __init__(self):
        self._entries: dict[int, SignatureEntry] = {}
        self._next_id = 1

    def __iter__(self):
        return iter(self._entries.values())

    def __len__(self) -> int:
        return len(self._entries)

    def entries(self) -> tuple:
        return tuple(self._entries.values())

    def copy(self) -> "Signature":
        out = Signature()
        out._entries = dict(self._entries)
        out._next_id = self._next_id
        return out

    def entry(self, g) -> SignatureEntry:
        """Look up by Generator or by id."""
        gid = g.id if isinstance(g, Generator) else g
        e = self._entries.get(gid)
        if e is None:
            raise SignatureError(f"unknown generator id {gid}")
        if isinstance(g, Generator) and e.generator != g:
            raise SignatureError(f"generator {g} does not match the signature entry")
        return e

    def boundary(self, g):
        return self.entry(g).boundary

    def is_invertible(self, g) -> bool:
        return self.entry(g).invertible

    def globe(self, g) -> Diagram:
        return self.entry(g).globe()

    def _pick_color(self) -> str:
        return DEFAULT_COLORS[len(self._entries) % len(DEFAULT_COLORS)]

    def add_zero_cell(self, name: str) -> SignatureEntry:
        g = mk_generator(0, self._next_id)
        self._next_id += 1
        e = SignatureEntry(g, name, self._pick_color(), "circle", False, None)
        self._entries[g.id] = e
        return e

    def add_cell(self, name: str, source: Diagram, target: Diagram,
                 invertible: bool = False) -> SignatureEntry:
        dim = diagram_dimension(source)
        if diagram_dimension(target) != dim:
            raise SignatureError("cell boundary sides must share a dimension")
        g = mk_generator(dim + 1, self._next_id)
        make_globe(source, target, g)  # validates globularity before we commit
        self._next_id += 1
        e = SignatureEntry(g, name, self._pick_color(), "circle", invertible,
                           (source, target))
        self._entries[g.id] = e
        return e

    def _update(self, gid: int, **changes) -> SignatureEntry:
        e = self.entry(gid)
        new = replace(e, **changes)
        self._entries[gid] = new
        return new

    def rename(self, gid: int, name: str) -> SignatureEntry:
        return self._update(gid, name=name)

    def set_invertible(self, gid: int, flag: bool) -> SignatureEntry:
        return self._update(gid, invertible=flag)

    def set_color(self, gid: int, color: str) -> SignatureEntry:
        return self._update(gid, color=color)

    def set_shape(self, gid: int, shape: str) -> SignatureEntry:
        if shape not in SHAPES:
            raise SignatureError(f"unknown shape {shape!r}")
        return self._update(gid, shape=shape)
