"""Hash-consing store for the immutable kernel values.

Every diagram, rewrite, cospan and cone is canonicalized through an
Interner so that structural equality coincides with object identity
for values built through the factories.  Each canonical value gets a
small integer node id (nid) which the rest of the package uses for
memo keys and graph node identities.

Reference counting is structural: when a parent value is interned for
the first time, every child occurrence adds one reference.  Values
held only by user code "float" at zero references until retained.
Garbage collection is explicit and batched; entries that reached zero
references stay in the table (and stay canonical) until the next
sweep, so they can be resurrected for free by re-interning.
"""

from __future__ import annotations

import dataclasses
import threading
from typing import Any, Callable, Iterable, Sequence


class Interned:
    """Base class for values managed by an Interner.

    Subclasses describe their structure with three hooks:
    scalar fields, child values (interned recursively), and a rebuild
    used when children are replaced by canonical representatives.
    """

    def _intern_scalars(self) -> tuple:
        return ()

    def _intern_children(self) -> tuple:
        return ()

    def _intern_rebuild(self, children: tuple) -> "Interned":
        raise NotImplementedError(type(self).__name__)


class _Entry:
    __slots__ = ("value", "nid", "key", "refs")

    def __init__(self, value, nid, key):
        self.value = value
        self.nid = nid
        self.key = key
        self.refs = 0


_MISSING = object()


def _iter_interned(value) -> Iterable[Interned]:
    """Yield every Interned value reachable through plain containers."""
    if isinstance(value, Interned):
        yield value
    elif isinstance(value, (tuple, list, frozenset, set)):
        for item in value:
            yield from _iter_interned(item)
    elif isinstance(value, dict):
        for k, v in value.items():
            yield from _iter_interned(k)
            yield from _iter_interned(v)
    elif dataclasses.is_dataclass(value) and not isinstance(value, type):
        for f in dataclasses.fields(value):
            yield from _iter_interned(getattr(value, f.name))


class Interner:
    def __init__(self) -> None:
        self._lock = threading.RLock()
        self._by_key: dict[tuple, _Entry] = {}
        self._by_nid: dict[int, _Entry] = {}
        self._nid_by_id: dict[int, int] = {}
        self._memo: dict[tuple, Any] = {}
        self._next_nid = 1
        self.memo_hits = 0
        self.memo_misses = 0
        self.interned_total = 0

    # -- canonicalization ------------------------------------------------

    def node(self, value: Interned) -> Interned:
        """Return the canonical representative of `value`.

        Children are canonicalized recursively; the returned value is
        structurally equal to the input and unique in this interner.
        """
        with self._lock:
            return self._node(value)

    def _node(self, value: Interned) -> Interned:
        if id(value) in self._nid_by_id:
            return value
        raw = value._intern_children()
        kids = tuple(self._node(c) for c in raw)
        key = (
            type(value).__name__,
            value._intern_scalars(),
            tuple(self._nid_by_id[id(c)] for c in kids),
        )
        entry = self._by_key.get(key)
        if entry is not None:
            return entry.value
        if any(a is not b for a, b in zip(raw, kids)):
            value = value._intern_rebuild(kids)
        entry = _Entry(value, self._next_nid, key)
        self._next_nid += 1
        self._by_key[key] = entry
        self._by_nid[entry.nid] = entry
        self._nid_by_id[id(value)] = entry.nid
        for child in kids:
            self._by_nid[self._nid_by_id[id(child)]].refs += 1
        self.interned_total += 1
        return value

    def nid(self, value: Interned) -> int:
        with self._lock:
            canon = self._node(value)
            return self._nid_by_id[id(canon)]

    def contains(self, value: Interned) -> bool:
        with self._lock:
            return id(value) in self._nid_by_id

    # -- root references -------------------------------------------------

    def intern(self, value: Interned) -> Interned:
        """Canonicalize and retain: the value survives garbage collection."""
        with self._lock:
            canon = self._node(value)
            self._by_nid[self._nid_by_id[id(canon)]].refs += 1
            return canon

    def retain(self, value: Interned) -> Interned:
        return self.intern(value)

    def release(self, value: Interned) -> None:
        with self._lock:
            nid = self._nid_by_id.get(id(value))
            if nid is None:
                raise ValueError("release of a value this interner never saw")
            entry = self._by_nid[nid]
            if entry.refs <= 0:
                raise ValueError("release without a matching retain")
            entry.refs -= 1

    # -- garbage collection ----------------------------------------------

    def collect_garbage(self) -> int:
        """Sweep zero-reference entries until a fixpoint; return the count.

        Memo entries whose keys or results mention a swept value are
        dropped so the memo never hands back a non-canonical object.
        """
        with self._lock:
            removed = 0
            while True:
                dead = [e for e in self._by_nid.values() if e.refs == 0]
                if not dead:
                    break
                for entry in dead:
                    del self._by_key[entry.key]
                    del self._by_nid[entry.nid]
                    self._nid_by_id.pop(id(entry.value), None)
                    for child in entry.value._intern_children():
                        cnid = self._nid_by_id.get(id(child))
                        if cnid is not None:
                            self._by_nid[cnid].refs -= 1
                    removed += 1
            if removed:
                stale = [k for k in self._memo if self._memo_stale(k)]
                for k in stale:
                    del self._memo[k]
            return removed

    def _memo_stale(self, key: tuple) -> bool:
        tag, nids = key
        if any(n not in self._by_nid for n in nids):
            return True
        for obj in _iter_interned(self._memo[key]):
            if id(obj) not in self._nid_by_id:
                return True
        return False

    # -- memoization -------------------------------------------------------

    def memoize(self, tag: str, inputs: Sequence[Interned], thunk: Callable[[], Any]):
        """Cache `thunk()` under (tag, nids of inputs)."""
        with self._lock:
            key = (tag, tuple(self.nid(v) for v in inputs))
            hit = self._memo.get(key, _MISSING)
            if hit is not _MISSING:
                self.memo_hits += 1
                return hit
            self.memo_misses += 1
            value = thunk()
            self._memo[key] = value
            return value

    # -- diagnostics -------------------------------------------------------

    def stats(self) -> dict:
        with self._lock:
            return {
                "live": len(self._by_nid),
                "dead": sum(1 for e in self._by_nid.values() if e.refs == 0),
                "memo": len(self._memo),
                "memo_hits": self.memo_hits,
                "memo_misses": self.memo_misses,
                "interned_total": self.interned_total,
            }

    def refcount(self, value: Interned) -> int:
        with self._lock:
            nid = self._nid_by_id.get(id(value))
            if nid is None:
                raise ValueError("value is not interned here")
            return self._by_nid[nid].refs


_current = Interner()


def current_interner() -> Interner:
    return _current


def set_interner(interner: Interner) -> Interner:
    """Swap the interner used by the factories; returns the new one."""
    global _current
    _current = interner
    return interner
