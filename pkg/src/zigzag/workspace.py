"""Action-log workspace: the signature plus a current diagram, all state
being a deterministic fold of an append-only list of actions.

Undo rebuilds by replaying the shortened log, so every reachable state
equals ``replay`` of its own log by construction.  Logs persist as
line-delimited JSON with an explicit version header; the log, never the
derived state, is the artifact shared with the CLI and the UI.
"""

from dataclasses import dataclass, field, fields
import json
import re

from .diagram import (
    DiagramN,
    KernelError,
    diagram_dimension,
    diagram_source,
    diagram_target,
    identity_diagram,
    identity_rewrite,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
    regular_slice,
    singular_slice,
)
from .globe import attach
from .homotopy import ContractionError, ExpansionError, contract, expand
from .signature import SHAPES, Signature
from .typecheck import typecheck

FORMAT_VERSION = "1"


class WorkspaceError(KernelError):
    """An action could not be applied; the state is unchanged."""


class ReplayError(WorkspaceError):
    def __init__(self, index, action, reason):
        super().__init__(f"action {index} ({action.__class__.__name__}) failed: {reason}")
        self.index = index
        self.reason = reason


class ParseError(WorkspaceError):
    def __init__(self, line, reason):
        super().__init__(f"line {line}: {reason}")
        self.line = line


# ---------------------------------------------------------------------------
# actions

_ACTION_TYPES = {}


def _action(cls):
    cls = dataclass(frozen=True)(cls)
    _ACTION_TYPES[cls.__name__] = cls
    return cls


@_action
class AddZeroCell:
    name: str


@_action
class Select:
    id: int


@_action
class Identity:
    pass


@_action
class SetSource:
    pass


@_action
class SetTarget:
    name: str


@_action
class Attach:
    id: int
    boundary: str
    offset: int = 0


@_action
class Contract:
    path: str
    lo: int
    hi: int
    bias: str = None


@_action
class Expand:
    path: str
    height: int
    split: int
    direction: str = "up"


@_action
class Theorem:
    name: str


@_action
class Rename:
    id: int
    name: str


@_action
class SetInvertible:
    id: int
    flag: bool


@_action
class SetColor:
    id: int
    color: str


@_action
class SetShape:
    id: int
    shape: str


@_action
class ClearWorkspace:
    pass


@_action
class ViewChange:
    selectors: tuple
    dims: int


def action_to_json(a) -> dict:
    out = {"type": a.__class__.__name__}
    for f in fields(a):
        value = getattr(a, f.name)
        if isinstance(value, tuple):
            value = list(value)
        out[f.name] = value
    return out


def action_from_json(obj) -> object:
    if not isinstance(obj, dict) or not isinstance(obj.get("type"), str):
        raise ValueError("an action must be an object with a 'type' tag")
    cls = _ACTION_TYPES.get(obj["type"])
    if cls is None:
        raise ValueError(f"unknown action type {obj['type']!r}")
    kwargs = {}
    for f in fields(cls):
        if f.name in obj:
            value = obj[f.name]
            kwargs[f.name] = tuple(value) if isinstance(value, list) else value
    extra = set(obj) - {"type"} - {f.name for f in fields(cls)}
    if extra:
        raise ValueError(f"unexpected fields {sorted(extra)} on {obj['type']}")
    try:
        return cls(**kwargs)
    except TypeError as e:
        raise ValueError(str(e)) from e


# ---------------------------------------------------------------------------
# view paths

_SELECTOR = re.compile(r"S|T|R(\d+)|s(\d+)")


@dataclass(frozen=True)
class ViewPath:
    """Navigation state: descend through `selectors`, draw `dims` axes,
    project everything deeper."""

    selectors: tuple = ()
    dims: int = 0

    def __str__(self):
        return "*" + "".join(self.selectors)


def parse_view_path(text: str) -> tuple:
    """The CLI spelling: ``*`` then selector tokens S, T, R<i> or s<i>."""
    if not text.startswith("*"):
        raise WorkspaceError("a view path starts with '*'")
    rest, out = text[1:], []
    while rest:
        m = _SELECTOR.match(rest)
        if not m:
            raise WorkspaceError(f"bad view selector at {rest!r}")
        out.append(m.group(0))
        rest = rest[m.end():]
    return tuple(out)


def default_view(d) -> ViewPath:
    n = 0 if d is None else diagram_dimension(d)
    return ViewPath((), min(n, 2))


def resolve_view(d, view: ViewPath):
    """Follow the selectors down from `d`; the result is what gets drawn."""
    if d is None:
        raise WorkspaceError("the workspace is empty")
    for step in view.selectors:
        if not isinstance(d, DiagramN):
            raise WorkspaceError(f"selector {step} applied to a 0-diagram")
        try:
            if step == "S":
                d = diagram_source(d)
            elif step == "T":
                d = diagram_target(d)
            elif step.startswith("R"):
                d = regular_slice(d, int(step[1:]))
            else:
                d = singular_slice(d, int(step[1:]))
        except (KernelError, IndexError) as e:
            raise WorkspaceError(f"selector {step}: {e or 'level out of range'}") from e
    if view.dims > diagram_dimension(d):
        raise WorkspaceError(
            f"cannot view {view.dims} axes of a {diagram_dimension(d)}-diagram")
    if view.dims > 4:
        raise WorkspaceError("at most 4 axes can be viewed")
    return d


# ---------------------------------------------------------------------------
# the state machine


@dataclass
class Workspace:
    signature: Signature = field(default_factory=Signature)
    current: object = None
    stash: object = None
    view: ViewPath = ViewPath((), 0)
    log: list = field(default_factory=list)
    redo_stack: list = field(default_factory=list)

    # -- helpers ---------------------------------------------------------

    def _need_current(self):
        if self.current is None:
            raise WorkspaceError("no diagram is selected")
        return self.current

    def _entry(self, gid):
        return self.signature.entry(gid)

    def _set_current(self, d):
        before = None if self.current is None else diagram_dimension(self.current)
        self.current = d
        after = None if d is None else diagram_dimension(d)
        if before != after:
            self.view = default_view(d)

    def _homotopy_slice(self, path):
        """Contract/Expand act on the whole diagram ('*') or append a new
        level recording the move on the final target ('T')."""
        d = self._need_current()
        if path == "*":
            return d, None
        if path == "T":
            if not isinstance(d, DiagramN):
                raise WorkspaceError("a 0-diagram has no target slice")
            return diagram_target(d), d
        raise WorkspaceError(f"unsupported homotopy path {path!r}")

    def _append_level(self, host, cospan):
        return mk_diagramn(host.source, list(host.cospans) + [cospan])

    # -- the fold --------------------------------------------------------

    def apply(self, a, _replayed=False):
        # a rejected action must leave no trace, or state would drift
        # away from replay(log)
        snap = (self.signature, self.current, self.stash, self.view)
        self.signature = self.signature.copy()
        try:
            self._dispatch(a)
        except KernelError as e:
            self.signature, self.current, self.stash, self.view = snap
            if isinstance(e, WorkspaceError):
                raise
            raise WorkspaceError(str(e)) from e
        self.log.append(a)
        if not _replayed:
            self.redo_stack.clear()
        return self

    def _dispatch(self, a):
        if isinstance(a, AddZeroCell):
            e = self.signature.add_zero_cell(a.name)
            self._set_current(mk_diagram0(e.generator))
        elif isinstance(a, Select):
            self._set_current(self.signature.globe(self._entry(a.id).generator))
        elif isinstance(a, Identity):
            self._set_current(identity_diagram(self._need_current()))
        elif isinstance(a, SetSource):
            if self.stash is not None:
                raise WorkspaceError("a source is already stashed")
            self.stash = self._need_current()
        elif isinstance(a, SetTarget):
            self._set_target(a.name)
        elif isinstance(a, Attach):
            d = self._need_current()
            piece = self.signature.globe(self._entry(a.id).generator)
            if a.boundary not in ("source", "target"):
                raise WorkspaceError("attach boundary must be source or target")
            self._set_current(attach(d, a.boundary, piece, a.offset))
        elif isinstance(a, Contract):
            self._contract(a)
        elif isinstance(a, Expand):
            self._expand(a)
        elif isinstance(a, Theorem):
            self._theorem(a.name)
        elif isinstance(a, Rename):
            self._entry(a.id)
            self.signature.rename(a.id, a.name)
        elif isinstance(a, SetInvertible):
            self._entry(a.id)
            self.signature.set_invertible(a.id, a.flag)
        elif isinstance(a, SetColor):
            if not re.fullmatch(r"#[0-9a-fA-F]{6}", a.color):
                raise WorkspaceError(f"color {a.color!r} is not #rrggbb")
            self._entry(a.id)
            self.signature.set_color(a.id, a.color)
        elif isinstance(a, SetShape):
            if a.shape not in SHAPES:
                raise WorkspaceError(f"shape must be one of {', '.join(SHAPES)}")
            self._entry(a.id)
            self.signature.set_shape(a.id, a.shape)
        elif isinstance(a, ClearWorkspace):
            self.current = None
            self.stash = None
            self.view = ViewPath((), 0)
        elif isinstance(a, ViewChange):
            view = ViewPath(tuple(a.selectors), a.dims)
            resolve_view(self.current, view)  # validates before committing
            self.view = view
        else:
            raise WorkspaceError(f"unknown action {a!r}")

    def _set_target(self, name):
        if self.stash is None:
            raise WorkspaceError("no source is stashed; use SetSource first")
        target = self._need_current()
        e = self.signature.add_cell(name, self.stash, target)
        self.stash = None
        self._set_current(self.signature.globe(e.generator))

    def _theorem(self, name):
        d = self._need_current()
        if diagram_dimension(d) <= 1:
            raise WorkspaceError("the theorem action needs a diagram of dimension > 1")
        statement = self.signature.add_cell(name, diagram_source(d), diagram_target(d))
        globe = self.signature.globe(statement.generator)
        self.signature.add_cell(f"{name}-proof", globe, d, invertible=True)
        typecheck(globe, self.signature)
        typecheck(self.signature.globe(
            self.signature.entries()[-1].generator), self.signature)
        self._set_current(globe)

    def _contract(self, a):
        d, host = self._homotopy_slice(a.path)
        packed, witness = contract(d, a.lo, a.hi, bias=a.bias)
        if host is None:
            self._set_current(packed)
        else:
            level = mk_cospan(witness, identity_rewrite(witness.dimension))
            self._set_current(self._append_level(host, level))
        typecheck(self.current, self.signature)

    def _expand(self, a):
        d, host = self._homotopy_slice(a.path)
        if a.direction == "up":
            wide, back = expand(d, a.height, a.split)
        elif a.direction == "down":
            wide, back = expand_crossing(d, a.height, a.split)
        else:
            raise WorkspaceError("expand direction must be up or down")
        if host is None:
            self._set_current(wide)
        else:
            level = mk_cospan(identity_rewrite(back.dimension), back)
            self._set_current(self._append_level(host, level))
        typecheck(self.current, self.signature)

    # -- undo / redo -------------------------------------------------------

    def undo(self):
        if not self.log:
            raise WorkspaceError("nothing to undo")
        undone = self.log[-1]
        rebuilt = replay(self.log[:-1])
        self.signature = rebuilt.signature
        self.current = rebuilt.current
        self.stash = rebuilt.stash
        self.view = rebuilt.view
        self.log = rebuilt.log
        self.redo_stack.insert(0, undone)
        return self

    def redo(self):
        if not self.redo_stack:
            raise WorkspaceError("nothing to redo")
        a = self.redo_stack.pop(0)
        try:
            self.apply(a, _replayed=True)
        except WorkspaceError:
            self.redo_stack.insert(0, a)
            raise
        return self

    def viewed_diagram(self):
        return resolve_view(self.current, self.view)


def expand_crossing(d, height, split):
    """Anticontraction where the upper part crosses below the lower one.

    Covered exactly as far as the scalar flows need it: the two freshly
    separated levels must sit between equal regular slices, so they can
    be exchanged wholesale; the witness is recovered by contracting the
    exchanged diagram back and demanding the original reappears.
    """
    wide, _ = expand(d, height, split)
    lo = regular_slice(wide, height)
    hi = regular_slice(wide, height + 2)
    if lo != hi:
        raise ExpansionError("a crossing needs matching regular slices around the split")
    cospans = list(wide.cospans)
    cospans[height], cospans[height + 1] = cospans[height + 1], cospans[height]
    crossed = mk_diagramn(wide.source, cospans)
    for bias in ("left", "right"):
        try:
            packed, witness = contract(crossed, height, height + 2, bias=bias)
        except ContractionError:
            continue
        if packed == d:
            return crossed, witness
    raise ExpansionError("the crossed levels do not contract back onto the input")


def replay(log) -> Workspace:
    """Fold the actions over an empty workspace; failures name the index."""
    ws = Workspace()
    for i, a in enumerate(log):
        try:
            ws.apply(a, _replayed=True)
        except WorkspaceError as e:
            raise ReplayError(i, a, str(e)) from e
    return ws


# ---------------------------------------------------------------------------
# persistence: the log is the artifact

def dump_log(log) -> str:
    lines = [json.dumps({"version": FORMAT_VERSION}, sort_keys=True)]
    lines += [json.dumps(action_to_json(a), sort_keys=True) for a in log]
    return "\n".join(lines) + "\n"


def parse_log(text: str) -> list:
    lines = text.splitlines()
    if not lines:
        raise ParseError(1, "empty document; expected a version header")
    try:
        header = json.loads(lines[0])
    except json.JSONDecodeError as e:
        raise ParseError(1, f"bad header: {e}") from e
    if not isinstance(header, dict) or "version" not in header:
        raise ParseError(1, "the first line must carry a version field")
    if header["version"] != FORMAT_VERSION:
        raise ParseError(1, f"unsupported version {header['version']!r}")
    out = []
    for i, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        try:
            out.append(action_from_json(json.loads(line)))
        except (json.JSONDecodeError, ValueError) as e:
            raise ParseError(i, str(e)) from e
    return out


def save_workspace(ws: Workspace) -> str:
    return dump_log(ws.log)


def load_workspace(text: str) -> Workspace:
    return replay(parse_log(text))
