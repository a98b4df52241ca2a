"""Action-log state machine: fold, guards, undo/redo, persistence."""

import random

import pytest

from fixture_diagrams import FIXTURES, eh_script, EH_EXPECTED
from zigzag import (
    attach,
    contract,
    diagram_dimension,
    diagram_source,
    diagram_target,
    identity_diagram,
    is_well_typed,
    mk_diagram0,
    mk_diagramn,
)
from zigzag.homotopy import ExpansionError
from zigzag.signature import Signature
from zigzag.workspace import (
    AddZeroCell,
    Attach,
    ClearWorkspace,
    Contract,
    Expand,
    Identity,
    ParseError,
    Rename,
    ReplayError,
    Select,
    SetColor,
    SetInvertible,
    SetShape,
    SetSource,
    SetTarget,
    Theorem,
    ViewChange,
    ViewPath,
    Workspace,
    WorkspaceError,
    action_from_json,
    action_to_json,
    dump_log,
    expand_crossing,
    load_workspace,
    parse_log,
    parse_view_path,
    replay,
    resolve_view,
    save_workspace,
)


def state_of(ws):
    return (ws.signature.entries(), ws.current, ws.stash, ws.view, tuple(ws.log))


def test_empty_replay():
    ws = replay([])
    assert ws.current is None and ws.stash is None
    assert len(ws.signature) == 0 and ws.log == []


def test_add_zero_cell_selects():
    ws = Workspace().apply(AddZeroCell("x"))
    e = ws.signature.entries()[0]
    assert ws.current == mk_diagram0(e.generator)
    assert ws.view == ViewPath((), 0)


def test_scalar_cell_construction():
    ws = replay(eh_script()[:6])
    assert [e.name for e in ws.signature] == ["x", "alpha"]
    alpha = ws.signature.entries()[1]
    assert alpha.generator.dimension == 2
    assert ws.current == ws.signature.globe(alpha.generator)
    assert ws.stash is None
    assert ws.view == ViewPath((), 2)


def test_eh_script_checkpoints():
    script = eh_script()
    before_star = replay(script[:-2])
    assert len(before_star.current.cospans) == (
        EH_EXPECTED["singular_height_before_star_contraction"])
    # the recorded movie ends on the swapped composite
    tgt = diagram_target(before_star.current)
    lower = before_star.current.source
    assert tgt != lower
    assert len(tgt.cospans) == 2

    ws = replay(script)
    d = ws.current
    assert diagram_dimension(d) == EH_EXPECTED["final_dimension"]
    assert len(d.cospans) == EH_EXPECTED["final_singular_height"]
    assert is_well_typed(d, ws.signature)
    assert ws.view == ViewPath((), 2)


def test_set_target_requires_stash():
    ws = Workspace().apply(AddZeroCell("x")).apply(Identity())
    with pytest.raises(WorkspaceError):
        ws.apply(SetTarget("f"))
    assert len(ws.signature) == 1 and len(ws.log) == 2


def test_set_target_globularity_gate():
    ws = Workspace().apply(AddZeroCell("x"))
    ws.apply(Identity()).apply(SetSource())
    ws.apply(Select(1))  # current is the 0-diagram again
    before = state_of(ws)
    with pytest.raises(WorkspaceError):
        ws.apply(SetTarget("f"))  # dimensions disagree
    assert state_of(ws) == before


def test_double_set_source_rejected():
    ws = Workspace().apply(AddZeroCell("x")).apply(Identity()).apply(SetSource())
    with pytest.raises(WorkspaceError):
        ws.apply(SetSource())


def test_attach_guards():
    ws = replay(eh_script()[:13])
    with pytest.raises(WorkspaceError):
        ws.apply(Attach(3, "sideways"))
    with pytest.raises(WorkspaceError):
        ws.apply(Attach(99, "target"))


def test_theorem_guard_low_dimension():
    ws = Workspace().apply(AddZeroCell("x")).apply(Identity())
    with pytest.raises(WorkspaceError):
        ws.apply(Theorem("t"))


def test_theorem_adds_statement_and_proof():
    ws = replay(eh_script())
    d = ws.current
    ws.apply(Theorem("eh"))
    names = [e.name for e in ws.signature]
    assert names[-2:] == ["eh", "eh-proof"]
    statement, proof = ws.signature.entries()[-2:]
    assert statement.generator.dimension == 3
    assert proof.generator.dimension == 4
    assert proof.invertible
    assert statement.boundary == (diagram_source(d), diagram_target(d))
    assert proof.boundary == (ws.signature.globe(statement.generator), d)
    assert ws.current == ws.signature.globe(statement.generator)


def test_theorem_replay_determinism():
    log = eh_script() + [Theorem("eh")]
    a, b = replay(log), replay(log)
    assert a.signature.entries() == b.signature.entries()
    assert a.current == b.current


def test_signature_edits():
    ws = Workspace().apply(AddZeroCell("x"))
    ws.apply(Rename(1, "y"))
    ws.apply(SetColor(1, "#123abc"))
    with pytest.raises(WorkspaceError):
        ws.apply(SetColor(1, "red"))
    with pytest.raises(WorkspaceError):
        ws.apply(SetShape(1, "triangle"))
    ws.apply(SetShape(1, "square"))
    ws.apply(SetInvertible(1, True))
    e = ws.signature.entries()[0]
    assert (e.name, e.color, e.shape, e.invertible) == ("y", "#123abc", "square", True)


def test_clear_workspace():
    ws = replay(eh_script()[:6])
    ws.apply(ClearWorkspace())
    assert ws.current is None and ws.stash is None
    assert len(ws.signature) == 2  # signature survives


def test_view_change_validation():
    ws = replay(eh_script())
    ws.apply(ViewChange(("S",), 2))
    assert resolve_view(ws.current, ws.view) == diagram_source(ws.current)
    with pytest.raises(WorkspaceError):
        ws.apply(ViewChange(("S", "T", "S", "T"), 2))  # k + d exceeds n
    with pytest.raises(WorkspaceError):
        ws.apply(ViewChange(("R9",), 1))
    with pytest.raises(WorkspaceError):
        Workspace().apply(ViewChange((), 0))


def test_view_resets_on_dimension_change():
    ws = Workspace().apply(AddZeroCell("x"))
    ws.apply(ViewChange((), 0))
    ws.apply(Identity())
    assert ws.view == ViewPath((), 1)
    ws.apply(Identity())
    assert ws.view == ViewPath((), 2)
    ws.apply(Identity())
    assert ws.view == ViewPath((), 2)  # capped at two drawn axes


def test_parse_view_path():
    assert parse_view_path("*") == ()
    assert parse_view_path("*TS") == ("T", "S")
    assert parse_view_path("*R0s12T") == ("R0", "s12", "T")
    with pytest.raises(WorkspaceError):
        parse_view_path("T")
    with pytest.raises(WorkspaceError):
        parse_view_path("*Q")


def test_undo_redo_basics():
    ws = Workspace().apply(AddZeroCell("x"))
    ws.undo()
    assert state_of(ws) == state_of(Workspace())
    ws.redo()
    assert len(ws.signature) == 1 and len(ws.log) == 1
    with pytest.raises(WorkspaceError):
        ws.redo()
    fresh = Workspace()
    with pytest.raises(WorkspaceError):
        fresh.undo()


def test_redo_cleared_by_fresh_action():
    ws = Workspace().apply(AddZeroCell("x")).apply(Identity())
    ws.undo()
    ws.apply(AddZeroCell("y"))
    with pytest.raises(WorkspaceError):
        ws.redo()


def test_random_sessions_match_replay():
    rng = random.Random(20240)
    pool = [
        lambda: AddZeroCell("c"),
        lambda: Select(rng.randint(1, 4)),
        lambda: Identity(),
        lambda: SetSource(),
        lambda: SetTarget("g"),
        lambda: Attach(rng.randint(1, 4), rng.choice(["source", "target"])),
        lambda: ViewChange((), rng.randint(0, 2)),
        lambda: Rename(rng.randint(1, 4), "renamed"),
    ]
    for _ in range(50):
        ws = Workspace()
        for _ in range(12):
            move = rng.random()
            try:
                if move < 0.15 and ws.log:
                    ws.undo()
                elif move < 0.25 and ws.redo_stack:
                    ws.redo()
                else:
                    ws.apply(rng.choice(pool)())
            except WorkspaceError:
                pass
            oracle = replay(ws.log)
            assert state_of(ws)[:4] == state_of(oracle)[:4]
            assert ws.log == oracle.log


def test_replay_error_names_index():
    with pytest.raises(ReplayError) as err:
        replay([AddZeroCell("x"), Select(7)])
    assert err.value.index == 1


def test_expand_crossing_needs_matching_slices():
    sig = Signature()
    x = sig.add_zero_cell("x")
    f = sig.add_cell("f", mk_diagram0(x.generator), mk_diagram0(x.generator))
    wf = sig.globe(f.generator)
    mu = sig.add_cell("mu", attach(wf, "target", wf), wf)
    with pytest.raises(ExpansionError):
        expand_crossing(sig.globe(mu.generator), 0, 1)


def test_log_round_trip():
    log = eh_script()
    text = dump_log(log)
    assert parse_log(text) == log
    assert dump_log(parse_log(text)) == text


def test_eh_fixture_file_round_trips():
    text = (FIXTURES / "eckmann-hilton").read_text()
    assert dump_log(parse_log(text)) == text
    ws = load_workspace(text)
    assert save_workspace(ws) == text
    assert len(ws.current.cospans) == EH_EXPECTED["final_singular_height"]


def test_action_json_encoding():
    a = Contract("T", 0, 2, "right")
    blob = action_to_json(a)
    assert blob == {"type": "Contract", "path": "T", "lo": 0, "hi": 2, "bias": "right"}
    assert action_from_json(blob) == a


def test_parse_errors_name_the_line():
    with pytest.raises(ParseError):
        parse_log("")
    with pytest.raises(ParseError) as err:
        parse_log('{"version": "99"}\n')
    assert err.value.line == 1
    with pytest.raises(ParseError) as err:
        parse_log('{"version": "1"}\n{"type": "Nope"}\n')
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_log('{"version": "1"}\n{"type": "Select"}\n{"type": "Identity", "x": 1}\n')
    assert err.value.line == 2
    with pytest.raises(ParseError) as err:
        parse_log('{"version": "1"}\nnot json\n')
    assert err.value.line == 2


def test_rejected_action_leaves_no_trace():
    ws = replay(eh_script()[:15])  # the identity movie over the composite
    before = state_of(ws)
    with pytest.raises(WorkspaceError):
        ws.apply(Contract("T", 0, 5))
    with pytest.raises(WorkspaceError):
        ws.apply(Expand("T", 0, 1, "sideways"))
    assert state_of(ws) == before
