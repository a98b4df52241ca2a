"""Shared example scenes used by the golden-file and acceptance tests.

The same builders regenerate tests/fixtures/ via

    python3 -m tests.fixture_diagrams

after a deliberate rendering change; review the diff before committing.
"""

import json
import pathlib

from zigzag import (
    attach,
    contract,
    identity_diagram,
    identity_rewrite,
    layout,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
)
from zigzag.geometry import mesh
from zigzag.render import emit_stl, emit_svg, emit_tikz
from zigzag.signature import Signature
from zigzag.workspace import (
    AddZeroCell,
    Attach,
    Contract,
    Expand,
    Identity,
    Select,
    SetSource,
    SetTarget,
    ViewChange,
    dump_log,
    replay,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def monoid_scene():
    """x, an endo-wire f, and a binary vertex mu: f.f => f."""
    sig = Signature()
    x = sig.add_zero_cell("x")
    f = sig.add_cell("f", mk_diagram0(x.generator), mk_diagram0(x.generator))
    wf = sig.globe(f.generator)
    mu = sig.add_cell("mu", attach(wf, "target", wf), wf)
    return sig, mk_diagram0(x.generator), wf, sig.globe(mu.generator)


def scalar_scene():
    """Two scalar 2-cells side by side, contracted into one slice, plus
    the 3-diagram recording the contraction itself."""
    sig = Signature()
    x = sig.add_zero_cell("x")
    loop = identity_diagram(mk_diagram0(x.generator))
    alpha = sig.add_cell("alpha", loop, loop)
    beta = sig.add_cell("beta", loop, loop)
    side = attach(sig.globe(alpha.generator), "target", sig.globe(beta.generator))
    packed, witness = contract(side, 0, 2, bias="right")
    movie = mk_diagramn(side, [mk_cospan(witness, identity_rewrite(2))])
    return sig, packed, movie


def eh_script():
    """The scalar-commutativity walkthrough as a replayable action log:
    build the vertical composite, record the contraction (right bias) and
    the downward crossing expansion, then contract the whole movie from
    the top view."""
    return [
        AddZeroCell("x"),
        Identity(),
        SetSource(),
        Select(1),
        Identity(),
        SetTarget("alpha"),
        Select(1),
        Identity(),
        SetSource(),
        Select(1),
        Identity(),
        SetTarget("beta"),
        Select(2),
        Attach(3, "target"),
        Identity(),
        Contract("T", 0, 2, "right"),
        Expand("T", 0, 1, "down"),
        ViewChange((), 2),
        Contract("*", 0, 2),
    ]


# Counted on the zigzag by hand: the two recorded homotopy levels
# (contraction, crossing expansion) merge into a single level under the
# final top-view contraction.
EH_EXPECTED = {
    "final_dimension": 3,
    "final_singular_height": 1,
    "singular_height_before_star_contraction": 2,
}


def golden_files():
    sig, f0, f1, f2 = monoid_scene()
    out = {
        "f0.svg": emit_svg(f0, layout(f0, 0), sig).encode(),
        "f1.svg": emit_svg(f1, layout(f1, 1), sig).encode(),
        "f2.svg": emit_svg(f2, layout(f2, 2), sig).encode(),
        "f0.tikz": emit_tikz(f0, layout(f0, 0), sig).encode(),
        "f1.tikz": emit_tikz(f1, layout(f1, 1), sig).encode(),
        "f2.tikz": emit_tikz(f2, layout(f2, 2), sig).encode(),
    }
    sig, packed, movie = scalar_scene()
    out["eh.svg"] = emit_svg(packed, layout(packed, 2), sig).encode()
    out["eh.stl"] = emit_stl(mesh(movie, 3, layout(movie, 3)))
    out["eckmann-hilton"] = dump_log(eh_script()).encode()
    out["eckmann-hilton.expected"] = (
        json.dumps(EH_EXPECTED, indent=2, sort_keys=True) + "\n"
    ).encode()
    ws = replay(eh_script())
    braid = ws.current
    out["eckmann-hilton.svg"] = emit_svg(braid, layout(braid, 2), ws.signature).encode()
    out["eckmann-hilton.tikz"] = emit_tikz(braid, layout(braid, 2), ws.signature).encode()
    out["eckmann-hilton.stl"] = emit_stl(mesh(braid, 3, layout(braid, 3)))
    return out


def main():
    FIXTURES.mkdir(exist_ok=True)
    for name, data in sorted(golden_files().items()):
        (FIXTURES / name).write_bytes(data)
        print("wrote %s (%d bytes)" % (name, len(data)))


if __name__ == "__main__":
    main()
