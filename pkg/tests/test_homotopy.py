"""Contraction and expansion moves."""

import random

import pytest

from zigzag import (
    check_diagram,
    check_rewrite,
    compose,
    forward_apply,
    identity_diagram,
    identity_rewrite,
    all_slices,
    make_globe,
    attach,
    mk_atom0,
    mk_cone,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
    mk_generator,
    mk_rewriten,
    singular_slice,
)
from zigzag.compose import strip_diagram, strip_frames
from zigzag.homotopy import ContractionError, ExpansionError, colimit, contract, expand

from helpers import GenPool, rand_diagram2


def scalar_stack():
    """Two scalar cells over the same point, stacked vertically."""
    x = mk_generator(0, 1)
    alpha = mk_generator(2, 2)
    beta = mk_generator(2, 3)
    loop = mk_diagramn(mk_diagram0(x), ())
    ga = make_globe(loop, loop, alpha)
    gb = make_globe(loop, loop, beta)
    return attach(ga, "target", gb), ga, gb


def test_colimit_base_absorbs_into_vertex():
    f = mk_generator(1, 1)
    g = mk_generator(1, 2)
    v = mk_generator(2, 3)
    nodes = [mk_diagram0(f), mk_diagram0(v), mk_diagram0(g)]
    edges = [(0, 1, mk_atom0(f, v, 5)), (2, 1, mk_atom0(g, v, 7))]
    out, legs = colimit(nodes, edges)
    assert out == mk_diagram0(v)
    assert legs == [mk_atom0(f, v, 5), identity_rewrite(0), mk_atom0(g, v, 7)]


def test_colimit_base_rejects_disagreeing_legs():
    y = mk_generator(1, 1)
    v = mk_generator(2, 2)
    nodes = [mk_diagram0(y), mk_diagram0(v)]
    edges = [(0, 1, mk_atom0(y, v, 1)), (0, 1, mk_atom0(y, v, 2))]
    with pytest.raises(ContractionError):
        colimit(nodes, edges)


def test_colimit_base_rejects_cycles():
    f = mk_generator(1, 1)
    g = mk_generator(1, 2)
    nodes = [mk_diagram0(f), mk_diagram0(g)]
    edges = [(0, 1, mk_atom0(f, g, 1)), (1, 0, mk_atom0(g, f, 2))]
    with pytest.raises(ContractionError):
        colimit(nodes, edges)


def test_contract_rejects_two_distinct_events():
    # Two copies of the same endo-cell in sequence cannot become one.
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    wire = make_globe(mk_diagram0(x), mk_diagram0(x), f)
    chain = attach(wire, "target", wire)
    with pytest.raises(ContractionError):
        contract(chain, 0, 2)


def test_contract_rejects_label_mismatch():
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    g = mk_generator(1, 3)
    wf = make_globe(mk_diagram0(x), mk_diagram0(x), f)
    wg = make_globe(mk_diagram0(x), mk_diagram0(x), g)
    with pytest.raises(ContractionError):
        contract(attach(wf, "target", wg), 0, 2)


def test_contract_interchanger_exact():
    d, ga, gb = scalar_stack()
    pc_a = singular_slice(ga, 0).cospans[0]
    pc_b = singular_slice(gb, 0).cospans[0]

    out, witness = contract(d, 0, 2, bias="right")
    fwd = mk_rewriten(1, (mk_cone(0, (), pc_a, ()), mk_cone(0, (), pc_b, ())))
    assert out == mk_diagramn(d.source, (mk_cospan(fwd, fwd),))
    l0 = mk_rewriten(1, (mk_cone(1, (), pc_b, ()),))
    l1 = mk_rewriten(1, (mk_cone(0, (), pc_a, ()),))
    assert witness == mk_rewriten(
        2, (mk_cone(0, d.cospans, mk_cospan(fwd, fwd), (l0, l1)),)
    )
    assert forward_apply(d, witness) is out

    out_l, _ = contract(d, 0, 2, bias="left")
    fwd_l = mk_rewriten(1, (mk_cone(0, (), pc_b, ()), mk_cone(0, (), pc_a, ())))
    assert out_l == mk_diagramn(d.source, (mk_cospan(fwd_l, fwd_l),))

    with pytest.raises(ContractionError):
        contract(d, 0, 2)


def test_contract_slide_needs_no_bias():
    x = mk_generator(0, 1)
    y = mk_generator(0, 2)
    f = mk_generator(1, 3)
    g = mk_generator(1, 4)
    v = mk_generator(2, 5)
    wf = make_globe(mk_diagram0(x), mk_diagram0(y), f)
    wg = make_globe(mk_diagram0(x), mk_diagram0(y), g)
    gv = make_globe(wf, wg, v)
    idle = mk_cospan(identity_rewrite(1), identity_rewrite(1))
    for cospans in [(idle, gv.cospans[0]), (gv.cospans[0], idle)]:
        d = mk_diagramn(wf, cospans)
        check_diagram(d)
        out, witness = contract(d, 0, 2)
        assert len(out.cospans) == 1
        inner = singular_slice(out, 0)
        assert len(inner.cospans) == 1
        assert singular_slice(inner, 0) == mk_diagram0(v)
        assert forward_apply(d, witness) is out


def test_colimit_legs_commute_with_edges():
    x = mk_generator(0, 1)
    y = mk_generator(0, 2)
    f = mk_generator(1, 3)
    g = mk_generator(1, 4)
    v = mk_generator(2, 5)
    wf = make_globe(mk_diagram0(x), mk_diagram0(y), f)
    wg = make_globe(mk_diagram0(x), mk_diagram0(y), g)
    gv = make_globe(wf, wg, v)
    idle = mk_cospan(identity_rewrite(1), identity_rewrite(1))
    d = mk_diagramn(wf, (idle, gv.cospans[0]))
    nodes = list(all_slices(d))
    edges = []
    for u in range(2):
        edges.append((2 * u, 2 * u + 1, d.cospans[u].forward))
        edges.append((2 * u + 2, 2 * u + 1, d.cospans[u].backward))
    out, legs = colimit(nodes, edges)
    for i, j, r in edges:
        assert compose(r, legs[j]) == legs[i]
    for i, node in enumerate(nodes):
        assert forward_apply(node, legs[i]) == out


def stacked_vertices():
    x = mk_generator(0, 1)
    y = mk_generator(0, 2)
    z = mk_generator(0, 3)
    f = mk_generator(1, 4)
    f2 = mk_generator(1, 5)
    g = mk_generator(1, 6)
    g2 = mk_generator(1, 7)
    v1 = mk_generator(2, 8)
    v2 = mk_generator(2, 9)
    wf = make_globe(mk_diagram0(x), mk_diagram0(y), f)
    wf2 = make_globe(mk_diagram0(x), mk_diagram0(y), f2)
    wg = make_globe(mk_diagram0(y), mk_diagram0(z), g)
    wg2 = make_globe(mk_diagram0(y), mk_diagram0(z), g2)
    chain = attach(wf, "target", wg)
    d = identity_diagram(chain)
    d = attach(d, "target", make_globe(wf, wf2, v1), 0)
    d = attach(d, "target", make_globe(wg, wg2, v2), 1)
    return d, v1, v2


def test_contract_then_expand_stacked_vertices():
    d, v1, v2 = stacked_vertices()
    assert len(d.cospans) == 2
    packed, witness = contract(d, 0, 2)
    assert len(packed.cospans) == 1
    inner = singular_slice(packed, 0)
    assert [singular_slice(inner, i) for i in range(2)] == [
        mk_diagram0(v1),
        mk_diagram0(v2),
    ]
    back, w2 = expand(packed, 0, 1)
    assert strip_diagram(back) == strip_diagram(d)
    assert forward_apply(back, w2) is packed


def test_expand_interchanger_exact_roundtrip():
    d, _, _ = scalar_stack()
    packed, witness = contract(d, 0, 2, bias="right")
    back, w2 = expand(packed, 0, 1)
    assert back is d
    assert w2 is witness


def test_expand_rejects_bad_coordinates():
    d, ga, _ = scalar_stack()
    with pytest.raises(ExpansionError):
        expand(ga, 0, 1)  # single content height, nothing to split
    packed, _ = contract(d, 0, 2, bias="right")
    with pytest.raises(ExpansionError):
        expand(packed, 0, 0)
    with pytest.raises(ExpansionError):
        expand(packed, 0, 2)
    with pytest.raises(ExpansionError):
        expand(packed, 1, 1)
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    wire = make_globe(mk_diagram0(x), mk_diagram0(x), f)
    with pytest.raises(ExpansionError):
        expand(wire, 0, 1)


def test_expand_contract_duality_random():
    rng = random.Random(20240817)
    pool = GenPool(rng)
    tested = 0
    for _ in range(60):
        d = rand_diagram2(rng, pool, rng.randrange(1, 4))
        for h in range(len(d.cospans)):
            q = len(singular_slice(d, h).cospans)
            if q < 2:
                continue
            k = rng.randrange(1, q)
            wide, w = expand(d, h, k)
            assert len(wide.cospans) == len(d.cospans) + 1
            assert forward_apply(wide, w) is d
            outcomes = []
            for bias in (None, "right", "left"):
                try:
                    narrow, _ = contract(wide, h, h + 2, bias=bias)
                except ContractionError:
                    continue
                outcomes.append(narrow)
            assert any(
                strip_diagram(narrow) == strip_diagram(d) for narrow in outcomes
            )
            tested += 1
            if tested >= 40:
                return
    assert tested >= 20
