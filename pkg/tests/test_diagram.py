import random

import pytest

from helpers import GenPool, rand_diagram1, rand_diagram2, rand_rewrite1
from zigzag.compose import check_rewrite
from zigzag.diagram import (
    ApplicationError,
    all_slices,
    backward_apply,
    check_diagram,
    diagram_dimension,
    diagram_source,
    diagram_target,
    forward_apply,
    identity_rewrite,
    mk_atom0,
    mk_cone,
    mk_cospan,
    mk_diagram0,
    mk_diagramn,
    mk_generator,
    mk_identity0,
    mk_rewriten,
    regular_preimage,
    regular_slice,
    rewrite_source_height,
    singular_image,
    singular_slice,
)


def wire(a, b, fa, fb):
    return mk_cospan(mk_atom0(a, b, fa), mk_atom0(a, b, fb))


def test_factory_validation():
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    with pytest.raises(ValueError):
        mk_atom0(f, x, 1)  # lowers dimension
    with pytest.raises(ValueError):
        mk_cospan(mk_identity0(), mk_rewriten(1, ()))
    with pytest.raises(ValueError):
        mk_cone(0, [wire(x, f, 1, 2)], wire(x, f, 3, 4), [])  # slice count
    with pytest.raises(ValueError):
        mk_cone(-1, (), wire(x, f, 1, 2), ())
    with pytest.raises(ValueError):
        mk_rewriten(0, ())
    with pytest.raises(ValueError):
        mk_diagramn(mk_diagram0(x), [mk_cospan(mk_rewriten(1, ()), mk_rewriten(1, ()))])


def test_cone_ordering_rules():
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    cs = wire(x, f, 1, 2)
    merge = mk_cone(0, [cs, cs], cs, [mk_identity0(), mk_identity0()])
    insert = mk_cone(0, (), cs, ())
    # overlapping ranges are rejected
    with pytest.raises(ValueError):
        mk_rewriten(1, [merge, mk_cone(1, [cs], cs, [mk_identity0()])])
    # equal indices are fine when the earlier cone inserts
    r = mk_rewriten(1, [insert, insert])
    assert len(r.cones) == 2
    # ... and an identity-shaped cone is accepted but normalized away
    r2 = mk_rewriten(1, [insert, mk_cone(0, [cs], cs, [mk_identity0()])])
    assert r2.cones == (insert,)
    # equal indices after a consuming cone are rejected
    with pytest.raises(ValueError):
        mk_rewriten(1, [mk_cone(0, [cs], cs, [mk_identity0()]), insert])


def test_atom_application():
    x = mk_generator(0, 1)
    f = mk_generator(1, 2)
    d = mk_diagram0(x)
    r = mk_atom0(x, f, 3)
    assert forward_apply(d, r) == mk_diagram0(f)
    assert backward_apply(mk_diagram0(f), r) == d
    with pytest.raises(ApplicationError):
        forward_apply(mk_diagram0(f), r)
    with pytest.raises(ApplicationError):
        backward_apply(d, r)


def test_slices_of_a_wire():
    x = mk_generator(0, 1)
    y = mk_generator(0, 2)
    f = mk_generator(1, 3)
    d = mk_diagramn(mk_diagram0(x), [mk_cospan(mk_atom0(x, f, -1), mk_atom0(y, f, 1))])
    assert diagram_dimension(d) == 1
    assert all_slices(d) == (mk_diagram0(x), mk_diagram0(f), mk_diagram0(y))
    assert diagram_source(d) == mk_diagram0(x)
    assert diagram_target(d) == mk_diagram0(y)
    assert singular_slice(d, 0) == mk_diagram0(f)
    assert regular_slice(d, 1) == mk_diagram0(y)


def test_insertion_cones_share_an_index():
    x = mk_generator(0, 1)
    a = mk_generator(1, 2)
    b = mk_generator(1, 3)
    d = mk_diagramn(mk_diagram0(x), ())
    ca = wire(x, a, 1, 2)
    cb = wire(x, b, 3, 4)
    r = mk_rewriten(1, [mk_cone(0, (), ca, ()), mk_cone(0, (), cb, ())])
    out = forward_apply(d, r)
    assert out.cospans == (ca, cb)
    assert backward_apply(out, r) == d


def test_apply_structural_errors():
    x = mk_generator(0, 1)
    a = mk_generator(1, 2)
    b = mk_generator(1, 3)
    ca = wire(x, a, 1, 2)
    cb = wire(x, b, 3, 4)
    d = mk_diagramn(mk_diagram0(x), [ca])
    with pytest.raises(ApplicationError):
        forward_apply(d, mk_rewriten(1, [mk_cone(0, [cb], ca, [mk_identity0()])]))
    with pytest.raises(ApplicationError):
        forward_apply(d, mk_rewriten(1, [mk_cone(1, [ca], cb, [mk_identity0()])]))
    with pytest.raises(ApplicationError):
        forward_apply(d, mk_rewriten(2, ()))
    with pytest.raises(ApplicationError):
        backward_apply(d, mk_rewriten(1, [mk_cone(0, [ca], cb, [mk_identity0()])]))


def test_random_roundtrips():
    rng = random.Random(20260814)
    for case in range(300):
        pool = GenPool(rng)
        d = rand_diagram1(rng, pool, rng.randrange(6))
        r = rand_rewrite1(rng, pool, d)
        s = check_rewrite(d, r)
        assert s == forward_apply(d, r)
        assert backward_apply(s, r) == d
        assert rewrite_source_height(r, len(s.cospans)) == len(d.cospans)
        for v in range(len(s.cospans) + 1):
            assert regular_slice(s, v) == regular_slice(d, regular_preimage(r, v))
        for u in range(len(d.cospans)):
            img = singular_image(r, u)
            assert 0 <= img < len(s.cospans)


def test_random_2diagrams_are_consistent():
    rng = random.Random(99)
    for case in range(150):
        pool = GenPool(rng)
        d = rand_diagram2(rng, pool, rng.randrange(4))
        assert diagram_dimension(d) == 2
        check_diagram(d)
        # interning: rebuilding from parts gives back the same object
        again = mk_diagramn(d.source, d.cospans)
        assert again is d


def test_identity_rewrite_application():
    rng = random.Random(7)
    pool = GenPool(rng)
    d = rand_diagram1(rng, pool, 4)
    r = identity_rewrite(1)
    assert forward_apply(d, r) is d
    assert backward_apply(d, r) is d
