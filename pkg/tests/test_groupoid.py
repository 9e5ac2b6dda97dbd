import numpy as np
from hypothesis import given, settings, strategies as st

from dgq.groupoid import (coarse, connected_components, direct_product, discrete, from_tables, opposite,
                          validate_groupoid)
from dgq.groups import conjugacy_classes, cyclic, named_group, named_subgroup, symmetric


def test_coarse_groupoid_shape():
    g = coarse("abc")
    assert g.n_objects == 3 and g.n_arrows == 9
    assert validate_groupoid(g).ok
    # (a, b) then (b, c) is (a, c)
    assert g.arrows[g.compose(g.arr(("a", "b")), g.arr(("b", "c")))] == ("a", "c")
    assert g.compose(g.arr(("a", "b")), g.arr(("a", "b"))) == -1


def test_discrete_has_only_identities():
    g = discrete(range(4))
    assert all(g.is_identity(f) for f in range(g.n_arrows))
    assert len(connected_components(g)) == 4


def test_named_groups():
    assert named_group("S3").n_arrows == 6
    assert named_group("C5").n_arrows == 5
    assert named_group("coarse2").n_objects == 2
    assert len(conjugacy_classes(symmetric(4))) == 5
    assert named_subgroup(named_group("S3"), "C3").n_arrows == 3


def test_validator_catches_broken_associativity():
    g = cyclic(3)
    comp = g.comp.copy()
    comp[1, 1] = 0
    bad = from_tables(g.objects, g.arrows, g.source, g.target, comp, identity=g.identity, inverse=g.inverse)
    assert not validate_groupoid(bad).ok


def test_opposite_reverses_composition():
    g = symmetric(3)
    op = opposite(g)
    for f in range(g.n_arrows):
        for h in range(g.n_arrows):
            assert g.arrows[g.compose(f, h)] == op.arrows[op.compose(op.arr(g.arrows[h]), op.arr(g.arrows[f]))]


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(["C2", "C3", "C4", "S3", "coarse2", "coarse3"]),
       st.sampled_from(["C2", "C3", "coarse2"]))
def test_direct_products_are_groupoids(a, b):
    g = direct_product(named_group(a), named_group(b))
    assert validate_groupoid(g).ok
    assert g.n_arrows == named_group(a).n_arrows * named_group(b).n_arrows


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(["S3", "C4", "coarse3"]), st.data())
def test_inverse_and_identity_laws(name, data):
    g = named_group(name)
    f = data.draw(st.integers(0, g.n_arrows - 1))
    inv = int(g.inverse[f])
    assert g.compose(f, inv) == g.identity[g.source[f]]
    assert g.compose(inv, f) == g.identity[g.target[f]]
    assert np.all(g.source[g.identity] == np.arange(g.n_objects))
