from fractions import Fraction

import pytest

from conftest import algebra, canonical, example

from dgq.groups import named_group
from dgq.representations import (class_bundle, commutant_dim, decompose, dimensions, double_dual_report,
                                 dual_bundle, irreducible_dims, is_fusion, regular_bundle, tensor_bundles,
                                 trace_qdim, unit_bundle, validate_bundle, vertical_classes)
from dgq.wha import Refused


@pytest.mark.parametrize("g,dims", [("C3", [1, 1, 1]), ("S3", [1, 1, 2]), ("S4", [1, 1, 2, 3, 3])])
def test_irreducible_dims(g, dims):
    assert irreducible_dims(named_group(g)) == dims


@pytest.mark.parametrize("seed", [0, 1, 7])
def test_irreducible_dims_do_not_depend_on_seed(seed):
    assert irreducible_dims(named_group("S3"), seed=seed) == [1, 1, 2]


def test_comma_classes_match_double_cosets():
    # S2 \ S3 / S2 has double cosets of sizes 2 and 4 with stabilizers of order 2 and 1
    classes = vertical_classes(example("comma_S2_S3")[0])
    assert sorted((len(c.members), len(c.loops)) for c in classes) == [(2, 2), (4, 1)]


def test_comma_dimensions():
    d = dimensions(canonical("comma_S2_S3"))
    assert sorted(s.fpdim for s in d.simples) == [1, 1, 2]
    assert d.global_dim == 6 and d.pseudo_unitary and d.integral
    assert d.to_csv().splitlines()[0] == "class,irrep,class_size,loop_order,irrep_dim,qdim,fpdim"


def test_comma_modules():
    W = canonical("comma_S2_S3")
    classes = vertical_classes(W.T)
    R = regular_bundle(W)
    assert validate_bundle(W, R).ok and R.total_dim == W.n
    for cls in classes:
        M = class_bundle(W, cls)
        assert validate_bundle(W, M).ok
        assert trace_qdim(W, M) == 2
    U = unit_bundle(W)
    assert commutant_dim(W, U) == 1
    X2 = class_bundle(W, next(c for c in classes if len(c.members) == 4))
    prod = tensor_bundles(W, X2, X2)
    assert validate_bundle(W, prod).ok
    dec = decompose(W, prod)
    assert dec.check() and sorted(dec.multiplicities.values()) == [1, 1, 1]
    D = dual_bundle(W, X2)
    assert validate_bundle(W, D).ok
    assert double_dual_report(W, X2).ok


def test_bimodule_c2_is_not_fusion():
    v = is_fusion(canonical("bimodule_C2"))
    assert not v.is_fusion and v.v_connected and not v.one_e_per_bottom
    assert v.unit_simple is False and len(v.submodule) == 1
    with pytest.raises(Refused):
        dimensions(canonical("bimodule_C2"))


def test_twisted_vec_c2():
    W = algebra("vec_C2_sign")
    d = dimensions(W)
    assert [s.fpdim for s in d.simples] == [1, 1] and d.global_dim == 2
    dec = decompose(W, regular_bundle(W))
    assert sorted(dec.multiplicities.values()) == [2, 2] and dec.commutant_dim == 8


@pytest.mark.parametrize("name", ["no_siempre11", "matched_pair_S3", "bimodule_coarse2", "discrete3"])
def test_class_size_checksum(name):
    T = example(name)[0]
    total = sum(len(c.members) ** 2 * len(c.loops) for c in vertical_classes(T))
    assert total == T.n


def test_fusion_fpdims_positive_integers():
    for name in ("no_siempre11", "matched_pair_S3", "discrete3"):
        W = canonical(name)
        if is_fusion(W).is_fusion:
            assert all(s.fpdim > 0 and Fraction(s.fpdim).denominator == 1 for s in dimensions(W).simples)
