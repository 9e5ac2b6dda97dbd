import pytest

from conftest import EXAMPLE_NAMES, example

from dgq import core
from dgq.groupoid import validate_groupoid


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_core_report(name):
    rep = core.core_report(example(name)[0])
    assert rep.ok, str(rep)


def test_core_sizes():
    # T(C2): D is a copy of C2; vacant examples have discrete cores
    T = example("bimodule_C2")[0]
    assert len(core.build_core(T, "D").carrier) == 2
    T = example("matched_pair_S3")[0]
    for side in ("D", "E"):
        c = core.build_core(T, side)
        assert len(c.carrier) == T.n_points
        assert validate_groupoid(c.as_groupoid).ok


def test_core_side_validation():
    with pytest.raises(ValueError):
        core.build_core(example("discrete3")[0], "X")


@pytest.mark.parametrize("name", ["no_siempre11", "comma_S2_S3"])
def test_d_components_partition_points(name):
    T = example(name)[0]
    comps = core.d_components(T)
    assert sorted(P for c in comps for P in c) == list(range(T.n_points))
