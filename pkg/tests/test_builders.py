import pytest

from dgq import builders
from dgq.double import is_vacant, validate
from dgq.groups import named_group, named_subgroup


@pytest.mark.parametrize("family", builders.FAMILIES)
def test_every_family_builds_valid(family):
    kwargs = {"G": "C2"} if family in ("vec-g-omega", "bimodule") else {}
    T, sigma = builders.build_family(family, **kwargs)
    assert validate(T).ok
    assert (sigma is not None) == (family == "vec-g-omega")


def test_unknown_family():
    with pytest.raises(ValueError):
        builders.build_family("hexagons")


def test_no_siempre_needs_positive_parameters():
    with pytest.raises(ValueError):
        builders.no_siempre(0, 1)


def test_exact_factorization_sizes():
    S3 = named_group("S3")
    T = builders.matched_pair(builders.exact_factorization(S3, named_subgroup(S3, "C3"), named_subgroup(S3, "S2")))
    assert T.n == 6 and is_vacant(T)


def test_t_zero_is_vacant():
    T = builders.t_zero(named_group("C3"))
    assert T.n == 27 and T.n_points == 3 and is_vacant(T)


def test_comma_needs_subgroup():
    with pytest.raises(ValueError):
        builders.comma(named_group("C3"), named_group("S3"))
