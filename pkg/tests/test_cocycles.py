from fractions import Fraction

import pytest

from conftest import example

from dgq.cocycles import (SigmaCochain, TauCochain, ThreeCocycle, check_cocycle, check_compatibility,
                          sign_cocycle)
from dgq.groups import named_group
from dgq.wha import ThetaWeights


def test_sign_cocycle_is_a_cocycle():
    C2 = named_group("C2")
    assert check_cocycle(sign_cocycle(C2)).ok
    assert sign_cocycle(C2)(1, 1, 1) == -1
    assert sign_cocycle(C2)(1, 0, 1) == 1


def test_sign_cocycle_needs_c2():
    with pytest.raises(ValueError):
        sign_cocycle(named_group("C3"))


def test_broken_three_cocycle_fails():
    C2 = named_group("C2")
    bad = ThreeCocycle.from_function(C2, lambda a, b, c: -1 if (a, b, c) == (1, 0, 1) else 1)
    assert not check_cocycle(bad).ok


def test_coboundaries_are_cocycles():
    C3 = named_group("C3")
    alpha = lambda a, b: Fraction(2) if (a, b) == (1, 2) else Fraction(1)
    assert check_cocycle(ThreeCocycle.coboundary(C3, alpha)).ok


def test_sigma_from_sign_cocycle():
    T, sigma = example("vec_C2_sign")
    assert check_cocycle(sigma).ok
    assert not sigma.is_trivial()
    assert set(sigma.values.values()) == {1, -1}
    tau = TauCochain.from_theta(T, ThetaWeights.canonical(T))
    assert check_compatibility(T, sigma, tau).ok


def test_sigma_normalization_violation():
    T, sigma = example("vec_C2_sign")
    values = dict(sigma.values)
    A = 0
    key = (A, int(T.vid[T.b[A]]))
    values[key] = Fraction(3)
    assert not check_cocycle(SigmaCochain(T, values)).ok


def test_trivial_cochains():
    T = example("comma_S2_S3")[0]
    assert SigmaCochain.trivial(T).is_trivial()
    assert check_cocycle(TauCochain.trivial(T)).ok
