from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conftest import algebra, canonical, example

from dgq import builders
from dgq.cocycles import SigmaCochain, TauCochain
from dgq.element import Element, tensor
from dgq.verify import verify_axioms
from dgq.wha import (Refused, ThetaWeights, antipode_analysis, build_canonical, build_sigma_tau, build_theta,
                     check_theta_admissible, normalize_theta, pivotal_element, structure_differences)


def test_three_routes_agree():
    T = example("no_siempre11")[0]
    theta = ThetaWeights.canonical(T)
    W1 = build_canonical(T)
    W2 = build_theta(T, theta)
    W3 = build_sigma_tau(T, SigmaCochain.trivial(T), TauCochain.from_theta(T, theta))
    assert structure_differences(W1, W2) == []
    assert W3.conditions.ok
    assert structure_differences(W2, W3) == []


def test_antipode_mutation_breaks_atp1():
    W = build_canonical(example("no_siempre11")[0])
    assert verify_axioms(W).ok
    W.antipode_coeffs = list(W.antipode_coeffs)
    W.antipode_coeffs[5] *= 2
    failed = verify_axioms(W).axioms_failed()
    assert "atp-1" in failed or "atp-2" in failed


def test_ones_theta_is_refused_on_bimodule_c2():
    T = example("bimodule_C2")[0]
    ones = ThetaWeights.constant(T)
    adm = check_theta_admissible(T, ones)
    assert not adm.ok and adm.failures[0][2] == 2
    with pytest.raises(Refused) as info:
        build_theta(T, ones)
    assert info.value.witness[2] == 2
    assert normalize_theta(T, ones).theta == ThetaWeights.canonical(T)


def test_no_siempre_spectrum():
    an = antipode_analysis(build_canonical(builders.no_siempre(3, 1)))
    assert an.spectrum == [Fraction(2, 3), 1, Fraction(3, 2)]
    assert not an.is_involutive and an.is_regular


def test_discrete_is_a_commutative_weak_hopf_algebra():
    W = canonical("discrete3")
    assert W.n == 3
    assert W.delta_one == Element(((A, A), 1) for A in range(3))
    assert verify_axioms(W).is_hopf is False


def test_vacant_t0_is_weak_but_not_hopf():
    # two points, so Delta(1) has two terms per point pair and is not 1 x 1
    rep = verify_axioms(canonical("vec_C2_trivial"))
    assert rep.ok and rep.is_hopf is False


def test_pivotal_element_of_canonical():
    W = canonical("no_siempre11")
    G = pivotal_element(W)
    assert set(G.terms) == {int(W.T.vid[x]) for x in range(W.T.H.n_arrows)}


def elements(n):
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=4)
    return st.dictionaries(st.integers(0, n - 1), coeff, max_size=4).map(Element)


@pytest.mark.parametrize("name", ["no_siempre11", "comma_S2_S3", "vec_C2_sign"])
def test_random_elements(name):
    W = algebra(name)

    @settings(max_examples=30, deadline=None)
    @given(elements(W.n), elements(W.n), elements(W.n))
    def check(a, b, c):
        assert W.mul(W.mul(a, b), c) == W.mul(a, W.mul(b, c))
        assert W.comul(W.mul(a, b)) == W.tensor_mul(W.comul(a), W.comul(b))
        assert W.antipode(W.mul(a, b)) == W.mul(W.antipode(b), W.antipode(a))
        assert W.eps_t(W.eps_t(a)) == W.eps_t(a)
        assert W.eps_s(W.eps_s(a)) == W.eps_s(a)
        assert W.mul(W.unit, a) == a == W.mul(a, W.unit)

    check()


def test_tensor_helper():
    a = Element({0: 1, 1: Fraction(1, 2)})
    assert tensor(a, Element.basis(2)) == Element({(0, 2): 1, (1, 2): Fraction(1, 2)})
