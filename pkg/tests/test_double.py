import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import EXAMPLE_NAMES, example

from dgq import builders
from dgq.double import (CornerKind, DomainError, double_factorizations, filling_condition, is_vacant,
                        transitivity_flags, transpose, validate)
from dgq.groups import named_group


@pytest.mark.parametrize("name", EXAMPLE_NAMES)
def test_examples_are_double_groupoids(name):
    T = example(name)[0]
    rep = validate(T)
    assert rep.ok, str(rep)
    assert validate(transpose(T)).ok


def test_box_counts():
    assert example("discrete3")[0].n == 3
    assert example("no_siempre11")[0].n == 47
    assert example("no_siempre31")[0].n == 223
    assert example("comma_S2_S3")[0].n == 24
    assert example("vec_C2_sign")[0].n == 8
    assert example("bimodule_coarse2")[0].n == 16


def test_interchange_mutation_is_caught():
    T = builders.bimodule_dgpd(named_group("C3"))
    T.vcomp = T.vcomp.copy()
    # swap two defined results of the vertical table
    (i, j), (k, m) = np.argwhere(T.vcomp >= 0)[[1, 2]]
    T.vcomp[i, j], T.vcomp[k, m] = T.vcomp[k, m], T.vcomp[i, j]
    assert not validate(T).ok


def test_corners_of_bimodule_c2():
    # one point and G = C2: every corner counts the two arrows leaving the point
    T = example("bimodule_C2")[0]
    for kind in CornerKind:
        assert T.corner_tables[kind][T.corner_domains[kind]].tolist() == [2] * int(T.corner_domains[kind].sum())
    assert not is_vacant(T)
    assert filling_condition(T)


def test_corner_outside_domain_raises():
    T = example("no_siempre11")[0]
    V, H = T.V, T.H
    g = next(g for g in range(V.n_arrows) if V.source[g] != H.source[0])
    with pytest.raises(DomainError):
        T.corner(CornerKind.UL, g, 0)


def test_theta_table_no_siempre():
    T = builders.no_siempre(2, 1)
    assert dict(zip(T.points, T.theta_values.tolist())) == {"P": 1, "Q": 2, "R": 1, "S1": 2, "S2": 2, "T1": 2}


def test_vacant_examples_factor_uniquely():
    T = example("matched_pair_S3")[0]
    assert is_vacant(T)
    for X in range(T.n):
        for Y in T.by_left.get(int(T.r[X]), ()):
            C = int(T.hcomp[X, Y])
            for A in range(T.n):
                for B in T.by_top.get(int(T.b[A]), ()):
                    if int(T.vcomp[A, B]) == C:
                        assert len(double_factorizations(T, X, Y, A, B)) == 1


def test_coarse_squares_transitivity():
    T = builders.commuting_squares(named_group("coarse3"))
    flags = transitivity_flags(T)
    assert flags["locally_trivial"]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["no_siempre11", "comma_S2_S3", "bimodule_coarse2"]), st.data())
def test_inversions_are_involutions(name, data):
    T = example(name)[0]
    A = data.draw(st.integers(0, T.n - 1))
    assert T.hinv[T.hinv[A]] == A and T.vinv[T.vinv[A]] == A
    assert T.tinv[A] == T.vinv[T.hinv[A]]
    # A beside its horizontal inverse is hid(l A); A over its vertical inverse is vid(t A)
    assert int(T.hcomp[A, T.hinv[A]]) == T.hid[T.l[A]]
    assert int(T.vcomp[A, T.vinv[A]]) == T.vid[T.t[A]]
