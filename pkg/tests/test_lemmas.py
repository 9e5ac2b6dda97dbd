from collections import Counter

import pytest

from conftest import example

from dgq import lemmas
from dgq.groups import named_group


@pytest.mark.parametrize("name", ["discrete3", "no_siempre11", "matched_pair_S3", "bimodule_C2", "comma_S2_S3"])
def test_corner_lemmas(name):
    rep = lemmas.corner_lemma_report(example(name)[0])
    assert rep.ok, str(rep)
    assert rep.checked["antipode-triples"] == example(name)[0].n


def test_pair_count_needs_common_product():
    # in T(C2) the count for A = (0, 0) is 2 at Y = (0, 0) and 0 at the other
    # boxes with tr(A) = bl(Y)
    T = example("bimodule_C2")[0]
    A = T.box((0, 0))
    counts = Counter()
    for U, V in lemmas._h_factorizations(T)[A]:
        Y = int(T.vcomp[U, T.tinv[V]])
        if Y >= 0:
            counts[T.boxes[Y]] += 1
    assert counts == {(0, 0): 2}
    assert all(T.bl[Y] == T.tr[A] for Y in range(T.n))


def test_vacancy_characterizations():
    assert lemmas.vacancy_characterizations(example("vec_C2_trivial")[0]) == \
        {"corners": True, "factorization": True, "cores": True}
    assert lemmas.vacancy_characterizations(example("bimodule_coarse2")[0]) == \
        {"corners": False, "factorization": False, "cores": False}


@pytest.mark.parametrize("g", ["C2", "C3", "S3", "coarse2"])
def test_bimodule_package(g):
    rep = lemmas.bimodule_package(named_group(g))
    assert rep.ok, str(rep)
