"""The acceptance criteria, one test each.

Every test records a PASS/FAIL line that is printed in the terminal summary
(``pytest tests/test_acceptance.py``).  All checks are exact rational
comparisons.
"""
import itertools
import time
from collections import Counter
from fractions import Fraction

from conftest import EXAMPLE_NAMES, algebra, canonical, example, record

from dgq import builders, lemmas
from dgq.double import transpose
from dgq.groups import named_group
from dgq.representations import dimensions, is_fusion, loop_irreps, vertical_classes
from dgq.verify import verify_axioms
from dgq.wha import (ThetaWeights, antipode_analysis, build_canonical, build_theta, duality_pairing,
                     pivotal_report, special_element_report, star_structure)

REQUIRED_AXIOMS = ("d-mult", "ax-unit", "ax-counit", "atp-1", "atp-2", "atp-3")


def _run(number, title, checks):
    """checks: {label: (ok, detail)}; records and asserts."""
    bad = {k: d for k, (ok, d) in checks.items() if not ok}
    detail = "; ".join(f"{k}: {d}" for k, d in bad.items()) if bad else f"{len(checks)} cases"
    record(number, title, not bad, detail)
    assert not bad, detail


def test_axiom_suite():
    checks = {}
    for name in EXAMPLE_NAMES:
        start = time.perf_counter()
        rep = verify_axioms(algebra(name))
        elapsed = time.perf_counter() - start
        missing = [a for a in REQUIRED_AXIOMS if not rep.checked.get(a)]
        ok = rep.ok and not missing and elapsed < 60
        checks[name] = (ok, f"failures {sorted(rep.axioms_failed())}, unchecked {missing}, {elapsed:.1f}s")
    _run(1, "weak Hopf axioms on nine examples", checks)


def test_no_siempre_reproduction():
    checks = {}
    for m, n in ((1, 1), (2, 1), (3, 1), (1, 2)):
        T = builders.no_siempre(m, n)
        W = build_canonical(T)
        A = builders.no_siempre_box(T)
        S2 = W.antipode(W.antipode(W.basis(A)))
        theta = dict(zip(T.points, (int(v) for v in T.theta_values)))
        want = {"P": 1, "R": 1, "Q": n + 1}
        want.update({f"T{i}": n + 1 for i in range(1, n + 1)})
        want.update({f"S{j}": m for j in range(1, m + 1)})
        ok = S2 == W.basis(A) * Fraction(m, n + 1) and theta == want
        checks[(m, n)] = (ok, f"S^2 = {S2.dump()}, theta {theta}")
    _run(2, "no_siempre eigenvalue m/(n+1) and theta table", checks)


def test_corner_lemmas():
    checks = {}
    for name in EXAMPLE_NAMES:
        rep = lemmas.corner_lemma_report(example(name)[0])
        checks[name] = (rep.ok, str(rep))
    _run(3, "corner-function identities, exhaustive", checks)


def test_vacancy_equivalences():
    checks = {}
    for name in ("matched_pair_S3", "vec_C2_trivial", "vec_C2_sign"):
        v = lemmas.vacancy_characterizations(example(name)[0])
        checks[name] = (all(v.values()), str(v))
    v = lemmas.vacancy_characterizations(example("bimodule_C2")[0])
    checks["bimodule_C2"] = (not any(v.values()), str(v))
    _run(4, "three vacancy tests agree", checks)


def test_pivotal_identities():
    checks = {}
    for name in EXAMPLE_NAMES:
        rep = pivotal_report(algebra(name))
        checks[name] = (rep.ok and bool(rep.checked), str(rep))
    _run(5, "pivotal element identities", checks)


def test_regularity():
    checks = {}
    for name in EXAMPLE_NAMES:
        an = antipode_analysis(canonical(name))
        ok = an.report.ok and an.is_regular and an.scalars == an.closed_form
        checks[name] = (ok, f"regular {an.is_regular}, {an.report}")
        tw = antipode_analysis(algebra(name))
        checks[name + " (twisted)"] = (tw.report.ok and tw.scalars == tw.closed_form, str(tw.report))
    _run(6, "canonical theta is regular; S^2 closed form", checks)


def test_duality():
    checks = {}
    for name in ("bimodule_C2", "comma_S2_S3"):
        T = example(name)[0]
        theta = ThetaWeights.canonical(T)
        W, Wt = build_theta(T, theta), build_theta(transpose(T), theta)
        P = duality_pairing(W, Wt, exhaustive=True)
        ok = P.report.ok and P.rank == T.n and P.report.checked.get("pairing-product")
        checks[name] = (bool(ok), f"rank {P.rank}/{T.n}, {P.report}")
    _run(7, "duality pairing with the transpose", checks)


def test_star_structure():
    checks = {}
    for name in EXAMPLE_NAMES:
        W = canonical(name)
        st = star_structure(W)
        T = W.T
        positive = all(st.gram.get((A, A), 0) > 0 for A in range(T.n))
        diagonal = all(A == B for A, B in st.gram)
        checks[name] = (st.report.ok and positive and diagonal, str(st.report))
    _run(8, "star structure and positive diagonal Gram form", checks)


def _double_coset_oracle():
    """fpdims of comma(S2 <= S3) from double cosets and stabilizers alone."""
    perms = list(itertools.permutations(range(3)))
    mul = lambda p, q: tuple(q[p[i]] for i in range(3))
    inv = lambda p: tuple(sorted(range(3), key=lambda i: p[i]))
    F = [(0, 1, 2), (1, 0, 2)]
    seen, out = set(), []
    for g in perms:
        if g in seen:
            continue
        coset = {mul(mul(a, g), b) for a in F for b in F}
        seen |= coset
        stab = [a for a in F if mul(mul(inv(g), a), g) in F]
        assert all(mul(a, b) == mul(b, a) for a in stab for b in stab)
        # abelian stabilizer: |stab| characters of dimension 1
        out += [Fraction(len(coset), len(F))] * len(stab)
    return sorted(out)


def test_fusion_and_dimensions():
    checks = {}
    oracle = _double_coset_oracle()
    checks["oracle"] = (oracle == [1, 1, 2] and sum(d * d for d in oracle) == 6, str(oracle))
    dims = dimensions(canonical("comma_S2_S3"))
    fp = sorted(s.fpdim for s in dims.simples)
    checks["comma"] = (fp == oracle and dims.fp_global_dim == 6, f"fpdims {fp}, global {dims.fp_global_dim}")
    v = is_fusion(canonical("bimodule_C2"))
    checks["bimodule_C2"] = (not v.is_fusion and v.v_connected and not v.one_e_per_bottom
                             and len(v.witness) == 2, f"verdict {v.reasons}, witness {v.witness}")
    for name in EXAMPLE_NAMES:
        W = canonical(name)
        T = W.T
        total = sum((len(c.members) * lab.dim) ** 2
                    for c in vertical_classes(T) for lab in loop_irreps(W, c).labels)
        checks[name + " checksum"] = (total == T.n, f"{total} != {T.n}")
        if is_fusion(W).is_fusion:
            d = dimensions(W)
            ok = all(s.fpdim is not None and s.fpdim > 0 and s.fpdim.denominator == 1 for s in d.simples)
            checks[name + " fpdims"] = (ok, str([s.fpdim for s in d.simples]))
    _run(9, "fusion verdicts and Frobenius-Perron dimensions", checks)


def test_bimodule_package():
    checks = {}
    for g in ("C2", "C3", "coarse2"):
        rep = lemmas.bimodule_package(named_group(g))
        checks[g] = (rep.ok, str(rep))
    _run(10, "T(G): separability idempotent, D = G, S^2 = id, |G|^2", checks)


def test_delta_one_closed_forms():
    checks = {}
    for name in EXAMPLE_NAMES:
        rep = special_element_report(canonical(name))
        counted = Counter(rep.checked)
        ok = rep.ok and counted["delta-one-closed"] == 2 and counted["delta-vid-closed"] == canonical(name).T.H.n_arrows
        checks[name] = (ok, str(rep))
    _run(11, "closed forms of Delta(1) and Delta(vid x)", checks)


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
