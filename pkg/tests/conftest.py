from functools import lru_cache

import pytest

from dgq import builders
from dgq.cocycles import ThreeCocycle, TauCochain, sign_cocycle
from dgq.groups import named_group, named_subgroup
from dgq.wha import ThetaWeights, build_canonical, build_sigma_tau

EXAMPLE_NAMES = (
    "discrete3", "no_siempre11", "no_siempre31", "matched_pair_S3", "bimodule_C2",
    "bimodule_coarse2", "comma_S2_S3", "vec_C2_trivial", "vec_C2_sign",
)


@lru_cache(maxsize=None)
def example(name: str):
    """(double groupoid, sigma or None) for one of the standard examples."""
    S3 = named_group("S3")
    C2 = named_group("C2")
    if name == "discrete3":
        return builders.discrete_dgpd(3), None
    if name == "no_siempre11":
        return builders.no_siempre(1, 1), None
    if name == "no_siempre31":
        return builders.no_siempre(3, 1), None
    if name == "matched_pair_S3":
        d = builders.exact_factorization(S3, named_subgroup(S3, "C3"), named_subgroup(S3, "S2"))
        return builders.matched_pair(d), None
    if name == "bimodule_C2":
        return builders.bimodule_dgpd(C2), None
    if name == "bimodule_coarse2":
        return builders.bimodule_dgpd(named_group("coarse2")), None
    if name == "comma_S2_S3":
        return builders.comma(named_subgroup(S3, "S2"), S3), None
    if name == "vec_C2_trivial":
        return builders.vec_g_omega(C2, ThreeCocycle.trivial(C2))
    if name == "vec_C2_sign":
        return builders.vec_g_omega(C2, sign_cocycle(C2))
    raise KeyError(name)


@lru_cache(maxsize=None)
def algebra(name: str):
    """The weak Hopf algebra of an example; twisted ones carry canonical theta."""
    T, sigma = example(name)
    if sigma is None:
        return build_canonical(T)
    theta = ThetaWeights.canonical(T)
    W = build_sigma_tau(T, sigma, TauCochain.from_theta(T, theta))
    W.theta = theta
    return W


@lru_cache(maxsize=None)
def canonical(name: str):
    return build_canonical(example(name)[0])


@pytest.fixture(params=EXAMPLE_NAMES)
def name(request):
    return request.param


# one line per acceptance criterion, printed at the end of the run
CRITERIA: dict[int, tuple[str, bool, str]] = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    CRITERIA[number] = (title, ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(CRITERIA):
        title, ok, detail = CRITERIA[k]
        line = f"criterion {k:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
