"""Cochains that deform the product (sigma) and coproduct (tau) of kT, group
3-cocycles, and the compatibility conditions between sigma and tau."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterator

from .double import DoubleGroupoid, double_factorizations
from .groupoid import Groupoid
from .report import ValidationReport


def vertical_pairs(T: DoubleGroupoid) -> Iterator[tuple[int, int]]:
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            yield A, B


def horizontal_pairs(T: DoubleGroupoid) -> Iterator[tuple[int, int]]:
    for A in range(T.n):
        for B in T.by_left.get(int(T.r[A]), ()):
            yield A, B


@dataclass(eq=False)
class SigmaCochain:
    """sigma(A, B) for vertically composable A over B."""
    T: DoubleGroupoid
    values: dict = field(default_factory=dict)

    def __call__(self, A: int, B: int) -> Fraction:
        return self.values[(A, B)]

    @classmethod
    def from_function(cls, T: DoubleGroupoid, f: Callable[[int, int], Fraction]) -> "SigmaCochain":
        return cls(T, {(A, B): Fraction(f(A, B)) for A, B in vertical_pairs(T)})

    @classmethod
    def trivial(cls, T: DoubleGroupoid) -> "SigmaCochain":
        return cls.from_function(T, lambda A, B: 1)

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values.values())


@dataclass(eq=False)
class TauCochain:
    """tau(A, B) for horizontally composable A | B."""
    T: DoubleGroupoid
    values: dict = field(default_factory=dict)

    def __call__(self, A: int, B: int) -> Fraction:
        return self.values[(A, B)]

    @classmethod
    def from_function(cls, T: DoubleGroupoid, f: Callable[[int, int], Fraction]) -> "TauCochain":
        return cls(T, {(A, B): Fraction(f(A, B)) for A, B in horizontal_pairs(T)})

    @classmethod
    def trivial(cls, T: DoubleGroupoid) -> "TauCochain":
        return cls.from_function(T, lambda A, B: 1)

    @classmethod
    def from_theta(cls, T: DoubleGroupoid, theta) -> "TauCochain":
        """tau(A, B) = theta(bl(B))."""
        return cls.from_function(T, lambda A, B: theta[int(T.bl[B])])


@dataclass(eq=False)
class ThreeCocycle:
    """omega on G x G x G for a group G (a one-object groupoid), keyed by labels."""
    group: Groupoid
    values: dict = field(default_factory=dict)

    def __call__(self, a, b, c) -> Fraction:
        return self.values[(a, b, c)]

    @classmethod
    def from_function(cls, G: Groupoid, f: Callable) -> "ThreeCocycle":
        return cls(G, {k: Fraction(f(*k)) for k in product(G.arrows, repeat=3)})

    @classmethod
    def trivial(cls, G: Groupoid) -> "ThreeCocycle":
        return cls.from_function(G, lambda a, b, c: 1)

    @classmethod
    def coboundary(cls, G: Groupoid, alpha: Callable) -> "ThreeCocycle":
        """d(alpha) for a 2-cochain alpha with values in Q^x."""
        m = _mul(G)
        return cls.from_function(G, lambda a, b, c: Fraction(alpha(b, c)) * alpha(a, m(b, c))
                                 / (Fraction(alpha(m(a, b), c)) * alpha(a, b)))


def sign_cocycle(G: Groupoid) -> ThreeCocycle:
    """omega(a, g, h) = (-1)^(a g h) on the cyclic group of order 2 with elements 0, 1."""
    if sorted(G.arrows) != [0, 1]:
        raise ValueError("sign_cocycle needs the cyclic group {0, 1}")
    return ThreeCocycle.from_function(G, lambda a, g, h: -1 if a == g == h == 1 else 1)


def _mul(G: Groupoid):
    return lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]


# -- cocycle conditions ---------------------------------------------------------------

def check_cocycle(c: SigmaCochain | TauCochain | ThreeCocycle) -> ValidationReport:
    rep = ValidationReport()
    if isinstance(c, ThreeCocycle):
        _check_three_cocycle(c, rep)
    elif isinstance(c, SigmaCochain):
        _check_sigma(c, rep)
    elif isinstance(c, TauCochain):
        _check_tau(c, rep)
    else:
        raise TypeError(f"not a cochain: {type(c).__name__}")
    return rep


def _check_domain(values: dict, pairs, rep: ValidationReport, name: str) -> bool:
    expected = set(pairs)
    missing = sorted(expected - set(values))
    extra = sorted(set(values) - expected)
    for w in missing:
        rep.broken(f"{name}-missing-value", *w)
    for w in extra:
        rep.broken(f"{name}-value-off-domain", *w)
    for k, v in values.items():
        if not v:
            rep.broken(f"{name}-zero-value", *k)
    return not (missing or extra) and all(values.values())


def _check_sigma(s: SigmaCochain, rep: ValidationReport) -> None:
    T = s.T
    if not _check_domain(s.values, vertical_pairs(T), rep, "sigma"):
        return
    for A, B in vertical_pairs(T):
        AB = int(T.vcomp[A, B])
        for C in T.by_top.get(int(T.b[B]), ()):
            rep.count("sigma-cocycle")
            if s(A, B) * s(AB, C) != s(B, C) * s(A, int(T.vcomp[B, C])):
                rep.fail("sigma-cocycle", A, B, C)
    for A in range(T.n):
        rep.count("sigma-normalized")
        if s(A, int(T.vid[T.b[A]])) != 1 or s(int(T.vid[T.t[A]]), A) != 1:
            rep.fail("sigma-normalized", A)


def _check_tau(t: TauCochain, rep: ValidationReport) -> None:
    T = t.T
    if not _check_domain(t.values, horizontal_pairs(T), rep, "tau"):
        return
    for A, B in horizontal_pairs(T):
        AB = int(T.hcomp[A, B])
        for C in T.by_left.get(int(T.r[B]), ()):
            rep.count("tau-cocycle")
            if t(A, B) * t(AB, C) != t(B, C) * t(A, int(T.hcomp[B, C])):
                rep.fail("tau-cocycle", A, B, C)


def _check_three_cocycle(w: ThreeCocycle, rep: ValidationReport) -> None:
    G = w.group
    if G.n_objects != 1:
        rep.broken("omega-not-a-group")
        return
    if not _check_domain(w.values, product(G.arrows, repeat=3), rep, "omega"):
        return
    m = _mul(G)
    e = G.arrows[G.identity[0]]
    for a, b, c, d in product(G.arrows, repeat=4):
        rep.count("omega-cocycle")
        if w(b, c, d) * w(a, m(b, c), d) * w(a, b, c) != w(m(a, b), c, d) * w(a, b, m(c, d)):
            rep.fail("omega-cocycle", a, b, c, d)
    for a, b in product(G.arrows, repeat=2):
        if w(e, a, b) != 1 or w(a, e, b) != 1 or w(a, b, e) != 1:
            rep.fail("omega-normalized", a, b)


# -- the five compatibility conditions -------------------------------------------------

def _partners(T: DoubleGroupoid):
    """For each box U: boxes A with AU a vertical identity, boxes C with UC one,
    boxes A with A over U a horizontal identity, boxes C with U over C one."""
    h_left = [[A for A in T.by_right.get(int(T.l[U]), ()) if T.is_h_box(int(T.hcomp[A, U]))] for U in range(T.n)]
    h_right = [[C for C in T.by_left.get(int(T.r[U]), ()) if T.is_h_box(int(T.hcomp[U, C]))] for U in range(T.n)]
    v_above = [[A for A in T.by_bottom.get(int(T.t[U]), ()) if T.is_v_box(int(T.vcomp[A, U]))] for U in range(T.n)]
    v_below = [[C for C in T.by_top.get(int(T.b[U]), ()) if T.is_v_box(int(T.vcomp[U, C]))] for U in range(T.n)]
    return h_left, h_right, v_above, v_below


def check_compatibility(T: DoubleGroupoid, sigma: SigmaCochain, tau: TauCochain) -> ValidationReport:
    """The conditions making k^tau_sigma T a weak bialgebra, each checked over
    its full quantifier range (ranges built from the unique completions)."""
    rep = ValidationReport()
    s, t = sigma, tau
    hc = lambda A, B: int(T.hcomp[A, B])
    vc = lambda A, B: int(T.vcomp[A, B])
    eps_tau = lambda A: t(A, A)  # defined on horizontal identities

    # multiplicativity of the coproduct
    for A, B in vertical_pairs(T):
        AB = vc(A, B)
        for X in T.by_left.get(int(T.l[AB]), ()):
            Y = hc(int(T.hinv[X]), AB)
            if Y < 0 or hc(X, Y) != AB:
                continue
            rep.count("coproduct-multiplicative")
            rhs = sum((s(U, R) * s(V, S) * t(U, V) * t(R, S)
                       for U, V, R, S in double_factorizations(T, X, Y, A, B)), Fraction(0))
            if s(A, B) * t(X, Y) != rhs:
                rep.fail("coproduct-multiplicative", X, Y, A, B, detail=f"{s(A, B) * t(X, Y)} != {rhs}")

    h_left, h_right, v_above, v_below = _partners(T)
    for U, V in vertical_pairs(T):
        UV = vc(U, V)
        # AU, VC in H
        for A in h_left[U]:
            for C in h_right[V]:
                rep.count("tau-vertical-left")
                if t(A, UV) * t(hc(A, UV), C) != t(A, U) * t(V, C) * s(U, V):
                    rep.fail("tau-vertical-left", A, U, V, C)
        # here (W, Z) = (U, V): AZ, WC in H
        for A in h_left[V]:
            for C in h_right[U]:
                rep.count("tau-vertical-right")
                if t(A, UV) * t(hc(A, UV), C) != t(A, V) * t(U, C) * s(U, V):
                    rep.fail("tau-vertical-right", A, U, V, C)

    for U, V in horizontal_pairs(T):
        UV = hc(U, V)
        for A in v_above[U]:
            for C in v_below[V]:
                rep.count("sigma-horizontal-left")
                full = vc(vc(A, UV), C)
                lhs = s(A, UV) * s(vc(A, UV), C) * eps_tau(vc(A, U)) * eps_tau(vc(V, C))
                if lhs != t(U, V) * s(A, U) * s(V, C) * eps_tau(full):
                    rep.fail("sigma-horizontal-left", A, U, V, C)
        # (W, Z) = (U, V): A over Z, W over C in V
        for A in v_above[V]:
            for C in v_below[U]:
                rep.count("sigma-horizontal-right")
                full = vc(vc(A, UV), C)
                lhs = s(A, UV) * s(vc(A, UV), C) * eps_tau(vc(A, V)) * eps_tau(vc(U, C))
                if lhs != t(U, V) * s(A, V) * s(U, C) * eps_tau(full):
                    rep.fail("sigma-horizontal-right", A, U, V, C)
    return rep


# -- the example from group 3-cocycles ---------------------------------------------------

def sigma_from_omega(omega: ThreeCocycle, T0: DoubleGroupoid) -> SigmaCochain:
    """sigma((a, b, g), (ag, bg, h)) = omega(a, g, h) / omega(b, g, h) on T0(G)."""
    rep = check_cocycle(omega)
    if not rep.ok:
        raise ValueError(f"invalid 3-cocycle: {rep}")

    def value(A, B):
        (a, b, g), (_, _, h) = T0.boxes[A], T0.boxes[B]
        return omega(a, g, h) / omega(b, g, h)

    return SigmaCochain.from_function(T0, value)


def check_product_rule(T: DoubleGroupoid, sigma: SigmaCochain) -> ValidationReport:
    """sigma(AB, CD) = sigma(A, C) sigma(B, D) for every square {AB / CD}."""
    rep = ValidationReport()
    for A, B in horizontal_pairs(T):
        for C in T.by_top.get(int(T.b[A]), ()):
            for D in T.by_top.get(int(T.b[B]), ()):
                CD = int(T.hcomp[C, D])
                if CD < 0:
                    continue
                rep.count("sigma-product-rule")
                if sigma(int(T.hcomp[A, B]), CD) != sigma(A, C) * sigma(B, D):
                    rep.fail("sigma-product-rule", A, B, C, D)
    return rep
