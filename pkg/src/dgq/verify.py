"""Exact verification of the weak Hopf algebra axioms on basis elements.

All axioms are multilinear, so checking them on basis tuples is complete.
Products of basis boxes vanish unless bottoms meet tops, so in the default
mode the pairs and triples where every side is zero by that rule are skipped;
``exhaustive=True`` drops the shortcut and loops over everything.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .element import Element, tensor
from .report import ValidationReport
from .wha import WeakHopf, comul2_basis

EXHAUSTIVE_LIMIT = 40


@dataclass
class AxiomReport(ValidationReport):
    is_hopf: bool = False
    mode: str = "keyed"

    def fail_eq(self, axiom: str, witness: tuple, lhs, rhs) -> None:
        self.fail(axiom, *witness, detail=f"lhs = {_dump(lhs)}; rhs = {_dump(rhs)}")

    def to_dict(self) -> dict:
        d = super().to_dict()
        d["is_hopf"] = self.is_hopf
        d["mode"] = self.mode
        return d


def _dump(x) -> str:
    return x.dump() if isinstance(x, Element) else str(x)


def verify_axioms(W: WeakHopf, exhaustive: bool | None = None, closed_forms: bool = True) -> AxiomReport:
    if exhaustive is None:
        exhaustive = W.n <= EXHAUSTIVE_LIMIT
    rep = AxiomReport(mode="exhaustive" if exhaustive else "keyed")
    _algebra(W, rep, exhaustive)
    _coalgebra(W, rep)
    _d_mult(W, rep, exhaustive)
    _ax_unit(W, rep)
    _ax_counit(W, rep, exhaustive)
    _antipode(W, rep)
    if closed_forms:
        _closed_forms(W, rep)
    one = W.unit
    rep.is_hopf = W.delta_one == tensor(one, one)
    return rep


def _algebra(W: WeakHopf, rep: AxiomReport, exhaustive: bool) -> None:
    T = W.T
    for A in range(W.n):
        a = W.basis(A)
        rep.count("unit")
        if W.mul(W.unit, a) != a or W.mul(a, W.unit) != a:
            rep.fail_eq("unit", (A,), W.mul(W.unit, a), W.mul(a, W.unit))
        Bs = range(W.n) if exhaustive else T.by_top.get(int(T.b[A]), ())
        for B in Bs:
            ab = W.mul(a, W.basis(B))
            Cs = range(W.n) if exhaustive else T.by_top.get(int(T.b[B]), ())
            for C in Cs:
                rep.count("associativity")
                lhs = W.mul(ab, W.basis(C))
                rhs = W.mul(a, W.mul(W.basis(B), W.basis(C)))
                if lhs != rhs:
                    rep.fail_eq("associativity", (A, B, C), lhs, rhs)


def _coalgebra(W: WeakHopf, rep: AxiomReport) -> None:
    for A in range(W.n):
        rep.count("coassociativity")
        lhs = comul2_basis(W, A)
        rhs: dict = {}
        for (X, YZ), c in W.comul_table[A].items():
            for (Y, Z), d in W.comul_table[YZ].items():
                rhs[(X, Y, Z)] = rhs.get((X, Y, Z), 0) + c * d
        rhs = Element(rhs)
        if lhs != rhs:
            rep.fail_eq("coassociativity", (A,), lhs, rhs)
        rep.count("counit")
        left = Element((Y, c * W.counit_values[X]) for (X, Y), c in W.comul_table[A].items())
        right = Element((X, c * W.counit_values[Y]) for (X, Y), c in W.comul_table[A].items())
        if left != W.basis(A) or right != W.basis(A):
            rep.fail_eq("counit", (A,), left, right)


def _d_mult(W: WeakHopf, rep: AxiomReport, exhaustive: bool) -> None:
    T = W.T
    deltas = [W.comul_basis(A) for A in range(W.n)]
    if exhaustive:
        candidates = [range(W.n)] * W.n
    else:
        # B can only meet A if some term of Delta(B) has tops equal to the
        # bottoms of some term of Delta(A), or if A over B is defined
        by_top_key: dict = {}
        for B in range(W.n):
            for X, Y in W.comul_table[B]:
                by_top_key.setdefault((int(T.t[X]), int(T.t[Y])), set()).add(B)
        candidates = []
        for A in range(W.n):
            cand = set(T.by_top.get(int(T.b[A]), ()))
            for X, Y in W.comul_table[A]:
                cand |= by_top_key.get((int(T.b[X]), int(T.b[Y])), set())
            candidates.append(sorted(cand))
    for A in range(W.n):
        for B in candidates[A]:
            rep.count("d-mult")
            lhs = W.comul(W.mul(W.basis(A), W.basis(B)))
            rhs = W.tensor_mul(deltas[A], deltas[B])
            if lhs != rhs:
                rep.fail_eq("d-mult", (A, B), lhs, rhs)


def _ax_unit(W: WeakHopf, rep: AxiomReport) -> None:
    one = W.unit
    d1 = W.delta_one
    d2: dict = {}
    for (XY, Z), c in d1.items():
        for (X, Y), d in W.comul_table[XY].items():
            d2[(X, Y, Z)] = d2.get((X, Y, Z), 0) + c * d
    d2 = Element(d2)
    left = tensor(d1, one)
    right = tensor(one, d1)
    rep.count("ax-unit", 2)
    first = W.tensor_mul(left, right)
    if d2 != first:
        rep.fail_eq("ax-unit", ("(D1 x 1)(1 x D1)",), d2, first)
    second = W.tensor_mul(right, left)
    if d2 != second:
        rep.fail_eq("ax-unit", ("(1 x D1)(D1 x 1)",), d2, second)


def _eps_product(W: WeakHopf, a: int, b: int) -> Fraction:
    C = int(W.T.vcomp[a, b])
    return Fraction(0) if C < 0 else W.s(a, b) * W.counit_values[C]


def _ax_counit(W: WeakHopf, rep: AxiomReport, exhaustive: bool) -> None:
    T = W.T
    n = W.n
    if exhaustive:
        for B in range(n):
            terms = W.comul_table[B].items()
            bb = W.basis(B)
            for A in range(n):
                ab = W.mul(W.basis(A), bb)
                for C in range(n):
                    rep.count("ax-counit")
                    lhs = W.counit(W.mul(ab, W.basis(C)))
                    r1 = sum((t * _eps_product(W, A, X) * _eps_product(W, Y, C) for (X, Y), t in terms), Fraction(0))
                    r2 = sum((t * _eps_product(W, A, Y) * _eps_product(W, X, C) for (X, Y), t in terms), Fraction(0))
                    if not lhs == r1 == r2:
                        rep.fail("ax-counit", A, B, C, detail=f"{lhs}, {r1}, {r2}")
        return
    # keyed: eps(M) != 0 only for horizontal identities M, so every nonzero
    # term comes from a box over which a horizontal identity closes up
    above = [[A for A in T.by_bottom.get(int(T.t[U]), ()) if T.is_v_box(int(T.vcomp[A, U]))] for U in range(n)]
    below = [[C for C in T.by_top.get(int(T.b[U]), ()) if T.is_v_box(int(T.vcomp[U, C]))] for U in range(n)]
    for B in range(n):
        vals: dict = {}

        def add(key, slot, v):
            cur = vals.setdefault(key, [Fraction(0)] * 3)
            cur[slot] += v

        for A in T.by_bottom.get(int(T.t[B]), ()):
            AB = int(T.vcomp[A, B])
            sAB = W.s(A, B)
            for C in below[AB]:
                add((A, C), 0, sAB * W.s(AB, C) * W.counit_values[int(T.vcomp[AB, C])])
        for (X, Y), t in W.comul_table[B].items():
            for A in above[X]:
                ea = _eps_product(W, A, X)
                for C in below[Y]:
                    add((A, C), 1, t * ea * _eps_product(W, Y, C))
            for A in above[Y]:
                ea = _eps_product(W, A, Y)
                for C in below[X]:
                    add((A, C), 2, t * ea * _eps_product(W, X, C))
        rep.count("ax-counit", len(vals))
        for (A, C), (lhs, r1, r2) in vals.items():
            if not lhs == r1 == r2:
                rep.fail("ax-counit", A, B, C, detail=f"{lhs}, {r1}, {r2}")


def _antipode(W: WeakHopf, rep: AxiomReport) -> None:
    if not W.has_antipode:
        rep.fail("antipode-missing", detail=W.notes.get("antipode", "no antipode"))
        return
    from .wha import atp3_lhs

    S = [W.antipode(W.basis(A)) for A in range(W.n)]
    for A in range(W.n):
        one_side = Element()
        other = Element()
        for (X, Y), t in W.comul_table[A].items():
            one_side = one_side + W.mul(W.basis(X), S[Y]) * t
            other = other + W.mul(S[X], W.basis(Y)) * t
        rep.count("atp-1")
        want = W.eps_t_basis(A)
        if one_side != want:
            rep.fail_eq("atp-1", (A,), one_side, want)
        rep.count("atp-2")
        want = W.eps_s_basis(A)
        if other != want:
            rep.fail_eq("atp-2", (A,), other, want)
        rep.count("atp-3")
        lhs = atp3_lhs(W, A)
        if lhs != S[A]:
            rep.fail_eq("atp-3", (A,), lhs, S[A])


def _closed_forms(W: WeakHopf, rep: AxiomReport) -> None:
    for A in range(W.n):
        rep.count("source-map-closed")
        got, want = W.eps_s_closed(A), W.eps_s_basis(A)
        if got != want:
            rep.fail_eq("source-map-closed", (A,), got, want)
        rep.count("target-map-closed")
        got, want = W.eps_t_closed(A), W.eps_t_basis(A)
        if got != want:
            rep.fail_eq("target-map-closed", (A,), got, want)
