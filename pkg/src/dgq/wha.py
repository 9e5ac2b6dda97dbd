"""The weak Hopf algebra kT of a finite double groupoid and its deformations.

All three constructions share one engine: the product is the vertical
groupoid product twisted by sigma, the coproduct sums over horizontal
factorizations weighted by tau.  Scalars are Fractions throughout.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Callable

import numpy as np

from . import core
from .cocycles import SigmaCochain, TauCochain, check_cocycle, check_compatibility
from .double import CornerKind, DomainError, DoubleGroupoid, filling_witness
from .element import Element, total
from .linalg import solve_affine
from .report import ValidationReport

ONE = Fraction(1)


class Refused(ValueError):
    """A construction whose hypotheses fail; ``witness`` says where."""

    def __init__(self, message: str, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


# -- theta weights --------------------------------------------------------------------

@dataclass(frozen=True)
class ThetaWeights:
    """A nonzero rational weight per point; daleth(B) = theta(bl(B))."""
    values: tuple

    def __post_init__(self):
        vals = tuple(Fraction(v) for v in self.values)
        if any(v == 0 for v in vals):
            raise ValueError("theta weights must be nonzero")
        object.__setattr__(self, "values", vals)

    def __getitem__(self, P: int) -> Fraction:
        return self.values[P]

    def __len__(self) -> int:
        return len(self.values)

    def daleth(self, T: DoubleGroupoid, A: int) -> Fraction:
        return self.values[int(T.bl[A])]

    @classmethod
    def canonical(cls, T: DoubleGroupoid) -> "ThetaWeights":
        return cls(tuple(Fraction(1, int(v)) for v in T.theta_values))

    @classmethod
    def constant(cls, T: DoubleGroupoid, c=1) -> "ThetaWeights":
        return cls((Fraction(c),) * T.n_points)

    def dump(self, T: DoubleGroupoid) -> dict:
        return {str(T.points[P]): str(v) for P, v in enumerate(self.values)}


def _fiber_sums(T: DoubleGroupoid, theta: ThetaWeights) -> dict:
    """c(g, x) = sum of daleth(V) over boxes V with t(V) = x, r(V) = g."""
    sums: dict = {}
    for V in range(T.n):
        key = (int(T.r[V]), int(T.t[V]))
        sums[key] = sums.get(key, 0) + theta.daleth(T, V)
    return sums


def _domain_pairs(T: DoubleGroupoid):
    for g in range(T.V.n_arrows):
        for x in range(T.H.n_arrows):
            if T.V.source[g] == T.H.target[x]:
                yield g, x


@dataclass
class Admissibility:
    ok: bool
    failures: list = field(default_factory=list)  # (g, x, actual sum)


def check_theta_admissible(T: DoubleGroupoid, theta: ThetaWeights) -> Admissibility:
    sums = _fiber_sums(T, theta)
    bad = [(g, x, sums.get((g, x), Fraction(0))) for g, x in _domain_pairs(T)
           if sums.get((g, x), 0) != 1]
    return Admissibility(not bad, bad)


@dataclass
class Normalization:
    theta: ThetaWeights | None
    witness: tuple = ()  # (P, g, x) where the constancy condition fails
    detail: str = ""


def normalize_theta(T: DoubleGroupoid, theta: ThetaWeights) -> Normalization:
    """Rescale theta(P) by c(id P, id P) when c is constant over the pairs
    (g, x) that P is affiliated to."""
    w = filling_witness(T)
    if w is not None:
        return Normalization(None, (None, *w), "filling condition fails")
    sums = _fiber_sums(T, theta)
    base = {P: sums.get((int(T.V.identity[P]), int(T.H.identity[P])), Fraction(0)) for P in range(T.n_points)}
    for V in range(T.n):
        P, g, x = int(T.bl[V]), int(T.r[V]), int(T.t[V])
        c = sums[(g, x)]
        if c == 0 or c != base[P]:
            return Normalization(None, (P, g, x), f"c(g, x) = {c} but c(id P) = {base[P]}")
    new = ThetaWeights(tuple(theta[P] / base[P] for P in range(T.n_points)))
    adm = check_theta_admissible(T, new)
    if not adm.ok:
        g, x, s = adm.failures[0]
        return Normalization(None, (None, g, x), f"normalized weights still give sum {s}")
    return Normalization(new)


# -- the algebra ---------------------------------------------------------------------

@dataclass(eq=False)
class WeakHopf:
    T: DoubleGroupoid
    kind: str                               # canonical | theta | sigma_tau
    tau: Callable[[int, int], Fraction]
    sigma: SigmaCochain | None = None       # None means sigma = 1
    theta: ThetaWeights | None = None
    antipode_coeffs: list | None = None     # S(A) = c_A A^{-1}
    conditions: ValidationReport | None = None
    notes: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.T.n

    def s(self, A: int, B: int) -> Fraction:
        return ONE if self.sigma is None else self.sigma(A, B)

    # -- structure tables --

    @cached_property
    def factorizations(self) -> list[list[tuple[int, int]]]:
        """For each box A all (X, Y) with XY = A."""
        T = self.T
        out: list = [[] for _ in range(T.n)]
        for X in range(T.n):
            for Y in T.by_left.get(int(T.r[X]), ()):
                out[int(T.hcomp[X, Y])].append((X, Y))
        return out

    @cached_property
    def comul_table(self) -> list[dict]:
        return [{(X, Y): Fraction(self.tau(X, Y)) for X, Y in f} for f in self.factorizations]

    @cached_property
    def counit_values(self) -> list[Fraction]:
        T = self.T
        return [1 / Fraction(self.tau(A, A)) if T.is_v_box(A) else Fraction(0) for A in range(T.n)]

    # -- operations on elements --

    def mul_basis(self, A: int, B: int):
        C = int(self.T.vcomp[A, B])
        return None if C < 0 else (C, self.s(A, B))

    def mul(self, u: Element, v: Element) -> Element:
        T = self.T
        by_top: dict = {}
        for B, c in v.items():
            by_top.setdefault(int(T.t[B]), []).append((B, c))
        acc: dict = {}
        for A, a in u.items():
            for B, c in by_top.get(int(T.b[A]), ()):
                C = int(T.vcomp[A, B])
                acc[C] = acc.get(C, 0) + a * c * self.s(A, B)
        return Element(acc)

    def mul_many(self, *elements: Element) -> Element:
        out = elements[0]
        for e in elements[1:]:
            out = self.mul(out, e)
        return out

    def tensor_mul(self, U: Element, V: Element) -> Element:
        """Componentwise product in the tensor power (keys are tuples)."""
        T = self.T
        by_tops: dict = {}
        for key, c in V.items():
            by_tops.setdefault(tuple(int(T.t[B]) for B in key), []).append((key, c))
        acc: dict = {}
        for key, a in U.items():
            for key2, c in by_tops.get(tuple(int(T.b[A]) for A in key), ()):
                coeff = a * c
                out = []
                for A, B in zip(key, key2):
                    out.append(int(T.vcomp[A, B]))
                    coeff *= self.s(A, B)
                k = tuple(out)
                acc[k] = acc.get(k, 0) + coeff
        return Element(acc)

    def comul_basis(self, A: int) -> Element:
        return Element._raw(dict(self.comul_table[A]))

    def comul(self, u: Element) -> Element:
        acc: dict = {}
        for A, a in u.items():
            for k, c in self.comul_table[A].items():
                acc[k] = acc.get(k, 0) + a * c
        return Element(acc)

    def counit(self, u: Element) -> Fraction:
        return sum((c * self.counit_values[A] for A, c in u.items()), Fraction(0))

    @property
    def has_antipode(self) -> bool:
        return self.antipode_coeffs is not None

    def antipode(self, u: Element) -> Element:
        if self.antipode_coeffs is None:
            raise Refused("no antipode of the form A -> c_A A^{-1} is known for this structure")
        tinv = self.T.tinv
        return Element((int(tinv[A]), c * self.antipode_coeffs[A]) for A, c in u.items())

    def basis(self, A: int) -> Element:
        return Element._raw({A: ONE})

    @cached_property
    def unit(self) -> Element:
        T = self.T
        return Element((int(T.vid[x]), 1 / self.s(int(T.vid[x]), int(T.vid[x]))) for x in range(T.H.n_arrows))

    @cached_property
    def delta_one(self) -> Element:
        return self.comul(self.unit)

    # -- source and target maps, from their definitions --

    @cached_property
    def _delta_one_by_top_right(self) -> dict:
        out: dict = {}
        for (X, Y), c in self.delta_one.items():
            out.setdefault(int(self.T.t[Y]), []).append((X, Y, c))
        return out

    @cached_property
    def _delta_one_by_bottom_left(self) -> dict:
        out: dict = {}
        for (X, Y), c in self.delta_one.items():
            out.setdefault(int(self.T.b[X]), []).append((X, Y, c))
        return out

    def eps_s_basis(self, A: int) -> Element:
        """(id x eps)((1 x A) Delta(1))."""
        acc: dict = {}
        for X, Y, c in self._delta_one_by_top_right.get(int(self.T.b[A]), ()):
            e = self.counit_values[int(self.T.vcomp[A, Y])]
            if e:
                acc[X] = acc.get(X, 0) + c * e * self.s(A, Y)
        return Element(acc)

    def eps_t_basis(self, A: int) -> Element:
        """(eps x id)(Delta(1) (A x 1))."""
        acc: dict = {}
        for X, Y, c in self._delta_one_by_bottom_left.get(int(self.T.t[A]), ()):
            e = self.counit_values[int(self.T.vcomp[X, A])]
            if e:
                acc[Y] = acc.get(Y, 0) + c * e * self.s(X, A)
        return Element(acc)

    def eps_s(self, u: Element) -> Element:
        return total(self.eps_s_basis(A) * c for A, c in u.items())

    def eps_t(self, u: Element) -> Element:
        return total(self.eps_t_basis(A) * c for A, c in u.items())

    # -- the closed forms --

    def eps_s_closed(self, A: int) -> Element:
        T = self.T
        if not T.h_is_identity(int(T.t[A])):
            return Element()
        phi = core.canonical_map(T, "phi", A)
        if self.kind in ("canonical", "theta"):
            return d_one(T, phi)
        Y = int(T.hinv[phi])
        hr = int(T.hid[T.r[A]])
        acc = {}
        for x in _h_arrows_with_target(T, int(T.br[A])):
            X = T.hc(int(T.vid[x]), phi)
            acc[X] = self.tau(X, Y) * self.s(A, Y) / self.tau(hr, hr)
        return Element(acc)

    def eps_t_closed(self, A: int) -> Element:
        T = self.T
        if not T.h_is_identity(int(T.b[A])):
            return Element()
        psi = core.canonical_map(T, "psi", A)
        if self.kind == "canonical":
            return one_e(T, psi) * Fraction(T.corner_of_box(CornerKind.UL, A), T.corner_of_box(CornerKind.LL, A))
        if self.kind == "theta":
            th = self.theta
            return one_e(T, psi) * (th[int(T.tr[A])] / th[int(T.br[A])])
        Z = int(T.hinv[psi])
        hl = int(T.hid[T.l[A]])
        acc = {}
        # y starts at the right corner of psi(A), which is tl(A)
        for y in _h_arrows_with_source(T, int(T.tl[A])):
            Y = T.hc(psi, int(T.vid[y]))
            acc[Y] = self.tau(Z, Y) * self.s(Z, A) / self.tau(hl, hl)
        return Element(acc)

    # -- derived maps --

    def antipode_squared_scalar(self, A: int) -> Fraction:
        c = self.antipode_coeffs
        return c[A] * c[int(self.T.tinv[A])]


def _h_arrows_with_target(T: DoubleGroupoid, P: int) -> list[int]:
    return [int(x) for x in np.flatnonzero(T.H.target == P)]


def _h_arrows_with_source(T: DoubleGroupoid, P: int) -> list[int]:
    return [int(x) for x in np.flatnonzero(T.H.source == P)]


def d_one(T: DoubleGroupoid, D: int) -> Element:
    """Sum of {vid z, D} over z with r(z) = e(D)."""
    if not core.in_D(T, D):
        raise DomainError(f"box {D} is not in D")
    return Element((T.hc(int(T.vid[z]), D), 1) for z in _h_arrows_with_target(T, int(T.tl[D])))


def one_e(T: DoubleGroupoid, E: int) -> Element:
    """Sum of {E, vid x} over x with l(x) = e(E)."""
    if not core.in_E(T, E):
        raise DomainError(f"box {E} is not in E")
    return Element((T.hc(E, int(T.vid[x])), 1) for x in _h_arrows_with_source(T, int(T.br[E])))


# -- constructions -----------------------------------------------------------------------

def build_canonical(T: DoubleGroupoid) -> WeakHopf:
    """Coproduct weights 1/UR(Y), counit UL(A), antipode UL(A)/LL(A) A^{-1}."""
    w = filling_witness(T)
    if w is not None:
        raise Refused("filling condition fails", w)
    corner = T.corner_of_box
    tau = lambda X, Y: Fraction(1, corner(CornerKind.UR, Y))
    W = WeakHopf(T, "canonical", tau)
    for A, f in enumerate(W.factorizations):
        for X, Y in f:
            if corner(CornerKind.UR, Y) != corner(CornerKind.UL, X):
                raise AssertionError(f"corner weights disagree on {X}|{Y}")
    for A in range(T.n):
        if T.is_v_box(A) and corner(CornerKind.UL, A) != corner(CornerKind.UR, A):
            raise AssertionError(f"counit corners disagree on {A}")
    W.antipode_coeffs = [Fraction(corner(CornerKind.UL, A), corner(CornerKind.LL, A)) for A in range(T.n)]
    W.theta = ThetaWeights.canonical(T)
    return W


def build_theta(T: DoubleGroupoid, theta: ThetaWeights) -> WeakHopf:
    if len(theta) != T.n_points:
        raise ValueError("one weight per point is needed")
    adm = check_theta_admissible(T, theta)
    if not adm.ok:
        g, x, s = adm.failures[0]
        raise Refused(f"theta is not admissible: the sum at (g={g}, x={x}) is {s}", (g, x, s))
    daleth = [theta[int(P)] for P in T.bl]
    W = WeakHopf(T, "theta", lambda X, Y: daleth[Y], theta=theta)
    W.antipode_coeffs = [theta[int(T.tr[A])] / theta[int(T.br[A])] for A in range(T.n)]
    return W


def build_sigma_tau(T: DoubleGroupoid, sigma: SigmaCochain, tau: TauCochain) -> WeakHopf:
    """Weak bialgebra candidate; the conditions are recorded, not enforced,
    and an antipode of diagonal shape is searched for when they hold."""
    for c in (sigma, tau):
        rep = check_cocycle(c)
        if not rep.ok:
            f = rep.failures[0]
            raise Refused(f"{type(c).__name__} fails {f.axiom}", f.witness)
    W = WeakHopf(T, "sigma_tau", tau, sigma=sigma)
    W.conditions = check_compatibility(T, sigma, tau)
    if W.conditions.ok:
        W.antipode_coeffs, W.notes["antipode"] = solve_diagonal_antipode(W)
    else:
        W.notes["antipode"] = "not searched: weak bialgebra conditions fail"
    return W


def solve_diagonal_antipode(W: WeakHopf):
    """Search for S(A) = c_A A^{-1}.

    The first two antipode axioms and a few identities every weak Hopf
    antipode satisfies are linear in c; anti-(co)multiplicativity becomes
    linear once one factor is pinned down, so it is added in rounds.  The
    third axiom is then checked.  Returns (coefficients or None, note).
    """
    T = W.T
    tinv = T.tinv
    rows, rhs = [], []
    for A in range(T.n):
        for target, side in ((W.eps_t_basis(A), 1), (W.eps_s_basis(A), 2)):
            eqs: dict = {}
            for (X, Y), t in W.comul_table[A].items():
                if side == 1:  # X S(Y)
                    C = int(T.vcomp[X, tinv[Y]])
                    if C >= 0:
                        eqs.setdefault(C, {}).setdefault(Y, 0)
                        eqs[C][Y] += t * W.s(X, int(tinv[Y]))
                else:          # S(X) Y
                    C = int(T.vcomp[tinv[X], Y])
                    if C >= 0:
                        eqs.setdefault(C, {}).setdefault(X, 0)
                        eqs[C][X] += t * W.s(int(tinv[X]), Y)
            for C in set(eqs) | set(target):
                rows.append(eqs.get(C, {}))
                rhs.append(target.coeff(C))
    # identities every weak Hopf antipode satisfies, also linear in c:
    # S(1) = 1, S o eps_t = eps_s o S and S o eps_s = eps_t o S
    unit = W.unit
    for V, u in unit.items():
        rows.append({V: u})
        rhs.append(unit.coeff(int(tinv[V])))
    for A in range(T.n):
        Ainv = int(tinv[A])
        for inner, outer in ((W.eps_t_basis(A), W.eps_s_basis(Ainv)), (W.eps_s_basis(A), W.eps_t_basis(Ainv))):
            eqs = {}
            for Y, e in inner.items():
                row = eqs.setdefault(int(tinv[Y]), {})
                row[Y] = row.get(Y, 0) + e
            for C, e in outer.items():
                row = eqs.setdefault(C, {})
                row[A] = row.get(A, 0) - e
            for row in eqs.values():
                rows.append(row)
                rhs.append(Fraction(0))
    relations = _product_relations(W)
    while True:
        found = solve_affine(rows, rhs, T.n)
        if found is None:
            return None, "no diagonal solution of the linear antipode identities"
        coeffs, kernel = found
        if not kernel:
            break
        known = {i: coeffs[i] for i in range(T.n) if all(k[i] == 0 for k in kernel)}
        added = 0
        # k0 c_P = k1 c_Q c_R turns linear once c_Q or c_R is known
        for P, Q, R, k0, k1 in relations:
            if Q in known or R in known:
                q_known = Q in known
                other = R if q_known else Q
                value = known[Q] if q_known else known[R]
                if P in known and other in known:
                    continue
                row: dict = {}
                row[P] = row.get(P, 0) + k0
                row[other] = row.get(other, 0) - k1 * value
                rows.append(row)
                rhs.append(Fraction(0))
                added += 1
        if not added:
            break
    free = len(kernel)
    if free:
        return None, f"{free} free parameters remain in the diagonal ansatz"
    if any(c == 0 for c in coeffs):
        return None, "diagonal solution has zero coefficients"
    W.antipode_coeffs = coeffs
    for A in range(T.n):
        if not _atp3_holds(W, A):
            W.antipode_coeffs = None
            return None, f"third antipode axiom fails at box {A}"
    return coeffs, "found"


def _product_relations(W: WeakHopf) -> list[tuple]:
    """(P, Q, R, k0, k1) meaning k0 c_P = k1 c_Q c_R, from S being
    anti-multiplicative and anti-comultiplicative."""
    T = W.T
    tinv = T.tinv
    out = []
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            out.append((int(T.vcomp[A, B]), A, B, W.s(A, B), W.s(int(tinv[B]), int(tinv[A]))))
        for (X, Y), t in W.comul_table[A].items():
            out.append((A, X, Y, Fraction(W.tau(int(tinv[Y]), int(tinv[X]))), t))
    return out


def _atp3_holds(W: WeakHopf, A: int) -> bool:
    return atp3_lhs(W, A) == W.antipode(W.basis(A))


def comul2_basis(W: WeakHopf, A: int) -> Element:
    """(Delta x id) Delta (A)."""
    acc: dict = {}
    for (XY, Z), c in ((k, v) for k, v in W.comul_table[A].items()):
        for (X, Y), d in W.comul_table[XY].items():
            key = (X, Y, Z)
            acc[key] = acc.get(key, 0) + c * d
    return Element(acc)


def atp3_lhs(W: WeakHopf, A: int) -> Element:
    out = Element()
    for (X, Y, Z), c in comul2_basis(W, A).items():
        out = out + W.mul_many(W.antipode(W.basis(X)), W.basis(Y), W.antipode(W.basis(Z))) * c
    return out


def theta_tau(T: DoubleGroupoid, theta: ThetaWeights) -> TauCochain:
    return TauCochain.from_theta(T, theta)


def structure_differences(W1: WeakHopf, W2: WeakHopf) -> list[str]:
    """Where two structures on the same carrier differ, coefficient by coefficient."""
    if W1.T is not W2.T and not W1.T.same_as(W2.T):
        return ["different carriers"]
    T = W1.T
    diffs = []
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            if W1.s(A, B) != W2.s(A, B):
                diffs.append(f"product {A}.{B}")
        if W1.comul_table[A] != W2.comul_table[A]:
            diffs.append(f"coproduct {A}")
        if W1.counit_values[A] != W2.counit_values[A]:
            diffs.append(f"counit {A}")
        if (W1.antipode_coeffs is None) != (W2.antipode_coeffs is None) or (
                W1.antipode_coeffs is not None and W1.antipode_coeffs[A] != W2.antipode_coeffs[A]):
            diffs.append(f"antipode {A}")
    return diffs


# -- special elements ---------------------------------------------------------------------

def pivotal_element(W: WeakHopf) -> Element:
    th = _require_theta(W)
    T = W.T
    return Element((int(T.vid[x]), th[int(T.H.source[x])] / th[int(T.H.target[x])]) for x in range(T.H.n_arrows))


def _require_theta(W: WeakHopf) -> ThetaWeights:
    if W.theta is None:
        raise Refused("this needs the canonical or a theta-deformed structure")
    return W.theta


def w_element(W: WeakHopf, power: int = 1) -> Element:
    """w = sum over points of theta(P)^(-power) 1_{Theta_P}."""
    th = _require_theta(W)
    T = W.T
    return total(one_e(T, T.theta_box(P)) * (th[P] ** -power) for P in range(T.n_points))


def delta_one_closed(W: WeakHopf, side: str = "D") -> Element:
    """Delta(1) as a sum over D (or over E) of (1/theta) d_one x one_e."""
    T = W.T
    th = _require_theta(W)
    out = Element()
    for A in range(T.n):
        if side == "D" and core.in_D(T, A):
            wt = th[int(T.tl[A])]  # theta(D) = theta(e(D)); 1/theta = canonical weight
            out = out + _tensor2(d_one(T, A), one_e(T, core.dagger(T, A, "D"))) * wt
        elif side == "E" and core.in_E(T, A):
            # theta(E) = theta(E^{-1}) = theta of e(E^{-1}) in D
            wt = th[int(T.tl[T.tinv[A]])]
            out = out + _tensor2(d_one(T, core.dagger(T, A, "E")), one_e(T, A)) * wt
    return out


def _tensor2(u: Element, v: Element) -> Element:
    return Element(((a, b), c * d) for a, c in u.items() for b, d in v.items())


def delta_vid_closed(W: WeakHopf, x: int) -> Element:
    """Delta(1) (sum over zw = x of vid z x vid w)."""
    T = W.T
    H = T.H
    acc = Element()
    for z in range(H.n_arrows):
        if H.source[z] != H.source[x]:
            continue
        w = int(H.comp[H.inverse[z], x])
        acc = acc + Element.basis((int(T.vid[z]), int(T.vid[w])))
    return W.tensor_mul(W.delta_one, acc)


SPECIAL_KINDS = ("unit", "d_one", "one_e", "delta_one", "pivotal_G")


def special_elements(W: WeakHopf, kind: str, box: int | None = None) -> Element:
    if kind == "unit":
        return W.unit
    if kind == "d_one":
        return d_one(W.T, box)
    if kind == "one_e":
        return one_e(W.T, box)
    if kind == "delta_one":
        _require_theta(W)
        return W.delta_one
    if kind == "pivotal_G":
        return pivotal_element(W)
    raise ValueError(f"unknown special element {kind!r}; expected one of {SPECIAL_KINDS}")


def special_element_report(W: WeakHopf) -> ValidationReport:
    """Product rules for d_one and one_e, their products with boxes, and the
    Delta(1), Delta(vid x) and pivotal identities."""
    T = W.T
    rep = ValidationReport()
    Ds = [A for A in range(T.n) if core.in_D(T, A)]
    Es = [A for A in range(T.n) if core.in_E(T, A)]
    D1 = {D: d_one(T, D) for D in Ds}
    E1 = {E: one_e(T, E) for E in Es}
    if len({tuple(sorted(e.terms)) for e in D1.values()}) != len(Ds):
        rep.fail("d_one-injective")
    if len({tuple(sorted(e.terms)) for e in E1.values()}) != len(Es):
        rep.fail("one_e-injective")
    for D in Ds:
        for L in Ds:
            rep.count("core-units-product")
            want = D1[core.diamond(T, D, L)] if core.end(T, D, "D") == core.source(T, L, "D") else Element()
            if W.mul(D1[D], D1[L]) != want:
                rep.fail("core-units-product-D", D, L)
    for E in Es:
        for M in Es:
            rep.count("core-units-product")
            want = E1[core.circ(T, M, E)] if core.end(T, M, "E") == core.source(T, E, "E") else Element()
            if W.mul(E1[E], E1[M]) != want:
                rep.fail("core-units-product-E", E, M)
    if W.kind != "sigma_tau":
        _actions_report(W, D1, E1, rep)
    _vid_commutation_report(W, D1, E1, rep)
    if W.theta is not None:
        if W.kind == "canonical" or W.theta == ThetaWeights.canonical(T):
            for side in ("D", "E"):
                rep.count("delta-one-closed")
                if delta_one_closed(W, side) != W.delta_one:
                    rep.fail(f"delta-one-closed-{side}")
            for x in range(T.H.n_arrows):
                rep.count("delta-vid-closed")
                if W.comul(W.basis(int(T.vid[x]))) != delta_vid_closed(W, x):
                    rep.fail("delta-vid-closed", x)
        rep.merge(pivotal_report(W))
    return rep


def _actions_report(W: WeakHopf, D1: dict, E1: dict, rep: ValidationReport) -> None:
    T = W.T
    for A in range(T.n):
        Ab = W.basis(A)
        for D, d in D1.items():
            rep.count("core-actions")
            want = Element.basis(core.core_action(T, "D_left", D, A)) if T.tr[A] == core.end(T, D, "D") else Element()
            if W.mul(d, Ab) != want:
                rep.fail("core-action-D-left", D, A)
            want = Element.basis(core.core_action(T, "D_right", D, A)) if T.br[A] == core.source(T, D, "D") else Element()
            if W.mul(Ab, d) != want:
                rep.fail("core-action-D-right", D, A)
        for E, e in E1.items():
            rep.count("core-actions")
            want = Element.basis(core.core_action(T, "E_right", E, A)) if T.tl[A] == core.source(T, E, "E") else Element()
            if W.mul(e, Ab) != want:
                rep.fail("core-action-E-left", E, A)
            want = Element.basis(core.core_action(T, "E_left", E, A)) if T.bl[A] == core.end(T, E, "E") else Element()
            if W.mul(Ab, e) != want:
                rep.fail("core-action-E-right", E, A)


def _vid_commutation_report(W: WeakHopf, D1: dict, E1: dict, rep: ValidationReport) -> None:
    """d_one(D) vid(z) = vid(z t(D)) d_one(D) when r(z) = e(D);
    one_e(E) vid(w) = vid(b(E)^{-1} w) one_e(E) when l(w) = s(E); zero otherwise."""
    T = W.T
    H = T.H
    for z in range(H.n_arrows):
        vz = W.basis(int(T.vid[z]))
        for D, d in D1.items():
            rep.count("d-one-vid-commute")
            if H.target[z] == core.end(T, D, "D"):
                zt = int(H.comp[z, T.t[D]])
                ok = W.mul(d, vz) == W.mul(W.basis(int(T.vid[zt])), d) != 0
            else:
                ok = W.mul(d, vz) == 0
            if not ok:
                rep.fail("d-one-vid-commute", D, z)
        for E, e in E1.items():
            rep.count("one-e-vid-commute")
            # the product is nonzero exactly when w starts at s(E)
            if H.source[z] == core.source(T, E, "E"):
                bw = int(H.comp[H.inverse[T.b[E]], z])
                ok = W.mul(e, vz) == W.mul(W.basis(int(T.vid[bw])), e) != 0
            else:
                ok = W.mul(e, vz) == 0
            if not ok:
                rep.fail("one-e-vid-commute", E, z)


def pivotal_report(W: WeakHopf) -> ValidationReport:
    T = W.T
    rep = ValidationReport()
    G = pivotal_element(W)
    th = W.theta
    G_inv = Element((int(T.vid[x]), th[int(T.H.target[x])] / th[int(T.H.source[x])]) for x in range(T.H.n_arrows))
    if W.mul(G, G_inv) != W.unit or W.mul(G_inv, G) != W.unit:
        rep.fail("pivotal-inverse")
    w, w_inv = w_element(W, 1), w_element(W, -1)
    if W.mul(w, w_inv) != W.unit:
        rep.fail("w-inverse")
    rep.count("pivotal-from-w")
    if W.mul(W.antipode(w), w_inv) != G:
        rep.fail("pivotal-from-w")
    rep.count("pivotal-grouplike")
    if W.comul(G) != W.tensor_mul(W.delta_one, _tensor2(G, G)):
        rep.fail("pivotal-grouplike")
    for A in range(T.n):
        rep.count("pivotal-conjugation")
        a = W.basis(A)
        if W.antipode(W.antipode(a)) != W.mul_many(G_inv, a, G):
            rep.fail("pivotal-conjugation", A)
    return rep


# -- square of the antipode ----------------------------------------------------------------

@dataclass
class AntipodeAnalysis:
    scalars: list             # S^2(A) = scalars[A] A
    closed_form: list         # theta(bl) theta(tr) / (theta(br) theta(tl))
    is_regular: bool
    regular_by_components: bool
    is_involutive: bool
    report: ValidationReport

    @property
    def spectrum(self) -> list[Fraction]:
        return sorted(set(self.scalars))


def antipode_analysis(W: WeakHopf) -> AntipodeAnalysis:
    th = _require_theta(W)
    T = W.T
    rep = ValidationReport()
    scalars = []
    for A in range(T.n):
        SS = W.antipode(W.antipode(W.basis(A)))
        if set(SS.terms) != {A}:
            rep.fail("S2-diagonal", A)
        scalars.append(SS.coeff(A))
    closed = [th[int(T.bl[A])] * th[int(T.tr[A])] / (th[int(T.br[A])] * th[int(T.tl[A])]) for A in range(T.n)]
    for A in range(T.n):
        rep.count("squared")
        if scalars[A] != closed[A]:
            rep.fail("squared", A)
    if W.kind == "canonical":
        c = T.corner_of_box
        for A in range(T.n):
            sq = Fraction(c(CornerKind.UL, A) * c(CornerKind.LR, A), c(CornerKind.LL, A) * c(CornerKind.UR, A))
            if sq != scalars[A]:
                rep.fail("squared-corners", A)
    regular = True
    for A in range(T.n):
        for e in (W.eps_s_basis(A), W.eps_t_basis(A)):
            if W.antipode(W.antipode(e)) != e:
                regular = False
    comps = core.d_components(T)
    by_comp = all(len({th[P] for P in comp}) == 1 for comp in comps)
    if regular != by_comp:
        rep.fail("regular-iff-constant-on-d-components", detail=f"S^2 on images: {regular}, constant on D-components: {by_comp}")
    for A in range(T.n):
        if core.in_E(T, A):
            rep.count("antipode-on-core-units")
            if W.antipode(one_e(T, A)) != d_one(T, int(T.tinv[A])):
                rep.fail("antipode-on-core-units-E", A)
        if core.in_D(T, A):
            rep.count("antipode-on-core-units")
            want = one_e(T, int(T.tinv[A])) * (th[core.end(T, A, "D")] / th[core.source(T, A, "D")])
            if W.antipode(d_one(T, A)) != want:
                rep.fail("antipode-on-core-units-D", A)
    return AntipodeAnalysis(scalars, closed, regular, by_comp, all(s == 1 for s in scalars), rep)


# -- star structure --------------------------------------------------------------------------

STAR_CONVENTIONS = ("coproduct", "display")


@dataclass
class StarStructure:
    W: WeakHopf
    lam: list                 # A* = lam[A] A^v
    gram: dict                # (A, B) -> (A|B), nonzero entries only
    report: ValidationReport

    def star(self, u: Element) -> Element:
        vinv = self.W.T.vinv
        return Element((int(vinv[A]), c * self.lam[A]) for A, c in u.items())


def star_structure(W: WeakHopf, convention: str = "coproduct") -> StarStructure:
    """A* = lambda(A) A^v with phi the indicator of vertical identities.

    ``coproduct``: lambda = theta(tr)/theta(br), matching the coproduct weights
    daleth(Y) used here; ``display``: the reciprocal.
    """
    th = _require_theta(W)
    if any(v <= 0 for v in th.values):
        raise Refused("star structure needs positive theta weights")
    if W.sigma is not None and not W.sigma.is_trivial():
        raise Refused("star structure needs sigma = 1")
    T = W.T
    if convention == "coproduct":
        lam = [th[int(T.tr[A])] / th[int(T.br[A])] for A in range(T.n)]
    elif convention == "display":
        lam = [th[int(T.br[A])] / th[int(T.tr[A])] for A in range(T.n)]
    else:
        raise ValueError(f"convention is one of {STAR_CONVENTIONS}")
    rep = ValidationReport()
    st = StarStructure(W, lam, {}, rep)
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            rep.count("lambda-character")
            if lam[int(T.vcomp[A, B])] != lam[A] * lam[B]:
                rep.fail("lambda-character", A, B)
        for B in T.by_left.get(int(T.r[A]), ()):
            rep.count("lambda-horizontal-invariance")
            if lam[int(T.hcomp[A, B])] != lam[B]:
                rep.fail("lambda-horizontal-invariance", A, B)
    for A in range(T.n):
        a = W.basis(A)
        rep.count("star-involutive")
        if st.star(st.star(a)) != a:
            rep.fail("star-involutive", A)
        rep.count("star-comultiplicative")
        starred = Element(((int(T.vinv[X]), int(T.vinv[Y])), c * lam[X] * lam[Y]) for (X, Y), c in W.comul(a).items())
        if W.comul(st.star(a)) != starred:
            rep.fail("star-comultiplicative", A)
        for B in T.by_top.get(int(T.b[A]), ()):
            rep.count("star-antimultiplicative")
            b = W.basis(B)
            if st.star(W.mul(a, b)) != W.mul(st.star(b), st.star(a)):
                rep.fail("star-antimultiplicative", A, B)
    for A in range(T.n):
        sa = st.star(W.basis(A))
        for B in T.by_top.get(int(T.t[A]), ()):
            v = sum((c for C, c in W.mul(sa, W.basis(B)).items() if T.is_h_box(C)), Fraction(0))
            if v:
                st.gram[(A, B)] = v
    for (A, B), v in st.gram.items():
        if A != B:
            rep.fail("gram-diagonal", A, B)
    for A in range(T.n):
        if st.gram.get((A, A), 0) <= 0:
            rep.fail("gram-positive", A)
    return st


# -- duality ----------------------------------------------------------------------------------

@dataclass
class DualityPairing:
    W: WeakHopf
    Wt: WeakHopf
    weights: list            # <A, A^t> = weights[A], zero off the diagonal
    rank: int
    report: ValidationReport

    def pair(self, u: Element, v: Element) -> Fraction:
        return sum((c * v.coeff(A) * self.weights[A] for A, c in u.items()), Fraction(0))

    def pair_tensor(self, u: Element, v: Element) -> Fraction:
        w = self.weights
        out = Fraction(0)
        for key, c in u.items():
            d = v.coeff(key)
            if d:
                f = c * d
                for A in key:
                    f *= w[A]
                out += f
        return out


def duality_pairing(W: WeakHopf, Wt: WeakHopf, exhaustive: bool = True) -> DualityPairing:
    """<A, B> = mu(A)/daleth(A) when B is A^t, with mu(A) = theta(tl)/theta(tr)."""
    from .double import transpose

    T = W.T
    th = _require_theta(W)
    if Wt.theta is None or Wt.theta.values != th.values or not transpose(T).same_as(Wt.T):
        raise Refused("the second algebra must live on the transpose with the same theta")
    rep = ValidationReport()
    mu = [th[int(T.tl[A])] / th[int(T.tr[A])] for A in range(T.n)]
    weights = [mu[A] / th.daleth(T, A) for A in range(T.n)]
    for A in range(T.n):
        for B in T.by_left.get(int(T.r[A]), ()):
            rep.count("mu-character")
            if mu[int(T.hcomp[A, B])] != mu[A] * mu[B]:
                rep.fail("mu-character", A, B)
        for B in T.by_top.get(int(T.b[A]), ()):
            rep.count("mu-vertical-invariance")
            if mu[int(T.vcomp[A, B])] != mu[A]:
                rep.fail("mu-vertical-invariance", A, B)
    from .linalg import rank, sparse_matrix
    rk = rank(sparse_matrix([{A: weights[A]} for A in range(T.n)], T.n))
    P = DualityPairing(W, Wt, weights, rk, rep)
    if rk != T.n:
        rep.fail("pairing-nondegenerate", detail=f"rank {rk} of {T.n}")
    basis = [W.basis(A) for A in range(T.n)]
    pairs = [(A, B) for A in range(T.n) for B in range(T.n)] if exhaustive else \
        [(A, B) for A in range(T.n) for B in T.by_top.get(int(T.b[A]), ())]
    for A, B in pairs:
        # <ab, x> = <a x b, Delta x> for every basis x, and <x, ab> = <Delta x, a x b>
        ab_W = W.mul(basis[A], basis[B])
        ab_K = Wt.mul(basis[A], basis[B])
        for C in range(T.n):
            c = basis[C]
            rep.count("pairing-product")
            if P.pair(ab_W, c) != P.pair_tensor(Element.basis((A, B)), Wt.comul(c)):
                rep.fail("pairing-product", A, B, C)
            if P.pair(c, ab_K) != P.pair_tensor(W.comul(c), Element.basis((A, B))):
                rep.fail("pairing-coproduct", C, A, B)
    for A in range(T.n):
        a = basis[A]
        rep.count("pairing-unit")
        if P.pair(W.unit, a) != Wt.counit(a) or P.pair(a, Wt.unit) != W.counit(a):
            rep.fail("pairing-unit", A)
        for B in range(T.n):
            rep.count("pairing-antipode")
            if P.pair(W.antipode(a), basis[B]) != P.pair(a, Wt.antipode(basis[B])):
                rep.fail("pairing-antipode", A, B)
    rep.merge(underline_basis_report(W))
    return P


def underline_basis_report(W: WeakHopf) -> ValidationReport:
    """With underline(A) = daleth(A) A the coproduct loses its weights and
    the product picks up 1/daleth; for canonical weights daleth = 1/UR."""
    T = W.T
    th = _require_theta(W)
    rep = ValidationReport()
    d = [th.daleth(T, A) for A in range(T.n)]
    for A in range(T.n):
        rep.count("underline-coproduct")
        got = Element(((X, Y), c * d[A] / (d[X] * d[Y])) for (X, Y), c in W.comul_table[A].items())
        if got != Element(((X, Y), 1) for X, Y in W.factorizations[A]):
            rep.fail("underline-coproduct", A)
        for B in T.by_top.get(int(T.b[A]), ()):
            C = int(T.vcomp[A, B])
            rep.count("underline-product")
            # underline(A) underline(B) = (d[A] d[B] / d[C]) underline(C)
            coeff = W.s(A, B) * d[A] * d[B] / d[C]
            if coeff != W.s(A, B) * d[A]:
                rep.fail("underline-product", A, B)
            if W.kind == "canonical" and not (coeff == Fraction(1, T.corner_of_box(CornerKind.UR, A))
                                              == Fraction(1, T.corner_of_box(CornerKind.LR, B))):
                rep.fail("underline-product-corners", A, B)
    return rep
