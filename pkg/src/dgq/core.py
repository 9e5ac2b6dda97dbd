"""The core groupoids D and E of a double groupoid and the maps around them.

D consists of the boxes whose left and bottom sides are identities, with
s(D) = rt(D), e(D) = lt(D); E of the boxes whose right and top sides are
identities, with s(E) = bl(E), e(E) = br(E).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .double import DomainError, DoubleGroupoid
from .groupoid import Groupoid, connected_components, from_maps, opposite, restricted_product
from .groupoid import validate_groupoid


def in_D(T: DoubleGroupoid, A: int) -> bool:
    return T.v_is_identity(int(T.l[A])) and T.h_is_identity(int(T.b[A]))


def in_E(T: DoubleGroupoid, A: int) -> bool:
    return T.v_is_identity(int(T.r[A])) and T.h_is_identity(int(T.t[A]))


def source(T: DoubleGroupoid, A: int, side: str) -> int:
    return int(T.tr[A]) if side == "D" else int(T.bl[A])


def end(T: DoubleGroupoid, A: int, side: str) -> int:
    return int(T.tl[A]) if side == "D" else int(T.br[A])


def vid_inv(T: DoubleGroupoid, x: int) -> int:
    """Vertical identity box of x^{-1}."""
    return int(T.vid[T.H.inverse[x]])


def diamond(T: DoubleGroupoid, D: int, L: int) -> int:
    """D ⋄ L = {vid t(L), D / L, hid r(L)}, defined when e(D) = s(L)."""
    return T.square(int(T.vid[T.t[L]]), D, L, int(T.hid[T.r[L]]))


def circ(T: DoubleGroupoid, M: int, E: int) -> int:
    """M ∘ E = {hid l(E), E / M, vid b(E)}, defined when e(M) = s(E)."""
    return T.square(int(T.hid[T.l[E]]), E, M, int(T.vid[T.b[E]]))


def inverse_D(T: DoubleGroupoid, D: int) -> int:
    """(vid(t(D)^{-1}) D)^v."""
    return int(T.vinv[T.hc(vid_inv(T, int(T.t[D])), D)])


def inverse_E(T: DoubleGroupoid, E: int) -> int:
    """(E vid(b(E)^{-1}))^v."""
    return int(T.vinv[T.hc(E, vid_inv(T, int(T.b[E])))])


@dataclass(eq=False)
class CoreGroupoid:
    side: str
    carrier: list[int]
    as_groupoid: Groupoid

    def embed(self, i: int) -> int:
        return self.carrier[i]

    def index(self, A: int) -> int:
        return self.as_groupoid.arr(A)

    def __contains__(self, A: int) -> bool:
        return A in self.as_groupoid._arr_index


def build_core(T: DoubleGroupoid, side: str) -> CoreGroupoid:
    if side not in ("D", "E"):
        raise ValueError("side is 'D' or 'E'")
    member = in_D if side == "D" else in_E
    carrier = [A for A in range(T.n) if member(T, A)]
    compose = (lambda f, g: diamond(T, f, g)) if side == "D" else (lambda f, g: circ(T, f, g))
    g = from_maps(range(T.n_points), carrier,
                  lambda A: source(T, A, side), lambda A: end(T, A, side),
                  compose, lambda P: T.theta_box(P))
    return CoreGroupoid(side, carrier, g)


def core_report(T: DoubleGroupoid):
    """Groupoid axioms for D and E, the displayed inverse formulas, and total
    inversion as an isomorphism D → E."""
    cores = {s: build_core(T, s) for s in ("D", "E")}
    rep = validate_groupoid(cores["D"].as_groupoid)
    rep.merge(validate_groupoid(cores["E"].as_groupoid), "E.")
    for side, formula in (("D", inverse_D), ("E", inverse_E)):
        c = cores[side]
        for i, A in enumerate(c.carrier):
            if c.embed(int(c.as_groupoid.inverse[i])) != formula(T, A):
                rep.fail(f"{side}-inverse-formula", A)
    D, E = cores["D"], cores["E"]
    img = [int(T.tinv[A]) for A in D.carrier]
    if sorted(img) != sorted(E.carrier):
        rep.fail("total-inversion-onto-E", *sorted(set(img) ^ set(E.carrier)))
    else:
        for A in D.carrier:
            for B in D.carrier:
                AB = diamond(T, A, B) if end(T, A, "D") == source(T, B, "D") else -1
                if AB >= 0 and int(T.tinv[AB]) != circ(T, int(T.tinv[A]), int(T.tinv[B])):
                    rep.fail("total-inversion-morphism", A, B)
            if source(T, int(T.tinv[A]), "E") != source(T, A, "D") or end(T, int(T.tinv[A]), "E") != end(T, A, "D"):
                rep.fail("total-inversion-endpoints", A)
    rep.count("core", len(D.carrier) + len(E.carrier))
    return rep


# -- dagger and the canonical maps ---------------------------------------------------

def _dagger_D(T: DoubleGroupoid, D: int) -> int:
    return T.hc(int(T.hinv[D]), int(T.vid[T.t[D]]))


@lru_cache(maxsize=None)
def _dagger_table(T: DoubleGroupoid) -> dict:
    return {_dagger_D(T, D): D for D in range(T.n) if in_D(T, D)}


def dagger(T: DoubleGroupoid, A: int, side: str | None = None) -> int:
    """D† = D^h·vid(t D) for D in D (landing in E); on E the inverse map."""
    if side is None:
        side = "D" if in_D(T, A) else "E"
    if side == "D":
        if not in_D(T, A):
            raise DomainError(f"box {A} is not in D")
        return _dagger_D(T, A)
    if not in_E(T, A):
        raise DomainError(f"box {A} is not in E")
    return _dagger_table(T)[A]


def canonical_map(T: DoubleGroupoid, which: str, A: int) -> int:
    if which == "phi":
        if not T.h_is_identity(int(T.t[A])):
            raise DomainError("phi needs t(A) to be an identity")
        return T.vc(int(T.tinv[A]), int(T.hid[T.r[A]]))
    if which == "alpha":
        if not T.v_is_identity(int(T.l[A])):
            raise DomainError("alpha needs l(A) to be an identity")
        return T.hc(vid_inv(T, int(T.b[A])), A)
    if which == "psi":
        if not T.h_is_identity(int(T.b[A])):
            raise DomainError("psi needs b(A) to be an identity")
        return T.vc(int(T.hid[T.l[A]]), int(T.tinv[A]))
    if which == "beta":
        if not T.v_is_identity(int(T.r[A])):
            raise DomainError("beta needs r(A) to be an identity")
        return T.hc(A, vid_inv(T, int(T.t[A])))
    raise ValueError(f"unknown map {which!r}")


# -- actions ---------------------------------------------------------------------

ACTIONS = ("D_left", "D_right", "E_right", "E_left")


def core_action(T: DoubleGroupoid, which: str, actor: int, A: int) -> int:
    """D ⇀ A, A ↼ D, A ↽ E and E ⇁ A as explicit 2x2 composites."""
    t, b, l, r = T.sides(A)
    if which == "D_left":
        if not in_D(T, actor) or T.tr[A] != end(T, actor, "D"):
            raise DomainError("D ⇀ A needs rt(A) = e(D)")
        return T.square(int(T.vid[t]), actor, A, int(T.hid[r]))
    if which == "D_right":
        if not in_D(T, actor) or T.br[A] != source(T, actor, "D"):
            raise DomainError("A ↼ D needs rb(A) = s(D)")
        return T.square(A, int(T.hid[r]), int(T.vid[b]), T.hc(vid_inv(T, int(T.t[actor])), actor))
    if which == "E_right":
        if not in_E(T, actor) or T.tl[A] != source(T, actor, "E"):
            raise DomainError("A ↽ E needs lt(A) = s(E)")
        return T.square(T.hc(actor, vid_inv(T, int(T.b[actor]))), int(T.vid[t]), int(T.hid[l]), A)
    if which == "E_left":
        if not in_E(T, actor) or T.bl[A] != end(T, actor, "E"):
            raise DomainError("E ⇁ A needs lb(A) = e(E)")
        return T.square(int(T.hid[l]), A, actor, int(T.vid[b]))
    raise ValueError(f"unknown action {which!r}")


def curve_action(T: DoubleGroupoid, A: int, E: int) -> int:
    """A ↷ E = {hid l(A) / E / A^{-1}}, defined when b(A) = b(E)^{-1}."""
    if not in_E(T, E) or T.b[A] != T.H.inverse[T.b[E]]:
        raise DomainError("A ↷ E needs E in E and b(A) = b(E)^{-1}")
    return T.vc(int(T.hid[T.l[A]]), E, int(T.tinv[A]))


def vertically_connected(T: DoubleGroupoid, E: int, M: int) -> bool:
    """E ∼_V M: some V-arrow goes from e(E) to e(M)."""
    eE, eM = end(T, E, "E"), end(T, M, "E")
    return any(T.V.source[g] == eE and T.V.target[g] == eM for g in range(T.V.n_arrows))


def core_diagram(T: DoubleGroupoid) -> dict:
    """∂(D) = (t(D), r(D)) into the restricted product of H^op and V."""
    D = build_core(T, "D")
    target = restricted_product(opposite(T.H), T.V)
    image = [target.arr((int(T.t[A]), int(T.r[A]))) for A in D.carrier]
    ok = True
    g = D.as_groupoid
    for i in range(g.n_arrows):
        for j in range(g.n_arrows):
            k = g.comp[i, j]
            if k >= 0 and target.comp[image[i], image[j]] != image[k]:
                ok = False
    kernel = {P: [A for A in D.carrier if T.t[A] == T.H.identity[P] and T.r[A] == T.V.identity[P]]
              for P in range(T.n_points)}
    return {"core": D, "target": target, "image": image, "is_morphism": ok, "kernel": kernel,
            "injective": len(set(image)) == len(image)}


def d_components(T: DoubleGroupoid) -> list[list[int]]:
    return connected_components(build_core(T, "D").as_groupoid)


def carrier_mask(T: DoubleGroupoid, side: str) -> np.ndarray:
    member = in_D if side == "D" else in_E
    return np.array([member(T, A) for A in range(T.n)], dtype=bool)
