"""Brute-force checks of the counting identities satisfied by corner functions.

Each check compares a value read from the corner tables with a count made
directly from the composition tables, over every box or composable tuple.
"""
from __future__ import annotations

from collections import Counter

from . import core
from .double import CornerKind, DoubleGroupoid
from .report import ValidationReport

UL, UR, LL, LR = CornerKind.UL, CornerKind.UR, CornerKind.LL, CornerKind.LR


def _h_factorizations(T: DoubleGroupoid) -> list[list[tuple[int, int]]]:
    out: list = [[] for _ in range(T.n)]
    for X in range(T.n):
        for Y in T.by_left.get(int(T.r[X]), ()):
            out[int(T.hcomp[X, Y])].append((X, Y))
    return out


def corner_symmetries(T: DoubleGroupoid, rep: ValidationReport) -> None:
    """Arrow version and box version of the inversion symmetries."""
    H, V = T.H, T.V
    for g in range(V.n_arrows):
        for x in range(H.n_arrows):
            if V.source[g] != H.source[x]:
                continue
            rep.count("inversion-symmetry-arrows")
            gi, xi = int(V.inverse[g]), int(H.inverse[x])
            vals = (T.corner(UL, g, x), T.corner(LL, gi, x), T.corner(UR, g, xi), T.corner(LR, gi, xi))
            if len(set(vals)) != 1:
                rep.fail("inversion-symmetry-arrows", g, x, detail=str(vals))
    c = T.corner_of_box
    for A in range(T.n):
        rep.count("inversion-symmetry-boxes")
        vals = (c(UL, A), c(LL, int(T.vinv[A])), c(UR, int(T.hinv[A])), c(LR, int(T.tinv[A])))
        if len(set(vals)) != 1:
            rep.fail("inversion-symmetry-boxes", A, detail=str(vals))


def corner_neighbours(T: DoubleGroupoid, rep: ValidationReport) -> None:
    c = T.corner_of_box
    for L in range(T.n):
        for M in T.by_left.get(int(T.r[L]), ()):
            rep.count("neighbour-corners", 2)
            if c(UL, L) != c(UR, M):
                rep.fail("neighbour-corners-h-upper", L, M)
            if c(LL, L) != c(LR, M):
                rep.fail("neighbour-corners-h-lower", L, M)
        for N in T.by_top.get(int(T.b[L]), ()):
            rep.count("neighbour-corners", 2)
            if c(UL, L) != c(LL, N):
                rep.fail("neighbour-corners-v-left", L, N)
            if c(UR, L) != c(LR, N):
                rep.fail("neighbour-corners-v-right", L, N)


def corner_opposite_vertex(T: DoubleGroupoid, rep: ValidationReport) -> None:
    """Each corner of a box is theta at the opposite vertex."""
    c = T.corner_of_box
    th = T.theta_values
    for A in range(T.n):
        rep.count("opposite-vertex", 4)
        pairs = ((UL, T.br), (LL, T.tr), (UR, T.bl), (LR, T.tl))
        for kind, vertex in pairs:
            if c(kind, A) != th[int(vertex[A])]:
                rep.fail(f"opposite-vertex-{kind.name}", A)


def corner_translation(T: DoubleGroupoid, rep: ValidationReport) -> None:
    c = T.corner_of_box
    for X in range(T.n):
        for Y in T.by_left.get(int(T.r[X]), ()):
            XY = int(T.hcomp[X, Y])
            rep.count("translation", 4)
            if c(UR, XY) != c(UR, X):
                rep.fail("translation-UR-h", X, Y)
            if c(LL, XY) != c(LL, Y):
                rep.fail("translation-LL-h", X, Y)
            if c(LR, XY) != c(LR, X):
                rep.fail("translation-LR-h", X, Y)
            if c(UL, XY) != c(UL, Y):
                rep.fail("translation-UL-h", X, Y)
        for Z in T.by_top.get(int(T.b[X]), ()):
            XZ = int(T.vcomp[X, Z])
            rep.count("translation", 4)
            if c(UR, XZ) != c(UR, Z):
                rep.fail("translation-UR-v", X, Z)
            if c(LL, XZ) != c(LL, X):
                rep.fail("translation-LL-v", X, Z)
            if c(LR, XZ) != c(LR, X):
                rep.fail("translation-LR-v", X, Z)
            if c(UL, XZ) != c(UL, Z):
                rep.fail("translation-UL-v", X, Z)


def theta_on_d_components(T: DoubleGroupoid, rep: ValidationReport) -> None:
    th = T.theta_values
    for comp in core.d_components(T):
        rep.count("theta-on-d-components")
        if len({int(th[P]) for P in comp}) != 1:
            rep.fail("theta-on-d-components", *comp)


def antipode_triples(T: DoubleGroupoid, rep: ValidationReport, fact=None) -> None:
    """Triples (X, Y, Z) around a box with XYZ = A, counted against LL(A) UR(A)."""
    fact = fact or _h_factorizations(T)
    c = T.corner_of_box
    for A in range(T.n):
        count = 0
        for XY, Z in fact[A]:
            for X, Y in fact[XY]:
                if _antipode_triple(T, X, Y, Z):
                    count += 1
        rep.count("antipode-triples")
        if count != c(LL, A) * c(UR, A):
            rep.fail("antipode-triples", A, detail=f"{count} triples, corners give {c(LL, A) * c(UR, A)}")
        # the distinguished triple (A, A^h, A)
        X, Y, Z = A, int(T.hinv[A]), A
        rep.count("distinguished-triple")
        ok = (_antipode_triple(T, X, Y, Z) and T.hc(X, Y, Z) == A
              and T.vc(int(T.tinv[X]), Y, int(T.tinv[Z])) == int(T.tinv[A]))
        if not ok:
            rep.fail("distinguished-triple", A)


def _antipode_triple(T: DoubleGroupoid, X: int, Y: int, Z: int) -> bool:
    H = T.H
    return (T.r[X] == T.l[Y] and T.r[Y] == T.l[Z]
            and T.t[Y] == H.inverse[T.t[X]] and T.b[Y] == H.inverse[T.b[Z]])


def pair_counts(T: DoubleGroupoid, rep: ValidationReport, fact=None) -> None:
    """Pairs UV = A whose vertical stack with an inverse is a fixed box.

    The count is a number of double factorizations, so it equals the corner
    value exactly when the corresponding common product exists, and is zero
    otherwise (in particular when the relevant side of A is not an identity).
    """
    fact = fact or _h_factorizations(T)
    H = T.H
    tinv = T.tinv
    by_bl: dict = {}
    by_tr: dict = {}
    for B in range(T.n):
        by_bl.setdefault(int(T.bl[B]), []).append(B)
        by_tr.setdefault(int(T.tr[B]), []).append(B)
    for A in range(T.n):
        first: Counter = Counter()
        second: Counter = Counter()
        for U, Vb in fact[A]:
            Y = int(T.vcomp[U, tinv[Vb]])
            if Y >= 0:
                first[Y] += 1
            X = int(T.vcomp[tinv[U], Vb])
            if X >= 0:
                second[X] += 1
        below = int(T.vcomp[A, T.hid[T.V.inverse[T.r[A]]]])      # A over hid(r(A)^-1)
        above = int(T.vcomp[T.hid[T.V.inverse[T.l[A]]], A])      # hid(l(A)^-1) over A
        for Y in by_bl.get(int(T.tr[A]), ()):
            rep.count("pair-count-upper")
            meets = below >= 0 and int(T.hcomp[Y, T.vid[H.inverse[T.b[Y]]]]) == below
            want = T.corner(UR, int(T.r[A]), int(H.inverse[T.b[Y]])) if meets else 0
            if first[Y] != want:
                rep.fail("pair-count-upper", A, Y, detail=f"{first[Y]} != {want}")
            if meets and T.corner(UL, int(T.l[A]), int(T.t[Y])) != want:
                rep.fail("pair-count-upper-UL", A, Y)
        for X in by_tr.get(int(T.bl[A]), ()):
            rep.count("pair-count-lower")
            meets = above >= 0 and int(T.hcomp[T.vid[H.inverse[T.t[X]]], X]) == above
            want = T.corner(LL, int(T.l[A]), int(H.inverse[T.t[X]])) if meets else 0
            if second[X] != want:
                rep.fail("pair-count-lower", A, X, detail=f"{second[X]} != {want}")
            if meets and T.corner(LR, int(T.r[A]), int(T.b[X])) != want:
                rep.fail("pair-count-lower-LR", A, X)
        if H.identity[H.source[T.b[A]]] != T.b[A] and first:
            rep.fail("pair-count-upper-zero", A)
        if H.identity[H.source[T.t[A]]] != T.t[A] and second:
            rep.fail("pair-count-lower-zero", A)


def corner_lemma_report(T: DoubleGroupoid) -> ValidationReport:
    rep = ValidationReport()
    fact = _h_factorizations(T)
    corner_symmetries(T, rep)
    corner_neighbours(T, rep)
    corner_opposite_vertex(T, rep)
    corner_translation(T, rep)
    theta_on_d_components(T, rep)
    antipode_triples(T, rep, fact)
    pair_counts(T, rep, fact)
    return rep


# -- vacancy --------------------------------------------------------------------------

def _v_factorizations(T: DoubleGroupoid) -> list[list[tuple[int, int]]]:
    out: list = [[] for _ in range(T.n)]
    for A in range(T.n):
        for B in T.by_top.get(int(T.b[A]), ()):
            out[int(T.vcomp[A, B])].append((A, B))
    return out


def vacancy_characterizations(T: DoubleGroupoid) -> dict[str, bool]:
    """Three independent tests of vacancy; they should agree.

    ``corners``: every corner function is identically 1.  ``factorization``:
    each box written both as XY and as A over B has exactly one double
    factorization.  ``cores``: both core groupoids are discrete and the
    filling condition holds.
    """
    from .double import double_factorizations, filling_condition, is_vacant

    hfact, vfact = _h_factorizations(T), _v_factorizations(T)
    unique = True
    for C in range(T.n):
        for X, Y in hfact[C]:
            for A, B in vfact[C]:
                if len(double_factorizations(T, X, Y, A, B)) != 1:
                    unique = False
                    break
            if not unique:
                break
        if not unique:
            break
    discrete_cores = True
    for side in ("D", "E"):
        c = core.build_core(T, side).as_groupoid
        if not all(c.is_identity(i) for i in range(c.n_arrows)):
            discrete_cores = False
    return {
        "corners": bool(is_vacant(T)),
        "factorization": unique,
        "cores": discrete_cores and filling_condition(T),
    }


# -- the double groupoid T(G) of a groupoid -----------------------------------------------

def bimodule_package(G, W=None) -> ValidationReport:
    """Checks on T(G) with its canonical structure.

    Δ(1), with the box (g, h) read as g ⊗ h^{-1} in kG ⊗ kG^op on each tensor
    factor, must be the separability idempotent Σ_g g ⊗ g^{-1} / d(s g)
    placed in the two middle slots (d(P) = number of arrows leaving P).  The
    core D must map isomorphically onto G by taking right sides, S² = id,
    and the dimension is |G|².
    """
    from fractions import Fraction

    from .builders import bimodule_dgpd
    from .element import Element
    from .wha import build_canonical

    T = bimodule_dgpd(G)
    W = W or build_canonical(T)
    rep = ValidationReport()
    label = lambda a: G.arrows[a]
    inv = lambda lab: G.arrows[G.inverse[G.arr(lab)]]

    rep.count("dimension")
    if W.n != G.n_arrows ** 2:
        rep.fail("dimension", detail=f"{W.n} != {G.n_arrows ** 2}")

    def slots(A: int):
        g, h = T.boxes[A]
        return g, inv(h)

    image = Element({slots(X) + slots(Y): c for (X, Y), c in W.delta_one.items()})
    leaving = {P: sum(1 for a in range(G.n_arrows) if G.source[a] == P) for P in range(G.n_objects)}
    units = [label(G.identity[P]) for P in range(G.n_objects)]
    expected = Element({(p, label(a), inv(label(a)), q): Fraction(1, leaving[int(G.source[a])])
                        for a in range(G.n_arrows) for p in units for q in units})
    rep.count("separability")
    if image != expected:
        rep.fail("separability", detail=f"{image.dump()} != {expected.dump()}")

    D = core.build_core(T, "D").as_groupoid
    rep.count("core-D")
    right = [label(int(T.r[A])) for A in D.arrows]
    if sorted(map(str, right)) != sorted(map(str, G.arrows)) or len(set(right)) != G.n_arrows:
        rep.fail("core-D", detail="right side is not a bijection onto G")
    else:
        for i in range(D.n_arrows):
            point = lambda P: T.points[D.objects[P]]      # core objects are point indices
            if point(D.source[i]) != G.objects[G.source[G.arr(right[i])]] or \
                    point(D.target[i]) != G.objects[G.target[G.arr(right[i])]]:
                rep.fail("core-D-endpoints", D.arrows[i])
            for j in range(D.n_arrows):
                k = int(D.comp[i, j])
                gk = int(G.comp[G.arr(right[i]), G.arr(right[j])])
                if (k < 0) != (gk < 0) or (k >= 0 and right[k] != G.arrows[gk]):
                    rep.fail("core-D-composition", D.arrows[i], D.arrows[j])
    rep.count("involutive", T.n)
    for A in range(T.n):
        if W.antipode_squared_scalar(A) != 1:
            rep.fail("involutive", A)
    return rep
