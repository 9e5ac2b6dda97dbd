"""Finite double groupoids: tables, validation, inverses, corner counts.

A box A has horizontal sides t(A), b(A) in H and vertical sides l(A), r(A)
in V.  H-arrows go from l to r, V-arrows from t to b.  ``hcomp[A, B]`` is AB
(defined iff r(A) = l(B)); ``vcomp[A, B]`` is A stacked over B (defined iff
b(A) = t(B)).  ``vid[x]`` is the box with top and bottom x and identity
vertical sides; ``hid[g]`` the box with left and right g.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable

import numpy as np

from ._kernels import kernels
from .groupoid import UNDEF, Groupoid, connected_components, validate_groupoid
from .report import ValidationReport


class DomainError(ValueError):
    """An operation was called outside its documented domain."""


class CornerKind(enum.Enum):
    UL = "⌜"
    UR = "⌝"
    LL = "⌞"
    LR = "⌟"


@dataclass(eq=False)
class DoubleGroupoid:
    H: Groupoid
    V: Groupoid
    boxes: tuple
    t: np.ndarray
    b: np.ndarray
    l: np.ndarray
    r: np.ndarray
    hcomp: np.ndarray
    vcomp: np.ndarray
    vid: np.ndarray
    hid: np.ndarray
    name: str = ""
    _box_index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._box_index = {a: i for i, a in enumerate(self.boxes)}

    # -- basic accessors ----------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.boxes)

    @property
    def points(self) -> tuple:
        return self.H.objects

    @property
    def n_points(self) -> int:
        return self.H.n_objects

    def box(self, label) -> int:
        return self._box_index[label]

    def sides(self, A: int) -> tuple[int, int, int, int]:
        return int(self.t[A]), int(self.b[A]), int(self.l[A]), int(self.r[A])

    @cached_property
    def tl(self) -> np.ndarray:
        return self.H.source[self.t]

    @cached_property
    def tr(self) -> np.ndarray:
        return self.H.target[self.t]

    @cached_property
    def bl(self) -> np.ndarray:
        return self.H.source[self.b]

    @cached_property
    def br(self) -> np.ndarray:
        return self.H.target[self.b]

    def theta_box(self, P: int) -> int:
        return int(self.vid[self.H.identity[P]])

    def is_h_box(self, A: int) -> bool:
        """A is a vertical identity, i.e. A = vid(x)."""
        return self.vid[self.t[A]] == A

    def is_v_box(self, A: int) -> bool:
        """A is a horizontal identity, i.e. A = hid(g)."""
        return self.hid[self.l[A]] == A

    def h_is_identity(self, x: int) -> bool:
        return self.H.identity[self.H.source[x]] == x

    def v_is_identity(self, g: int) -> bool:
        return self.V.identity[self.V.source[g]] == g

    def hc(self, *boxes: int) -> int:
        """Horizontal composite of a row of boxes, -1 if undefined."""
        acc = boxes[0]
        for B in boxes[1:]:
            if acc < 0 or B < 0:
                return UNDEF
            acc = int(self.hcomp[acc, B])
        return int(acc)

    def vc(self, *boxes: int) -> int:
        """Vertical composite of a column (top first), -1 if undefined."""
        acc = boxes[0]
        for B in boxes[1:]:
            if acc < 0 or B < 0:
                return UNDEF
            acc = int(self.vcomp[acc, B])
        return int(acc)

    def square(self, A: int, B: int, C: int, D: int) -> int:
        """{AB / CD}, computed row by row."""
        return self.vc(self.hc(A, B), self.hc(C, D))

    # -- inverses -------------------------------------------------------------

    @cached_property
    def hinv(self) -> np.ndarray:
        inv = np.full(self.n, UNDEF, dtype=np.int64)
        for A in range(self.n):
            want_l, want_r = self.hid[self.l[A]], self.hid[self.r[A]]
            for B in self.by_left.get(int(self.r[A]), ()):
                if self.hcomp[A, B] == want_l and self.hcomp[B, A] == want_r:
                    inv[A] = B
                    break
        return inv

    @cached_property
    def vinv(self) -> np.ndarray:
        inv = np.full(self.n, UNDEF, dtype=np.int64)
        for A in range(self.n):
            want_t, want_b = self.vid[self.t[A]], self.vid[self.b[A]]
            for B in self.by_top.get(int(self.b[A]), ()):
                if self.vcomp[A, B] == want_t and self.vcomp[B, A] == want_b:
                    inv[A] = B
                    break
        return inv

    @cached_property
    def tinv(self) -> np.ndarray:
        out = np.full(self.n, UNDEF, dtype=np.int64)
        ok = self.hinv >= 0
        out[ok] = self.vinv[self.hinv[ok]]
        return out

    def inverse(self, A: int, kind: str = "total") -> int:
        table = {"h": self.hinv, "v": self.vinv, "total": self.tinv}[kind]
        return int(table[A])

    # -- indexes ----------------------------------------------------------------

    def _index(self, *keys) -> dict:
        out: dict = {}
        cols = [getattr(self, k) for k in keys]
        for A in range(self.n):
            key = tuple(int(c[A]) for c in cols)
            out.setdefault(key if len(key) > 1 else key[0], []).append(A)
        return out

    @cached_property
    def by_left(self) -> dict:
        return self._index("l")

    @cached_property
    def by_right(self) -> dict:
        return self._index("r")

    @cached_property
    def by_top(self) -> dict:
        return self._index("t")

    @cached_property
    def by_bottom(self) -> dict:
        return self._index("b")

    @cached_property
    def by_left_top(self) -> dict:
        return self._index("l", "t")

    # -- corners ------------------------------------------------------------------

    def _corner_domain(self, kind: CornerKind) -> np.ndarray:
        V, H = self.V, self.H
        vs = V.source if kind in (CornerKind.UL, CornerKind.UR) else V.target
        hs = H.source if kind in (CornerKind.UL, CornerKind.LL) else H.target
        return vs[:, None] == hs[None, :]

    @cached_property
    def corner_tables(self) -> dict:
        nV, nH = self.V.n_arrows, self.H.n_arrows
        sides = {
            CornerKind.UL: (self.l, self.t),
            CornerKind.UR: (self.r, self.t),
            CornerKind.LL: (self.l, self.b),
            CornerKind.LR: (self.r, self.b),
        }
        return {k: kernels.count_pairs(g.astype(np.int64), x.astype(np.int64), nV, nH)
                for k, (g, x) in sides.items()}

    @cached_property
    def corner_domains(self) -> dict:
        return {k: self._corner_domain(k) for k in CornerKind}

    def corner(self, kind: CornerKind, g: int, x: int) -> int:
        if not self.corner_domains[kind][g, x]:
            raise DomainError(f"({g}, {x}) is not in the domain of {kind.value}")
        return int(self.corner_tables[kind][g, x])

    def corner_of_box(self, kind: CornerKind, A: int) -> int:
        g = {CornerKind.UL: self.l, CornerKind.UR: self.r,
             CornerKind.LL: self.l, CornerKind.LR: self.r}[kind][A]
        x = {CornerKind.UL: self.t, CornerKind.UR: self.t,
             CornerKind.LL: self.b, CornerKind.LR: self.b}[kind][A]
        return int(self.corner_tables[kind][g, x])

    @cached_property
    def theta_values(self) -> np.ndarray:
        tab = self.corner_tables[CornerKind.UL]
        return np.array([tab[self.V.identity[P], self.H.identity[P]] for P in range(self.n_points)],
                        dtype=np.int64)

    def theta(self, P: int) -> int:
        return int(self.theta_values[P])

    # -- derived structures -------------------------------------------------------

    def same_as(self, other: "DoubleGroupoid") -> bool:
        return (self.H.same_as(other.H) and self.V.same_as(other.V) and self.boxes == other.boxes
                and all(np.array_equal(getattr(self, k), getattr(other, k))
                        for k in ("t", "b", "l", "r", "hcomp", "vcomp", "vid", "hid")))


def from_maps(H: Groupoid, V: Groupoid, boxes: Iterable[Hashable], sides: Callable,
              hcompose: Callable, vcompose: Callable, vid: Callable, hid: Callable,
              name: str = "") -> DoubleGroupoid:
    """Assemble from labels.

    ``sides(A)`` returns labels (t, b, l, r); ``hcompose``/``vcompose`` are
    called only on composable pairs; ``vid(x)``/``hid(g)`` give identity boxes.
    """
    boxes = tuple(boxes)
    bi = {a: i for i, a in enumerate(boxes)}
    n = len(boxes)
    t = np.empty(n, np.int64)
    b = np.empty(n, np.int64)
    l = np.empty(n, np.int64)
    r = np.empty(n, np.int64)
    for i, A in enumerate(boxes):
        st, sb, sl, sr = sides(A)
        t[i], b[i], l[i], r[i] = H.arr(st), H.arr(sb), V.arr(sl), V.arr(sr)
    hcomp = np.full((n, n), UNDEF, np.int64)
    vcomp = np.full((n, n), UNDEF, np.int64)
    by_l: dict = {}
    by_t: dict = {}
    for i in range(n):
        by_l.setdefault(int(l[i]), []).append(i)
        by_t.setdefault(int(t[i]), []).append(i)
    for i, A in enumerate(boxes):
        for j in by_l.get(int(r[i]), ()):
            hcomp[i, j] = bi[hcompose(A, boxes[j])]
        for j in by_t.get(int(b[i]), ()):
            vcomp[i, j] = bi[vcompose(A, boxes[j])]
    vids = np.array([bi.get(vid(x), UNDEF) for x in H.arrows], np.int64)
    hids = np.array([bi.get(hid(g), UNDEF) for g in V.arrows], np.int64)
    return DoubleGroupoid(H, V, boxes, t, b, l, r, hcomp, vcomp, vids, hids, name=name)


# -- validation -----------------------------------------------------------------

_DOMAIN_NAMES = {0: "defined-off-domain", 1: "undefined-on-domain", 2: "dangling-id",
                 3: "side-of-composite", 4: "side-of-composite"}


def _structural(T: DoubleGroupoid, rep: ValidationReport) -> None:
    n, nH, nV = T.n, T.H.n_arrows, T.V.n_arrows
    if T.H.n_objects != T.V.n_objects:
        rep.broken("base-mismatch", T.H.n_objects, T.V.n_objects)
    for name, arr, lim in (("t", T.t, nH), ("b", T.b, nH), ("l", T.l, nV), ("r", T.r, nV)):
        if arr.shape != (n,):
            rep.broken("table-shape", name)
            continue
        for A in np.nonzero((arr < 0) | (arr >= lim))[0]:
            rep.broken("dangling-id", int(A), detail=f"side {name} = {arr[A]}")
    for name, tab in (("hcompose", T.hcomp), ("vcompose", T.vcomp)):
        if tab.shape != (n, n):
            rep.broken("table-shape", name)
            continue
        for A, B in zip(*np.nonzero((tab < UNDEF) | (tab >= n))):
            rep.broken("dangling-id", int(A), int(B), detail=f"{name} entry {tab[A, B]}")
    for name, tab, lim in (("vid", T.vid, nH), ("hid", T.hid, nV)):
        if tab.shape != (lim,):
            rep.broken("table-shape", name)
            continue
        for x in np.nonzero((tab < UNDEF) | (tab >= n))[0]:
            rep.broken("dangling-id", int(x), detail=f"{name} entry {tab[x]}")


def validate(T: DoubleGroupoid, cap: int = 50) -> ValidationReport:
    rep = ValidationReport()
    _structural(T, rep)
    if rep.structural:
        return rep
    rep.merge(validate_groupoid(T.H), "H.")
    rep.merge(validate_groupoid(T.V), "V.")
    if not rep.ok:
        return rep
    H, V = T.H, T.V
    n = T.n

    # the four corners of every box must agree
    for A in range(n):
        t, b, l, r = T.sides(A)
        if not (H.source[t] == V.source[l] and H.target[t] == V.source[r]
                and H.source[b] == V.target[l] and H.target[b] == V.target[r]):
            rep.fail("box-corners", A)
    rep.count("box-corners", n)
    if rep.failures:
        return rep

    # identity boxes exist and have the displayed shape
    for x in range(H.n_arrows):
        A = int(T.vid[x])
        if A < 0:
            rep.fail("missing-vertical-identity", x)
            continue
        if (T.t[A], T.b[A], T.l[A], T.r[A]) != (x, x, V.identity[H.source[x]], V.identity[H.target[x]]):
            rep.fail("vertical-identity-shape", x, A)
    for g in range(V.n_arrows):
        A = int(T.hid[g])
        if A < 0:
            rep.fail("missing-horizontal-identity", g)
            continue
        if (T.t[A], T.b[A], T.l[A], T.r[A]) != (H.identity[V.source[g]], H.identity[V.target[g]], g, g):
            rep.fail("horizontal-identity-shape", g, A)
    rep.count("identity-boxes", H.n_arrows + V.n_arrows)
    if rep.failures:
        return rep
    for P in range(T.n_points):
        if T.vid[H.identity[P]] != T.hid[V.identity[P]]:
            rep.fail("theta-box", P, int(T.vid[H.identity[P]]), int(T.hid[V.identity[P]]))

    # both compositions: domains, side maps, associativity
    for label, comp, src, tgt, other in (
        ("vcompose", T.vcomp, T.t, T.b, ((T.l, V.comp), (T.r, V.comp))),
        ("hcompose", T.hcomp, T.l, T.r, ((T.t, H.comp), (T.b, H.comp))),
    ):
        rows, _ = kernels.table_shape(comp, src, tgt, n)
        for code, A, B in rows[:cap]:
            rep.fail(f"{label}:{_DOMAIN_NAMES[int(code)]}", int(A), int(B))
        for side, side_comp in other:
            srows, _ = kernels.side_check(comp, side, side_comp, 2, cap)
            for A, B in srows:
                rep.fail(f"{label}:side-of-composite", int(A), int(B))
        rep.count(f"{label}:domain-and-sides", n * n)
    for label, comp in (("vcompose", T.vcomp), ("hcompose", T.hcomp)):
        rows, _ = kernels.associativity(comp, cap)
        for A, B, C in rows:
            rep.fail(f"{label}:associativity", int(A), int(B), int(C))
        rep.count(f"{label}:associativity", 1)

    # units
    for A in range(n):
        t, b, l, r = T.sides(A)
        if T.vcomp[T.vid[t], A] != A or T.vcomp[A, T.vid[b]] != A:
            rep.fail("vertical-unit", A)
        if T.hcomp[T.hid[l], A] != A or T.hcomp[A, T.hid[r]] != A:
            rep.fail("horizontal-unit", A)
    rep.count("units", n)
    # identity maps are functors for the other direction
    for x in range(H.n_arrows):
        for y in range(H.n_arrows):
            xy = H.comp[x, y]
            if xy >= 0 and T.hcomp[T.vid[x], T.vid[y]] != T.vid[xy]:
                rep.fail("vertical-identity-functor", x, y)
    for g in range(V.n_arrows):
        for h in range(V.n_arrows):
            gh = V.comp[g, h]
            if gh >= 0 and T.vcomp[T.hid[g], T.hid[h]] != T.hid[gh]:
                rep.fail("horizontal-identity-functor", g, h)

    # inverses with the displayed boundaries
    for A in range(n):
        t, b, l, r = T.sides(A)
        Ah, Av = int(T.hinv[A]), int(T.vinv[A])
        if Ah < 0:
            rep.fail("horizontal-inverse", A, detail="missing")
        elif T.sides(Ah) != (H.inverse[t], H.inverse[b], r, l):
            rep.fail("horizontal-inverse-boundary", A, Ah)
        if Av < 0:
            rep.fail("vertical-inverse", A, detail="missing")
        elif T.sides(Av) != (b, t, V.inverse[l], V.inverse[r]):
            rep.fail("vertical-inverse-boundary", A, Av)
        if Ah >= 0 and Av >= 0 and T.vinv[Ah] != T.hinv[Av]:
            rep.fail("total-inverse", A, int(T.vinv[Ah]), int(T.hinv[Av]))
    rep.count("inverses", n)

    rows, total = kernels.interchange(T.hcomp, T.vcomp, T.l, T.t, T.hinv, T.vinv, T.tinv, cap)
    names = {0: "interchange", 1: "square-horizontal-inverse", 2: "square-vertical-inverse",
             3: "square-total-inverse"}
    for code, A, B, C, D in rows:
        rep.fail(names[int(code)], int(A), int(B), int(C), int(D))
    rep.count("interchange", 1)
    return rep


# -- transpose --------------------------------------------------------------------

def transpose(T: DoubleGroupoid) -> DoubleGroupoid:
    """Exchange the roles of horizontal and vertical."""
    name = T.name[:-2] if T.name.endswith("^t") else (T.name + "^t" if T.name else "")
    return DoubleGroupoid(T.V, T.H, T.boxes, T.l.copy(), T.r.copy(), T.t.copy(), T.b.copy(),
                          T.vcomp.copy(), T.hcomp.copy(), T.hid.copy(), T.vid.copy(), name=name)


# -- corner-derived predicates -------------------------------------------------------

def filling_witness(T: DoubleGroupoid, kind: CornerKind = CornerKind.UR):
    """First (g, x) in the domain of ``kind`` with corner 0, or None."""
    bad = T.corner_domains[kind] & (T.corner_tables[kind] == 0)
    idx = np.argwhere(bad)
    return None if idx.size == 0 else (int(idx[0, 0]), int(idx[0, 1]))


def filling_condition(T: DoubleGroupoid) -> bool:
    results = {k: filling_witness(T, k) is None for k in CornerKind}
    if len(set(results.values())) != 1:
        raise AssertionError(f"corner kinds disagree on the filling condition: {results}")
    return results[CornerKind.UR]


def is_vacant(T: DoubleGroupoid) -> bool:
    return all(bool(np.all(T.corner_tables[k][T.corner_domains[k]] == 1)) for k in CornerKind)


def double_factorizations(T: DoubleGroupoid, X: int, Y: int, A: int, B: int) -> list[tuple[int, int, int, int]]:
    """All (U, V, R, S) with UV = A, RS = B, U over R = X, V over S = Y."""
    XY = T.hcomp[X, Y]
    if XY < 0 or XY != T.vcomp[A, B]:
        raise DomainError("XY and A over B must be defined and equal")
    out = []
    for U in T.by_left_top.get((int(T.l[A]), int(T.t[X])), ()):
        V = T.hc(int(T.hinv[U]), A)
        R = T.vc(int(T.vinv[U]), X)
        S = T.vc(T.hc(int(T.tinv[U]), int(T.vinv[A])), Y)
        if min(V, R, S) >= 0 and T.hc(U, V) == A and T.hc(R, S) == B and T.vc(U, R) == X and T.vc(V, S) == Y:
            out.append((U, V, R, S))
    return out


def transitivity_flags(T: DoubleGroupoid) -> dict[str, bool]:
    """Completion of three-sided configurations.

    Horizontal transitivity: every (left, right, bottom) and every
    (left, right, top) with matching endpoints bounds a box.  Vertical
    transitivity: the same for (top, left, bottom) and (top, right, bottom).
    """
    H, V = T.H, T.V
    have = {
        "lrb": {(int(T.l[A]), int(T.r[A]), int(T.b[A])) for A in range(T.n)},
        "lrt": {(int(T.l[A]), int(T.r[A]), int(T.t[A])) for A in range(T.n)},
        "tlb": {(int(T.t[A]), int(T.l[A]), int(T.b[A])) for A in range(T.n)},
        "trb": {(int(T.t[A]), int(T.r[A]), int(T.b[A])) for A in range(T.n)},
    }

    def complete(key):
        for g in range(V.n_arrows):
            for g2 in range(V.n_arrows):
                for x in range(H.n_arrows):
                    if key == "lrb":
                        ok = V.target[g] == H.source[x] and V.target[g2] == H.target[x]
                    elif key == "lrt":
                        ok = V.source[g] == H.source[x] and V.source[g2] == H.target[x]
                    else:
                        continue
                    if ok and (g, g2, x) not in have[key]:
                        return False
        return True

    def complete_v(key):
        for x in range(H.n_arrows):
            for y in range(H.n_arrows):
                for g in range(V.n_arrows):
                    if key == "tlb":
                        ok = H.source[x] == V.source[g] and H.source[y] == V.target[g]
                    else:
                        ok = H.target[x] == V.source[g] and H.target[y] == V.target[g]
                    if ok and (x, g, y) not in have[key]:
                        return False
        return True

    flags = {
        "horizontal_bottom": complete("lrb"),
        "horizontal_top": complete("lrt"),
        "vertical_left": complete_v("tlb"),
        "vertical_right": complete_v("trb"),
    }
    out = {
        "horizontally_transitive": flags["horizontal_bottom"] and flags["horizontal_top"],
        "vertically_transitive": flags["vertical_left"] and flags["vertical_right"],
    }
    out["locally_trivial"] = out["horizontally_transitive"] and out["vertically_transitive"]
    out["variants"] = flags
    return out


def h_components(T: DoubleGroupoid) -> list[list[int]]:
    return connected_components(T.H)


def v_components(T: DoubleGroupoid) -> list[list[int]]:
    return connected_components(T.V)
