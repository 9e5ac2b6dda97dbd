"""Constructions of double groupoids: commuting squares, matched pairs,
T(G) bimodules, the vacant groupoid behind Vec^G_omega, comma squares."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

from . import double
from .double import DoubleGroupoid
from .groupoid import Groupoid, coarse, discrete, from_maps, transformation


def subgroupoid(G: Groupoid, arrows: Iterable[int]) -> Groupoid:
    """The wide subgroupoid on the given arrow ids (labels kept)."""
    keep = sorted(set(int(a) for a in arrows) | {int(i) for i in G.identity})
    labels = [G.arrows[a] for a in keep]
    allowed = set(labels)

    def compose(f, g):
        h = G.arrows[G.comp[G.arr(f), G.arr(g)]]
        if h not in allowed:
            raise ValueError(f"arrow set not closed: {f!r}{g!r}")
        return h

    return from_maps(G.objects, labels, lambda a: G.objects[G.source[G.arr(a)]],
                     lambda a: G.objects[G.target[G.arr(a)]], compose,
                     lambda o: G.arrows[G.identity[G.obj(o)]])


def _squares(G: Groupoid, H: Groupoid, V: Groupoid, squares: Sequence[tuple], name: str) -> DoubleGroupoid:
    """Boxes are quadruples (t, l, r, b) of arrow labels with t r = l b in G."""
    mul = lambda f, g: G.arrows[G.comp[G.arr(f), G.arr(g)]]
    ident = lambda p: G.arrows[G.identity[p]]

    def vid(x):
        return (x, ident(G.source[G.arr(x)]), ident(G.target[G.arr(x)]), x)

    def hid(g):
        return (ident(G.source[G.arr(g)]), g, g, ident(G.target[G.arr(g)]))

    return double.from_maps(
        H, V, squares,
        sides=lambda A: (A[0], A[3], A[1], A[2]),
        hcompose=lambda A, B: (mul(A[0], B[0]), A[1], B[2], mul(A[3], B[3])),
        vcompose=lambda A, B: (A[0], mul(A[1], B[1]), mul(A[2], B[2]), B[3]),
        vid=vid, hid=hid, name=name)


def commuting_squares(G: Groupoid, H_arrows: Iterable[int] | None = None,
                      V_arrows: Iterable[int] | None = None, name: str = "") -> DoubleGroupoid:
    """All commuting squares in G with horizontal sides in H and vertical
    sides in V (both wide subgroupoids, given by arrow ids; default all)."""
    H = subgroupoid(G, range(G.n_arrows) if H_arrows is None else H_arrows)
    V = subgroupoid(G, range(G.n_arrows) if V_arrows is None else V_arrows)
    hset = set(H.arrows)
    squares = []
    for t in H.arrows:
        ti = G.arr(t)
        for r in V.arrows:
            ri = G.arr(r)
            if G.target[ti] != G.source[ri]:
                continue
            tr = G.comp[ti, ri]
            for l in V.arrows:
                li = G.arr(l)
                if G.source[li] != G.source[ti]:
                    continue
                b = G.arrows[G.comp[G.inverse[li], tr]]
                if b in hset:
                    squares.append((t, l, r, b))
    return _squares(G, H, V, squares, name or "commuting_squares")


def discrete_dgpd(k: int) -> DoubleGroupoid:
    """Only the identity boxes over k points."""
    return commuting_squares(discrete(range(k)), name=f"discrete({k})")


def union_of_identities(G: Groupoid) -> DoubleGroupoid:
    """Boxes vid(x) and hid(g) only, with H = V = G."""
    ident = lambda p: G.arrows[G.identity[p]]
    squares = {(x, ident(G.source[i]), ident(G.target[i]), x) for i, x in enumerate(G.arrows)}
    squares |= {(ident(G.source[i]), g, g, ident(G.target[i])) for i, g in enumerate(G.arrows)}
    return _squares(G, G, G, sorted(squares, key=repr), "union_of_identities")


def no_siempre(m: int, n: int) -> DoubleGroupoid:
    """Commuting squares in the pair groupoid on P, Q, R, S_1..S_m, T_1..T_n
    with horizontal classes {P, Q, T_i}, {R, S_j} and vertical classes
    {P, R}, {Q, S_j, T_i}."""
    if m < 1 or n < 1:
        raise ValueError("m and n must be positive")
    S = [f"S{j}" for j in range(1, m + 1)]
    Tn = [f"T{i}" for i in range(1, n + 1)]
    points = ["P", "Q", "R"] + S + Tn
    G = coarse(points)
    h_classes = [{"P", "Q", *Tn}, {"R", *S}]
    v_classes = [{"P", "R"}, {"Q", *S, *Tn}]

    def related(classes):
        return [i for i, (p, q) in enumerate(G.arrows) if any(p in c and q in c for c in classes)]

    return commuting_squares(G, related(h_classes), related(v_classes), name=f"no_siempre({m},{n})")


def no_siempre_box(T: DoubleGroupoid) -> int:
    """The box with top P→Q, bottom R→S1, left P→R, right Q→S1."""
    return T.box((("P", "Q"), ("P", "R"), ("Q", "S1"), ("R", "S1")))


@dataclass
class MatchedPairData:
    """Groupoids H, V on a common base with actions
    x ◁ g (an H-arrow) and x ▷ g (a V-arrow), defined when r(x) = t(g)."""
    H: Groupoid
    V: Groupoid
    left: Callable   # ◁ : (x, g) -> H label
    right: Callable  # ▷ : (x, g) -> V label


def matched_pair(d: MatchedPairData, name: str = "matched_pair") -> DoubleGroupoid:
    """Box (x, g): top x, right g, left x ▷ g, bottom x ◁ g."""
    H, V = d.H, d.V
    hmul = lambda f, g: H.arrows[H.comp[H.arr(f), H.arr(g)]]
    vmul = lambda f, g: V.arrows[V.comp[V.arr(f), V.arr(g)]]
    boxes = [(x, g) for x in H.arrows for g in V.arrows
             if H.target[H.arr(x)] == V.source[V.arr(g)]]
    return double.from_maps(
        H, V, boxes,
        sides=lambda A: (A[0], d.left(*A), d.right(*A), A[1]),
        hcompose=lambda A, B: (hmul(A[0], B[0]), B[1]),
        vcompose=lambda A, B: (A[0], vmul(A[1], B[1])),
        vid=lambda x: (x, V.arrows[V.identity[H.target[H.arr(x)]]]),
        hid=lambda g: (H.arrows[H.identity[V.source[V.arr(g)]]], g),
        name=name)


def exact_factorization(G: Groupoid, V: Groupoid, H: Groupoid) -> MatchedPairData:
    """Matched pair from subgroups V, H of a group G with G = V·H uniquely:
    x g = (x ▷ g)(x ◁ g)."""
    mul = lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]
    split = {}
    for v in V.arrows:
        for h in H.arrows:
            split.setdefault(mul(v, h), []).append((v, h))
    if len(split) != G.n_arrows or any(len(s) != 1 for s in split.values()):
        raise ValueError("not an exact factorization")
    return MatchedPairData(H, V, left=lambda x, g: split[mul(x, g)][0][1],
                           right=lambda x, g: split[mul(x, g)][0][0])


def bimodule_dgpd(G: Groupoid) -> DoubleGroupoid:
    """T(G): boxes (g, h) with left g, right h, top (s g, s h), bottom (e g, e h)."""
    P = G.objects
    H = coarse(P)
    src = lambda g: G.objects[G.source[G.arr(g)]]
    tgt = lambda g: G.objects[G.target[G.arr(g)]]
    mul = lambda f, g: G.arrows[G.comp[G.arr(f), G.arr(g)]]
    boxes = [(g, h) for g in G.arrows for h in G.arrows]
    return double.from_maps(
        H, G, boxes,
        sides=lambda A: ((src(A[0]), src(A[1])), (tgt(A[0]), tgt(A[1])), A[0], A[1]),
        hcompose=lambda A, B: (A[0], B[1]),
        vcompose=lambda A, B: (mul(A[0], B[0]), mul(A[1], B[1])),
        vid=lambda x: (G.arrows[G.identity[G.obj(x[0])]], G.arrows[G.identity[G.obj(x[1])]]),
        hid=lambda g: (g, g),
        name="T(G)")


def t_zero(G: Groupoid) -> DoubleGroupoid:
    """Vacant double groupoid with H the pair groupoid on G and V the
    transformation groupoid of right multiplication; box (a, b, g) has top
    (a, b), bottom (ag, bg), left (a, g), right (b, g)."""
    if G.n_objects != 1:
        raise ValueError("needs a group")
    elems = G.arrows
    mul = lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]
    e = G.arrows[G.identity[0]]
    H = coarse(elems)
    V = transformation(G, elems, mul)
    boxes = [(a, b, g) for a in elems for b in elems for g in elems]
    return double.from_maps(
        H, V, boxes,
        sides=lambda A: ((A[0], A[1]), (mul(A[0], A[2]), mul(A[1], A[2])), (A[0], A[2]), (A[1], A[2])),
        hcompose=lambda A, B: (A[0], B[1], A[2]),
        vcompose=lambda A, B: (A[0], A[1], mul(A[2], B[2])),
        vid=lambda x: (x[0], x[1], e),
        hid=lambda g: (g[0], g[0], g[1]),
        name="T0(G)")


def vec_g_omega(G: Groupoid, omega):
    """(T0(G), sigma) with sigma built from a normalized 3-cocycle omega."""
    from .cocycles import sigma_from_omega

    T0 = t_zero(G)
    return T0, sigma_from_omega(omega, T0)


def comma(F: Groupoid, G: Groupoid) -> DoubleGroupoid:
    """Boxes (x, y, g) with x, y in F <= G: top g, left x, right y,
    bottom x^{-1} g y.  H = G and V = F over one point."""
    mul = lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]
    inv = lambda a: G.arrows[G.inverse[G.arr(a)]]
    e = G.arrows[G.identity[0]]
    if G.n_objects != 1 or F.n_objects != 1 or not set(F.arrows) <= set(G.arrows):
        raise ValueError("comma needs a subgroup F of a group G")
    boxes = [(x, y, g) for x in F.arrows for y in F.arrows for g in G.arrows]
    return double.from_maps(
        G, F, boxes,
        sides=lambda A: (A[2], mul(mul(inv(A[0]), A[2]), A[1]), A[0], A[1]),
        hcompose=lambda A, B: (A[0], B[1], mul(A[2], B[2])),
        vcompose=lambda A, B: (mul(A[0], B[0]), mul(A[1], B[1]), A[2]),
        vid=lambda g: (e, e, g),
        hid=lambda x: (x, x, e),
        name="comma")


# -- families by name --------------------------------------------------------------------

FAMILIES = ("discrete", "no-siempre", "matched-pair", "bimodule", "comma", "vec-g-omega", "coarse-squares")


def build_family(family: str, m: int = 1, n: int = 1, k: int = 3, G: str = "S3", F: str = "S2",
                 V: str = "C3", H: str = "S2", omega: str = "trivial"):
    """(double groupoid, sigma or None) for a family name and its parameters."""
    from .cocycles import ThreeCocycle, sign_cocycle
    from .groups import named_group, named_subgroup

    if family == "discrete":
        return discrete_dgpd(k), None
    if family == "no-siempre":
        return no_siempre(m, n), None
    if family == "matched-pair":
        g = named_group(G)
        return matched_pair(exact_factorization(g, named_subgroup(g, V), named_subgroup(g, H)),
                            name=f"matched_pair({G}={V}.{H})"), None
    if family == "bimodule":
        return bimodule_dgpd(named_group(G)), None
    if family == "comma":
        g = named_group(G)
        return comma(named_subgroup(g, F), g), None
    if family == "vec-g-omega":
        g = named_group(G)
        w = sign_cocycle(g) if omega == "sign" else ThreeCocycle.trivial(g)
        return vec_g_omega(g, w)
    if family == "coarse-squares":
        return commuting_squares(coarse(range(k)), name=f"coarse_squares({k})"), None
    raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
