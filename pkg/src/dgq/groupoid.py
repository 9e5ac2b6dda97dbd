"""Finite groupoids on dense integer ids.

Composition is written left to right: ``compose(f, g)`` is defined when
``target(f) == source(g)``.  The composition table is total with -1 marking
undefined entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from ._kernels import kernels
from .report import ValidationReport

UNDEF = -1


@dataclass(eq=False)
class Groupoid:
    objects: tuple
    arrows: tuple
    source: np.ndarray
    target: np.ndarray
    identity: np.ndarray
    inverse: np.ndarray
    comp: np.ndarray
    _obj_index: dict = field(default=None, repr=False)
    _arr_index: dict = field(default=None, repr=False)

    def __post_init__(self):
        self._obj_index = {o: i for i, o in enumerate(self.objects)}
        self._arr_index = {a: i for i, a in enumerate(self.arrows)}

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def obj(self, label) -> int:
        return self._obj_index[label]

    def arr(self, label) -> int:
        return self._arr_index[label]

    def compose(self, f: int, g: int) -> int:
        return int(self.comp[f, g])

    def is_identity(self, f: int) -> bool:
        return self.identity[self.source[f]] == f

    def hom(self, p: int, q: int) -> list[int]:
        return [f for f in range(self.n_arrows) if self.source[f] == p and self.target[f] == q]

    def same_as(self, other: "Groupoid") -> bool:
        return (
            self.objects == other.objects
            and self.arrows == other.arrows
            and all(
                np.array_equal(getattr(self, k), getattr(other, k))
                for k in ("source", "target", "identity", "inverse", "comp")
            )
        )


def _find_inverse(comp, source, target, identity) -> np.ndarray:
    n = comp.shape[0]
    inv = np.full(n, UNDEF, dtype=np.int64)
    for f in range(n):
        for g in range(n):
            if comp[f, g] >= 0 and comp[f, g] == identity[source[f]] and comp[g, f] == identity[target[f]]:
                inv[f] = g
                break
    return inv


def from_tables(objects: Sequence, arrows: Sequence, source, target, comp, identity=None, inverse=None) -> Groupoid:
    """Assemble a groupoid from integer tables; identities and inverses are
    found by search when not supplied (missing ones stay -1)."""
    source = np.asarray(source, dtype=np.int64)
    target = np.asarray(target, dtype=np.int64)
    comp = np.asarray(comp, dtype=np.int64).reshape(len(arrows), len(arrows))
    if identity is None:
        identity = np.full(len(objects), UNDEF, dtype=np.int64)
        for f in range(len(arrows)):
            if source[f] == target[f] and comp[f, f] == f:
                identity[source[f]] = f
    identity = np.asarray(identity, dtype=np.int64)
    if inverse is None:
        inverse = _find_inverse(comp, source, target, identity)
    return Groupoid(tuple(objects), tuple(arrows), source, target, identity,
                    np.asarray(inverse, dtype=np.int64), comp)


def from_maps(objects: Iterable[Hashable], arrows: Iterable[Hashable], source: Callable, target: Callable,
              compose: Callable, identity: Callable) -> Groupoid:
    """Build from labels; ``compose(f, g)`` is only called on composable pairs."""
    objects = tuple(objects)
    arrows = tuple(arrows)
    oi = {o: i for i, o in enumerate(objects)}
    ai = {a: i for i, a in enumerate(arrows)}
    src = np.array([oi[source(a)] for a in arrows], dtype=np.int64)
    tgt = np.array([oi[target(a)] for a in arrows], dtype=np.int64)
    n = len(arrows)
    comp = np.full((n, n), UNDEF, dtype=np.int64)
    for i, f in enumerate(arrows):
        for j, g in enumerate(arrows):
            if tgt[i] == src[j]:
                comp[i, j] = ai[compose(f, g)]
    ident = np.array([ai[identity(o)] for o in objects], dtype=np.int64)
    return from_tables(objects, arrows, src, tgt, comp, ident)


def validate_groupoid(g: Groupoid, cap: int = 50) -> ValidationReport:
    rep = ValidationReport()
    n, m = g.n_arrows, g.n_objects
    if g.source.shape != (n,) or g.target.shape != (n,) or g.comp.shape != (n, n):
        rep.broken("table-shape", n, detail="side or composition table has the wrong size")
        return rep
    if g.identity.shape != (m,) or g.inverse.shape != (n,):
        rep.broken("table-shape", m, detail="identity or inverse table has the wrong size")
        return rep
    for f in range(n):
        for name, tab in (("source", g.source), ("target", g.target)):
            if not 0 <= tab[f] < m:
                rep.broken("dangling-id", f, detail=f"{name} of arrow {f} is {tab[f]}")
    for p in range(m):
        if not 0 <= g.identity[p] < n:
            rep.broken("dangling-id", p, detail=f"identity of object {p} is {g.identity[p]}")
    bad = (g.comp < UNDEF) | (g.comp >= n)
    for f, h in zip(*np.nonzero(bad)):
        rep.broken("dangling-id", int(f), int(h), detail=f"composite {g.comp[f, h]}")
    for f in range(n):
        if not UNDEF <= g.inverse[f] < n:
            rep.broken("dangling-id", f, detail=f"inverse entry {g.inverse[f]}")
    if rep.structural:
        return rep

    rows, _ = kernels.table_shape(g.comp, g.source, g.target, n)
    names = {0: "defined-off-domain", 1: "undefined-on-domain", 2: "dangling-id",
             3: "source-of-composite", 4: "target-of-composite"}
    for code, f, h in rows[:cap]:
        rep.fail(names[int(code)], int(f), int(h))
    rep.count("composition-domain", n * n)
    if rep.failures:
        return rep

    rows, total = kernels.associativity(g.comp, cap)
    for f, h, k in rows:
        rep.fail("associativity", int(f), int(h), int(k))
    rep.count("associativity", 1)

    for p in range(m):
        e = int(g.identity[p])
        if g.source[e] != p or g.target[e] != p:
            rep.fail("identity-endpoints", p, e)
    for f in range(n):
        s, t = g.source[f], g.target[f]
        if g.comp[g.identity[s], f] != f or g.comp[f, g.identity[t]] != f:
            rep.fail("unit", f, int(g.identity[s]), int(g.identity[t]))
        u = int(g.inverse[f])
        if u < 0 or g.comp[f, u] != g.identity[s] or g.comp[u, f] != g.identity[t]:
            rep.fail("inverse", f, u, detail="inverse entry does not compose to identities")
    rep.count("unit", n)
    rep.count("inverse", n)
    return rep


def connected_components(g: Groupoid) -> list[list[int]]:
    """Blocks of objects joined by arrows, each sorted, ordered by least member."""
    parent = list(range(g.n_objects))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in range(g.n_arrows):
        a, b = find(int(g.source[f])), find(int(g.target[f]))
        if a != b:
            parent[max(a, b)] = min(a, b)
    blocks: dict[int, list[int]] = {}
    for p in range(g.n_objects):
        blocks.setdefault(find(p), []).append(p)
    return sorted(blocks.values())


def component_labels(g: Groupoid) -> list[list]:
    return [[g.objects[p] for p in block] for block in connected_components(g)]


# -- standard constructions -------------------------------------------------

def discrete(objects: Iterable[Hashable]) -> Groupoid:
    objects = tuple(objects)
    return from_maps(objects, [("id", o) for o in objects], lambda a: a[1], lambda a: a[1],
                     lambda f, g: f, lambda o: ("id", o))


def coarse(objects: Iterable[Hashable]) -> Groupoid:
    """The pair groupoid: one arrow (p, q) from p to q for every pair."""
    objects = tuple(objects)
    arrows = [(p, q) for p in objects for q in objects]
    return from_maps(objects, arrows, lambda a: a[0], lambda a: a[1],
                     lambda f, g: (f[0], g[1]), lambda o: (o, o))


def group(elements: Sequence[Hashable], mul: Callable, unit: Hashable, name: str = "*") -> Groupoid:
    """A group as a one-object groupoid; ``mul(g, h)`` is the product gh."""
    return from_maps([name], elements, lambda a: name, lambda a: name, mul, lambda o: unit)


def transformation(G: Groupoid, points: Sequence[Hashable], act: Callable) -> Groupoid:
    """Transformation groupoid of a right action of a group G on ``points``:
    arrows (x, g) from x to x.g, composed as (x, g)(x.g, h) = (x, gh)."""
    if G.n_objects != 1:
        raise ValueError("transformation groupoid needs a group (one object)")
    points = tuple(points)
    e = G.arrows[G.identity[0]]
    mul = lambda g, h: G.arrows[G.comp[G.arr(g), G.arr(h)]]
    for x in points:
        if act(x, e) != x:
            raise ValueError(f"action is not unital at {x!r}")
        for g in G.arrows:
            if act(x, g) not in points:
                raise ValueError(f"action leaves the point set at {(x, g)!r}")
            for h in G.arrows:
                if act(act(x, g), h) != act(x, mul(g, h)):
                    raise ValueError(f"action is not associative at {(x, g, h)!r}")
    arrows = [(x, g) for x in points for g in G.arrows]
    return from_maps(points, arrows, lambda a: a[0], lambda a: act(a[0], a[1]),
                     lambda f, g: (f[0], mul(f[1], g[1])), lambda x: (x, e))


def opposite(G: Groupoid) -> Groupoid:
    return from_tables(G.objects, G.arrows, G.target, G.source, G.comp.T.copy(),
                       G.identity, G.inverse)


def direct_product(G: Groupoid, K: Groupoid) -> Groupoid:
    objects = [(p, q) for p in range(G.n_objects) for q in range(K.n_objects)]
    arrows = [(f, g) for f in range(G.n_arrows) for g in range(K.n_arrows)]
    g = from_maps(objects, arrows,
                  lambda a: (int(G.source[a[0]]), int(K.source[a[1]])),
                  lambda a: (int(G.target[a[0]]), int(K.target[a[1]])),
                  lambda f, h: (int(G.comp[f[0], h[0]]), int(K.comp[f[1], h[1]])),
                  lambda o: (int(G.identity[o[0]]), int(K.identity[o[1]])))
    return relabel(g, objects=[(G.objects[p], K.objects[q]) for p, q in objects],
                   arrows=[(G.arrows[f], K.arrows[h]) for f, h in arrows])


def restricted_product(Hop: Groupoid, V: Groupoid) -> Groupoid:
    """Pairs (x, g) with x an arrow of ``Hop`` and g of ``V`` sharing
    endpoints (source and target agree), multiplied componentwise.

    Passing the opposite of H gives the pairs with l(x) = b(g), r(x) = t(g).
    """
    if Hop.n_objects != V.n_objects:
        raise ValueError("restricted product needs groupoids on a common base")
    arrows = [(x, g) for x in range(Hop.n_arrows) for g in range(V.n_arrows)
              if Hop.source[x] == V.source[g] and Hop.target[x] == V.target[g]]
    g = from_maps(range(V.n_objects), arrows, lambda a: int(V.source[a[1]]), lambda a: int(V.target[a[1]]),
                  lambda f, h: (int(Hop.comp[f[0], h[0]]), int(V.comp[f[1], h[1]])),
                  lambda o: (int(Hop.identity[o]), int(V.identity[o])))
    return relabel(g, objects=V.objects)


def relabel(g: Groupoid, objects=None, arrows=None) -> Groupoid:
    return Groupoid(tuple(objects) if objects is not None else g.objects,
                    tuple(arrows) if arrows is not None else g.arrows,
                    g.source, g.target, g.identity, g.inverse, g.comp)


def standard_constructions(kind: str, data) -> Groupoid:
    """Dispatch by name: discrete/coarse take a set of objects; transformation
    takes (group, points, act); restricted_product and direct_product take a
    pair of groupoids; opposite takes one groupoid."""
    if kind == "discrete":
        return discrete(data)
    if kind == "coarse":
        return coarse(data)
    if kind == "transformation":
        return transformation(*data)
    if kind == "restricted_product":
        return restricted_product(*data)
    if kind == "direct_product":
        return direct_product(*data)
    if kind == "opposite":
        return opposite(data)
    raise ValueError(f"unknown construction {kind!r}")
