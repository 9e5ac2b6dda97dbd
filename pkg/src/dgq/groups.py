"""Small finite groups as one-object groupoids, labelled by their elements."""
from __future__ import annotations

from itertools import permutations
from typing import Sequence

from .groupoid import Groupoid, coarse, group


def cyclic(n: int) -> Groupoid:
    return group(range(n), lambda a, b: (a + b) % n, 0)


def _perm_mul(p, q):
    # apply p first, then q
    return tuple(q[i] for i in p)


def permutation_group(gens: Sequence[tuple]) -> Groupoid:
    degree = len(gens[0])
    unit = tuple(range(degree))
    elems = [unit]
    seen = {unit}
    for x in elems:
        for g in gens:
            y = _perm_mul(x, g)
            if y not in seen:
                seen.add(y)
                elems.append(y)
    return group(sorted(elems), _perm_mul, unit)


def symmetric(n: int) -> Groupoid:
    return group(sorted(permutations(range(n))), _perm_mul, tuple(range(n)))


def subgroup(G: Groupoid, elements) -> Groupoid:
    elems = sorted(set(elements), key=G.arr)
    mul = lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]
    for a in elems:
        for b in elems:
            if mul(a, b) not in elems:
                raise ValueError(f"not closed under multiplication: {a!r}{b!r}")
    return group(elems, mul, G.arrows[G.identity[0]], G.objects[0])


def generated_subgroup(G: Groupoid, gens) -> Groupoid:
    mul = lambda a, b: G.arrows[G.comp[G.arr(a), G.arr(b)]]
    elems = [G.arrows[G.identity[0]]]
    for x in elems:
        for g in gens:
            y = mul(x, g)
            if y not in elems:
                elems.append(y)
    return subgroup(G, elems)


def conjugacy_classes(G: Groupoid) -> list[list[int]]:
    """Classes of arrow ids of a one-object groupoid."""
    n = G.n_arrows
    seen: set[int] = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        cls = sorted({int(G.comp[G.comp[G.inverse[h], g], h]) for h in range(n)})
        seen.update(cls)
        classes.append(cls)
    return classes


def named_group(name: str) -> Groupoid:
    """C<n>, S<n>, or coarse<n> (the pair groupoid on n objects)."""
    if name.startswith("coarse"):
        return coarse(range(int(name[6:])))
    if name[0] == "C":
        return cyclic(int(name[1:]))
    if name[0] == "S":
        return symmetric(int(name[1:]))
    raise ValueError(f"unknown group {name!r}")


def named_subgroup(G: Groupoid, name: str) -> Groupoid:
    """S<k> inside S<n> fixing the last points, or C<k> generated by an
    element of order k; used to pick F <= G for comma double groupoids."""
    if G.n_objects != 1:
        raise ValueError("subgroups are taken in groups")
    if name == "trivial" or name == "C1":
        return subgroup(G, [G.arrows[G.identity[0]]])
    if name[0] == "S" and isinstance(G.arrows[0], tuple):
        k = int(name[1:])
        degree = len(G.arrows[0])
        return subgroup(G, [p for p in G.arrows if all(p[i] == i for i in range(k, degree))])
    if name[0] == "C":
        k = int(name[1:])
        for g in range(G.n_arrows):
            order, x = 1, g
            while x != G.identity[0]:
                x = int(G.comp[x, g])
                order += 1
            if order == k:
                return generated_subgroup(G, [G.arrows[g]])
    raise ValueError(f"no subgroup {name!r} found")
