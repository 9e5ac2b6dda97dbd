"""Finite rational linear combinations of basis keys.

Keys are box ids for algebra elements and tuples of box ids for tensors.
Zero coefficients are never stored.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Iterator, Mapping

Scalar = Fraction | int


class Element:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Hashable, Scalar] | Iterable[tuple[Hashable, Scalar]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for k, c in items:
            acc[k] = acc.get(k, 0) + c
        self.terms = {k: Fraction(c) for k, c in acc.items() if c}

    @classmethod
    def basis(cls, key: Hashable, coeff: Scalar = 1) -> "Element":
        return cls({key: coeff})

    @classmethod
    def _raw(cls, terms: dict) -> "Element":
        e = cls.__new__(cls)
        e.terms = terms
        return e

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Hashable]:
        return iter(self.terms)

    def items(self):
        return self.terms.items()

    def coeff(self, key: Hashable) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def __add__(self, other: "Element") -> "Element":
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return Element._raw(out)

    def __neg__(self) -> "Element":
        return Element._raw({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def __mul__(self, s: Scalar) -> "Element":
        if isinstance(s, Element):
            return NotImplemented
        s = Fraction(s)
        if not s:
            return Element()
        return Element._raw({k: c * s for k, c in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s: Scalar) -> "Element":
        return self * (1 / Fraction(s))

    def __eq__(self, other) -> bool:
        if isinstance(other, Element):
            return self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    __hash__ = None

    def map_keys(self, f) -> "Element":
        return Element((f(k), c) for k, c in self.terms.items())

    def dump(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k in sorted(self.terms, key=_sort_key):
            c = self.terms[k]
            key = "b%d" % k if isinstance(k, int) else "(" + " ⊗ ".join("b%d" % i for i in k) + ")"
            parts.append(f"{c} * {key}")
        return " + ".join(parts)

    __str__ = dump

    def __repr__(self) -> str:
        return f"Element({self.dump()})"


def _sort_key(k):
    return (0, (k,)) if isinstance(k, int) else (1, tuple(k))


def tensor(*factors: Element) -> Element:
    """Tensor product of elements (keys become tuples, flattened)."""
    out: dict = {(): Fraction(1)}
    for f in factors:
        nxt: dict = {}
        for k, c in out.items():
            for j, d in f.terms.items():
                key = k + (j if isinstance(j, tuple) else (j,))
                nxt[key] = nxt.get(key, 0) + c * d
        out = nxt
    return Element(out)


def total(elements: Iterable[Element]) -> Element:
    acc: dict = {}
    for e in elements:
        for k, c in e.terms.items():
            acc[k] = acc.get(k, 0) + c
    return Element(acc)
