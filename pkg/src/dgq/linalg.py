"""Exact linear algebra over the rationals (thin layer over sympy's DomainMatrix)."""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping, Sequence

from sympy import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.sdm import SDM


def to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _qq(x) -> object:
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def sparse_matrix(rows: Sequence[Mapping[int, Fraction]], ncols: int) -> DomainMatrix:
    """Matrix from a list of sparse rows {column: value}."""
    data = {}
    for i, row in enumerate(rows):
        r = {j: _qq(v) for j, v in row.items() if v}
        if r:
            data[i] = r
    return DomainMatrix.from_rep(SDM(data, (len(rows), ncols), QQ))


def dense_matrix(rows: Sequence[Sequence]) -> DomainMatrix:
    ncols = len(rows[0]) if rows else 0
    return sparse_matrix([{j: v for j, v in enumerate(row)} for row in rows], ncols)


def rank(M: DomainMatrix) -> int:
    return M.rank() if M.shape[0] and M.shape[1] else 0


def to_rows(M: DomainMatrix) -> list[list[Fraction]]:
    dense = M.to_dense().rep.to_ddm()
    return [[to_fraction(x) for x in row] for row in dense]


def nullspace(M: DomainMatrix) -> list[list[Fraction]]:
    """Basis of {v : M v = 0}."""
    if M.shape[1] == 0:
        return []
    if M.shape[0] == 0:
        return [[Fraction(int(i == j)) for j in range(M.shape[1])] for i in range(M.shape[1])]
    ns = M.to_dense().nullspace()
    return to_rows(ns) if ns.shape[0] else []


def column_space_rank(vectors: Sequence[Mapping[int, Fraction]], dim: int) -> int:
    return rank(sparse_matrix(vectors, dim))


def solve_affine(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction], nvars: int):
    """All solutions of a sparse system as (particular, kernel basis), the
    particular one with free variables zero; None if inconsistent."""
    aug = [dict(r) for r in rows]
    for r, c in zip(aug, rhs):
        if c:
            r[nvars] = Fraction(c)
    R, pivots = sparse_matrix(aug, nvars + 1).rref()
    if nvars in pivots:
        return None
    rep = R.rep.to_sdm()
    sol = [Fraction(0)] * nvars
    free = [j for j in range(nvars) if j not in set(pivots)]
    kernel = {f: [Fraction(0)] * nvars for f in free}
    for f in free:
        kernel[f][f] = Fraction(1)
    for i, p in enumerate(pivots):
        row = rep.get(i, {})
        for j, v in row.items():
            if j == nvars:
                sol[p] = to_fraction(v)
            elif j != p:
                kernel[j][p] = -to_fraction(v)
    return sol, [kernel[f] for f in free]


def solve(rows: Sequence[Mapping[int, Fraction]], rhs: Sequence[Fraction], nvars: int):
    """One solution (free variables zero) and the number of free variables,
    or None if the system is inconsistent."""
    found = solve_affine(rows, rhs, nvars)
    if found is None:
        return None
    sol, kernel = found
    return sol, len(kernel)


def as_domain(M) -> DomainMatrix:
    """DomainMatrix from a 2-d numpy object array (or nested list) of rationals."""
    rows = [list(r) for r in M]
    ncols = len(rows[0]) if rows else (M.shape[1] if hasattr(M, "shape") else 0)
    return sparse_matrix([{j: v for j, v in enumerate(r)} for r in rows], ncols)


def as_array(M: DomainMatrix):
    import numpy as np

    out = np.empty(M.shape, dtype=object)
    out[...] = Fraction(0)
    for i, row in M.rep.to_sdm().items():
        for j, v in row.items():
            out[i, j] = to_fraction(v)
    return out


def pivot_columns(M) -> list[int]:
    D = as_domain(M)
    if D.shape[0] == 0 or D.shape[1] == 0:
        return []
    return list(D.rref()[1])


def inverse(M):
    return as_array(as_domain(M).inv())
