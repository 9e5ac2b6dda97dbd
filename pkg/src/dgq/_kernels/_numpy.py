"""Pure-numpy versions of the integer table checks.

Every function returns ``(rows, total)``: at most ``cap`` witness rows as an
int64 array and the total number of violations found.
"""
import numpy as np


def _clip(rows, cap):
    rows = np.asarray(rows, dtype=np.int64)
    return rows[:cap], int(rows.shape[0])


def table_shape(comp, src, tgt, n_out):
    """Definedness pattern and source/target of composites.

    Codes: 0 defined on a non-composable pair, 1 undefined on a composable
    pair, 2 result out of range, 3 wrong source, 4 wrong target.
    """
    n = comp.shape[0]
    composable = tgt[:, None] == src[None, :]
    defined = comp >= 0
    out = []
    for code, mask in ((0, defined & ~composable), (1, ~defined & composable)):
        a, b = np.nonzero(mask)
        out.append(np.stack([np.full_like(a, code), a, b], axis=1))
    a, b = np.nonzero(defined & composable)
    ab = comp[a, b]
    bad = ab >= n_out
    out.append(np.stack([np.full_like(a[bad], 2), a[bad], b[bad]], axis=1))
    a, b, ab = a[~bad], b[~bad], ab[~bad]
    if n == n_out:
        for code, mask in ((3, src[ab] != src[a]), (4, tgt[ab] != tgt[b])):
            out.append(np.stack([np.full_like(a[mask], code), a[mask], b[mask]], axis=1))
    rows = np.concatenate(out, axis=0) if out else np.zeros((0, 3), np.int64)
    return rows, int(rows.shape[0])


def associativity(comp, cap):
    a, b = np.nonzero(comp >= 0)
    ab = comp[a, b]
    right = comp[b]                      # row b: b.c for every c
    mask = right >= 0
    left_val = np.where(mask, comp[ab][:, :], -1)
    bc = np.where(mask, right, 0)
    right_val = np.where(mask, comp[a[:, None], bc], -1)
    bad = mask & (left_val != right_val)
    i, c = np.nonzero(bad)
    return _clip(np.stack([a[i], b[i], c], axis=1).reshape(-1, 3), cap)


def side_check(comp, side, side_comp, mode, cap):
    """mode 0: side(ab) = side(a); 1: side(ab) = side(b); 2: side(ab) = side(a)side(b)."""
    a, b = np.nonzero(comp >= 0)
    ab = comp[a, b]
    if mode == 0:
        want = side[a]
    elif mode == 1:
        want = side[b]
    else:
        want = side_comp[side[a], side[b]]
    bad = side[ab] != want
    return _clip(np.stack([a[bad], b[bad]], axis=1).reshape(-1, 2), cap)


def _at(table, i, j):
    ok = (i >= 0) & (j >= 0)
    out = np.full(np.broadcast(i, j).shape, -1, dtype=np.int64)
    ii, jj = np.broadcast_arrays(i, j)
    out[ok] = table[ii[ok], jj[ok]]
    return out


def _inv(inv, i):
    out = np.full(i.shape, -1, dtype=np.int64)
    ok = i >= 0
    out[ok] = inv[i[ok]]
    return out


def interchange(hcomp, vcomp, box_l, box_t, hinv, vinv, tinv, cap):
    """Interchange law and the inverse formulas for 2x2 squares.

    Rows are (code, A, B, C, D) for the square {AB / CD}; code 0 is the
    interchange law, 1/2/3 the horizontal/vertical/total inverse formulas.
    """
    n = hcomp.shape[0]
    rows = []
    for A in range(n):
        Bs = np.nonzero(hcomp[A] >= 0)[0]
        Cs = np.nonzero(vcomp[A] >= 0)[0]
        if Bs.size == 0 or Cs.size == 0:
            continue
        # D ranges over all boxes; keep (B, C, D) with B/D and C|D defined
        BD = vcomp[Bs] >= 0                      # |Bs| x n
        CD = hcomp[Cs] >= 0                      # |Cs| x n
        bi, ci, D = np.nonzero(BD[:, None, :] & CD[None, :, :])
        if D.size == 0:
            continue
        B, C = Bs[bi], Cs[ci]
        Av = np.full_like(B, A)
        top = hcomp[Av, B]
        bottom = hcomp[C, D]
        sq = _at(vcomp, top, bottom)
        alt = _at(hcomp, vcomp[Av, C], vcomp[B, D])
        checks = [
            (0, sq, alt),
            (1, _inv(hinv, sq), _at(vcomp, _at(hcomp, hinv[B], hinv[Av]), _at(hcomp, hinv[D], hinv[C]))),
            (2, _inv(vinv, sq), _at(vcomp, _at(hcomp, vinv[C], vinv[D]), _at(hcomp, vinv[Av], vinv[B]))),
            (3, _inv(tinv, sq), _at(vcomp, _at(hcomp, tinv[D], tinv[C]), _at(hcomp, tinv[B], tinv[Av]))),
        ]
        code = np.full(D.shape, -1)
        for c, lhs, rhs in reversed(checks):
            code[(lhs != rhs) | (lhs < 0)] = c
        bad = code >= 0
        if bad.any():
            rows.append(np.stack([code[bad], Av[bad], B[bad], C[bad], D[bad]], axis=1))
    if not rows:
        return np.zeros((0, 5), np.int64), 0
    return _clip(np.concatenate(rows), cap)


def count_pairs(first, second, n_first, n_second):
    out = np.zeros((n_first, n_second), dtype=np.int64)
    np.add.at(out, (first, second), 1)
    return out
