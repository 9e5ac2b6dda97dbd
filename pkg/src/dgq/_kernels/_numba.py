"""numba versions of the integer table checks (same contract as _numpy)."""
import numpy as np
from numba import njit, prange


@njit(cache=True)
def table_shape(comp, src, tgt, n_out):
    n = comp.shape[0]
    m = comp.shape[1]
    out = np.empty((n * m, 3), dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(m):
            ab = comp[a, b]
            composable = tgt[a] == src[b]
            code = -1
            if ab >= 0 and not composable:
                code = 0
            elif ab < 0 and composable:
                code = 1
            elif ab >= 0:
                if ab >= n_out:
                    code = 2
                elif n == n_out and src[ab] != src[a]:
                    code = 3
                elif n == n_out and tgt[ab] != tgt[b]:
                    code = 4
            if code >= 0:
                out[k, 0] = code
                out[k, 1] = a
                out[k, 2] = b
                k += 1
    return out[:k], k


@njit(cache=True)
def associativity(comp, cap):
    n = comp.shape[0]
    out = np.empty((cap, 3), dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(n):
            ab = comp[a, b]
            if ab < 0:
                continue
            for c in range(n):
                bc = comp[b, c]
                if bc < 0:
                    continue
                if comp[ab, c] != comp[a, bc] or comp[ab, c] < 0:
                    if k < cap:
                        out[k, 0] = a
                        out[k, 1] = b
                        out[k, 2] = c
                    k += 1
    return out[:min(k, cap)], k


@njit(cache=True)
def side_check(comp, side, side_comp, mode, cap):
    n = comp.shape[0]
    out = np.empty((cap, 2), dtype=np.int64)
    k = 0
    for a in range(n):
        for b in range(n):
            ab = comp[a, b]
            if ab < 0:
                continue
            if mode == 0:
                want = side[a]
            elif mode == 1:
                want = side[b]
            else:
                want = side_comp[side[a], side[b]]
            if side[ab] != want:
                if k < cap:
                    out[k, 0] = a
                    out[k, 1] = b
                k += 1
    return out[:min(k, cap)], k


@njit(cache=True)
def _at(table, i, j):
    if i < 0 or j < 0:
        return -1
    return table[i, j]


@njit(cache=True)
def _inv(inv, i):
    if i < 0:
        return -1
    return inv[i]


@njit(cache=True)
def _square_code(hcomp, vcomp, hinv, vinv, tinv, A, B, C, D):
    sq = _at(vcomp, hcomp[A, B], hcomp[C, D])
    alt = _at(hcomp, vcomp[A, C], vcomp[B, D])
    if sq < 0 or sq != alt:
        return 0
    h = _at(vcomp, _at(hcomp, hinv[B], hinv[A]), _at(hcomp, hinv[D], hinv[C]))
    if h < 0 or h != _inv(hinv, sq):
        return 1
    v = _at(vcomp, _at(hcomp, vinv[C], vinv[D]), _at(hcomp, vinv[A], vinv[B]))
    if v < 0 or v != _inv(vinv, sq):
        return 2
    t = _at(vcomp, _at(hcomp, tinv[D], tinv[C]), _at(hcomp, tinv[B], tinv[A]))
    if t < 0 or t != _inv(tinv, sq):
        return 3
    return -1


@njit(cache=True, parallel=True)
def _interchange_counts(hcomp, vcomp, hinv, vinv, tinv):
    n = hcomp.shape[0]
    counts = np.zeros(n, dtype=np.int64)
    for A in prange(n):
        c = 0
        for B in range(n):
            if hcomp[A, B] < 0:
                continue
            for C in range(n):
                if vcomp[A, C] < 0:
                    continue
                for D in range(n):
                    if vcomp[B, D] < 0 or hcomp[C, D] < 0:
                        continue
                    if _square_code(hcomp, vcomp, hinv, vinv, tinv, A, B, C, D) >= 0:
                        c += 1
        counts[A] = c
    return counts


@njit(cache=True)
def _interchange_rows(hcomp, vcomp, hinv, vinv, tinv, counts, cap):
    n = hcomp.shape[0]
    out = np.empty((cap, 5), dtype=np.int64)
    k = 0
    for A in range(n):
        if counts[A] == 0:
            continue
        for B in range(n):
            if hcomp[A, B] < 0:
                continue
            for C in range(n):
                if vcomp[A, C] < 0:
                    continue
                for D in range(n):
                    if vcomp[B, D] < 0 or hcomp[C, D] < 0:
                        continue
                    code = _square_code(hcomp, vcomp, hinv, vinv, tinv, A, B, C, D)
                    if code >= 0 and k < cap:
                        out[k, 0] = code
                        out[k, 1] = A
                        out[k, 2] = B
                        out[k, 3] = C
                        out[k, 4] = D
                        k += 1
    return out[:k]


def interchange(hcomp, vcomp, box_l, box_t, hinv, vinv, tinv, cap):
    counts = _interchange_counts(hcomp, vcomp, hinv, vinv, tinv)
    total = int(counts.sum())
    if total == 0:
        return np.zeros((0, 5), np.int64), 0
    return _interchange_rows(hcomp, vcomp, hinv, vinv, tinv, counts, cap), total


@njit(cache=True)
def count_pairs(first, second, n_first, n_second):
    out = np.zeros((n_first, n_second), dtype=np.int64)
    for i in range(first.shape[0]):
        out[first[i], second[i]] += 1
    return out
