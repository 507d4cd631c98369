"""Compiled inner loops of the pruned largest-empty-box search.

Points arrive with their columns already in processing order and their rows
sorted by the last processing column, so every filtered subset stays sorted
along the final axis and the last axis reduces to a scan for the widest gap.

Volumes are recomputed in the original axis order before comparison so the
result is bit-identical to the brute-force enumeration.
"""

import numpy as np

from ._accel import njit

# Bound pruning compares a product formed in processing order against one formed in
# original order; the slack keeps exact ties (and last-ulp near ties) alive.
PRUNE_SLACK = 1.0 + 1e-12


@njit(cache=True, nogil=True)
def _key_less(lo_a, hi_a, lo_b, hi_b):
    d = lo_a.shape[0]
    for i in range(d):
        if lo_a[i] != lo_b[i]:
            return lo_a[i] < lo_b[i]
    for i in range(d):
        if hi_a[i] != hi_b[i]:
            return hi_a[i] < hi_b[i]
    return False


@njit(cache=True, nogil=True)
def _leaf(P, perm, idx, cnt, partial, cur_lo, cur_hi, best, best_lo, best_hi):
    d = P.shape[1]
    last = d - 1
    axis = perm[last]
    prev = 0.0
    for j in range(cnt + 1):
        if j < cnt:
            c = P[idx[j], last]
        else:
            c = 1.0
        if c <= prev:
            continue
        if (partial * (c - prev)) * PRUNE_SLACK >= best[0]:
            cur_lo[axis] = prev
            cur_hi[axis] = c
            v = 1.0
            for i in range(d):
                v *= cur_hi[i] - cur_lo[i]
            if v > best[0] or (v == best[0] and _key_less(cur_lo, cur_hi, best_lo, best_hi)):
                best[0] = v
                best_lo[:] = cur_lo
                best_hi[:] = cur_hi
        prev = c


@njit(cache=True, nogil=True)
def pruned_search(P, perm):
    """Return ``(value, lo, hi)`` of the lexicographically first largest open empty box."""
    n, d = P.shape
    best = np.full(1, -1.0)
    best_lo = np.zeros(d)
    best_hi = np.ones(d)
    cur_lo = np.zeros(d)
    cur_hi = np.ones(d)

    sub = np.empty((d, max(n, 1)), dtype=np.int64)
    cnt = np.zeros(d, dtype=np.int64)
    for j in range(n):
        sub[0, j] = j
    cnt[0] = n

    if d == 1:
        _leaf(P, perm, sub[0], n, 1.0, cur_lo, cur_hi, best, best_lo, best_hi)
        return best[0], best_lo, best_hi

    vals = np.empty((d, n + 2))
    nv = np.zeros(d, dtype=np.int64)
    li = np.zeros(d, dtype=np.int64)
    hj = np.zeros(d, dtype=np.int64)
    prod = np.ones(d)
    tmp = np.empty(n + 2)

    q = 0
    # candidate endpoints at level q: {0} U {subset coords on axis q} U {1}
    m = cnt[0]
    for j in range(m):
        tmp[j] = P[sub[0, j], 0]
    tmp[m] = 0.0
    tmp[m + 1] = 1.0
    s = np.sort(tmp[: m + 2])
    k = 0
    for j in range(m + 2):
        if k == 0 or s[j] != vals[0, k - 1]:
            vals[0, k] = s[j]
            k += 1
    nv[0] = k
    li[0] = 0
    hj[0] = k - 1

    while q >= 0:
        found = False
        lo = 0.0
        hi = 1.0
        bound = 0.0
        top = nv[q] - 1
        while li[q] < top:
            if hj[q] <= li[q]:
                li[q] += 1
                hj[q] = top
                continue
            lo = vals[q, li[q]]
            hi = vals[q, hj[q]]
            bound = prod[q] * (hi - lo)
            if bound * PRUNE_SLACK < best[0]:
                if hj[q] == top:
                    # widest remaining interval already loses
                    li[q] = top
                else:
                    li[q] += 1
                    hj[q] = top
                continue
            hj[q] -= 1
            found = True
            break
        if not found:
            q -= 1
            continue

        axis = perm[q]
        cur_lo[axis] = lo
        cur_hi[axis] = hi
        c = 0
        for j in range(cnt[q]):
            r = sub[q, j]
            x = P[r, q]
            if lo < x and x < hi:
                sub[q + 1, c] = r
                c += 1
        cnt[q + 1] = c
        prod[q + 1] = bound

        if q + 1 == d - 1:
            _leaf(P, perm, sub[q + 1], c, bound, cur_lo, cur_hi, best, best_lo, best_hi)
            continue

        q += 1
        for j in range(c):
            tmp[j] = P[sub[q, j], q]
        tmp[c] = 0.0
        tmp[c + 1] = 1.0
        s = np.sort(tmp[: c + 2])
        k = 0
        for j in range(c + 2):
            if k == 0 or s[j] != vals[q, k - 1]:
                vals[q, k] = s[j]
                k += 1
        nv[q] = k
        li[q] = 0
        hj[q] = k - 1
        # leave the upper levels' cur_lo/cur_hi as they are; deeper axes are overwritten
        for i in range(q, d):
            cur_lo[perm[i]] = 0.0
            cur_hi[perm[i]] = 1.0

    return best[0], best_lo, best_hi
