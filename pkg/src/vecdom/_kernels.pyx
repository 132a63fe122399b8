# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels; see ``_pykernels`` for the reference semantics."""

import numpy as np
from libc.stdlib cimport malloc, free

ctypedef long long i64

cdef i64 INF = (<i64>1) << 40


def merge(cat_, dem_, pstride_, s1_, s2_, adj_, bint total, bint closed,
          i64[::1] t1, i64[::1] t2, i64 size, i64 budget):
    cdef i64[::1] cat = np.ascontiguousarray(cat_, dtype=np.int64)
    cdef i64[::1] dem = np.ascontiguousarray(dem_, dtype=np.int64)
    cdef i64[::1] pstride = np.ascontiguousarray(pstride_, dtype=np.int64)
    cdef i64[::1] s1 = np.ascontiguousarray(s1_, dtype=np.int64)
    cdef i64[::1] s2 = np.ascontiguousarray(s2_, dtype=np.int64)
    cdef i64[:, ::1] adj = np.ascontiguousarray(adj_, dtype=np.int64).reshape(
        len(cat_), len(cat_))
    cdef Py_ssize_t nv = cat.shape[0]
    cdef Py_ssize_t p = pstride.shape[0]
    cdef Py_ssize_t nx4 = nv - p

    values_np = np.full(size, INF, dtype=np.int64)
    back1_np = np.full(size, -1, dtype=np.int64)
    back2_np = np.full(size, -1, dtype=np.int64)
    cdef i64[::1] values = values_np
    cdef i64[::1] back1 = back1_np
    cdef i64[::1] back2 = back2_np

    cdef i64 dmax = 0
    cdef Py_ssize_t l, u, j, k
    for l in range(nv):
        if dem[l] > dmax:
            dmax = dem[l]
    cdef Py_ssize_t width = dmax + 1

    cdef int *member = <int *> malloc(max(nv, 1) * sizeof(int))
    cdef i64 *resid = <i64 *> malloc(max(nv, 1) * sizeof(i64))
    cdef i64 *nopt = <i64 *> malloc(max(nv, 1) * sizeof(i64))
    cdef i64 *optA = <i64 *> malloc(max(nv, 1) * width * sizeof(i64))
    cdef i64 *optB = <i64 *> malloc(max(nv, 1) * width * sizeof(i64))
    cdef i64 *pos = <i64 *> malloc(max(nv, 1) * sizeof(i64))
    cdef i64 *acc1 = <i64 *> malloc((max(nv, 1) + 1) * sizeof(i64))
    cdef i64 *acc2 = <i64 *> malloc((max(nv, 1) + 1) * sizeof(i64))

    cdef i64 idx, rem, col, d, off, r, cx1, cx2, call, need, i1, a, b
    cdef i64 lasta, lastb, mask, shared, base1, base2, best, b1, b2
    cdef i64 v1, v2, val, x1, x2
    cdef i64 pairs = 0
    cdef Py_ssize_t nsplit, q
    cdef int mem, c

    try:
        for idx in range(size):
            rem = idx
            for l in range(p):
                col = rem // pstride[l]
                rem = rem - col * pstride[l]
                d = dem[l]
                if col > d:
                    member[l] = 1
                    resid[l] = col - d - 1
                else:
                    member[l] = 0
                    resid[l] = col
            best = INF
            b1 = -1
            b2 = -1
            for mask in range(1 << nx4):
                for j in range(nx4):
                    member[p + j] = (mask >> j) & 1
                    resid[p + j] = 0
                shared = 0
                for l in range(nv):
                    if member[l] and cat[l] >= 3:
                        shared += 1
                base1 = 0
                base2 = 0
                nsplit = 0
                for l in range(nv):
                    d = dem[l]
                    c = <int> cat[l]
                    mem = member[l]
                    off = d + 1 if mem else 0
                    if mem and not total:
                        if s1[l] >= 0:
                            base1 += (d + 1) * s1[l]
                        if s2[l] >= 0:
                            base2 += (d + 1) * s2[l]
                        continue
                    cx1 = 0
                    cx2 = 0
                    call = 0
                    for u in range(nv):
                        if adj[l, u] and member[u]:
                            call += 1
                            if cat[u] == 1:
                                cx1 += 1
                            elif cat[u] == 2:
                                cx2 += 1
                    r = resid[l]
                    if c == 1:
                        x2 = r + cx2
                        if x2 > d:
                            x2 = d
                        base1 += (off + x2) * s1[l]
                    elif c == 2:
                        x1 = r + cx1
                        if x1 > d:
                            x1 = d
                        base2 += (off + x1) * s2[l]
                    else:
                        if closed and mem:
                            call += 1
                        need = d - r - call
                        if need < 0:
                            need = 0
                        k = 0
                        lasta = -1
                        lastb = -1
                        for i1 in range(need + 1):
                            a = r + cx2 + i1
                            if a > d:
                                a = d
                            b = r + cx1 + need - i1
                            if b > d:
                                b = d
                            a += off
                            b += off
                            if a != lasta or b != lastb:
                                optA[nsplit * width + k] = a * s1[l]
                                optB[nsplit * width + k] = b * s2[l]
                                k += 1
                                lasta = a
                                lastb = b
                        nopt[nsplit] = k
                        nsplit += 1

                # odometer over the per-vertex split choices
                for q in range(nsplit):
                    pos[q] = 0
                acc1[0] = base1
                acc2[0] = base2
                for q in range(nsplit):
                    acc1[q + 1] = acc1[q] + optA[q * width]
                    acc2[q + 1] = acc2[q] + optB[q * width]
                while True:
                    pairs += 1
                    v1 = t1[acc1[nsplit]]
                    v2 = t2[acc2[nsplit]]
                    if v1 < INF and v2 < INF:
                        val = v1 + v2 - shared
                        if val < best:
                            best = val
                            b1 = acc1[nsplit]
                            b2 = acc2[nsplit]
                    # advance the last digit first so indices grow like product()
                    q = nsplit - 1
                    while q >= 0:
                        pos[q] += 1
                        if pos[q] < nopt[q]:
                            break
                        pos[q] = 0
                        q -= 1
                    if q < 0:
                        break
                    for k in range(q, nsplit):
                        acc1[k + 1] = acc1[k] + optA[k * width + pos[k]]
                        acc2[k + 1] = acc2[k] + optB[k * width + pos[k]]
            if best <= budget:
                values[idx] = best
                back1[idx] = b1
                back2[idx] = b2
    finally:
        free(member)
        free(resid)
        free(nopt)
        free(optA)
        free(optB)
        free(pos)
        free(acc1)
        free(acc2)

    return values_np, back1_np, back2_np, pairs


def subset_dp(int m, inc_, outside_):
    cdef i64[::1] inc = np.ascontiguousarray(inc_, dtype=np.int64)
    cdef i64[::1] outside = np.ascontiguousarray(outside_, dtype=np.int64)
    cdef Py_ssize_t nvert = inc.shape[0]
    cdef i64 full = ((<i64>1) << m) - 1
    cost_np = np.zeros(full + 1, dtype=np.int64)
    split_np = np.zeros(full + 1, dtype=np.int64)
    cdef i64[::1] cost = cost_np
    cdef i64[::1] split = split_np
    cdef i64 X, comp, iv, low, rest, lb, best, bs, s, A, c, cb
    cdef Py_ssize_t v
    for X in range(1, full + 1):
        comp = full ^ X
        c = 0
        for v in range(nvert):
            iv = inc[v]
            if (iv & X) and ((iv & comp) or outside[v]):
                c += 1
        cost[X] = c
    cdef i64[::1] bnd = cost_np.copy()
    for X in range(1, full + 1):
        if X & (X - 1) == 0:
            continue
        low = X & -X
        rest = X ^ low
        lb = bnd[X]
        best = INF
        bs = 0
        s = 0
        while True:
            A = low | s
            if A != X:
                c = cost[A]
                cb = cost[X ^ A]
                if cb > c:
                    c = cb
                if lb > c:
                    c = lb
                if c < best:
                    best = c
                    bs = A
                    if best <= lb:
                        break
            if s == rest:
                break
            s = (s - rest) & rest
        cost[X] = best
        split[X] = bs
    return cost_np, split_np
