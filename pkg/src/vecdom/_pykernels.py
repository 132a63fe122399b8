"""Pure-Python implementations of the hot kernels.

These mirror ``_kernels.pyx`` line for line and are used when the compiled
extension is unavailable or ``VECDOM_BACKEND=python`` is set.  Both backends
must return identical arrays, including back-pointers.
"""

from __future__ import annotations

from itertools import product

import numpy as np

INF = 1 << 40


def merge(cat, dem, pstride, s1, s2, adj, total, closed, t1, t2, size, budget):
    """Fill one parent table from two child tables.

    Local vertices ``0..p-1`` are the parent's vertices in table order,
    ``p..nv-1`` are the shared vertices that leave the table here.  ``cat``
    holds the partition class (1..4) of each local vertex, ``s1``/``s2`` its
    stride in the child tables (-1 when absent), ``adj`` the adjacency matrix
    among the local vertices.

    Returns ``(values, back1, back2, pairs)`` where ``pairs`` is the number of
    child index pairs enumerated.
    """
    cat = [int(x) for x in cat]
    dem = [int(x) for x in dem]
    pstride = [int(x) for x in pstride]
    s1 = [int(x) for x in s1]
    s2 = [int(x) for x in s2]
    nv = len(cat)
    p = len(pstride)
    nbrs = [[u for u in range(nv) if adj[l][u]] for l in range(nv)]
    t1 = t1.tolist()
    t2 = t2.tolist()
    nx4 = nv - p

    values = [INF] * size
    back1 = [-1] * size
    back2 = [-1] * size
    pairs = 0
    member = [False] * nv
    resid = [0] * nv

    for idx in range(size):
        rem = idx
        for l in range(p):
            col, rem = divmod(rem, pstride[l])
            d = dem[l]
            if col > d:
                member[l] = True
                resid[l] = col - d - 1
            else:
                member[l] = False
                resid[l] = col
        best = INF
        b1 = b2 = -1
        for mask in range(1 << nx4):
            shared = 0
            for j in range(nx4):
                l = p + j
                member[l] = bool(mask >> j & 1)
                resid[l] = 0
            for l in range(nv):
                if member[l] and cat[l] >= 3:
                    shared += 1
            base1 = base2 = 0
            options = []
            for l in range(nv):
                d = dem[l]
                c = cat[l]
                mem = member[l]
                off = d + 1 if mem else 0
                if mem and not total:
                    if s1[l] >= 0:
                        base1 += (d + 1) * s1[l]
                    if s2[l] >= 0:
                        base2 += (d + 1) * s2[l]
                    continue
                cx1 = cx2 = call = 0
                for u in nbrs[l]:
                    if member[u]:
                        call += 1
                        if cat[u] == 1:
                            cx1 += 1
                        elif cat[u] == 2:
                            cx2 += 1
                r = resid[l]
                if c == 1:
                    base1 += (off + min(d, r + cx2)) * s1[l]
                elif c == 2:
                    base2 += (off + min(d, r + cx1)) * s2[l]
                else:
                    if closed and mem:
                        call += 1
                    need = max(0, d - r - call)
                    opts = []
                    last = None
                    for i1 in range(need + 1):
                        a = off + min(d, r + cx2 + i1)
                        b = off + min(d, r + cx1 + need - i1)
                        if (a, b) != last:
                            opts.append((a * s1[l], b * s2[l]))
                            last = (a, b)
                    options.append(opts)
            for combo in product(*options):
                i1 = base1
                i2 = base2
                for a, b in combo:
                    i1 += a
                    i2 += b
                pairs += 1
                v1 = t1[i1]
                v2 = t2[i2]
                if v1 >= INF or v2 >= INF:
                    continue
                val = v1 + v2 - shared
                if val < best:
                    best = val
                    b1 = i1
                    b2 = i2
        if best <= budget:
            values[idx] = best
            back1[idx] = b1
            back2[idx] = b2

    return (
        np.array(values, dtype=np.int64),
        np.array(back1, dtype=np.int64),
        np.array(back2, dtype=np.int64),
        pairs,
    )


def subset_dp(m, inc, outside):
    """Minimum-width rooted partition trees over all subsets of ``m`` edges.

    ``inc[v]`` is the bitmask of local edges incident to vertex ``v`` and
    ``outside[v]`` flags vertices that also touch edges outside the local set.
    Returns ``(cost, split)`` indexed by edge mask; ``split[X]`` is the part of
    the chosen bipartition of ``X`` that holds the lowest edge of ``X``.
    """
    full = (1 << m) - 1
    inc = [int(x) for x in inc]
    outside = [bool(x) for x in outside]
    nvert = len(inc)
    bnd = [0] * (full + 1)
    for X in range(1, full + 1):
        comp = full ^ X
        c = 0
        for v in range(nvert):
            iv = inc[v]
            if iv & X and (iv & comp or outside[v]):
                c += 1
        bnd[X] = c
    cost = list(bnd)
    split = [0] * (full + 1)
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
    return np.array(cost, dtype=np.int64), np.array(split, dtype=np.int64)
