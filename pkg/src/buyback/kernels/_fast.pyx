# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Monte Carlo kernel for the rounding + filtering algorithm.

Trial-for-trial identical to the pure backend: same splitmix64 streams,
same draw order, same floating-point update order.  Supports uniform,
partition, and graphic oracles; anything else takes the pure path.
"""

from libc.math cimport floor, log, pow

import numpy as np


cdef unsigned long long _GAMMA = 0x9E3779B97F4A7C15ULL
cdef unsigned long long _MIX1 = 0xBF58476D1CE4E5B9ULL
cdef unsigned long long _MIX2 = 0x94D049BB133111EBULL
cdef double _TO_UNIT = 1.0 / 9007199254740992.0

cdef int _K_UNIFORM = 0
cdef int _K_PARTITION = 1
cdef int _K_GRAPHIC = 2

KIND_UNIFORM = 0
KIND_PARTITION = 1
KIND_GRAPHIC = 2


cdef inline unsigned long long _mix(unsigned long long z) nogil:
    z = (z ^ (z >> 30)) * _MIX1
    z = (z ^ (z >> 27)) * _MIX2
    return z ^ (z >> 31)


cdef inline double _next_unit(unsigned long long *state) nogil:
    state[0] = state[0] + _GAMMA
    return <double>(_mix(state[0]) >> 11) * _TO_UNIT


def randalg_prefix_stats(double[::1] values, int kind, long[::1] p1,
                         long[::1] p2, long aux, double f, double r,
                         long trials, unsigned long long seed):
    """Per-prefix (sum, sum of squares) of net payoff over seeded trials.

    Oracle encoding: kind 0 = uniform (aux = rank), kind 1 = partition
    (p1 = part ids, p2 = capacities, aux = part count), kind 2 = graphic
    (p1/p2 = edge endpoints, aux = vertex count).
    """
    cdef Py_ssize_t n = values.shape[0]
    if trials < 1:
        raise ValueError("trials must be at least 1")

    sums_arr = np.zeros(n)
    sumsq_arr = np.zeros(n)
    cdef double[::1] sums = sums_arr
    cdef double[::1] sumsq = sumsq_arr
    cdef double[::1] comp_s = np.zeros(n)
    cdef double[::1] comp_q = np.zeros(n)

    cdef double[::1] w = np.empty(n)
    cdef unsigned char[::1] x = np.empty(n, dtype=np.uint8)
    cdef long[::1] held = np.empty(max(n, 1), dtype=np.int64)
    cdef long[::1] pcount = np.empty(max(aux, 1), dtype=np.int64)

    cdef long nv = aux if kind == _K_GRAPHIC else 1
    cdef long[::1] deg = np.zeros(max(nv, 1), dtype=np.int64)
    cdef long[::1] adj_nbr = np.empty(max(nv * n, 1), dtype=np.int64)
    cdef long[::1] adj_eid = np.empty(max(nv * n, 1), dtype=np.int64)
    cdef long[::1] visited = np.zeros(max(nv, 1), dtype=np.int64)
    cdef long[::1] parent_e = np.empty(max(nv, 1), dtype=np.int64)
    cdef long[::1] parent_v = np.empty(max(nv, 1), dtype=np.int64)
    cdef long[::1] queue = np.empty(max(nv, 1), dtype=np.int64)

    cdef unsigned long long state
    cdef long t, i, jj, cnt, best, bslot, a, b, v0, head, tail, stamp = 0
    cdef long rank = aux, p, j
    cdef double u, vi, wi, draw, cur, one_plus_f = 1.0 + f
    cdef double logr = log(r)
    cdef double yy, tt, sq
    cdef bint sold, reached

    for t in range(trials):
        # counter-based trial seed: mix(master + (t+1) * gamma)
        state = _mix(seed + (<unsigned long long>(t + 1)) * _GAMMA)
        u = _next_unit(&state)
        cur = 0.0
        cnt = 0
        if kind == _K_PARTITION:
            for jj in range(aux):
                pcount[jj] = 0
        elif kind == _K_GRAPHIC:
            for jj in range(nv):
                deg[jj] = 0

        for i in range(n):
            vi = values[i]
            wi = pow(r, u + floor(log(vi) / logr - u))
            if wi > vi:
                wi = vi
            w[i] = wi
            draw = _next_unit(&state)
            x[i] = 1 if draw < wi / vi else 0

            sold = False
            j = -1   # element bought back by the inner greedy run

            if kind == _K_UNIFORM:
                if cnt < rank:
                    held[cnt] = i
                    cnt += 1
                    sold = True
                elif rank > 0:
                    best = held[0]
                    bslot = 0
                    for jj in range(1, cnt):
                        if (w[held[jj]] < w[best]
                                or (w[held[jj]] == w[best] and held[jj] < best)):
                            best = held[jj]
                            bslot = jj
                    if w[best] < wi:
                        j = best
                        held[bslot] = i
                        sold = True

            elif kind == _K_PARTITION:
                p = p1[i]
                if pcount[p] < p2[p]:
                    held[cnt] = i
                    cnt += 1
                    pcount[p] += 1
                    sold = True
                elif p2[p] > 0:
                    best = -1
                    bslot = -1
                    for jj in range(cnt):
                        if p1[held[jj]] == p:
                            if (best == -1 or w[held[jj]] < w[best]
                                    or (w[held[jj]] == w[best] and held[jj] < best)):
                                best = held[jj]
                                bslot = jj
                    if best >= 0 and w[best] < wi:
                        j = best
                        held[bslot] = i
                        sold = True

            else:  # KIND_GRAPHIC
                a = p1[i]
                b = p2[i]
                if a != b:
                    stamp += 1
                    visited[a] = stamp
                    parent_e[a] = -1
                    queue[0] = a
                    head = 0
                    tail = 1
                    reached = False
                    while head < tail:
                        v0 = queue[head]
                        head += 1
                        if v0 == b:
                            reached = True
                            break
                        for jj in range(deg[v0]):
                            if visited[adj_nbr[v0 * n + jj]] != stamp:
                                visited[adj_nbr[v0 * n + jj]] = stamp
                                parent_e[adj_nbr[v0 * n + jj]] = adj_eid[v0 * n + jj]
                                parent_v[adj_nbr[v0 * n + jj]] = v0
                                queue[tail] = adj_nbr[v0 * n + jj]
                                tail += 1
                    if not reached:
                        _adj_add(adj_nbr, adj_eid, deg, n, a, b, i)
                        sold = True
                    else:
                        # circuit = path b -> a; cheapest edge on it
                        best = -1
                        v0 = b
                        while parent_e[v0] != -1:
                            jj = parent_e[v0]
                            if (best == -1 or w[jj] < w[best]
                                    or (w[jj] == w[best] and jj < best)):
                                best = jj
                            v0 = parent_v[v0]
                        if best >= 0 and w[best] < wi:
                            j = best
                            _adj_remove(adj_nbr, adj_eid, deg, n, p1[j], best)
                            _adj_remove(adj_nbr, adj_eid, deg, n, p2[j], best)
                            _adj_add(adj_nbr, adj_eid, deg, n, a, b, i)
                            sold = True

            if sold and x[i]:
                cur = cur + vi
            if j >= 0 and x[j]:
                cur = cur - one_plus_f * values[j]

            # Kahan accumulation into the per-prefix sums
            yy = cur - comp_s[i]
            tt = sums[i] + yy
            comp_s[i] = (tt - sums[i]) - yy
            sums[i] = tt
            sq = cur * cur
            yy = sq - comp_q[i]
            tt = sumsq[i] + yy
            comp_q[i] = (tt - sumsq[i]) - yy
            sumsq[i] = tt

    return sums_arr, sumsq_arr


cdef inline void _adj_add(long[::1] adj_nbr, long[::1] adj_eid, long[::1] deg,
                          Py_ssize_t n, long a, long b, long eid) nogil:
    adj_nbr[a * n + deg[a]] = b
    adj_eid[a * n + deg[a]] = eid
    deg[a] += 1
    adj_nbr[b * n + deg[b]] = a
    adj_eid[b * n + deg[b]] = eid
    deg[b] += 1


cdef inline void _adj_remove(long[::1] adj_nbr, long[::1] adj_eid,
                             long[::1] deg, Py_ssize_t n, long v,
                             long eid) nogil:
    cdef long jj
    for jj in range(deg[v]):
        if adj_eid[v * n + jj] == eid:
            deg[v] -= 1
            adj_nbr[v * n + jj] = adj_nbr[v * n + deg[v]]
            adj_eid[v * n + jj] = adj_eid[v * n + deg[v]]
            return
