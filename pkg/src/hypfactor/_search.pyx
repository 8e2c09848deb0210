# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled backtracking kernel for the brute-force oracle.

Line-parallel with `_search_py.py`: same edge order, same ascending color
order, identical results and node counts.  Any change here must land in
the pure-Python twin as well.
"""

import time

from libc.stdlib cimport calloc, free

FOUND, NONE, UNKNOWN = 1, 0, -1


cdef int _find(int* parent, int x) nogil:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


cdef bint _class_completable(int* ev, int* color, int pos, int c, int n, int h,
                             int* rc, int slots, int* parent, int* touched,
                             int* state) nogil:
    # Can the partial class still end as one connected spanning piece?
    # Future edges of the class may only touch vertices with positive
    # residual, so a component whose vertices are all saturated can never
    # merge again: one such frozen fragment next to any other piece is
    # fatal.  Each future edge joins at most h pieces, so the live pieces
    # (components holding an unsaturated vertex, plus every untouched
    # vertex that still needs degree) must be mergeable within the slots
    # the class has left.  With no slots left this degenerates to an
    # exact spanning-connectivity test.
    cdef int v, i, j, off, va, vb, ra, rb, rv
    cdef int comp = 0, open_comp = 0, untouched_needy = 0, pieces
    for v in range(n + 1):
        parent[v] = v
        touched[v] = 0
        state[v] = 0
    for i in range(pos + 1):
        if i == pos or color[i] == c:
            off = i * h
            va = ev[off]
            touched[va] = 1
            ra = _find(parent, va)
            for j in range(1, h):
                vb = ev[off + j]
                touched[vb] = 1
                rb = _find(parent, vb)
                if ra != rb:
                    parent[rb] = ra
    for v in range(1, n + 1):
        if touched[v]:
            rv = _find(parent, v)
            if state[rv] == 0:
                state[rv] = 1
                comp += 1
            if rc[v] > 0 and state[rv] == 1:
                state[rv] = 2
                open_comp += 1
        elif rc[v] > 0:
            untouched_needy += 1
    pieces = comp + untouched_needy
    if comp > open_comp and pieces >= 2:
        return 0
    return open_comp + untouched_needy - 1 <= slots * (h - 1)


def solve(int n, int h, ev_list, dup_list, first_list, int k, r_list,
          sizes_list, conn_list, long long max_nodes, double time_limit):
    """Exhaustive color assignment over edges in fixed order.

    Returns (status, colors, nodes): colors is a 1-based color per edge
    when status is FOUND, None otherwise.
    """
    cdef int E = len(dup_list)
    if E == 0:
        return FOUND, [], 0

    cdef int maxr = 0
    for c0_init in r_list:
        if c0_init > maxr:
            maxr = c0_init

    cdef int* ev = <int*> calloc(E * h, sizeof(int))
    cdef int* dup_prev = <int*> calloc(E, sizeof(int))
    cdef int* first_ok = <int*> calloc(k + 1, sizeof(int))
    cdef int* res = <int*> calloc((k + 1) * (n + 1), sizeof(int))
    cdef int* hist = <int*> calloc((k + 1) * (maxr + 1), sizeof(int))
    cdef int* maxres = <int*> calloc(k + 1, sizeof(int))
    cdef int* same_prev = <int*> calloc(k + 1, sizeof(int))
    cdef int* cnt = <int*> calloc(k + 1, sizeof(int))
    cdef int* sizes = <int*> calloc(k + 1, sizeof(int))
    cdef int* conn = <int*> calloc(k + 1, sizeof(int))
    cdef int* color = <int*> calloc(E, sizeof(int))
    cdef int* nxt = <int*> calloc(E, sizeof(int))
    cdef int* parent = <int*> calloc(n + 1, sizeof(int))
    cdef int* touched = <int*> calloc(n + 1, sizeof(int))
    cdef int* state = <int*> calloc(n + 1, sizeof(int))
    if not (ev and dup_prev and first_ok and res and hist and maxres
            and same_prev and cnt and sizes and conn and color and nxt
            and parent and touched and state):
        raise MemoryError()

    cdef int i, j, c, v, pos, off, c0, t, mr
    cdef bint ok, assigned
    cdef long long nodes = 0
    cdef double deadline = 0.0
    cdef bint have_deadline = time_limit > 0
    if have_deadline:
        deadline = time.monotonic() + time_limit

    try:
        for i in range(E * h):
            ev[i] = ev_list[i]
        for i in range(E):
            dup_prev[i] = dup_list[i]
            nxt[i] = 1
        for c in range(1, k + 1):
            first_ok[c] = 1 if first_list[c] else 0
            sizes[c] = sizes_list[c]
            conn[c] = 1 if conn_list[c] else 0
            for v in range(1, n + 1):
                res[c * (n + 1) + v] = r_list[c]
            hist[c * (maxr + 1) + r_list[c]] = n
            maxres[c] = r_list[c]
            if c >= 2 and r_list[c] == r_list[c - 1]:
                same_prev[c] = 1

        pos = 0
        while True:
            if pos == E:
                return FOUND, [color[i] for i in range(E)], nodes
            c = nxt[pos]
            if dup_prev[pos] and c < color[pos - 1]:
                c = color[pos - 1]
            assigned = 0
            off = pos * h
            while c <= k:
                nodes += 1
                if max_nodes and nodes > max_nodes:
                    return UNKNOWN, None, nodes
                if have_deadline and nodes % 65536 == 0:
                    if time.monotonic() > deadline:
                        return UNKNOWN, None, nodes
                ok = (pos != 0 or first_ok[c]) and cnt[c] < sizes[c]
                if ok and cnt[c] == 0 and same_prev[c] and cnt[c - 1] == 0:
                    ok = 0
                if ok:
                    for j in range(h):
                        if res[c * (n + 1) + ev[off + j]] == 0:
                            ok = 0
                            break
                if ok:
                    cnt[c] += 1
                    for j in range(h):
                        t = res[c * (n + 1) + ev[off + j]]
                        hist[c * (maxr + 1) + t] -= 1
                        hist[c * (maxr + 1) + t - 1] += 1
                        res[c * (n + 1) + ev[off + j]] = t - 1
                    mr = maxres[c]
                    while mr and hist[c * (maxr + 1) + mr] == 0:
                        mr -= 1
                    maxres[c] = mr
                    if mr > sizes[c] - cnt[c] or (
                        conn[c] and not _class_completable(
                            ev, color, pos, c, n, h, res + c * (n + 1),
                            sizes[c] - cnt[c], parent, touched, state,
                        )
                    ):
                        cnt[c] -= 1
                        for j in range(h):
                            t = res[c * (n + 1) + ev[off + j]]
                            hist[c * (maxr + 1) + t] -= 1
                            hist[c * (maxr + 1) + t + 1] += 1
                            res[c * (n + 1) + ev[off + j]] = t + 1
                            if t + 1 > maxres[c]:
                                maxres[c] = t + 1
                    else:
                        color[pos] = c
                        nxt[pos] = c + 1
                        pos += 1
                        if pos < E:
                            nxt[pos] = 1
                        assigned = 1
                        break
                c += 1
            if not assigned:
                pos -= 1
                if pos < 0:
                    return NONE, None, nodes
                c0 = color[pos]
                cnt[c0] -= 1
                off = pos * h
                for j in range(h):
                    t = res[c0 * (n + 1) + ev[off + j]]
                    hist[c0 * (maxr + 1) + t] -= 1
                    hist[c0 * (maxr + 1) + t + 1] += 1
                    res[c0 * (n + 1) + ev[off + j]] = t + 1
                    if t + 1 > maxres[c0]:
                        maxres[c0] = t + 1
    finally:
        free(ev)
        free(dup_prev)
        free(first_ok)
        free(res)
        free(hist)
        free(maxres)
        free(same_prev)
        free(cnt)
        free(sizes)
        free(conn)
        free(color)
        free(nxt)
        free(parent)
        free(touched)
        free(state)
