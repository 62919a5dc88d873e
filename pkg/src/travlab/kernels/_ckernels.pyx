# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the graph kernels in ``_pykernels``; same signatures."""

from libc.stdlib cimport malloc, free

cdef int TRAVERSAL = 1, BFT = 2, DFT = 4


cdef int* _carray(object values, Py_ssize_t n) except NULL:
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef Py_ssize_t i
    if out == NULL:
        raise MemoryError()
    for i in range(n):
        out[i] = values[i]
    return out


def order_flags(indptr, indices, seq):
    cdef Py_ssize_t n = len(seq), m = len(indices)
    cdef int* ip = _carray(indptr, n + 1)
    cdef int* ix = _carray(indices, m)
    cdef int* sq = _carray(seq, n)
    cdef int* ranks = <int*> malloc((n + 1) * sizeof(int))
    cdef int* reach = <int*> malloc((n + 1) * sizeof(int))
    cdef int v, r, k, w, best, lo, hi, x, u, prefix = -1
    cdef bint trav = True, bft = True, dft = True
    try:
        for r in range(n):
            ranks[sq[r]] = r
        for v in range(n):
            r = ranks[v]
            best = r
            for k in range(ip[v], ip[v + 1]):
                w = ranks[ix[k]]
                if w > best:
                    best = w
            reach[r] = best
        for r in range(n):
            v = sq[r]
            lo = n
            hi = -1
            for k in range(ip[v], ip[v + 1]):
                x = ranks[ix[k]]
                if x < r:
                    if x < lo:
                        lo = x
                    if x > hi:
                        hi = x
            if hi < 0:
                if prefix > r:
                    trav = bft = dft = False
                    break
            else:
                if bft:
                    for u in range(lo):
                        if reach[u] > r:
                            bft = False
                            break
                if dft:
                    for u in range(hi + 1, r):
                        if reach[u] > r:
                            dft = False
                            break
            if reach[r] > prefix:
                prefix = reach[r]
    finally:
        free(ip); free(ix); free(sq); free(ranks); free(reach)
    return (TRAVERSAL if trav else 0) | (BFT if bft else 0) | (DFT if dft else 0)


def bfs_distances(indptr, indices, int source):
    cdef Py_ssize_t n = len(indptr) - 1, m = len(indices)
    cdef int* ip = _carray(indptr, n + 1)
    cdef int* ix = _carray(indices, m)
    cdef int* dist = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int* queue = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int head = 0, tail = 0, v, w, k, d, i
    try:
        for i in range(n):
            dist[i] = -1
        dist[source] = 0
        queue[tail] = source
        tail += 1
        while head < tail:
            v = queue[head]
            head += 1
            d = dist[v] + 1
            for k in range(ip[v], ip[v + 1]):
                w = ix[k]
                if dist[w] < 0:
                    dist[w] = d
                    queue[tail] = w
                    tail += 1
        return [dist[i] for i in range(n)]
    finally:
        free(ip); free(ix); free(dist); free(queue)


def canonical_bft(indptr, indices, seq):
    cdef Py_ssize_t n = len(seq), m = len(indices)
    cdef int* ip = _carray(indptr, n + 1)
    cdef int* ix = _carray(indices, m)
    cdef int* sq = _carray(seq, n)
    cdef int* ranks = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef int* nb = <int*> malloc((m if m > 0 else 1) * sizeof(int))
    cdef int* out = <int*> malloc((n if n > 0 else 1) * sizeof(int))
    cdef char* seen = <char*> malloc((n if n > 0 else 1) * sizeof(char))
    cdef int i, j, k, v, w, key, root, head, tail = 0
    try:
        for i in range(n):
            ranks[sq[i]] = i
            seen[i] = 0
        # neighbor lists sorted by rank (insertion sort; lists are short)
        for v in range(n):
            for k in range(ip[v], ip[v + 1]):
                w = ix[k]
                key = ranks[w]
                j = k - 1
                while j >= ip[v] and ranks[nb[j]] > key:
                    nb[j + 1] = nb[j]
                    j -= 1
                nb[j + 1] = w
        for i in range(n):
            root = sq[i]
            if seen[root]:
                continue
            seen[root] = 1
            head = tail
            out[tail] = root
            tail += 1
            while head < tail:
                v = out[head]
                head += 1
                for k in range(ip[v], ip[v + 1]):
                    w = nb[k]
                    if not seen[w]:
                        seen[w] = 1
                        out[tail] = w
                        tail += 1
        return [out[i] for i in range(n)]
    finally:
        free(ip); free(ix); free(sq); free(ranks); free(nb); free(out); free(seen)
