"""Pure-Python versions of the graph kernels.

Graphs are passed in CSR form: the neighbors of ``v`` are
``indices[indptr[v]:indptr[v + 1]]``.  Orders are passed as ``ranks``
(``ranks[v]`` is the position of ``v``) and ``seq`` (its inverse).
"""

TRAVERSAL, BFT, DFT = 1, 2, 4


def order_flags(indptr, indices, seq):
    """Bitmask of the three search-order predicates for the order ``seq``.

    For each vertex ``v`` at position ``r`` the predicates only concern
    edges ``u < v < w``; for a vertex ``u`` it suffices to know the latest
    neighbor ``reach[u]``.  With ``lo``/``hi`` the earliest/latest neighbor
    of ``v`` before it, the traversal condition fails iff some ``u`` before
    ``r`` reaches past ``r`` while ``v`` has no earlier neighbor, the BFT
    condition iff such a ``u`` precedes ``lo``, the DFT condition iff such
    a ``u`` lies strictly between ``hi`` and ``r``.
    """
    n = len(seq)
    ranks = [0] * n
    for i, v in enumerate(seq):
        ranks[v] = i
    reach = [0] * n  # by position
    for v in range(n):
        r = ranks[v]
        best = r
        for k in range(indptr[v], indptr[v + 1]):
            w = ranks[indices[k]]
            if w > best:
                best = w
        reach[r] = best
    trav = bft = dft = True
    prefix = -1  # max reach over positions < r
    for r in range(n):
        v = seq[r]
        lo, hi = n, -1
        for k in range(indptr[v], indptr[v + 1]):
            x = ranks[indices[k]]
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
    return (TRAVERSAL if trav else 0) | (BFT if bft else 0) | (DFT if dft else 0)


def bfs_distances(indptr, indices, source):
    """Edge-count distances from ``source``; ``-1`` marks unreachable vertices."""
    n = len(indptr) - 1
    dist = [-1] * n
    dist[source] = 0
    queue = [source]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        d = dist[v] + 1
        for k in range(indptr[v], indptr[v + 1]):
            w = indices[k]
            if dist[w] < 0:
                dist[w] = d
                queue.append(w)
    return dist


def canonical_bft(indptr, indices, seq):
    """Breadth-first search restarted at the earliest unvisited vertex.

    Neighbors are scanned in the order ``seq``; the resulting visit order
    sorts each component by its least shortest path from the component's
    earliest vertex, paths compared by length and then lexicographically.
    """
    n = len(seq)
    ranks = [0] * n
    for i, v in enumerate(seq):
        ranks[v] = i
    nbrs = [sorted(indices[indptr[v]:indptr[v + 1]], key=ranks.__getitem__) for v in range(n)]
    seen = [False] * n
    out = []
    for root in seq:
        if seen[root]:
            continue
        seen[root] = True
        head = len(out)
        out.append(root)
        while head < len(out):
            v = out[head]
            head += 1
            for w in nbrs[v]:
                if not seen[w]:
                    seen[w] = True
                    out.append(w)
    return out
