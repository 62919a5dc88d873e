"""Compiled versus pure-Python graph kernels.

    python benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Runs each kernel of both backends on the same inputs, checks that they
return the same results, and prints the best wall time of each.
"""

from __future__ import annotations

import argparse
import itertools
import random
import sys
import time

from travlab.kernels import _pykernels

try:
    from travlab.kernels import _ckernels
except ImportError:
    _ckernels = None


def random_csr(n: int, degree: float, rng: random.Random) -> tuple[list, list]:
    nbrs = [set() for _ in range(n)]
    p = min(1.0, degree / max(1, n - 1))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                nbrs[u].add(v)
                nbrs[v].add(u)
    indptr, indices = [0], []
    for s in nbrs:
        indices.extend(sorted(s))
        indptr.append(len(indices))
    return indptr, indices


def workloads(rng: random.Random):
    # every order of a few 8-vertex graphs: the classification hot loop
    small = [random_csr(8, d, rng) for d in (1.5, 2.5, 4.0)]
    orders = list(itertools.permutations(range(8)))

    def classify(k):
        return [k.order_flags(ip, ix, list(o)) for ip, ix in small for o in orders]

    big = [random_csr(n, 4.0, rng) for n in (500, 2000)]

    def bfs(k):
        return [k.bfs_distances(ip, ix, s) for ip, ix in big for s in range(0, len(ip) - 1, 25)]

    bases = []
    for ip, ix in big:
        for _ in range(10):
            seq = list(range(len(ip) - 1))
            rng.shuffle(seq)
            bases.append((ip, ix, seq))

    def cbft(k):
        return [k.canonical_bft(ip, ix, seq) for ip, ix, seq in bases]

    return [("order_flags (3 graphs x 8! orders)", classify), ("bfs_distances (n=500,2000)", bfs),
            ("canonical_bft (n=500,2000 x 10)", cbft)]


def best_time(fn, kernel, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(kernel)
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled kernels not built; run `pip install -e . --no-build-isolation` first")
        return 1
    print(f"{'kernel':40} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    ok = True
    for name, fn in workloads(random.Random(args.seed)):
        tp, rp = best_time(fn, _pykernels, args.repeat)
        tc, rc = best_time(fn, _ckernels, args.repeat)
        same = rp == rc
        ok &= same
        print(f"{name:40} {tp:10.3f} {tc:10.3f} {tp / tc:7.1f}x{'' if same else '  MISMATCH'}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
