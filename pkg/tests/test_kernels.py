import importlib
import random

import pytest
from hypothesis import given, strategies as st

from strategies import graphs_with_order
from travlab import kernels
from travlab.kernels import _pykernels
from travlab.traversals import csr

_ckernels = pytest.importorskip("travlab.kernels._ckernels")


@given(graphs_with_order(max_n=9))
def test_order_flags_agree(go):
    g, order = go
    ip, ix = csr(g)
    seq = list(order.sequence)
    assert _ckernels.order_flags(ip, ix, seq) == _pykernels.order_flags(ip, ix, seq)


@given(graphs_with_order(max_n=9), st.data())
def test_bfs_distances_agree(go, data):
    g, _ = go
    ip, ix = csr(g)
    s = data.draw(st.integers(0, g.size - 1))
    assert list(_ckernels.bfs_distances(ip, ix, s)) == list(_pykernels.bfs_distances(ip, ix, s))


@given(graphs_with_order(max_n=9))
def test_canonical_bft_agree(go):
    g, order = go
    ip, ix = csr(g)
    seq = list(order.sequence)
    assert list(_ckernels.canonical_bft(ip, ix, seq)) == list(_pykernels.canonical_bft(ip, ix, seq))


def test_large_graph_agree():
    rng = random.Random(7)
    n = 400
    nbrs = [set() for _ in range(n)]
    for _ in range(1200):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            nbrs[u].add(v)
            nbrs[v].add(u)
    ip, ix = [0], []
    for s in nbrs:
        ix.extend(sorted(s))
        ip.append(len(ix))
    seq = list(range(n))
    rng.shuffle(seq)
    assert _ckernels.order_flags(ip, ix, seq) == _pykernels.order_flags(ip, ix, seq)
    assert list(_ckernels.canonical_bft(ip, ix, seq)) == list(_pykernels.canonical_bft(ip, ix, seq))
    assert list(_ckernels.bfs_distances(ip, ix, 0)) == list(_pykernels.bfs_distances(ip, ix, 0))


def test_pure_python_switch(monkeypatch):
    monkeypatch.setenv("TRAVLAB_PURE_PYTHON", "1")
    try:
        reloaded = importlib.reload(kernels)
        assert reloaded.BACKEND == "python"
        assert reloaded.order_flags is _pykernels.order_flags
    finally:
        monkeypatch.delenv("TRAVLAB_PURE_PYTHON")
        reloaded = importlib.reload(kernels)
    assert reloaded.BACKEND == "cython"
