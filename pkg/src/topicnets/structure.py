"""Orbits, geodesics and Erdős–Rényi rewiring."""

from __future__ import annotations

import math
from collections import deque

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .graph import Arc, GraphError, LabeledDigraph


def hop_distances(g: LabeledDigraph, source: str) -> dict[str, int]:
    """Unweighted directed BFS distances from ``source`` to every reachable vertex."""
    if source not in g:
        raise GraphError(f"unknown vertex {source!r}")
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.successors(u):
            if w not in dist:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def orbit(g: LabeledDigraph, v: str, n: int) -> LabeledDigraph:
    """Subgraph induced by all vertices at most ``n`` directed hops from ``v``."""
    if n < 0:
        raise GraphError("orbit radius must be non-negative")
    dist = hop_distances(g, v)
    return g.subgraph(w for w, d in dist.items() if d <= n)


def er_rewire(g: LabeledDigraph, seed: int) -> LabeledDigraph:
    """Place the arcs of ``g`` uniformly at random over all ordered vertex pairs.

    Vertices (ids, labels, weights) are kept. The arc count is preserved and
    the original arc weights are redistributed by a random permutation, so
    only the wiring is randomised.
    """
    n, m = g.order, g.size
    if m == 0:
        return g
    if m > n * n:
        raise GraphError("more arcs than ordered vertex pairs")
    rng = np.random.default_rng(seed)
    ids = g.vertices
    cells = rng.choice(n * n, size=m, replace=False)
    originals = list(g.arc_objects())
    perm = rng.permutation(m)
    arcs = []
    for cell, k in zip(cells.tolist(), perm.tolist()):
        src, dst = ids[cell // n], ids[cell % n]
        a = originals[k]
        arcs.append(Arc(src, dst, a.weight, a.kind))
    return LabeledDigraph(g.vertex_objects(), arcs)


def arc_lengths(g: LabeledDigraph, weighted: bool) -> csr_matrix:
    """Sparse length matrix: 1 per arc, or ``1/ŵ`` with ``ŵ`` = weight / max weight.

    Self-loops are dropped since they never lie on a shortest path.
    """
    n = g.order
    rows, cols, vals = [], [], []
    if weighted:
        top = max((a.weight for a in g.arc_objects()), default=0.0)
    for a in g.arc_objects():
        if a.src == a.dst:
            continue
        if weighted:
            if a.weight <= 0:
                raise GraphError(f"weighted geodesics need positive arc weights ({a.src!r}->{a.dst!r})")
            length = top / a.weight
        else:
            length = 1.0
        rows.append(g.index(a.src))
        cols.append(g.index(a.dst))
        vals.append(length)
    return csr_matrix((vals, (rows, cols)), shape=(n, n))


def shortest_path_lengths(g: LabeledDigraph, weighted: bool = False) -> np.ndarray:
    """All-pairs directed shortest path lengths with ``inf`` for unreachable pairs."""
    if g.order == 0:
        return np.zeros((0, 0))
    lengths = arc_lengths(g, weighted)
    return shortest_path(lengths, method="D", directed=True, unweighted=not weighted)


def apply_sentinel(dist: np.ndarray, sentinel: float, cap: float = math.inf) -> np.ndarray:
    """Replace unreachable entries and entries beyond ``cap`` or ``sentinel`` by ``sentinel``."""
    out = np.array(dist, dtype=float, copy=True)
    out[~np.isfinite(out) | (out > cap) | (out > sentinel)] = sentinel
    return out


def geodesic_matrix(g: LabeledDigraph, weighted: bool = False, cap: float = math.inf) -> np.ndarray:
    """All-pairs geodesic distances in canonical vertex order.

    Unreachable pairs and distances above ``cap`` (or above ``|V|``) are set
    to the sentinel ``|V|``. The diagonal is zero.
    """
    if cap <= 0:
        raise GraphError("cap must be positive")
    return apply_sentinel(shortest_path_lengths(g, weighted), float(g.order), cap)
