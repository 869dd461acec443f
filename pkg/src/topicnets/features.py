"""Per-graph feature vectors: NetSimile aggregates and type-sensitive clustering.

Both work on the undirected simplification of a graph: an edge ``{u, w}``
exists if either arc exists, self-loops are dropped.
"""

from __future__ import annotations

from typing import Callable, Mapping, Union

import numpy as np
from scipy import stats

from .graph import GraphError, LabeledDigraph

NETSIMILE_FEATURES = (
    "degree",
    "clustering",
    "neighbor_degree",
    "neighbor_clustering",
    "egonet_edges",
    "egonet_out_edges",
    "egonet_neighbors",
)
NETSIMILE_AGGREGATES = ("median", "mean", "sd", "skewness", "kurtosis")
TYPE_MODES = ("intra", "inter", "heter")
CLUSTER_BASES = ("ws", "br", "bbpv", "zh")

TypeOf = Union[Mapping[str, str], Callable[[str], str]]


def undirected_adjacency(g: LabeledDigraph, weighted: bool = False) -> np.ndarray:
    """Symmetric adjacency without loops.

    With ``weighted`` the edge weight is the mean of both arc weights when
    both directions exist (the single weight otherwise), divided by the
    largest edge weight.
    """
    a = g.adjacency(weighted=weighted)
    np.fill_diagonal(a, 0.0)
    if not weighted:
        return np.maximum(a, a.T)
    both = (a > 0) & (a.T > 0)
    u = np.where(both, (a + a.T) / 2.0, np.maximum(a, a.T))
    top = u.max() if u.size else 0.0
    return u / top if top > 0 else u


def _aggregate(x: np.ndarray) -> list[float]:
    if x.size == 0:
        return [0.0] * 5
    med, mean = float(np.median(x)), float(np.mean(x))
    # spreads at rounding level would make skew and kurtosis pure noise
    if np.ptp(x) <= 1e-12 * max(1.0, abs(mean)):
        return [med, mean, 0.0, 0.0, 0.0]
    return [med, mean, float(np.std(x)), float(stats.skew(x)), float(stats.kurtosis(x))]


def netsimile_node_features(g: LabeledDigraph) -> np.ndarray:
    """``|V| x 7`` matrix of the local structural features."""
    a = undirected_adjacency(g)
    n = a.shape[0]
    if n == 0:
        return np.zeros((0, 7))
    d = a.sum(axis=1)
    tri = np.einsum("ij,jk,ki->i", a, a, a) / 2.0
    wedges = d * (d - 1) / 2.0
    with np.errstate(divide="ignore", invalid="ignore"):
        clust = np.where(wedges > 0, tri / wedges, 0.0)
        nbr_deg = np.where(d > 0, (a @ d) / d, 0.0)
        nbr_clust = np.where(d > 0, (a @ clust) / d, 0.0)
    ego_edges = d + tri
    ego_out = d + a @ d - 2.0 * ego_edges
    e = a + np.eye(n)
    within2 = ((e @ e) > 0).sum(axis=1)
    ego_nbrs = within2 - e.sum(axis=1)
    return np.column_stack([d, clust, nbr_deg, nbr_clust, ego_edges, ego_out, ego_nbrs])


def netsimile_features(g: LabeledDigraph) -> np.ndarray:
    """35-vector: median, mean, sd, skewness and kurtosis of each local feature."""
    f = netsimile_node_features(g)
    out: list[float] = []
    for k in range(7):
        out.extend(_aggregate(f[:, k]))
    return np.array(out)


def _classes(g: LabeledDigraph, type_of: TypeOf) -> list[str]:
    get = type_of if callable(type_of) else type_of.get
    out = []
    for vid in g.vertices:
        c = get(vid)
        if c is None:
            raise GraphError(f"vertex {vid!r} has no class code")
        out.append(c)
    return out


def typed_cluster_vector(g: LabeledDigraph, type_of: TypeOf) -> np.ndarray:
    """12-vector of type-sensitive clustering coefficients.

    Layout is mode-major: for each of intra/inter/heter the four bases
    Watts–Strogatz (mean local), Bollobás–Riordan (global transitivity),
    Barrat et al. (weighted local) and Zhang–Horvath (weighted local).
    A closed neighbour pair ``{u, w}`` of ``v`` counts for

    * intra: class(u) = class(w) = class(v)
    * inter: class(u) = class(w) != class(v)
    * heter: class(u), class(w), class(v) pairwise distinct
    """
    classes = _classes(g, type_of)
    n = g.order
    if n == 0:
        return np.zeros(12)
    codes = {c: i for i, c in enumerate(sorted(set(classes)))}
    cls = np.array([codes[c] for c in classes])
    a = undirected_adjacency(g)
    w = undirected_adjacency(g, weighted=True)

    ws = np.zeros((3, n))
    bbpv = np.zeros((3, n))
    zh = np.zeros((3, n))
    closed_typed = np.zeros(3)
    wedges_total = 0.0
    for v in range(n):
        nb = np.flatnonzero(a[v])
        k = nb.size
        if k < 2:
            continue
        iu, iw = np.triu_indices(k, 1)
        u_idx, w_idx = nb[iu], nb[iw]
        closed = a[u_idx, w_idx] > 0
        cu, cw, cv = cls[u_idx], cls[w_idx], cls[v]
        modes = (
            closed & (cu == cw) & (cu == cv),
            closed & (cu == cw) & (cu != cv),
            closed & (cu != cw) & (cu != cv) & (cw != cv),
        )
        wv = w[v]
        strength = wv[nb].sum()
        zh_den = strength ** 2 - (wv[nb] ** 2).sum()
        barrat = (wv[u_idx] + wv[w_idx]) / 2.0
        triple = wv[u_idx] * w[u_idx, w_idx] * wv[w_idx]
        wedges_total += k * (k - 1) / 2.0
        for m, sel in enumerate(modes):
            cnt = sel.sum()
            ws[m, v] = 2.0 * cnt / (k * k - k)
            closed_typed[m] += cnt
            if strength > 0:
                bbpv[m, v] = 2.0 * barrat[sel].sum() / (strength * (k - 1))
            if zh_den > 0:
                zh[m, v] = 2.0 * triple[sel].sum() / zh_den
    out = []
    for m in range(3):
        br = closed_typed[m] / wedges_total if wedges_total > 0 else 0.0
        out.extend([ws[m].mean(), br, bbpv[m].mean(), zh[m].mean()])
    return np.array(out)
