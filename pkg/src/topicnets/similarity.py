"""Pairwise similarity of labelled, weighted networks.

Vertices are matched by label and arcs by ordered label pair. The registry
:data:`MEASURES` fixes the order of the eleven measures; ``netsimile`` is a
distance, every other entry is a similarity in ``[0, 1]``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Sequence

import numpy as np
from scipy.spatial.distance import canberra

from .features import TypeOf, netsimile_features, typed_cluster_vector
from .graph import GraphError, LabeledDigraph
from .structure import apply_sentinel, shortest_path_lengths
from .topics import TopicScheme


def _ratio(num: float, den: float, empty: float) -> float:
    return empty if den == 0 else num / den


# -- overlap measures ----------------------------------------------------


def overlaps(g1: LabeledDigraph, g2: LabeledDigraph) -> tuple[int, int]:
    """Number of shared vertex labels and of shared ordered label pairs."""
    return len(g1.labels & g2.labels), len(g1.labelled_arcs() & g2.labelled_arcs())


def ged(g1: LabeledDigraph, g2: LabeledDigraph) -> float:
    """Edit distance under label matching: unmatched vertices plus unmatched arcs."""
    vo, ao = overlaps(g1, g2)
    return float(g1.order + g2.order - 2 * vo + g1.size + g2.size - 2 * ao)


def ges(g1: LabeledDigraph, g2: LabeledDigraph) -> float:
    vo, ao = overlaps(g1, g2)
    nv, na = g1.order + g2.order, g1.size + g2.size
    rv = _ratio(nv - 2 * vo, nv, 0.0)
    ra = _ratio(na - 2 * ao, na, 0.0)
    return 1.0 - 0.5 * (rv + ra)


def wal(g1: LabeledDigraph, g2: LabeledDigraph) -> float:
    vo, ao = overlaps(g1, g2)
    total = g1.order + g2.order + g1.size + g2.size
    return _ratio(vo + ao, total - vo - ao, 1.0)


def veo(g1: LabeledDigraph, g2: LabeledDigraph) -> float:
    vo, ao = overlaps(g1, g2)
    total = g1.order + g2.order + g1.size + g2.size
    return _ratio(2.0 * (vo + ao), total, 1.0)


def weight_distance(x: float, y: float) -> float:
    top = max(x, y)
    return 0.0 if top == 0 else abs(x - y) / top


def wges(g1: LabeledDigraph, g2: LabeledDigraph) -> float:
    """Weight-aware overlap: matched items count ``1 - |x - y| / max(x, y)``."""
    shared = sorted(g1.labels & g2.labels)
    vs = math.fsum(1.0 - weight_distance(g1.weight(g1.by_label(l)), g2.weight(g2.by_label(l))) for l in shared)
    vpart = _ratio(2.0 * vs, g1.order + g2.order, 1.0)
    a1 = {(g1.label(a.src), g1.label(a.dst)): a.weight for a in g1.arc_objects()}
    a2 = {(g2.label(a.src), g2.label(a.dst)): a.weight for a in g2.arc_objects()}
    as_ = math.fsum(1.0 - weight_distance(a1[k], a2[k]) for k in sorted(a1.keys() & a2.keys()))
    apart = _ratio(2.0 * as_, g1.size + g2.size, 1.0)
    return (vpart + apart) / 2.0


# -- geodesic cosine measures ---------------------------------------------


class Profile:
    """Per-graph data reused across many comparisons."""

    def __init__(self, g: LabeledDigraph, type_of: TypeOf | None = None):
        self.g = g
        self.type_of = type_of
        self.labels = [g.label(v) for v in g.vertices]
        self.mu = g.vertex_weights()
        adj = g.adjacency()
        self.degree = adj.sum(axis=0) + adj.sum(axis=1)

    def shortest(self, weighted: bool) -> np.ndarray:
        key = "_sp_w" if weighted else "_sp_u"
        if key not in self.__dict__:
            self.__dict__[key] = shortest_path_lengths(self.g, weighted)
        return self.__dict__[key]

    @cached_property
    def netsimile(self) -> np.ndarray:
        return netsimile_features(self.g)

    @cached_property
    def tosi(self) -> np.ndarray:
        if self.type_of is None:
            raise GraphError("tosi needs a vertex class mapping")
        return typed_cluster_vector(self.g, self.type_of)


def _profile(g, type_of=None) -> Profile:
    return g if isinstance(g, Profile) else Profile(g, type_of)


@dataclass
class AlignedPair:
    """Both graphs padded to the union of their labels.

    ``gep1[i, j]`` is the geodesic proximity of the ``i``-th and ``j``-th
    union labels in the first graph (0 when either is padded).
    """

    labels: list[str]
    gep1: np.ndarray
    gep2: np.ndarray
    mu1: np.ndarray
    mu2: np.ndarray
    deg1: np.ndarray
    deg2: np.ndarray
    original1: np.ndarray = field(repr=False, default=None)
    original2: np.ndarray = field(repr=False, default=None)


def _gep_block(p: Profile, pos: np.ndarray, n12: int, weighted: bool, cap: float) -> np.ndarray:
    out = np.zeros((n12, n12))
    if p.g.order:
        d = apply_sentinel(p.shortest(weighted), float(n12), cap)
        out[np.ix_(pos, pos)] = 1.0 - d / n12
    return out


def align(g1, g2, weighted: bool = True, cap: float = math.inf) -> AlignedPair:
    if cap <= 0:
        raise GraphError("cap must be positive")
    p1, p2 = _profile(g1), _profile(g2)
    labels = sorted(set(p1.labels) | set(p2.labels))
    index = {l: i for i, l in enumerate(labels)}
    n12 = len(labels)
    pos1 = np.array([index[l] for l in p1.labels], dtype=int)
    pos2 = np.array([index[l] for l in p2.labels], dtype=int)

    def spread(vals, pos):
        out = np.zeros(n12)
        out[pos] = vals
        return out

    orig1, orig2 = np.zeros(n12, bool), np.zeros(n12, bool)
    orig1[pos1] = True
    orig2[pos2] = True
    return AlignedPair(
        labels,
        _gep_block(p1, pos1, n12, weighted, cap),
        _gep_block(p2, pos2, n12, weighted, cap),
        spread(p1.mu, pos1), spread(p2.mu, pos2),
        spread(p1.degree, pos1), spread(p2.degree, pos2),
        orig1, orig2,
    )


def gep(pair: AlignedPair, side: int, v: str, w: str) -> float:
    """Geodesic proximity of labels ``v`` and ``w`` in graph ``side`` (1 or 2) of the pair."""
    i, j = pair.labels.index(v), pair.labels.index(w)
    return float((pair.gep1 if side == 1 else pair.gep2)[i, j])


def _cos(a: np.ndarray, b: np.ndarray) -> float:
    # dot/sqrt(|a|^2 |b|^2) returns exactly 1.0 for a == b
    den = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
    if den == 0:
        return 0.0
    return min(1.0, float(np.dot(a, b)) / den)


def vertex_cosines(pair: AlignedPair) -> np.ndarray:
    """Cosine of the proximity vectors of each union label in the two graphs."""
    return np.array([_cos(pair.gep1[i], pair.gep2[i]) for i in range(len(pair.labels))])


def cos_vertices(pair: AlignedPair) -> float:
    return _cos(pair.mu1, pair.mu2)


def cos_arcs(pair: AlignedPair, phi: str = "phi1", label_filter: Iterable[str] | None = None) -> float:
    keep = np.ones(len(pair.labels), bool)
    if label_filter is not None:
        allowed = set(label_filter)
        keep = np.array([l in allowed for l in pair.labels], bool)
    if not keep.any():
        return 0.0
    cos = vertex_cosines(pair)[keep]
    if phi == "phi1":
        weights = np.ones(cos.size)
    elif phi == "phi2":
        weights = np.maximum(pair.deg1, pair.deg2)[keep]
        if weights.sum() == 0:
            weights = np.ones(cos.size)
    else:
        raise ValueError(f"unknown phi {phi!r}")
    return math.fsum(weights * cos) / math.fsum(weights)


def cos_graph(g1, g2, weighted: bool = True, phi: str = "phi1", vertex_part: bool = True,
              label_filter: Iterable[str] | None = None, cap: float = math.inf) -> float:
    """Geodesic-proximity cosine, optionally averaged with the vertex-weight cosine."""
    p1, p2 = _profile(g1), _profile(g2)
    if p1.g.order == 0 and p2.g.order == 0:
        return 1.0
    pair = align(p1, p2, weighted, cap)
    ca = cos_arcs(pair, phi, label_filter)
    if not vertex_part:
        return ca
    return (cos_vertices(pair) + ca) / 2.0


# -- feature-vector measures ----------------------------------------------


def netsimile_distance(g1, g2) -> float:
    """Canberra distance of the 35 aggregated structural features."""
    return float(canberra(_profile(g1).netsimile, _profile(g2).netsimile))


def tosi(g1, g2, type_of: TypeOf | None = None) -> float:
    return _cos(_profile(g1, type_of).tosi, _profile(g2, type_of).tosi)


def class_mapping(scheme: TopicScheme, level: int | None = None, network_level: int = 2) -> Callable[[str], str]:
    """Vertex class = ancestor at ``level`` (default: one level above the network's)."""
    lvl = level if level is not None else max(1, network_level - 1)

    def type_of(code: str) -> str:
        return scheme.ancestor(code, min(lvl, scheme.level(code))) if code in scheme else None

    return type_of


# -- registry ---------------------------------------------------------------


@dataclass(frozen=True)
class Measure:
    id: str
    fn: Callable
    kind: str = "similarity"  # or "distance"
    low: float = 0.0
    high: float = 1.0

    @property
    def self_value(self) -> float:
        return 0.0 if self.kind == "distance" else 1.0

    def __call__(self, g1, g2, type_of: TypeOf | None = None, cap: float = math.inf) -> float:
        p1, p2 = _profile(g1, type_of), _profile(g2, type_of)
        return self.fn(p1, p2, type_of=type_of, cap=cap)


def _wrap(f):
    return lambda p1, p2, type_of=None, cap=math.inf: f(p1.g, p2.g)


MEASURES: dict[str, Measure] = {
    m.id: m
    for m in (
        Measure("ges", _wrap(ges)),
        Measure("wal", _wrap(wal)),
        Measure("veo", _wrap(veo)),
        Measure("wges", _wrap(wges)),
        Measure("cosA_w", lambda a, b, type_of=None, cap=math.inf: cos_graph(a, b, True, "phi1", False, cap=cap)),
        Measure("cosAV_w_phi1", lambda a, b, type_of=None, cap=math.inf: cos_graph(a, b, True, "phi1", True, cap=cap)),
        Measure("cosAV_w_phi2", lambda a, b, type_of=None, cap=math.inf: cos_graph(a, b, True, "phi2", True, cap=cap)),
        Measure("cosA_uw", lambda a, b, type_of=None, cap=math.inf: cos_graph(a, b, False, "phi1", False, cap=cap)),
        Measure("cosAV_uw", lambda a, b, type_of=None, cap=math.inf: cos_graph(a, b, False, "phi1", True, cap=cap)),
        Measure("netsimile", lambda a, b, type_of=None, cap=math.inf: netsimile_distance(a, b),
                kind="distance", high=35.0),
        Measure("tosi", lambda a, b, type_of=None, cap=math.inf: tosi(a, b)),
    )
}
MEASURE_IDS = tuple(MEASURES)


def get_measure(mid: str) -> Measure:
    try:
        return MEASURES[mid]
    except KeyError:
        raise ValueError(f"unknown measure {mid!r}; choose from {', '.join(MEASURE_IDS)}") from None


@dataclass
class FeatureMatrix:
    ids: list[str]
    values: np.ndarray
    measure: str
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        n = len(self.ids)
        if self.values.shape != (n, n):
            raise ValueError(f"matrix shape {self.values.shape} does not match {n} ids")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("matrix has non-finite entries")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", *self.ids])
        for i, row in zip(self.ids, self.values):
            w.writerow([i, *(repr(float(x)) for x in row)])
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str, measure: str = "") -> "FeatureMatrix":
        rows = [r for r in csv.reader(io.StringIO(text)) if r]
        ids = rows[0][1:]
        if [r[0] for r in rows[1:]] != ids:
            raise ValueError("row ids must match the header")
        vals = np.array([[float(x) for x in r[1:]] for r in rows[1:]])
        return cls(ids, vals, measure)


def similarity_matrix(nets: Sequence[LabeledDigraph], m: str | Measure, ids: Sequence[str] | None = None,
                      type_of: TypeOf | None = None, cap: float = math.inf) -> FeatureMatrix:
    """Symmetric matrix of one measure over all pairs; the diagonal holds self-values."""
    measure = get_measure(m) if isinstance(m, str) else m
    n = len(nets)
    ids = list(ids) if ids is not None else [str(i) for i in range(n)]
    profiles = [Profile(g, type_of) for g in nets]
    out = np.zeros((n, n))
    for i in range(n):
        out[i, i] = measure.fn(profiles[i], profiles[i], type_of=type_of, cap=cap)
        for j in range(i + 1, n):
            out[i, j] = out[j, i] = measure.fn(profiles[i], profiles[j], type_of=type_of, cap=cap)
    return FeatureMatrix(ids, out, measure.id, {"cap": cap})
