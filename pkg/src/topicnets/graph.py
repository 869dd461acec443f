"""Vertex-labelled, vertex- and arc-weighted directed graphs.

:class:`LabeledDigraph` is the substrate for text layers, author layers and
topic networks alike. Instances are treated as immutable once built; every
algorithm in the package returns new graphs instead of mutating.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import numpy as np


class GraphError(ValueError):
    """Raised for malformed graphs or invalid graph queries."""


@dataclass(frozen=True)
class Vertex:
    id: str
    label: str
    weight: float = 1.0


@dataclass(frozen=True)
class Arc:
    src: str
    dst: str
    weight: float = 1.0
    kind: str = ""


def _as_vertex(v) -> Vertex:
    if isinstance(v, Vertex):
        return v
    if isinstance(v, Mapping):
        return Vertex(v["id"], v.get("label", v["id"]), float(v.get("weight", 1.0)))
    if isinstance(v, str):
        return Vertex(v, v, 1.0)
    vid, *rest = v
    label = rest[0] if rest else vid
    weight = float(rest[1]) if len(rest) > 1 else 1.0
    return Vertex(vid, label, weight)


def _as_arc(a) -> Arc:
    if isinstance(a, Arc):
        return a
    if isinstance(a, Mapping):
        return Arc(a["src"], a["dst"], float(a.get("weight", 1.0)), a.get("kind", ""))
    src, dst, *rest = a
    weight = float(rest[0]) if rest else 1.0
    kind = rest[1] if len(rest) > 1 else ""
    return Arc(src, dst, weight, kind)


class LabeledDigraph:
    """Simple directed graph with injective vertex labels.

    Vertices are given as :class:`Vertex` objects, bare id strings,
    ``(id, label, weight)`` tuples or mappings with the keys of the JSON exchange format; arcs as
    :class:`Arc`, ``(src, dst, weight, kind)`` or mappings. Self-loops are
    allowed, parallel arcs are not.
    """

    __slots__ = ("_vertices", "_arcs", "_by_label", "_index", "_succ", "_pred")

    def __init__(self, vertices: Iterable = (), arcs: Iterable = ()):
        vs: dict[str, Vertex] = {}
        by_label: dict[str, str] = {}
        for item in vertices:
            v = _as_vertex(item)
            if v.id in vs:
                raise GraphError(f"duplicate vertex id {v.id!r}")
            if v.label in by_label:
                raise GraphError(f"duplicate vertex label {v.label!r}")
            if not v.weight >= 0 or math.isinf(v.weight):
                raise GraphError(f"vertex {v.id!r} has invalid weight {v.weight!r}")
            vs[v.id] = v
            by_label[v.label] = v.id
        arcs_: dict[tuple[str, str], Arc] = {}
        for item in arcs:
            a = _as_arc(item)
            if a.src not in vs or a.dst not in vs:
                raise GraphError(f"arc {a.src!r}->{a.dst!r} references an unknown vertex")
            if (a.src, a.dst) in arcs_:
                raise GraphError(f"parallel arc {a.src!r}->{a.dst!r}")
            if not a.weight >= 0 or math.isinf(a.weight):
                raise GraphError(f"arc {a.src!r}->{a.dst!r} has invalid weight {a.weight!r}")
            arcs_[(a.src, a.dst)] = a

        order = sorted(vs)
        self._vertices = {k: vs[k] for k in order}
        self._arcs = {k: arcs_[k] for k in sorted(arcs_)}
        self._by_label = by_label
        self._index = {k: i for i, k in enumerate(order)}
        succ: dict[str, list[str]] = {k: [] for k in order}
        pred: dict[str, list[str]] = {k: [] for k in order}
        for s, d in self._arcs:
            succ[s].append(d)
            pred[d].append(s)
        self._succ = succ
        self._pred = pred

    # -- basic queries -------------------------------------------------

    @property
    def vertices(self) -> tuple[str, ...]:
        """Vertex ids in canonical (sorted) order."""
        return tuple(self._vertices)

    @property
    def arcs(self) -> tuple[tuple[str, str], ...]:
        return tuple(self._arcs)

    def vertex(self, vid: str) -> Vertex:
        try:
            return self._vertices[vid]
        except KeyError:
            raise GraphError(f"unknown vertex {vid!r}") from None

    def arc(self, src: str, dst: str) -> Arc:
        try:
            return self._arcs[(src, dst)]
        except KeyError:
            raise GraphError(f"no arc {src!r}->{dst!r}") from None

    def vertex_objects(self) -> Iterator[Vertex]:
        return iter(self._vertices.values())

    def arc_objects(self) -> Iterator[Arc]:
        return iter(self._arcs.values())

    def __contains__(self, vid) -> bool:
        return vid in self._vertices

    def __len__(self) -> int:
        return len(self._vertices)

    @property
    def order(self) -> int:
        return len(self._vertices)

    @property
    def size(self) -> int:
        return len(self._arcs)

    def has_arc(self, src: str, dst: str) -> bool:
        return (src, dst) in self._arcs

    def label(self, vid: str) -> str:
        return self.vertex(vid).label

    def weight(self, vid: str) -> float:
        return self.vertex(vid).weight

    def arc_weight(self, src: str, dst: str, default: float | None = None) -> float:
        a = self._arcs.get((src, dst))
        if a is None:
            if default is None:
                raise GraphError(f"no arc {src!r}->{dst!r}")
            return default
        return a.weight

    def by_label(self, label: str) -> str:
        try:
            return self._by_label[label]
        except KeyError:
            raise GraphError(f"no vertex labelled {label!r}") from None

    @property
    def labels(self) -> frozenset[str]:
        return frozenset(self._by_label)

    @property
    def label_map(self) -> Mapping[str, str]:
        """Read-only label -> vertex id mapping."""
        return MappingProxyType(self._by_label)

    def index(self, vid: str) -> int:
        return self._index[vid]

    def successors(self, vid: str) -> tuple[str, ...]:
        return tuple(self._succ[vid])

    def predecessors(self, vid: str) -> tuple[str, ...]:
        return tuple(self._pred[vid])

    def labelled_arcs(self) -> frozenset[tuple[str, str]]:
        """Arcs as ordered label pairs."""
        vs = self._vertices
        return frozenset((vs[s].label, vs[d].label) for s, d in self._arcs)

    def vertex_weights(self) -> np.ndarray:
        return np.array([v.weight for v in self._vertices.values()], dtype=float)

    def adjacency(self, weighted: bool = False) -> np.ndarray:
        """Dense adjacency matrix in canonical vertex order."""
        n = len(self._vertices)
        m = np.zeros((n, n))
        for (s, d), a in self._arcs.items():
            m[self._index[s], self._index[d]] = a.weight if weighted else 1.0
        return m

    # -- derived graphs ------------------------------------------------

    def subgraph(self, vids: Iterable[str]) -> "LabeledDigraph":
        keep = set(vids)
        unknown = keep - self._vertices.keys()
        if unknown:
            raise GraphError(f"unknown vertices {sorted(unknown)!r}")
        return LabeledDigraph(
            (v for k, v in self._vertices.items() if k in keep),
            (a for (s, d), a in self._arcs.items() if s in keep and d in keep),
        )

    def with_vertices(self, extra: Iterable) -> "LabeledDigraph":
        return LabeledDigraph(list(self._vertices.values()) + [_as_vertex(v) for v in extra],
                              self._arcs.values())

    # -- comparison / export -------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, LabeledDigraph):
            return NotImplemented
        return self._vertices == other._vertices and self._arcs == other._arcs

    def __hash__(self):
        return hash((tuple(self._vertices.values()), tuple(self._arcs.values())))

    def __repr__(self) -> str:
        return f"LabeledDigraph(order={self.order}, size={self.size})"

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": v.id, "label": v.label, "weight": v.weight}
                         for v in self._vertices.values()],
            "arcs": [{"src": a.src, "dst": a.dst, "weight": a.weight, "kind": a.kind}
                     for a in self._arcs.values()],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> "LabeledDigraph":
        return cls(data.get("vertices", ()), data.get("arcs", ()))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_json(cls, text: str) -> "LabeledDigraph":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        """Graphviz DOT text; weights become ``weight`` attributes."""
        def q(s):
            return '"' + str(s).replace('"', '\\"') + '"'

        lines = [f"digraph {q(name)} {{"]
        for v in self._vertices.values():
            lines.append(f"  {q(v.id)} [label={q(v.label)}, weight={v.weight:g}];")
        for a in self._arcs.values():
            extra = f", kind={q(a.kind)}" if a.kind else ""
            lines.append(f"  {q(a.src)} -> {q(a.dst)} [weight={a.weight:g}{extra}];")
        lines.append("}")
        return "\n".join(lines) + "\n"
