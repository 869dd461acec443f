"""Topic network induction.

Every concrete network type is an instantiation of :func:`induce_generic`,
which enumerates evidence terms over a text layer and any number of
generating layers (authors, word types, ...) and folds them with four
caller-supplied combinators:

* ``alpha(topic, z)`` finalises a vertex weight from the summed vertex terms
* ``beta(term)`` weighs one vertex term
* ``gamma(v, w, z)`` finalises an arc weight from the summed arc terms
* ``delta(term)`` weighs one arc term

Sums use :func:`math.fsum`, so results do not depend on enumeration order.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

from .corpus import LinguisticMultilayerNetwork, ReferenceStats, reference_stats
from .graph import Arc, GraphError, LabeledDigraph, Vertex
from .topics import DEFAULT_TOP_M, THETA_MIN, TopicDistribution, TopicScheme, global_mean, top_m_filter

log = logging.getLogger(__name__)

MODES = ("ttn", "atn", "wtn", "generic")

# merge rules for reciprocal arcs when deriving undirected networks
ZETA1: dict[str, Callable[[float, float], float]] = {
    "mean": lambda a, b: (a + b) / 2.0,
    "max": max,
    "min": min,
    "sum": lambda a, b: a + b,
}


class InductionError(ValueError):
    pass


class TopicNetwork(LabeledDigraph):
    """Graph over topic codes (vertex id = label = code) with a mode tag and provenance."""

    __slots__ = ("mode", "level", "provenance", "directed")

    def __init__(self, vertices: Iterable = (), arcs: Iterable = (), mode: str = "generic",
                 level: int = 2, provenance: Mapping | None = None, directed: bool = True):
        super().__init__(vertices, arcs)
        self.mode = mode
        self.level = level
        self.provenance = dict(provenance or {})
        self.directed = directed

    @classmethod
    def wrap(cls, g: LabeledDigraph, **kw) -> "TopicNetwork":
        return cls(g.vertex_objects(), g.arc_objects(), **kw)

    def to_dict(self) -> dict:
        d = {"mode": self.mode, "level": self.level, "directed": self.directed,
             "provenance": self.provenance}
        d.update(super().to_dict())
        return d

    @classmethod
    def from_dict(cls, data: Mapping) -> "TopicNetwork":
        return cls(data.get("vertices", ()), data.get("arcs", ()), data.get("mode", "generic"),
                   int(data.get("level", 2)), data.get("provenance"), bool(data.get("directed", True)))

    @classmethod
    def from_json(cls, text: str) -> "TopicNetwork":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"TopicNetwork(mode={self.mode!r}, order={self.order}, size={self.size})"


# -- evidence terms ------------------------------------------------------


@dataclass(frozen=True)
class VertexTerm:
    text: str
    topic: str
    membership: float
    units: tuple[str, ...] = ()
    margins: tuple[float, ...] = ()


@dataclass(frozen=True)
class ArcTerm:
    source: VertexTerm
    target: VertexTerm
    text_link: float
    unit_links: tuple[float, ...] = ()


@dataclass(frozen=True)
class GeneratingLayer:
    """An extra layer: its graph plus the margin weights linking its units to texts."""

    name: str
    graph: LabeledDigraph
    members: Mapping[str, Mapping[str, float]]  # text id -> {unit: margin}

    def units_on(self, text: str) -> list[tuple[str, float]]:
        return [(u, m) for u, m in sorted(self.members.get(text, {}).items()) if m > 0]


def _checked(value: float, what: str) -> float:
    if not value >= 0 or math.isinf(value):
        raise InductionError(f"{what} returned {value!r}; weights must be finite and non-negative")
    return float(value)


def induce_generic(
    memberships: Mapping[str, Mapping[str, float]],
    text_layer: LabeledDigraph,
    layers: Sequence[GeneratingLayer],
    alpha: Callable[[str, float], float],
    beta: Callable[[VertexTerm], float],
    gamma: Callable[[str, str, float], float],
    delta: Callable[[ArcTerm], float],
    mode: str = "generic",
    level: int = 2,
    provenance: Mapping | None = None,
) -> TopicNetwork:
    """Evaluate vertex and arc sums over all supported evidence terms.

    Vertex terms range over texts ``x``, topics with positive membership in
    ``x`` and one unit per generating layer attached to ``x``. Arc terms range
    over text arcs ``(x, y)``, topic pairs and unit pairs ``(r_i, s_i)`` that
    are arcs of layer ``i``. Vertices and arcs of weight 0 are omitted.
    """
    units = {x: [layer.units_on(x) for layer in layers] for x in text_layer.vertices}

    def combos(x):
        return itertools.product(*units[x]) if layers else [()]

    def topics(x):
        return [(t, s) for t, s in sorted(memberships.get(x, {}).items()) if s > THETA_MIN]

    vparts: dict[str, list[float]] = {}
    for x in text_layer.vertices:
        for t, s in topics(x):
            for combo in combos(x):
                term = VertexTerm(x, t, s, tuple(u for u, _ in combo), tuple(m for _, m in combo))
                b = _checked(beta(term), "beta")
                if b > 0:
                    vparts.setdefault(t, []).append(b)
    mu = {t: _checked(alpha(t, math.fsum(v)), "alpha") for t, v in sorted(vparts.items())}
    mu = {t: w for t, w in mu.items() if w > 0}

    aparts: dict[tuple[str, str], list[float]] = {}
    for arc in text_layer.arc_objects():
        x, y = arc.src, arc.dst
        tx, ty = topics(x), topics(y)
        if not tx or not ty:
            continue
        pairs = []
        for cx in combos(x):
            for cy in combos(y):
                links = []
                for i, layer in enumerate(layers):
                    r, s = cx[i][0], cy[i][0]
                    if not layer.graph.has_arc(r, s):
                        break
                    links.append(layer.graph.arc_weight(r, s))
                else:
                    pairs.append((cx, cy, tuple(links)))
        for v, sv in tx:
            for w, sw in ty:
                for cx, cy, links in pairs:
                    term = ArcTerm(
                        VertexTerm(x, v, sv, tuple(u for u, _ in cx), tuple(m for _, m in cx)),
                        VertexTerm(y, w, sw, tuple(u for u, _ in cy), tuple(m for _, m in cy)),
                        arc.weight,
                        links,
                    )
                    d = _checked(delta(term), "delta")
                    if d > 0:
                        aparts.setdefault((v, w), []).append(d)
    arcs = []
    for (v, w), parts in sorted(aparts.items()):
        nu = _checked(gamma(v, w, math.fsum(parts)), "gamma")
        if nu <= 0:
            continue
        if v not in mu or w not in mu:
            log.debug("arc %s->%s dropped: endpoint has zero weight", v, w)
            continue
        arcs.append(Arc(v, w, nu, mode))
    return TopicNetwork(
        (Vertex(t, t, w) for t, w in mu.items()), arcs, mode=mode, level=level, provenance=provenance
    )


# -- configuration and setting ------------------------------------------


def scale(a: float, b: float) -> float:
    """``2a / (a + b)``: 1 at ``a == b``, below 1 under and above 1 over the reference."""
    return 2.0 * a / (a + b)


@dataclass(frozen=True)
class InductionConfig:
    m: int = DEFAULT_TOP_M
    p: float = 2.0
    reference: ReferenceStats | None = None
    zeta: str = "mean"

    def __post_init__(self):
        if self.m < 1:
            raise InductionError("m must be at least 1")
        if not self.p > 1:
            raise InductionError("p must exceed 1")
        if self.zeta not in ZETA1:
            raise InductionError(f"unknown zeta mode {self.zeta!r}")

    def to_dict(self) -> dict:
        return {"m": self.m, "p": self.p, "zeta": self.zeta,
                "reference": self.reference.to_dict() if self.reference else None}

    def digest(self, **extra) -> str:
        payload = json.dumps({**self.to_dict(), **extra}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass
class DefinitionalSetting:
    """Scheme, classifier and multilayer network a topic network is derived from.

    The classifier either exposes ``classify_text(text_id)`` or
    ``classify(tokens)``; its ``level`` fixes the topic level of the result.
    """

    scheme: TopicScheme
    classifier: object
    lmn: LinguisticMultilayerNetwork
    corpus_id: str = ""

    @property
    def level(self) -> int:
        return int(getattr(self.classifier, "level", 2))

    @cached_property
    def memberships(self) -> dict[str, TopicDistribution]:
        out: dict[str, TopicDistribution] = {}
        for t in self.lmn.corpus:
            try:
                if hasattr(self.classifier, "classify_text"):
                    d = self.classifier.classify_text(t.id)
                else:
                    d = self.classifier.classify(t.tokens)
            except Exception as exc:  # a failing text contributes nothing
                log.warning("classification of %s failed: %s", t.id, exc)
                d = {}
            unknown = [c for c in d if c not in self.scheme]
            if unknown:
                raise InductionError(f"classifier returned codes outside the scheme: {unknown[:5]!r}")
            out[t.id] = {c: float(s) for c, s in sorted(d.items()) if s > THETA_MIN}
        return out

    @cached_property
    def theta_bar(self) -> float:
        return global_mean(self.memberships.values())

    def filtered(self, m: int) -> dict[str, TopicDistribution]:
        """Memberships after the top-m / above-mean filter."""
        tb = self.theta_bar
        return {x: top_m_filter(d, m, tb) for x, d in self.memberships.items()}

    def provenance(self, mode: str, cfg: InductionConfig) -> dict:
        return {"corpus": self.corpus_id or self.lmn.corpus.name, "mode": mode, "level": self.level,
                "config": cfg.digest(mode=mode, level=self.level, theta_bar=self.theta_bar)}


def _identity_alpha(topic, z):
    return z


def _identity_gamma(v, w, z):
    return z


# -- TTN -------------------------------------------------------------------


def ttn_combinators(b1: Mapping[str, Mapping[str, float]]):
    def beta(term: VertexTerm) -> float:
        return b1[term.text].get(term.topic, 0.0)

    def delta(term: ArcTerm) -> float:
        return b1[term.source.text].get(term.source.topic, 0.0) * b1[term.target.text].get(term.target.topic, 0.0)

    return _identity_alpha, beta, _identity_gamma, delta


def induce_ttn(s: DefinitionalSetting, cfg: InductionConfig = InductionConfig()) -> TopicNetwork:
    """Text topic network from filtered memberships and hyperlinks."""
    if s.lmn.text_layer.order == 0:
        raise InductionError("text layer is empty")
    b1 = s.filtered(cfg.m)
    a, b, g, d = ttn_combinators(b1)
    return induce_generic(s.memberships, s.lmn.text_layer, [], a, b, g, d,
                          mode="ttn", level=s.level, provenance=s.provenance("ttn", cfg))


# -- ATN -------------------------------------------------------------------


def _atn_reference(s: DefinitionalSetting, cfg: InductionConfig) -> ReferenceStats:
    return cfg.reference or reference_stats(s.lmn.corpus, s.lmn.history)


def atn_combinators(b1, authors_of: Mapping[str, Mapping[str, float]], ref: ReferenceStats, p: float):
    totals = {x: math.fsum(acts.values()) for x, acts in authors_of.items()}
    omega_x = {x: scale(len(acts), ref.mean_author_count) for x, acts in authors_of.items()}
    omega_v: dict[str, float] = {}
    contrib: dict[str, list[float]] = {}
    for x, d in sorted(b1.items()):
        for t, val in d.items():
            if val > 0:
                contrib.setdefault(t, []).append(omega_x.get(x, 0.0))
    for t, ws in contrib.items():
        omega_v[t] = math.fsum(ws) / len(ws)
    abar = ref.mean_activity

    def beta2(text: str, topic: str, act: float) -> float:
        base = b1[text].get(topic, 0.0)
        if base == 0 or act <= 0:
            return 0.0
        share = act / totals[text]
        if abs(act - abar) <= 1e-12 * abar:
            return base * share
        return base * share * (p if act > abar else 1.0 / p)

    def alpha(topic, z):
        return omega_v.get(topic, 0.0) * z

    def beta(term: VertexTerm) -> float:
        return beta2(term.text, term.topic, term.margins[0])

    def delta(term: ArcTerm) -> float:
        nu_tilde = scale(term.unit_links[0], ref.mean_coauthorship)
        return (nu_tilde * beta2(term.source.text, term.source.topic, term.source.margins[0])
                * beta2(term.target.text, term.target.topic, term.target.margins[0]))

    return alpha, beta, _identity_gamma, delta


def author_generating_layer(lmn: LinguisticMultilayerNetwork) -> GeneratingLayer:
    return GeneratingLayer("authors", lmn.author_layer, lmn.authors_of)


def induce_atn(s: DefinitionalSetting, ttn: TopicNetwork | None = None,
               cfg: InductionConfig = InductionConfig()) -> TopicNetwork:
    """Author topic network: TTN evidence re-weighted by activity and co-authorship."""
    if len(s.lmn.history) == 0:
        raise InductionError("author topic networks need an edit history")
    b1 = s.filtered(cfg.m)
    layer = author_generating_layer(s.lmn)
    for x, d in b1.items():
        if d and not layer.units_on(x):
            log.warning("text %s contributes topics but has no active author", x)
    ref = _atn_reference(s, cfg)
    a, b, g, d = atn_combinators(b1, layer.members, ref, cfg.p)
    prov = s.provenance("atn", cfg)
    prov["reference"] = ref.to_dict()
    atn = induce_generic(s.memberships, s.lmn.text_layer, [layer], a, b, g, d,
                         mode="atn", level=s.level, provenance=prov)
    if ttn is not None and set(atn.vertices) != set(ttn.vertices):
        log.warning("ATN vertex set differs from the TTN's (%d vs %d)", atn.order, ttn.order)
    return atn


# -- WTN -------------------------------------------------------------------


def lexicon_generating_layer(lmn: LinguisticMultilayerNetwork) -> GeneratingLayer:
    """Token types as units: reflexive unit arcs of weight 1, margin 1 per occurring type."""
    members = {t.id: {tok: 1.0 for tok in set(t.tokens)} for t in lmn.corpus}
    types = sorted({tok for d in members.values() for tok in d})
    g = LabeledDigraph(((w, w, 1.0) for w in types), ((w, w, 1.0, "identity") for w in types))
    return GeneratingLayer("lexicon", g, members)


def wtn_combinators(b1, members: Mapping[str, Mapping[str, float]]):
    ntypes = {x: len(m) for x, m in members.items()}

    def beta(term: VertexTerm) -> float:
        # spread the text's filtered membership evenly over its types
        return b1[term.text].get(term.topic, 0.0) / ntypes[term.text]

    def delta(term: ArcTerm) -> float:
        return (b1[term.source.text].get(term.source.topic, 0.0)
                * b1[term.target.text].get(term.target.topic, 0.0)
                * term.source.margins[0] * term.target.margins[0]
                * (term.unit_links[0] + term.text_link))

    return _identity_alpha, beta, _identity_gamma, delta


def induce_wtn(s: DefinitionalSetting, ttn: TopicNetwork | None = None,
               cfg: InductionConfig = InductionConfig()) -> TopicNetwork:
    """Word topic network: linked texts reinforce topic arcs per shared token type."""
    b1 = s.filtered(cfg.m)
    layer = lexicon_generating_layer(s.lmn)
    a, b, g, d = wtn_combinators(b1, layer.members)
    return induce_generic(s.memberships, s.lmn.text_layer, [layer], a, b, g, d,
                          mode="wtn", level=s.level, provenance=s.provenance("wtn", cfg))


def induce(s: DefinitionalSetting, mode: str, cfg: InductionConfig = InductionConfig()) -> TopicNetwork:
    if mode == "ttn":
        return induce_ttn(s, cfg)
    if mode == "atn":
        return induce_atn(s, None, cfg)
    if mode == "wtn":
        return induce_wtn(s, None, cfg)
    raise InductionError(f"unknown mode {mode!r}")


# -- undirected derivation and multiplex assembly ----------------------------

def to_undirected(t: LabeledDigraph, zeta1: Callable[[float, float], float] | str = "mean",
                  zeta2: Callable[[float], float] = lambda a: a) -> TopicNetwork:
    """Merge reciprocal arcs into one edge, stored as a symmetric arc pair."""
    z1 = ZETA1[zeta1] if isinstance(zeta1, str) else zeta1
    edges: dict[tuple[str, str], float] = {}
    for a in t.arc_objects():
        key = (min(a.src, a.dst), max(a.src, a.dst))
        if key in edges:
            continue
        if a.src != a.dst and t.has_arc(a.dst, a.src):
            w = z1(a.weight, t.arc_weight(a.dst, a.src))
        else:
            w = zeta2(a.weight)
        edges[key] = w
    arcs = []
    for (u, v), w in sorted(edges.items()):
        kind = "undirected"
        arcs.append(Arc(u, v, w, kind))
        if u != v:
            arcs.append(Arc(v, u, w, kind))
    kw = {}
    if isinstance(t, TopicNetwork):
        kw = {"mode": t.mode, "level": t.level, "provenance": {**t.provenance, "undirected": True}}
    return TopicNetwork(t.vertex_objects(), arcs, directed=False, **kw)


@dataclass
class MultiplexTopicNetwork:
    layers: list[TopicNetwork]
    margins: dict[tuple[int, int], list[tuple[str, str]]] = field(default_factory=dict)

    @property
    def margin_count(self) -> int:
        return sum(len(v) for v in self.margins.values())

    def to_dict(self) -> dict:
        return {
            "layers": [layer.to_dict() for layer in self.layers],
            "margins": [{"from": i, "to": j, "pairs": [list(p) for p in pairs]}
                        for (i, j), pairs in sorted(self.margins.items())],
        }


def build_mtn(layers: Sequence[TopicNetwork]) -> MultiplexTopicNetwork:
    """Stack topic networks and join equally labelled vertices of every ordered layer pair."""
    levels = {getattr(layer, "level", None) for layer in layers}
    if len(levels) > 1:
        raise GraphError(f"layers use different topic levels {sorted(levels, key=str)!r}")
    margins = {}
    for i, li in enumerate(layers):
        for j, lj in enumerate(layers):
            if i == j:
                continue
            shared = sorted(li.labels & lj.labels)
            margins[(i, j)] = [(li.by_label(lab), lj.by_label(lab)) for lab in shared]
    return MultiplexTopicNetwork(list(layers), margins)
