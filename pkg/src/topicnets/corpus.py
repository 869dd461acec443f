"""Corpus and edit-history ingestion; the text/author multilayer network."""

from __future__ import annotations

import json
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .graph import LabeledDigraph

log = logging.getLogger(__name__)

# Mean co-authorship estimated on a Wikipedia sample; the only externally given constant.
DEFAULT_MEAN_COAUTHORSHIP = 0.0027564072092594585


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class Text:
    id: str
    title: str = ""
    tokens: tuple[str, ...] = ()
    links: tuple[str, ...] = ()
    meta: Mapping = field(default_factory=dict, compare=False)


@dataclass(frozen=True)
class Revision:
    text: str
    author: str
    bytes_added: float


class Corpus:
    """Texts keyed by id. Links to texts outside the corpus are dropped here."""

    def __init__(self, texts: Iterable[Text], name: str = ""):
        self.name = name
        raw: dict[str, Text] = {}
        for t in texts:
            if t.id in raw:
                raise CorpusError(f"duplicate text id {t.id!r}")
            raw[t.id] = t
        self.dropped_links = 0
        clean = {}
        for tid in sorted(raw):
            t = raw[tid]
            links = []
            for y in t.links:
                if y not in raw:
                    self.dropped_links += 1
                elif y not in links:
                    links.append(y)
            clean[tid] = Text(t.id, t.title, tuple(t.tokens), tuple(links), t.meta)
        self._texts = clean
        if self.dropped_links:
            log.info("corpus %s: dropped %d dangling links", name, self.dropped_links)

    def __iter__(self):
        return iter(self._texts.values())

    def __len__(self) -> int:
        return len(self._texts)

    def __contains__(self, tid) -> bool:
        return tid in self._texts

    def __getitem__(self, tid: str) -> Text:
        return self._texts[tid]

    @property
    def ids(self) -> list[str]:
        return list(self._texts)

    def links(self) -> list[tuple[str, str]]:
        return [(t.id, y) for t in self for y in sorted(t.links)]


class EditHistory:
    """Revisions with per (author, text) activity totals."""

    def __init__(self, revisions: Iterable[Revision] = ()):
        self.revisions = tuple(revisions)
        parts: dict[tuple[str, str], list[float]] = defaultdict(list)
        for rev in self.revisions:
            if not rev.bytes_added >= 0 or math.isinf(rev.bytes_added):
                raise CorpusError(f"invalid bytes_added {rev.bytes_added!r} on {rev.text!r}")
            parts[(rev.author, rev.text)].append(float(rev.bytes_added))
        self._act = {k: math.fsum(v) for k, v in sorted(parts.items())}

    def __len__(self) -> int:
        return len(self.revisions)

    @property
    def authors(self) -> list[str]:
        return sorted({a for a, _ in self._act})

    def items(self):
        """``((author, text), act)`` pairs in sorted order, including zero totals."""
        return self._act.items()

    def activity(self, author: str, text: str) -> float:
        return self._act.get((author, text), 0.0)

    def check_against(self, corpus: Corpus) -> None:
        unknown = sorted({x for _, x in self._act if x not in corpus})
        if unknown:
            raise CorpusError(f"revisions reference unknown texts {unknown[:5]!r}")


def activity(h: EditHistory, r: str, x: str) -> float:
    """Bytes added by author ``r`` to text ``x`` summed over revisions."""
    return h.activity(r, x)


def corpus_from_dict(data: Mapping, name: str = "") -> tuple[Corpus, EditHistory]:
    texts = [
        Text(
            str(t["id"]),
            t.get("title", ""),
            tuple(t.get("tokens", ())),
            tuple(str(y) for y in t.get("links", ())),
            t.get("meta", {}) or {},
        )
        for t in data.get("texts", ())
    ]
    corpus = Corpus(texts, name or data.get("name", ""))
    history = EditHistory(
        Revision(str(r["text"]), str(r["author"]), float(r.get("bytes_added", 0.0)))
        for r in data.get("revisions", ())
    )
    history.check_against(corpus)
    return corpus, history


def corpus_to_dict(c: Corpus, h: EditHistory | None = None) -> dict:
    out = {
        "name": c.name,
        "texts": [
            {"id": t.id, "title": t.title, "tokens": list(t.tokens), "links": list(t.links), "meta": dict(t.meta)}
            for t in c
        ],
        "revisions": [],
    }
    if h is not None:
        out["revisions"] = [{"text": r.text, "author": r.author, "bytes_added": r.bytes_added} for r in h.revisions]
    return out


def load_corpus(path: str | Path) -> tuple[Corpus, EditHistory]:
    p = Path(path)
    return corpus_from_dict(json.loads(p.read_text()), name=p.stem)


def build_text_layer(c: Corpus) -> LabeledDigraph:
    """One unit-weight vertex per text and one unit-weight ``hyperlink`` arc per link."""
    return LabeledDigraph(
        ((t.id, t.id, 1.0) for t in c),
        ((x, y, 1.0, "hyperlink") for x, y in c.links()),
    )


def active_authors(c: Corpus, h: EditHistory) -> dict[str, dict[str, float]]:
    """text id -> {author: act} restricted to act > 0, for every text of ``c``."""
    out: dict[str, dict[str, float]] = {t.id: {} for t in c}
    for (a, x), act in h.items():
        if act > 0 and x in out:
            out[x][a] = act
    return out


def build_author_layer(c: Corpus, h: EditHistory) -> LabeledDigraph:
    """Author vertices weighted by total activity; symmetric ``coauthorship`` arcs.

    For every text, each ordered pair of active authors (an author paired
    with itself included) receives ``2 min(act_r, act_s) / total`` and the
    arc weight is the sum over shared texts.
    """
    h.check_against(c)
    totals: dict[str, list[float]] = defaultdict(list)
    for (a, x), act in h.items():
        if x in c:
            totals[a].append(act)
    parts: dict[tuple[str, str], list[float]] = defaultdict(list)
    for x, acts in active_authors(c, h).items():
        if not acts:
            continue
        total = math.fsum(acts.values())
        for r, ar in acts.items():
            for s, as_ in acts.items():
                parts[(r, s)].append(2.0 * min(ar, as_) / total)
    weights = {pair: math.fsum(v) for pair, v in sorted(parts.items())}
    # tiny activities can underflow to zero; such pairs carry no evidence
    return LabeledDigraph(
        ((a, a, math.fsum(v)) for a, v in sorted(totals.items())),
        ((r, s, w, "coauthorship") for (r, s), w in weights.items() if w > 0),
    )


@dataclass(frozen=True)
class ReferenceStats:
    mean_activity: float
    mean_author_count: float
    mean_coauthorship: float = DEFAULT_MEAN_COAUTHORSHIP

    def __post_init__(self):
        for k in ("mean_activity", "mean_author_count", "mean_coauthorship"):
            v = getattr(self, k)
            if not v > 0 or math.isinf(v):
                raise CorpusError(f"{k} must be positive and finite, got {v!r}")

    def to_dict(self) -> dict:
        return {
            "mean_activity": self.mean_activity,
            "mean_author_count": self.mean_author_count,
            "mean_coauthorship": self.mean_coauthorship,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ReferenceStats":
        return cls(
            float(d["mean_activity"]),
            float(d["mean_author_count"]),
            float(d.get("mean_coauthorship", DEFAULT_MEAN_COAUTHORSHIP)),
        )

    @classmethod
    def load(cls, path: str | Path) -> "ReferenceStats":
        return cls.from_dict(json.loads(Path(path).read_text()))


def reference_stats(c: Corpus, h: EditHistory, mean_coauthorship: float = DEFAULT_MEAN_COAUTHORSHIP) -> ReferenceStats:
    """Mean activity per active (author, text) pair and mean active-author count per text."""
    if len(c) == 0:
        raise CorpusError("reference stats need a non-empty corpus")
    acts = [act for (_, x), act in h.items() if act > 0 and x in c]
    if not acts:
        raise CorpusError("reference stats are undefined for an empty edit history")
    counts = [len(v) for v in active_authors(c, h).values()]
    return ReferenceStats(math.fsum(acts) / len(acts), sum(counts) / len(counts), mean_coauthorship)


@dataclass(frozen=True)
class LinguisticMultilayerNetwork:
    corpus: Corpus
    history: EditHistory
    text_layer: LabeledDigraph
    author_layer: LabeledDigraph

    @property
    def authors_of(self) -> dict[str, dict[str, float]]:
        return active_authors(self.corpus, self.history)

    def activity(self, r: str, x: str) -> float:
        return self.history.activity(r, x)


def build_lmn(c: Corpus, h: EditHistory | None = None) -> LinguisticMultilayerNetwork:
    h = h if h is not None else EditHistory()
    return LinguisticMultilayerNetwork(c, h, build_text_layer(c), build_author_layer(c, h))
