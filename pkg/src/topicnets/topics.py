"""Topic schemes and text classifiers producing sparse topic distributions."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Protocol, Sequence

TopicDistribution = dict[str, float]
Lexicon = Mapping[str, tuple[str, float]]

THETA_MIN = 0.0
DEFAULT_TOP_M = 5


class SchemeError(ValueError):
    pass


@dataclass(frozen=True)
class TopicNode:
    code: str
    label: str
    level: int
    parent: str | None = None


class TopicScheme:
    """Tree of topic codes with levels 1..3."""

    def __init__(self, nodes: Iterable[TopicNode], name: str = ""):
        self.name = name
        self._nodes: dict[str, TopicNode] = {}
        for n in nodes:
            if n.code in self._nodes:
                raise SchemeError(f"duplicate topic code {n.code!r}")
            self._nodes[n.code] = n
        for n in self._nodes.values():
            if n.parent is None:
                if n.level != 1:
                    raise SchemeError(f"root {n.code!r} must be at level 1")
            else:
                p = self._nodes.get(n.parent)
                if p is None:
                    raise SchemeError(f"{n.code!r} has unknown parent {n.parent!r}")
                if n.level != p.level + 1:
                    raise SchemeError(f"{n.code!r}: level must be parent level + 1")
            if not 1 <= n.level <= 3:
                raise SchemeError(f"{n.code!r}: level {n.level} outside 1..3")

    @classmethod
    def from_dict(cls, data) -> "TopicScheme":
        """Build from nested ``{code, label, children}`` records.

        ``data`` may be a list of top classes or a mapping with a
        ``classes`` list (and optional ``name``).
        """
        name = ""
        if isinstance(data, Mapping):
            name = data.get("name", "")
            data = data["classes"]
        nodes: list[TopicNode] = []

        def walk(rec, level, parent):
            nodes.append(TopicNode(str(rec["code"]), rec.get("label", str(rec["code"])), level, parent))
            for child in rec.get("children", ()):
                walk(child, level + 1, str(rec["code"]))

        for rec in data:
            walk(rec, 1, None)
        return cls(nodes, name)

    @classmethod
    def load(cls, path: str | Path) -> "TopicScheme":
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        def rec(code):
            n = self._nodes[code]
            return {"code": n.code, "label": n.label, "children": [rec(c) for c in self.children(code)]}

        return {"name": self.name, "classes": [rec(c) for c in self.codes(1)]}

    def __contains__(self, code) -> bool:
        return code in self._nodes

    def __len__(self) -> int:
        return len(self._nodes)

    def node(self, code: str) -> TopicNode:
        try:
            return self._nodes[code]
        except KeyError:
            raise SchemeError(f"unknown topic code {code!r}") from None

    def level(self, code: str) -> int:
        return self.node(code).level

    def label(self, code: str) -> str:
        return self.node(code).label

    def parent(self, code: str) -> str | None:
        return self.node(code).parent

    def children(self, code: str) -> list[str]:
        return sorted(c for c, n in self._nodes.items() if n.parent == code)

    def codes(self, level: int | None = None) -> list[str]:
        return sorted(c for c, n in self._nodes.items() if level is None or n.level == level)

    def ancestor(self, code: str, level: int) -> str:
        """The ancestor of ``code`` at ``level`` (``code`` itself at its own level)."""
        n = self.node(code)
        if level > n.level:
            raise SchemeError(f"{code!r} is at level {n.level}, cannot lift to level {level}")
        while n.level > level:
            n = self._nodes[n.parent]
        return n.code

    def class_map(self, level: int) -> dict[str, str]:
        """Map every code at or below ``level`` to its ancestor at ``level``."""
        return {c: self.ancestor(c, level) for c, n in self._nodes.items() if n.level >= level}


def sample_scheme() -> TopicScheme:
    """Bundled three-level decimal scheme (10 / 40 / 80 classes)."""
    text = resources.files("topicnets").joinpath("data/sample_scheme.json").read_text()
    return TopicScheme.from_dict(json.loads(text))


def read_lexicon(lines: Iterable[str]) -> dict[str, tuple[str, float]]:
    lex: dict[str, tuple[str, float]] = {}
    rows = csv.reader((ln for ln in lines if ln.strip() and not ln.startswith("#")), delimiter="\t")
    for row in rows:
        if len(row) < 2:
            raise ValueError(f"malformed lexicon row {row!r}")
        weight = float(row[2]) if len(row) > 2 and row[2] else 1.0
        if not weight >= 0 or math.isinf(weight):
            raise ValueError(f"invalid lexicon weight for {row[0]!r}")
        lex[row[0]] = (row[1], weight)
    return lex


def load_lexicon(path: str | Path) -> dict[str, tuple[str, float]]:
    with open(path, newline="") as fh:
        return read_lexicon(fh)


def sample_lexicon() -> dict[str, tuple[str, float]]:
    text = resources.files("topicnets").joinpath("data/sample_lexicon.tsv").read_text()
    return read_lexicon(text.splitlines())


def _max_normalise(scores: Mapping[str, float]) -> TopicDistribution:
    top = max(scores.values(), default=0.0)
    if top <= 0:
        return {}
    return {t: s / top for t, s in sorted(scores.items()) if s / top > THETA_MIN}


def lexicon_classify(tokens: Sequence[str], lexicon: Lexicon) -> TopicDistribution:
    """Sum lexicon weights per topic and scale so the best topic scores 1."""
    if not lexicon:
        raise ValueError("lexicon is empty")
    scores: dict[str, float] = {}
    for tok in tokens:
        hit = lexicon.get(tok)
        if hit is not None:
            code, w = hit
            scores[code] = scores.get(code, 0.0) + w
    return _max_normalise(scores)


class Classifier(Protocol):
    level: int

    def classify(self, tokens: Sequence[str]) -> TopicDistribution: ...


class ReverseClassifier(Protocol):
    """Prototypicality of a text for a topic. Declared for extensions; no implementation ships."""

    def prototypicality(self, topic: str, tokens: Sequence[str]) -> float: ...


class LexiconClassifier:
    """Lexicon classifier whose hits are lifted to one level of a scheme.

    Stateless after construction, so concurrent ``classify`` calls are safe.
    """

    def __init__(self, scheme: TopicScheme, lexicon: Lexicon, level: int = 2):
        if not lexicon:
            raise ValueError("lexicon is empty")
        self.scheme = scheme
        self.level = level
        lifted: dict[str, tuple[str, float]] = {}
        for tok, (code, w) in lexicon.items():
            lifted[tok] = (scheme.ancestor(code, level), w)
        self._lexicon = lifted

    def classify(self, tokens: Sequence[str]) -> TopicDistribution:
        return lexicon_classify(tokens, self._lexicon)


class FixedClassifier:
    """Looks up precomputed distributions by text id; used for hand-made examples."""

    def __init__(self, table: Mapping[str, Mapping[str, float]], level: int = 2):
        self.level = level
        self._table = {k: dict(v) for k, v in table.items()}

    @classmethod
    def load(cls, path: str | Path, level: int = 2) -> "FixedClassifier":
        """Read ``{text_id: {code: score}}`` from JSON."""
        return cls(json.loads(Path(path).read_text()), level)

    def classify_text(self, text_id: str) -> TopicDistribution:
        return {t: s for t, s in sorted(self._table.get(text_id, {}).items()) if s > THETA_MIN}


def top_m_filter(d: Mapping[str, float], m: int = DEFAULT_TOP_M, global_mean: float = 0.0) -> TopicDistribution:
    """Keep the ``m`` best scores that also reach ``global_mean``; ties go to the smaller code."""
    if m < 1:
        raise ValueError("m must be at least 1")
    ranked = sorted(d.items(), key=lambda kv: (-kv[1], kv[0]))[:m]
    return {t: s for t, s in sorted(ranked) if s >= global_mean}


def global_mean(distributions: Iterable[Mapping[str, float]]) -> float:
    """Mean of all positive membership values pooled over the corpus (0 if none)."""
    vals = [s for d in distributions for s in d.values() if s > THETA_MIN]
    return math.fsum(vals) / len(vals) if vals else 0.0
