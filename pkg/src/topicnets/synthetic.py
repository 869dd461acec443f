"""Seeded generators for test corpora and random networks."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

import numpy as np

from .corpus import Corpus, EditHistory, ReferenceStats, Revision, Text, corpus_from_dict
from .graph import LabeledDigraph
from .induction import TopicNetwork
from .topics import FixedClassifier, TopicScheme, sample_lexicon, sample_scheme


def toy_fixture() -> tuple[Corpus, EditHistory, TopicScheme, FixedClassifier]:
    """Four linked texts by two author pairs over three topics, with fixed memberships."""
    data = resources.files("topicnets").joinpath("data")
    c, h = corpus_from_dict(json.loads(data.joinpath("toy_corpus.json").read_text()), "toy")
    scheme = TopicScheme.from_dict(json.loads(data.joinpath("toy_scheme.json").read_text()))
    table = json.loads(data.joinpath("toy_classifications.json").read_text())
    return c, h, scheme, FixedClassifier(table, 2)


def random_digraph(rng: np.random.Generator, n: int, p: float, weighted: bool = True,
                   loops: bool = False, labels: list[str] | None = None) -> LabeledDigraph:
    """G(n, p) digraph with positive random weights; labels default to ``v0..``."""
    labels = labels or [f"v{i}" for i in range(n)]
    ids = [f"n{i:03d}" for i in range(n)]
    vs = [(ids[i], labels[i], float(rng.uniform(0.1, 10.0)) if weighted else 1.0) for i in range(n)]
    arcs = []
    for i in range(n):
        for j in range(n):
            if (i != j or loops) and rng.random() < p:
                arcs.append((ids[i], ids[j], float(rng.uniform(0.1, 10.0)) if weighted else 1.0))
    return LabeledDigraph(vs, arcs)


def random_topic_network(rng: np.random.Generator, pool: list[str], n_min: int = 0, n_max: int = 10,
                         p: float | None = None, loops: bool = True) -> TopicNetwork:
    """Random topic network over a random subset of ``pool`` (vertex id = label)."""
    n = int(rng.integers(n_min, min(n_max, len(pool)) + 1))
    labels = sorted(rng.choice(pool, size=n, replace=False).tolist()) if n else []
    dens = float(rng.uniform(0.05, 0.6)) if p is None else p
    vs = [(t, t, float(rng.uniform(0.1, 10.0))) for t in labels]
    arcs = [(a, b, float(rng.uniform(0.1, 10.0))) for a in labels for b in labels
            if (a != b or loops) and rng.random() < dens]
    return TopicNetwork(vs, arcs, mode="generic")


# -- calibration corpus -----------------------------------------------------


@dataclass
class CalibrationCase:
    corpus: Corpus
    history: EditHistory
    classifier: FixedClassifier
    scheme: TopicScheme
    reference: ReferenceStats


def calibration_corpus(n_texts: int = 12, n_authors: int = 3, act: float = 7.0, n_topics: int = 6,
                       link_p: float = 0.25, seed: int = 0) -> CalibrationCase:
    """Every text written by the same ``n_authors`` authors, each adding ``act`` bytes.

    The returned reference stats sit exactly at this corpus's averages, with
    the mean co-authorship equal to the (constant) pairwise co-authorship
    ``2 n_texts / n_authors``.
    """
    rng = np.random.default_rng(seed)
    scheme = sample_scheme()
    topics = scheme.codes(2)[:n_topics]
    ids = [f"x{i:03d}" for i in range(n_texts)]
    texts, table = [], {}
    for x in ids:
        links = [y for y in ids if y != x and rng.random() < link_p]
        texts.append(Text(x, x, (), tuple(links)))
        k = int(rng.integers(1, 4))
        chosen = rng.choice(topics, size=k, replace=False)
        table[x] = {str(t): float(rng.choice([0.25, 0.5, 0.75, 1.0])) for t in chosen}
        table[x][str(chosen[0])] = 1.0
    authors = [f"a{j}" for j in range(n_authors)]
    revs = []
    for x in ids:
        for a in authors:
            # split the activity over two revisions
            revs += [Revision(x, a, act * 0.5), Revision(x, a, act * 0.5)]
    ref = ReferenceStats(act, float(n_authors), 2.0 * n_texts / n_authors)
    return CalibrationCase(Corpus(texts, "calibration"), EditHistory(revs), FixedClassifier(table, 2), scheme, ref)


# -- genre corpora ------------------------------------------------------------


@dataclass
class GenreCorpus:
    id: str
    genre: str
    corpus: Corpus
    history: EditHistory


def _tokens_by_topic(scheme: TopicScheme, level: int = 2) -> dict[str, list[str]]:
    out: dict[str, list[str]] = {}
    for tok, (code, _w) in sorted(sample_lexicon().items()):
        out.setdefault(scheme.ancestor(code, level), []).append(tok)
    return out


def genre_topics(n_topics: int = 12) -> list[str]:
    return sample_scheme().codes(2)[:n_topics]


def genre_corpus(genre: int, cid: str, rng: np.random.Generator, cycle: list[str], n_texts: int = 50,
                 out_links: int = 3, p_genre_link: float = 0.85, n_authors: int = 25) -> GenreCorpus:
    """One corpus whose links follow the genre's topic cycle.

    Every text has a primary topic (uniform over the topics), a secondary
    topic adjacent to it on the cycle and a weak noise topic, realised as
    lexicon tokens. A link targets a text whose primary topic neighbours the
    source's primary topic with probability ``p_genre_link``.
    """
    scheme = sample_scheme()
    vocab = _tokens_by_topic(scheme)
    k = len(cycle)
    pos = {t: i for i, t in enumerate(cycle)}
    primaries = [cycle[int(rng.integers(k))] for _ in range(n_texts)]
    ids = [f"{cid}-t{i:03d}" for i in range(n_texts)]
    by_primary: dict[str, list[int]] = {}
    for i, t in enumerate(primaries):
        by_primary.setdefault(t, []).append(i)

    texts = []
    for i, p in enumerate(primaries):
        nb = [cycle[(pos[p] - 1) % k], cycle[(pos[p] + 1) % k]]
        sec = nb[int(rng.integers(2))]
        others = [t for t in cycle if t not in (p, sec)]
        noise = others[int(rng.integers(len(others)))]
        toks = list(rng.choice(vocab[p], size=6))
        toks += list(rng.choice(vocab[sec], size=int(rng.integers(3, 5))))
        toks += list(rng.choice(vocab[noise], size=1))
        toks += [f"filler{int(rng.integers(40))}" for _ in range(5)]
        links = set()
        for _ in range(out_links):
            if rng.random() < p_genre_link:
                cands = [j for t in nb for j in by_primary.get(t, []) if j != i]
            else:
                cands = [j for j in range(n_texts) if j != i]
            if cands:
                links.add(ids[cands[int(rng.integers(len(cands)))]])
        texts.append(Text(ids[i], ids[i], tuple(str(t) for t in toks), tuple(sorted(links)),
                          {"primary": p, "secondary": sec, "noise": noise}))

    authors = [f"{cid}-u{j:02d}" for j in range(n_authors)]
    revs = []
    for x in ids:
        for a in rng.choice(authors, size=int(rng.integers(1, 5)), replace=False):
            for _ in range(int(rng.integers(1, 3))):
                revs.append(Revision(x, str(a), float(np.round(rng.lognormal(5.0, 1.0), 1))))
    return GenreCorpus(cid, f"genre{genre}", Corpus(texts, cid), EditHistory(revs))


def synthetic_genres(n_genres: int = 3, per_genre: int = 10, n_texts: int = 50, n_topics: int = 12,
                     seed: int = 0, **kw) -> list[GenreCorpus]:
    """``n_genres`` x ``per_genre`` corpora; genres differ in the topic cycle their links follow."""
    rng = np.random.default_rng(seed)
    topics = genre_topics(n_topics)
    cycles = [list(rng.permutation(topics)) for _ in range(n_genres)]
    out = []
    for g in range(n_genres):
        for c in range(per_genre):
            out.append(genre_corpus(g, f"g{g}c{c:02d}", rng, [str(t) for t in cycles[g]], n_texts, **kw))
    return out
