import numpy as np
import pytest
from hypothesis import strategies as st

from topicnets.corpus import build_lmn, corpus_from_dict
from topicnets.graph import LabeledDigraph
from topicnets.induction import DefinitionalSetting, TopicNetwork
from topicnets.topics import FixedClassifier, TopicNode, TopicScheme

TOY = {
    "texts": [
        {"id": "x1", "tokens": ["w1", "w2", "w3"], "links": ["x2"]},
        {"id": "x2", "tokens": ["w1", "w2", "w4"]},
        {"id": "x3", "tokens": ["w5", "w6", "w7"], "links": ["x4"]},
        {"id": "x4", "tokens": ["w4", "w8", "w9"]},
    ],
    "revisions": [
        {"text": x, "author": a, "bytes_added": 1}
        for x, a in [("x1", "a1"), ("x1", "a2"), ("x2", "a1"), ("x2", "a2"),
                     ("x3", "a3"), ("x3", "a4"), ("x4", "a3"), ("x4", "a4")]
    ],
}
TOY_THETA = {"x1": {"t1": 1.0}, "x2": {"t2": 1.0}, "x3": {"t3": 1.0}, "x4": {"t3": 1.0}}


def toy_scheme():
    return TopicScheme([TopicNode("t", "topics", 1), TopicNode("t1", "t1", 2, "t"),
                        TopicNode("t2", "t2", 2, "t"), TopicNode("t3", "t3", 2, "t")])


@pytest.fixture
def toy_setting():
    c, h = corpus_from_dict(TOY, "toy")
    return DefinitionalSetting(toy_scheme(), FixedClassifier(TOY_THETA), build_lmn(c, h), "toy")


@st.composite
def digraphs(draw, max_n=8, weighted=True, loops=False, min_n=1):
    n = draw(st.integers(min_n, max_n))
    ids = [f"v{i}" for i in range(n)]
    pairs = [(a, b) for a in ids for b in ids if loops or a != b]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    w = st.floats(0.1, 10.0, allow_nan=False) if weighted else st.just(1.0)
    vs = [(v, v, draw(w)) for v in ids]
    arcs = [(a, b, draw(w)) for a, b in chosen]
    return LabeledDigraph(vs, arcs)


@st.composite
def topic_networks(draw, pool=tuple(f"t{i}" for i in range(10)), max_n=7, min_n=0):
    labels = draw(st.lists(st.sampled_from(pool), unique=True, min_size=min_n, max_size=max_n))
    pairs = [(a, b) for a in labels for b in labels]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    w = st.floats(0.1, 10.0, allow_nan=False)
    return TopicNetwork([(t, t, draw(w)) for t in labels], [(a, b, draw(w)) for a, b in chosen])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
