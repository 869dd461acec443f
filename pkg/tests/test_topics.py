import pytest
from hypothesis import given
from hypothesis import strategies as st

from topicnets.topics import (FixedClassifier, LexiconClassifier, SchemeError, TopicNode, TopicScheme,
                              global_mean, lexicon_classify, read_lexicon, sample_lexicon, sample_scheme,
                              top_m_filter)

LEX = {"a": ("t", 1.0), "b": ("t", 1.0), "c": ("u", 1.0)}
scores = st.floats(0.01, 1.0, allow_nan=False)
dists = st.dictionaries(st.sampled_from([f"c{i}" for i in range(12)]), scores, max_size=12)


class TestScheme:
    def test_sample_sizes(self):
        s = sample_scheme()
        assert len(s.codes(1)) == 10 and len(s.codes(2)) == 40 and len(s.codes(3)) == 80

    def test_levels_follow_parents(self):
        s = sample_scheme()
        for c in s.codes():
            p = s.parent(c)
            assert (p is None and s.level(c) == 1) or s.level(c) == s.level(p) + 1

    def test_ancestor_and_class_map(self):
        s = sample_scheme()
        leaf = s.codes(3)[0]
        mid = s.parent(leaf)
        assert s.ancestor(leaf, 2) == mid and s.ancestor(leaf, 3) == leaf
        assert s.class_map(2)[leaf] == mid
        with pytest.raises(SchemeError):
            s.ancestor(mid, 3)

    def test_roundtrip(self):
        s = sample_scheme()
        assert TopicScheme.from_dict(s.to_dict()).codes() == s.codes()

    def test_invalid(self):
        with pytest.raises(SchemeError):
            TopicScheme([TopicNode("a", "a", 1), TopicNode("a", "b", 1)])
        with pytest.raises(SchemeError):
            TopicScheme([TopicNode("a", "a", 1), TopicNode("b", "b", 3, "a")])
        with pytest.raises(SchemeError):
            TopicScheme([TopicNode("b", "b", 2, "zz")])


class TestLexiconClassify:
    def test_single_topic(self):
        assert lexicon_classify(["a", "b", "a"], LEX) == {"t": 1.0}

    def test_two_to_one(self):
        assert lexicon_classify(["a", "b", "c"], LEX) == {"t": 1.0, "u": 0.5}

    def test_no_hits_and_empty_text(self):
        assert lexicon_classify(["zz"], LEX) == {}
        assert lexicon_classify([], LEX) == {}

    def test_empty_lexicon(self):
        with pytest.raises(ValueError):
            lexicon_classify(["a"], {})

    @given(st.lists(st.sampled_from("abcxy"), max_size=30), st.integers(2, 5))
    def test_multiplicity_scale_invariance(self, toks, k):
        assert lexicon_classify(toks * k, LEX) == pytest.approx(lexicon_classify(toks, LEX))

    def test_read_lexicon(self):
        lex = read_lexicon(["# token\tcode\tweight", "x\t011\t0.5", "y\t012"])
        assert lex == {"x": ("011", 0.5), "y": ("012", 1.0)}

    def test_sample_classifier_lifts_to_level(self):
        s = sample_scheme()
        clf = LexiconClassifier(s, sample_lexicon(), level=2)
        tok = next(iter(sample_lexicon()))
        d = clf.classify([tok])
        assert len(d) == 1 and all(s.level(c) == 2 for c in d)
        assert clf.classify([tok]) == d  # deterministic


class TestTopM:
    def test_single_value_at_mean(self):
        assert top_m_filter({"t": 1.0}, 5, 1.0) == {"t": 1.0}

    def test_below_mean_dropped(self):
        assert top_m_filter({"t": 0.9, "u": 0.1}, 5, 0.5) == {"t": 0.9}

    def test_ties_by_code(self):
        d = {c: 0.5 for c in "fedcba"}
        assert sorted(top_m_filter(d, 5, 0.1)) == list("abcde")

    def test_rejects_m_zero(self):
        with pytest.raises(ValueError):
            top_m_filter({"t": 1.0}, 0)

    @given(dists, st.integers(1, 8), st.floats(0, 1))
    def test_properties(self, d, m, mean):
        out = top_m_filter(d, m, mean)
        assert out.items() <= d.items()
        assert len(out) <= m
        assert all(v >= mean for v in out.values())

    def test_global_mean_pools_values(self):
        assert global_mean([{"a": 1.0}, {"b": 0.5, "c": 0.0}]) == 0.75
        assert global_mean([]) == 0.0

    def test_fixed_classifier_drops_zero(self):
        assert FixedClassifier({"x": {"t": 0.0, "u": 1.0}}).classify_text("x") == {"u": 1.0}
