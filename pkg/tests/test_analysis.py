import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from topicnets.analysis import community_profile, fuzzy_jaccard, heat_value, powerlaw_fit, rank_table
from topicnets.corpus import Corpus, EditHistory, Revision, Text

shares = st.dictionaries(st.sampled_from("uvwxyz"), st.floats(0, 1, allow_nan=False), max_size=6)
unit = st.floats(0, 1, allow_nan=False)


class TestPowerFit:
    def test_exact_zipf(self):
        fit = powerlaw_fit([10 * r ** -1.0 for r in range(1, 51)])
        assert abs(fit.exponent - 1.0) <= 1e-9
        assert fit.prefactor == pytest.approx(10.0)
        assert fit.adjusted_r2 == pytest.approx(1.0)

    def test_order_does_not_matter(self):
        w = [10 * r ** -0.7 for r in range(1, 30)]
        assert powerlaw_fit(w[::-1]) == powerlaw_fit(w)

    def test_constant(self):
        fit = powerlaw_fit([3.0] * 10)
        assert (fit.exponent, fit.adjusted_r2) == (0.0, 0.0)

    @pytest.mark.parametrize("bad", [[1.0, 2.0], [1.0, 0.0, 2.0], [1.0, -1.0, 3.0]])
    def test_errors(self, bad):
        with pytest.raises(ValueError):
            powerlaw_fit(bad)

    @pytest.mark.parametrize("gamma", [0.5, 1.0, 1.5])
    def test_recovery_against_polyfit(self, gamma):
        rng = np.random.default_rng(1)
        w = (5 * np.arange(1, 201) ** -gamma) * np.exp(rng.normal(0, 0.05, 200))
        fit = powerlaw_fit(w)
        ws = np.sort(w)[::-1]
        slope, icpt = np.polyfit(np.log(np.arange(1, 201)), np.log(ws), 1)
        assert fit.exponent == pytest.approx(-slope, abs=1e-10)
        assert fit.prefactor == pytest.approx(np.exp(icpt), rel=1e-10)

    def test_rank_table(self):
        assert rank_table([1, 3, 2]) == [(1, 3.0), (2, 2.0), (3, 1.0)]


class TestJaccard:
    def test_examples(self):
        a = {"u": 1.0}
        assert fuzzy_jaccard(a, a) == 1
        assert fuzzy_jaccard(a, {"v": 1.0}) == 0
        assert fuzzy_jaccard(a, {"u": 0.5, "v": 0.5}) == pytest.approx(1 / 3)
        assert fuzzy_jaccard({}, {}) == 0

    @given(shares, shares)
    def test_symmetric_bounded(self, a, b):
        j = fuzzy_jaccard(a, b)
        assert j == fuzzy_jaccard(b, a) and 0 <= j <= 1
        if any(v > 0 for v in a.values()):
            assert fuzzy_jaccard(a, a) == 1

    def test_profile(self):
        c = Corpus([Text("x"), Text("y")])
        h = EditHistory([Revision("x", "r", 3), Revision("y", "r", 1), Revision("y", "s", 4)])
        assert community_profile(c, h) == {"r": 0.5, "s": 0.5}
        assert community_profile(c, h, authors={"s"}) == {"s": 1.0}
        assert community_profile(c, EditHistory()) == {}


class TestHeat:
    def test_examples(self):
        assert heat_value(1, 1) == 1 and heat_value(0, 0) == -1
        assert heat_value(0.5, 0.7) == pytest.approx(0.2)

    def test_range(self):
        with pytest.raises(ValueError):
            heat_value(1.2, 0.5)
        with pytest.raises(ValueError):
            heat_value(0.5, -0.1)

    @given(unit, unit, unit)
    def test_monotone(self, a, b, d):
        lo, hi = sorted((a, d))
        assert heat_value(lo, b) <= heat_value(hi, b)
        assert heat_value(b, lo) <= heat_value(b, hi)
