"""End-to-end acceptance checks, one test per criterion.

Each test prints a ``PASS``/``FAIL`` line (visible in ``pytest -v`` output)
before asserting, so a run doubles as a criteria report.
"""
import itertools
import time
from collections import Counter

import numpy as np
import pytest

from conftest import TOY, TOY_THETA, toy_scheme
from oracles import brute_knn, exact_b1, naive_ttn, planted, scratch_cos
from topicnets.analysis import powerlaw_fit
from topicnets.corpus import Corpus, EditHistory, Revision, Text, build_lmn, corpus_from_dict
from topicnets.features import typed_cluster_vector
from topicnets.graph import LabeledDigraph
from topicnets.induction import (DefinitionalSetting, GeneratingLayer, InductionConfig, induce_atn, induce_generic,
                                 induce_ttn, induce_wtn)
from topicnets.learning import (GeneticConfig, GoldStandard, baseline_b1, baseline_b2, baseline_b3, classify_loo,
                                genetic_search, run_mode)
from topicnets.similarity import MEASURE_IDS, MEASURES, cos_graph, similarity_matrix
from topicnets.structure import er_rewire, orbit
from topicnets.synthetic import (calibration_corpus, random_digraph, random_topic_network, synthetic_genres,
                                 toy_fixture)
from topicnets.topics import FixedClassifier, LexiconClassifier, sample_lexicon, sample_scheme


@pytest.fixture
def verdict(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        return ok
    return emit


def weights(g):
    return ({v.label: v.weight for v in g.vertex_objects()},
            {(g.label(a.src), g.label(a.dst)): a.weight for a in g.arc_objects()})


def toy_setting():
    c, h = corpus_from_dict(TOY, "toy")
    return DefinitionalSetting(toy_scheme(), FixedClassifier(TOY_THETA), build_lmn(c, h), "toy")


def assumed_atn(s):
    # one unit arc per co-author pair, unit margins, link weights added
    g = LabeledDigraph(["a1", "a2", "a3", "a4"], [("a1", "a2"), ("a3", "a4")])
    members = {x: {a: 1.0 for a in acts} for x, acts in s.lmn.authors_of.items()}
    b1 = s.filtered(5)

    def delta(term):
        return (b1[term.source.text].get(term.source.topic, 0) * b1[term.target.text].get(term.target.topic, 0)
                * term.source.margins[0] * term.target.margins[0] * (term.unit_links[0] + term.text_link))

    return induce_generic(s.memberships, s.lmn.text_layer, [GeneratingLayer("authors", g, members)],
                          lambda t, z: z, lambda term: b1[term.text].get(term.topic, 0), lambda v, w, z: z, delta)


def test_1_toy_examples(verdict):
    t0 = time.perf_counter()
    s = toy_setting()
    mu, nu = weights(induce_ttn(s))
    atn_nu = weights(assumed_atn(s))[1]
    wtn_nu = weights(induce_wtn(s))[1]
    elapsed = time.perf_counter() - t0
    ok = (mu == {"t1": 1, "t2": 1, "t3": 2} and nu[("t1", "t2")] == 1 and nu[("t3", "t3")] == 1
          and atn_nu[("t1", "t2")] == 2 and wtn_nu[("t1", "t2")] == 4 and elapsed < 1)
    verdict(1, ok, f"ttn mu={mu} nu={nu}, atn nu(t1,t2)={atn_nu[('t1', 't2')]}, "
                   f"wtn nu(t1,t2)={wtn_nu[('t1', 't2')]}, {elapsed:.3f}s")
    assert ok


def test_1_bundled_fixture_agrees():
    c, h, scheme, clf = toy_fixture()
    s = DefinitionalSetting(scheme, clf, build_lmn(c, h), "toy")
    assert weights(induce_ttn(s)) == weights(induce_ttn(toy_setting()))


def test_2_calibration(verdict):
    t0 = time.perf_counter()
    worst = 0.0
    for seed in range(10):
        case = calibration_corpus(n_texts=15, n_authors=3, seed=seed)
        s = DefinitionalSetting(case.scheme, case.classifier, build_lmn(case.corpus, case.history), "cal")
        cfg = InductionConfig(reference=case.reference)
        (tm, tn), (am, an) = weights(induce_ttn(s, cfg)), weights(induce_atn(s, cfg=cfg))
        if tm.keys() != am.keys() or tn.keys() != an.keys():
            worst = np.inf
            break
        worst = max([worst] + [abs(tm[k] - am[k]) for k in tm] + [abs(tn[k] - an[k]) for k in tn])
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-9 and elapsed < 5
    verdict(2, ok, f"max |ATN - TTN| = {worst:.2e} over 10 corpora, {elapsed:.2f}s")
    assert ok


def test_3_measure_axioms(verdict):
    rng = np.random.default_rng(2024)
    pool = sample_scheme().codes(2)[:20]
    type_of = sample_scheme().parent
    t0 = time.perf_counter()
    failures = []
    pairs = 1000
    for i in range(pairs):
        g1 = random_topic_network(rng, pool, 1, 10)
        g2 = random_topic_network(rng, pool, 1, 10)
        for k, mid in enumerate(MEASURE_IDS):
            m = MEASURES[mid]
            a, b = m(g1, g2, type_of=type_of), m(g2, g1, type_of=type_of)
            if a != b:
                failures.append((i, mid, "asym"))
            if k < 9 and not 0 <= a <= 1:
                failures.append((i, mid, "range"))
            # a triangle-free network has an all-zero typed-cluster vector
            if mid == "tosi" and not typed_cluster_vector(g1, type_of).any():
                continue
            if m(g1, g1, type_of=type_of) != m.self_value:
                failures.append((i, mid, "self"))
    elapsed = time.perf_counter() - t0
    ok = not failures and elapsed < 60
    verdict(3, ok, f"{pairs} pairs x {len(MEASURE_IDS)} measures, {len(failures)} violations, {elapsed:.1f}s")
    assert ok, failures[:5]


def test_4_oracles(verdict):
    rng = np.random.default_rng(7)
    topics = ["t1", "t2", "t3"]
    ttn_bad = 0
    for _ in range(300):
        n = int(rng.integers(1, 21))
        ids = [f"x{i:02d}" for i in range(n)]
        texts = [Text(x, links=tuple(sorted(set(rng.choice(ids, size=int(rng.integers(0, 4))).tolist()))))
                 for x in ids]
        theta = {x: {t: float(rng.choice([0.25, 0.5, 0.75, 1.0]))
                     for t in rng.choice(topics, size=int(rng.integers(0, 4)), replace=False)} for x in ids}
        m = int(rng.integers(1, 4))
        s = DefinitionalSetting(toy_scheme(), FixedClassifier(theta), build_lmn(Corpus(texts)))
        mu, nu = weights(induce_ttn(s, InductionConfig(m=m)))
        nmu, nnu = naive_ttn(texts, theta, m)
        if mu != nmu or nu != {k: v for k, v in nnu.items() if k[0] in mu and k[1] in mu}:
            ttn_bad += 1
    pool = [f"t{i}" for i in range(10)]
    worst = 0.0
    for _ in range(300):
        g1 = random_topic_network(rng, pool, 1, 8)
        g2 = random_topic_network(rng, pool, 1, 8)
        for weighted, phi, vp in itertools.product([True, False], ["phi1", "phi2"], [True, False]):
            worst = max(worst, abs(cos_graph(g1, g2, weighted, phi, vp) - scratch_cos(g1, g2, weighted, phi, vp)))
    ok = ttn_bad == 0 and worst <= 1e-12
    verdict(4, ok, f"TTN vs naive loop: {ttn_bad}/300 mismatches; cos_graph max deviation {worst:.1e}")
    assert ok


def test_5_b1_analytic(verdict):
    labels = list("aabb")
    got = baseline_b1(labels, iterations=100_000, seed=5).mean
    exact = exact_b1(labels)
    single = baseline_b1(["a", "b"], iterations=100_000, seed=5).mean
    ok = abs(got - exact) <= 0.01 and abs(single - 0.5) <= 0.01
    verdict(5, ok, f"4 items: {got:.4f} vs exact {exact:.4f}; singletons {single:.4f}")
    assert ok


@pytest.mark.slow
def test_6_genre_separation(verdict):
    t0 = time.perf_counter()
    gens = synthetic_genres(3, 10, 50, seed=0)
    clf = LexiconClassifier(sample_scheme(), sample_lexicon(), 2)
    nets = [induce_ttn(DefinitionalSetting(sample_scheme(), clf, build_lmn(g.corpus, g.history), g.id))
            for g in gens]
    gold = GoldStandard({g.id: g.genre for g in gens})
    ids = [g.id for g in gens]
    fm = similarity_matrix(nets, "cosAV_w_phi1", ids)
    observed = run_mode(fm, gold, "ext", seed=0).macro_f
    b1 = baseline_b1(gold, iterations=100_000, seed=0).mean
    b2 = baseline_b2(nets, "cosAV_w_phi1", gold, ids, reps=20, seed=0).mean
    b3 = baseline_b3(gold, reps=100, seed=0).mean
    elapsed = time.perf_counter() - t0
    ok = observed >= 0.9 and b2 <= 0.6 and b3 <= 0.6 and b1 <= 0.45 and elapsed < 600
    verdict(6, ok, f"ext macro-F {observed:.3f}; B1 {b1:.3f}, B2 {b2:.3f}, B3 {b3:.3f}; {elapsed:.0f}s")
    assert ok


def test_7_power_law(verdict):
    ranks = np.arange(1, 201, dtype=float)
    lines, ok = [], True
    for gamma in (0.5, 1.0, 1.5):
        clean = powerlaw_fit(100 * ranks ** -gamma)
        good = abs(clean.exponent - gamma) <= 0.05 and clean.adjusted_r2 >= 0.99
        for seed in range(5):
            noisy = 100 * ranks ** -gamma * np.random.default_rng(seed).lognormal(0, 0.05, ranks.size)
            good &= abs(powerlaw_fit(noisy).exponent - gamma) <= 0.1
        ok &= good
        lines.append(f"gamma {gamma}: {clean.exponent:.4f} (adj R2 {clean.adjusted_r2:.4f})")
    verdict(7, ok, "; ".join(lines))
    assert ok


def test_8_genetic_search(verdict):
    ok, notes = True, []
    for seed in range(10):
        x, y = planted(seed)
        gold = GoldStandard({str(i): c for i, c in enumerate(y)})
        best = max(classify_loo(x, gold, list(m)).macro_f for m in [(1, 0), (0, 1), (1, 1)])
        res = genetic_search(x, gold, GeneticConfig(population=6, rounds=20, seed=seed))
        monotone = all(b >= a for a, b in zip(res.history, res.history[1:]))
        ok &= res.report.macro_f == best and monotone
        notes.append(f"{res.report.macro_f:.2f}/{best:.2f}")
    verdict(8, ok, f"found/exhaustive per seed: {' '.join(notes)}")
    assert ok


def test_8_knn_oracle_on_planted():
    x, y = planted(0, n=12)
    sq = x @ x.T
    gold = GoldStandard({str(i): c for i, c in enumerate(y)})
    assert classify_loo(sq, gold).predictions == brute_knn(sq, y)


def test_9_structural_contracts(verdict):
    rng = np.random.default_rng(99)
    settings = [toy_setting()]
    for seed in range(3):
        case = calibration_corpus(seed=seed)
        settings.append(DefinitionalSetting(case.scheme, case.classifier, build_lmn(case.corpus, case.history)))
    clf = LexiconClassifier(sample_scheme(), sample_lexicon(), 2)
    for g in synthetic_genres(2, 2, 30, seed=1):
        settings.append(DefinitionalSetting(sample_scheme(), clf, build_lmn(g.corpus, g.history)))
    for _ in range(20):
        n = int(rng.integers(2, 12))
        ids = [f"x{i}" for i in range(n)]
        texts = [Text(x, links=tuple(sorted({str(y) for y in rng.choice(ids, 2) if y != x}))) for x in ids]
        theta = {x: {str(t): 1.0 for t in rng.choice(["t1", "t2", "t3"], 2)} for x in ids}
        revs = [Revision(x, f"a{int(rng.integers(4))}", float(rng.uniform(1, 50))) for x in ids for _ in range(2)]
        settings.append(DefinitionalSetting(toy_scheme(), FixedClassifier(theta),
                                            build_lmn(Corpus(texts), EditHistory(revs))))
    contained = 0
    for s in settings:
        ttn, atn = induce_ttn(s), induce_atn(s)
        contained += set(atn.vertices) == set(ttn.vertices) and set(atn.arcs) <= set(ttn.arcs)

    rewired = 0
    nested = 0
    for i in range(100):
        g = random_digraph(rng, int(rng.integers(1, 15)), float(rng.uniform(0.05, 0.5)), loops=bool(i % 2))
        r = er_rewire(g, i)
        rewired += (r.order == g.order and r.size == g.size
                    and Counter(a.weight for a in r.arc_objects()) == Counter(a.weight for a in g.arc_objects())
                    and list(r.vertex_objects()) == list(g.vertex_objects()))
        v = g.vertices[int(rng.integers(g.order))]
        layers = [set(orbit(g, v, n).vertices) for n in range(5)]
        nested += layers[0] == {v} and all(a <= b for a, b in zip(layers, layers[1:]))
    ok = contained == len(settings) and rewired == 100 and nested == 100
    verdict(9, ok, f"containment {contained}/{len(settings)} corpora; rewire {rewired}/100; "
                   f"orbit nesting {nested}/100")
    assert ok
