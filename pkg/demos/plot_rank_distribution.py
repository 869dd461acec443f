"""
Rank distributions and author communities
=========================================
"""

import numpy as np

from topicnets.analysis import community_profile, fuzzy_jaccard, heat_value, powerlaw_fit, rank_table
from topicnets.corpus import build_lmn
from topicnets.induction import DefinitionalSetting, induce_ttn
from topicnets.synthetic import synthetic_genres
from topicnets.topics import LexiconClassifier, sample_lexicon, sample_scheme

# a clean Zipf curve first
fit = powerlaw_fit(50 * np.arange(1, 101) ** -1.2)
print(f"synthetic: gamma={fit.exponent:.3f} adj R2={fit.adjusted_r2:.4f}")

a, b = synthetic_genres(n_genres=1, per_genre=2, n_texts=60, seed=5)
scheme = sample_scheme()
clf = LexiconClassifier(scheme, sample_lexicon(), 2)
net = induce_ttn(DefinitionalSetting(scheme, clf, build_lmn(a.corpus, a.history), a.id))

# vertex weights of an induced network, largest first
weights = [v.weight for v in net.vertex_objects()]
for rank, w in rank_table(weights)[:5]:
    print(rank, round(w, 2))
fit = powerlaw_fit(weights)
print(f"{a.id}: gamma={fit.exponent:.3f} C={fit.prefactor:.2f} adj R2={fit.adjusted_r2:.3f}")

# overlap of the two author communities (disjoint by construction)
pa, pb = community_profile(a.corpus, a.history), community_profile(b.corpus, b.history)
j = fuzzy_jaccard(pa, pb)
print("fuzzy Jaccard:", j, " heat against closeness 0.4:", heat_value(j, 0.4))
