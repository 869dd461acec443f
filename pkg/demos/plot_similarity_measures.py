"""
Comparing topic networks
========================

Every registered measure applied to a few small networks.
"""

import numpy as np

from topicnets.induction import TopicNetwork
from topicnets.similarity import MEASURE_IDS, MEASURES, class_mapping, similarity_matrix
from topicnets.synthetic import random_topic_network
from topicnets.topics import sample_scheme

scheme = sample_scheme()
pool = scheme.codes(2)[:12]
rng = np.random.default_rng(0)

path = TopicNetwork([("010", "010", 2.0), ("020", "020", 1.0), ("110", "110", 1.0)],
                    [("010", "020", 1.0), ("020", "110", 3.0)])
cycle = TopicNetwork([("010", "010", 1.0), ("020", "020", 1.0), ("110", "110", 1.0)],
                     [("010", "020", 1.0), ("020", "110", 1.0), ("110", "010", 1.0)])
nets = [path, cycle] + [random_topic_network(rng, pool, 3, 8) for _ in range(3)]
names = ["path", "cycle", "r0", "r1", "r2"]

# ToSi compares clustering by class; here a vertex's class is its parent code
type_of = class_mapping(scheme)
for mid in MEASURE_IDS:
    m = MEASURES[mid]
    print(f"{mid:>14} {m.kind:>10}  path~cycle = {m(path, cycle, type_of=type_of):.4f}")

# the full matrix for one measure, ready for classification
fm = similarity_matrix(nets, "cosAV_w_phi1", ids=names)
print(fm.to_csv())
