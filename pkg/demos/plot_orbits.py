"""
Orbits, geodesics and rewiring
==============================
"""

import numpy as np

from topicnets.features import netsimile_features, typed_cluster_vector
from topicnets.structure import er_rewire, geodesic_matrix, orbit
from topicnets.synthetic import random_digraph

rng = np.random.default_rng(3)
g = random_digraph(rng, 12, 0.15)
seed = g.vertices[0]

for n in range(4):
    o = orbit(g, seed, n)
    print(f"orbit {n}: {o.order} vertices, {o.size} arcs")

# hop counts and weight-derived distances, unreachable pairs as inf
print(geodesic_matrix(g)[0])
print(np.round(geodesic_matrix(g, weighted=True)[0], 2))

r = er_rewire(g, seed=1)
print("rewired keeps", r.order, "vertices and", r.size, "arcs")
print("netsimile signature (first 5):", np.round(netsimile_features(g)[:5], 3))
print("typed clustering, one class:", typed_cluster_vector(g, lambda v: "all")[:4])
