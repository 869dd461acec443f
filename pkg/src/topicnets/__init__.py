"""Multiplex topic networks: induction from annotated corpora, similarity, classification."""

from .analysis import PowerFit, community_profile, fuzzy_jaccard, heat_value, powerlaw_fit
from .corpus import (Corpus, EditHistory, LinguisticMultilayerNetwork, ReferenceStats, Revision, Text,
                     activity, build_author_layer, build_lmn, build_text_layer, load_corpus, reference_stats)
from .features import netsimile_features, typed_cluster_vector
from .graph import Arc, GraphError, LabeledDigraph, Vertex
from .induction import (DefinitionalSetting, InductionConfig, MultiplexTopicNetwork, TopicNetwork, build_mtn,
                        induce, induce_atn, induce_generic, induce_ttn, induce_wtn, to_undirected)
from .learning import (EvalReport, GeneticConfig, GoldStandard, baseline_b1, baseline_b2, baseline_b3,
                       baseline_b4, classify_loo, genetic_search)
from .similarity import (MEASURE_IDS, MEASURES, FeatureMatrix, cos_graph, ged, ges, netsimile_distance,
                         similarity_matrix, tosi, veo, wal, wges)
from .structure import er_rewire, geodesic_matrix, orbit
from .topics import (LexiconClassifier, TopicScheme, lexicon_classify, sample_lexicon, sample_scheme,
                     top_m_filter)

__all__ = [
    "PowerFit", "community_profile", "fuzzy_jaccard", "heat_value", "powerlaw_fit", "Corpus", "EditHistory",
    "LinguisticMultilayerNetwork", "ReferenceStats", "Revision", "Text", "activity", "build_author_layer",
    "build_lmn", "build_text_layer", "load_corpus", "reference_stats", "netsimile_features",
    "typed_cluster_vector", "Arc", "GraphError", "LabeledDigraph", "Vertex", "DefinitionalSetting",
    "InductionConfig", "MultiplexTopicNetwork", "TopicNetwork", "build_mtn", "induce", "induce_atn",
    "induce_generic", "induce_ttn", "induce_wtn", "to_undirected", "EvalReport", "GeneticConfig", "GoldStandard",
    "baseline_b1", "baseline_b2", "baseline_b3", "baseline_b4", "classify_loo", "genetic_search", "MEASURE_IDS",
    "MEASURES", "FeatureMatrix", "cos_graph", "ged", "ges", "netsimile_distance", "similarity_matrix", "tosi",
    "veo", "wal", "wges", "er_rewire", "geodesic_matrix", "orbit", "LexiconClassifier", "TopicScheme",
    "lexicon_classify", "sample_lexicon", "sample_scheme", "top_m_filter",
]

__version__ = "0.1.0"
