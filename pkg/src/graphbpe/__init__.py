"""Byte-pair-encoding style tokenization of labeled graph corpora.

Graphs are tokenized by repeatedly counting contextualized edges across a
corpus and contracting the most frequent one into a hypernode. The learned
merge rules form a vocabulary that can be replayed on unseen graphs, and a
tokenization can be exported as a contracted graph or as a hypergraph.
"""

from .context import ContextualizerKind, base_identity, context_node_set, edge_context
from .corpus import (
    Corpus,
    load_corpus,
    parse_tudataset,
    read_json_corpus,
    read_vocabulary,
    write_json_corpus,
    write_vocabulary,
)
from .engine import (
    MergeRule,
    PairCounter,
    Vocabulary,
    apply,
    count_pairs,
    merge_step,
    replay,
    select_best,
    train,
)
from .graph import Hypernode, SimpleGraph, TokenizedGraph, build_graph, connected_components, contract, init_tokenized
from .hypergraph import Hypergraph, centroid_hypergraph, incidence, incidence_matrix, to_hypergraph
from .smiles import parse_smiles
from .stats import StepStats, step_stats, token_frequency
from .topology import Topology, TopologyKind, find_cliques, find_ring_systems, preprocess

__version__ = "0.1.0"

__all__ = [
    "ContextualizerKind",
    "Corpus",
    "Hypergraph",
    "Hypernode",
    "MergeRule",
    "PairCounter",
    "SimpleGraph",
    "StepStats",
    "TokenizedGraph",
    "Topology",
    "TopologyKind",
    "Vocabulary",
    "apply",
    "base_identity",
    "build_graph",
    "centroid_hypergraph",
    "connected_components",
    "context_node_set",
    "contract",
    "count_pairs",
    "edge_context",
    "find_cliques",
    "find_ring_systems",
    "incidence",
    "incidence_matrix",
    "init_tokenized",
    "load_corpus",
    "merge_step",
    "parse_smiles",
    "parse_tudataset",
    "preprocess",
    "read_json_corpus",
    "read_vocabulary",
    "replay",
    "select_best",
    "step_stats",
    "to_hypergraph",
    "token_frequency",
    "train",
    "write_json_corpus",
    "write_vocabulary",
]
