"""Core-degeneracy accelerated random-walk node embeddings."""

from .embedding import EmbeddingMatrix, TrainConfig, load_embedding, save_embedding, train, training_pairs
from .estimators import CoreWalk, DeepWalk, KCorePropagation
from .graph import (EdgeList, Graph, build_graph, has_edge, induced_subgraph, largest_connected_component,
                    parse_edge_list, read_graph)
from .kcore import CoreDecomposition, decompose, k_core_subgraph, shell_sequence
from .propagation import PropagationConfig, TimingBreakdown, propagate_full, propagate_step
from .walks import WalkConfig, WalkCorpus, generate_corpus, random_walk, walk_budget

__version__ = "0.1.0"

__all__ = [
    "EmbeddingMatrix", "TrainConfig", "load_embedding", "save_embedding", "train", "training_pairs",
    "CoreWalk", "DeepWalk", "KCorePropagation",
    "EdgeList", "Graph", "build_graph", "has_edge", "induced_subgraph", "largest_connected_component",
    "parse_edge_list", "read_graph",
    "CoreDecomposition", "decompose", "k_core_subgraph", "shell_sequence",
    "PropagationConfig", "TimingBreakdown", "propagate_full", "propagate_step",
    "WalkConfig", "WalkCorpus", "generate_corpus", "random_walk", "walk_budget",
]
