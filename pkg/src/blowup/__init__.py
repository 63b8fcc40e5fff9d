"""Certified low-treewidth partitions (blow-up quotients) of minor-free graphs."""

from .decomp import Layering, TDView, TreeDecomposition
from .engine import (
    MinorWitness,
    Outcome,
    PartitionResult,
    decompose,
    partition_rooted_main,
    partition_rooted_sqrt,
    partition_rooted_stw,
)
from .graphs import Graph, Model
from .planar import LayeredTD, RotationSystem, planar_product_structure

__all__ = [
    "Graph",
    "Model",
    "TreeDecomposition",
    "TDView",
    "Layering",
    "LayeredTD",
    "RotationSystem",
    "PartitionResult",
    "MinorWitness",
    "Outcome",
    "decompose",
    "partition_rooted_main",
    "partition_rooted_sqrt",
    "partition_rooted_stw",
    "planar_product_structure",
]
