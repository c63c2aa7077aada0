from dataclasses import dataclass, field
from typing import Dict, List, Set, Tuple

import networkx as nx

CHVG_WEIGHT_MODES = ("simple", "multi")


@dataclass
class HvgGraph:
    """Horizontal visibility graph over the positions of a weight series."""

    node_count: int
    edges: List[Tuple[int, int]] = field(default_factory=list)

    def edge_set(self) -> Set[Tuple[int, int]]:
        return set(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __repr__(self):
        return f"<HvgGraph {self.node_count} nodes, {len(self.edges)} edges>"


@dataclass
class ChvgGraph:
    """
    Compacted visibility graph: one node per term.

    Edges of ``graph`` carry a ``multiplicity`` attribute counting the
    position edges merged into them.
    """

    graph: nx.Graph
    tier: int = 1
    dropped_self_loops: int = 0
    weight_mode: str = "simple"

    def __post_init__(self):
        if self.weight_mode not in CHVG_WEIGHT_MODES:
            raise ValueError(f"unknown CHVG weight mode: {self.weight_mode}")

    @property
    def nodes(self) -> Set[str]:
        return set(self.graph.nodes)

    def multiplicity(self, a: str, b: str) -> int:
        return self.graph.edges[a, b]["multiplicity"]

    def total_multiplicity(self) -> int:
        return sum(m for _, _, m in self.graph.edges(data="multiplicity"))

    def node_weight(self) -> Dict[str, int]:
        if self.weight_mode == "multi":
            return {term: int(d) for term, d in self.graph.degree(weight="multiplicity")}
        return {term: int(d) for term, d in self.graph.degree()}

    def __repr__(self):
        return f"<ChvgGraph {self.graph.number_of_nodes()} terms, {self.graph.number_of_edges()} edges>"


@dataclass
class RankedTerms:
    """Terms of one tier sorted by weight descending, then term ascending."""

    tier: int
    terms: List[Tuple[str, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def top(self, n: int) -> List[Tuple[str, int]]:
        return self.terms[:n]
