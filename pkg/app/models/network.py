from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

import networkx as nx


@dataclass
class TierSelection:
    """Top-N terms per tier, each list a prefix of its tier ranking."""

    n_requested: int
    unigrams: List[Tuple[str, int]] = field(default_factory=list)
    bigrams: List[Tuple[str, int]] = field(default_factory=list)
    trigrams: List[Tuple[str, int]] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    def by_tier(self) -> Dict[int, List[Tuple[str, int]]]:
        return {1: self.unigrams, 2: self.bigrams, 3: self.trigrams}


@dataclass
class Nnht:
    """
    Directed three-tier term network.

    Nodes are term strings carrying ``tier`` (1..3) and ``weight`` (CHVG
    weight, ``None`` when unknown). Edges point from the contained term to
    the containing term.
    """

    graph: nx.DiGraph = field(default_factory=nx.DiGraph)

    def add_term(self, term: str, tier: int, weight: Optional[int] = None) -> None:
        self.graph.add_node(term, tier=tier, weight=weight)

    def add_link(self, source: str, target: str) -> None:
        self.graph.add_edge(source, target)

    @property
    def nodes(self) -> List[Tuple[str, int, Optional[int]]]:
        return [(term, data["tier"], data.get("weight")) for term, data in self.graph.nodes(data=True)]

    @property
    def edges(self) -> List[Tuple[str, str]]:
        return list(self.graph.edges)

    def tier(self, term: str) -> int:
        return self.graph.nodes[term]["tier"]

    def weight(self, term: str) -> Optional[int]:
        return self.graph.nodes[term].get("weight")

    def number_of_nodes(self) -> int:
        return self.graph.number_of_nodes()

    def number_of_edges(self) -> int:
        return self.graph.number_of_edges()

    def out_degrees(self) -> Iterable[int]:
        return (d for _, d in self.graph.out_degree())

    def __repr__(self):
        return f"<Nnht {self.number_of_nodes()} nodes, {self.number_of_edges()} edges>"
