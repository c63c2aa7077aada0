"""
Horizontal visibility graphs over term weight series.

Positions i < j of one document see each other when every weight strictly
between them is below ``min(w[i], w[j])``. Visibility never crosses a
document boundary; compaction then merges positions by term across the whole
corpus.
"""
import logging
from collections import Counter
from pathlib import Path
from typing import List, Sequence, Tuple

import networkx as nx
import pandas as pd

from app.models.document import StopDictionary
from app.models.graph import CHVG_WEIGHT_MODES, ChvgGraph, HvgGraph, RankedTerms
from app.models.terms import WeightSeries

logger = logging.getLogger(__name__)

STOPWORD_NGRAM_POLICIES = ("strict", "off")


def _sweep(weights: Sequence[float], offset: int, edges: List[Tuple[int, int]]) -> None:
    # Stack holds positions whose weights strictly decrease from bottom to top;
    # only they can still see a later position.
    stack: List[int] = []
    for j, w in enumerate(weights):
        while stack and weights[stack[-1]] < w:
            edges.append((stack.pop() + offset, j + offset))
        if stack:
            top = stack[-1]
            edges.append((top + offset, j + offset))
            if weights[top] == w:
                # An equal weight blocks everything behind it
                stack.pop()
        stack.append(j)


def build_hvg(series: WeightSeries) -> HvgGraph:
    """
    Build the horizontal visibility graph of a weight series in linear time.

    Args:
        series: Weight series with document boundaries

    Returns:
        HvgGraph: Position edges ``(i, j)`` with ``i < j``
    """
    edges: List[Tuple[int, int]] = []
    for start, end in series.doc_boundaries:
        _sweep(series.weights[start:end], start, edges)
    edges.sort()
    return HvgGraph(node_count=len(series), edges=edges)


def build_hvg_bruteforce(series: WeightSeries) -> HvgGraph:
    """
    Quadratic-time HVG straight from the definition.

    Used to validate :func:`build_hvg`.
    """
    edges = []
    w = series.weights
    for start, end in series.doc_boundaries:
        for i in range(start, end):
            highest = float("-inf")  # max weight strictly between i and j
            for j in range(i + 1, end):
                if highest < min(w[i], w[j]):
                    edges.append((i, j))
                highest = max(highest, w[j])
                if highest >= w[i]:
                    break
    edges.sort()
    return HvgGraph(node_count=len(series), edges=edges)


def compact_hvg(hvg: HvgGraph, series: WeightSeries, weight_mode: str = "simple") -> ChvgGraph:
    """
    Merge HVG positions that carry the same term.

    Position edges become term edges with accumulated multiplicity;
    edges between two positions of the same term are dropped.

    Args:
        hvg: Graph built from ``series``
        series: Weight series supplying the position labels
        weight_mode: ``simple`` (distinct neighbours) or ``multi``
            (sum of multiplicities)

    Returns:
        ChvgGraph: Compacted term graph
    """
    if weight_mode not in CHVG_WEIGHT_MODES:
        raise ValueError(f"unknown CHVG weight mode: {weight_mode}")
    if hvg.node_count != len(series):
        raise ValueError("HVG was not built from this series")

    terms = series.terms
    pair_counts: Counter = Counter()
    self_loops = 0
    for i, j in hvg.edges:
        a, b = terms[i], terms[j]
        if a == b:
            self_loops += 1
            continue
        pair_counts[(a, b) if a < b else (b, a)] += 1

    graph = nx.Graph()
    graph.add_nodes_from(dict.fromkeys(terms))
    graph.add_edges_from((a, b, {"multiplicity": m}) for (a, b), m in sorted(pair_counts.items()))

    logger.debug(
        "Tier %d CHVG: %d terms, %d edges, %d self-loops dropped",
        series.tier,
        graph.number_of_nodes(),
        graph.number_of_edges(),
        self_loops,
    )
    return ChvgGraph(graph=graph, tier=series.tier, dropped_self_loops=self_loops, weight_mode=weight_mode)


def is_stopped(term: str, stop: StopDictionary, stopword_ngrams: str = "strict") -> bool:
    """Whether a term is excluded by the stop-dictionary."""
    tokens = term.split(" ")
    if len(tokens) == 1:
        return term in stop
    if stopword_ngrams == "strict":
        return any(token in stop for token in tokens)
    return False


def rank_terms(chvg: ChvgGraph, stop: StopDictionary, stopword_ngrams: str = "strict") -> RankedTerms:
    """
    Sort the non-stopped terms by CHVG weight.

    Args:
        chvg: Compacted graph of one tier
        stop: Stop-dictionary
        stopword_ngrams: ``strict`` drops n-grams containing a stop word,
            ``off`` filters unigrams only

    Returns:
        RankedTerms: Weight descending, ties by term ascending
    """
    if stopword_ngrams not in STOPWORD_NGRAM_POLICIES:
        raise ValueError(f"unknown stopword n-gram policy: {stopword_ngrams}")

    weights = chvg.node_weight()
    kept = [(term, weight) for term, weight in weights.items() if not is_stopped(term, stop, stopword_ngrams)]
    kept.sort(key=lambda item: (-item[1], item[0]))
    return RankedTerms(tier=chvg.tier, terms=kept)


def write_ranking_dump(ranked: RankedTerms, path: str) -> None:
    """Write ``term<TAB>chvg_weight`` in ranking order."""
    frame = pd.DataFrame(ranked.terms, columns=["term", "chvg_weight"])
    frame.to_csv(Path(path), sep="\t", index=False, header=False, lineterminator="\n")
