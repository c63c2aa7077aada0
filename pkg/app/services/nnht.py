import logging
from typing import Dict, List, Mapping, Sequence, Tuple, Union

import networkx as nx

from app.models.graph import RankedTerms
from app.models.network import Nnht, TierSelection
from app.models.terms import TIER_NAMES, NGram

logger = logging.getLogger(__name__)

TermLike = Union[NGram, str]


def _as_ngram(term: TermLike) -> NGram:
    return term if isinstance(term, NGram) else NGram.parse(term)


def select_top(ranked: Mapping[int, RankedTerms], n: int) -> TierSelection:
    """
    Take the first N terms of every tier ranking.

    Args:
        ranked: Ranking per tier (keys 1, 2, 3)
        n: Terms per tier

    Returns:
        TierSelection: N + N + N selection, shorter where a tier runs out
    """
    if n < 1:
        raise ValueError("N must be >= 1")

    selection = TierSelection(n_requested=n)
    for tier, target in ((1, selection.unigrams), (2, selection.bigrams), (3, selection.trigrams)):
        ranking = ranked.get(tier)
        chosen = ranking.top(n) if ranking is not None else []
        target.extend(chosen)
        if len(chosen) < n:
            message = f"{TIER_NAMES[tier]} tier truncated to {len(chosen)}"
            logger.warning(message)
            selection.warnings.append(message)
    return selection


def contains(shorter: TermLike, longer: TermLike) -> bool:
    """
    Whether a shorter term occurs inside a longer one.

    A word is contained when it equals any token of the longer term; a bigram
    only when it is a contiguous part of the trigram.
    """
    short, long = _as_ngram(shorter), _as_ngram(longer)
    if short.n >= long.n:
        raise ValueError(f"contains() needs a shorter term first, got sizes {short.n} and {long.n}")
    if short.n == 1:
        return short.tokens[0] in long.tokens
    return any(long.tokens[i : i + short.n] == short.tokens for i in range(long.n - short.n + 1))


def build_nnht(selection: TierSelection) -> Nnht:
    """
    Link selected terms by containment, shorter to longer.

    Args:
        selection: Terms per tier

    Returns:
        Nnht: Three-tier network, isolated nodes included
    """
    net = Nnht()
    tiers: Dict[int, List[Tuple[NGram, int]]] = {}
    for tier, terms in selection.by_tier().items():
        tiers[tier] = []
        for term, weight in terms:
            net.add_term(term, tier, weight)
            tiers[tier].append((NGram.parse(term), weight))

    for source_tier in (1, 2):
        for target_tier in range(source_tier + 1, 4):
            for source, _ in tiers[source_tier]:
                for target, _ in tiers[target_tier]:
                    if contains(source, target):
                        net.add_link(source.text, target.text)

    logger.info("Built network: %d nodes, %d edges", net.number_of_nodes(), net.number_of_edges())
    return net


def containment_oracle(terms: Sequence[Tuple[str, int]]) -> set:
    """Brute-force edge set ``{(s, t): tier(s) < tier(t) and contains(s, t)}``."""
    return {
        (s, t)
        for s, s_tier in terms
        for t, t_tier in terms
        if s_tier < t_tier and contains(s, t)
    }


def extract_fragment(net: Nnht, term: str, radius: int = 1) -> Nnht:
    """
    Neighbourhood of one term: the terms it contains and is contained in.

    Args:
        net: Full network
        term: Centre term
        radius: Link distance, ignoring direction

    Returns:
        Nnht: Induced sub-network around ``term``
    """
    if term not in net.graph:
        raise KeyError(f"term not in network: {term}")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    ego = nx.ego_graph(net.graph, term, radius=radius, undirected=True)
    return Nnht(graph=nx.DiGraph(ego))
