"""
Tests for visibility-graph construction, compaction and ranking.
"""
import time

import networkx as nx
import numpy as np
import pytest

from app.models.document import StopDictionary
from app.models.graph import ChvgGraph
from app.models.terms import WeightSeries
from app.services import hvg


def _series_from_docs(docs):
    """Multi-document series from per-document weight lists."""
    series = WeightSeries(tier=1)
    for d, weights in enumerate(docs):
        start = len(series.terms)
        series.terms.extend(f"t{d}_{i}" for i in range(len(weights)))
        series.weights.extend(float(w) for w in weights)
        series.doc_ids.extend([f"doc{d}"] * len(weights))
        series.doc_boundaries.append((start, len(series.terms)))
    return series


@pytest.mark.parametrize(
    "weights, expected",
    [
        ([1, 2, 3], {(0, 1), (1, 2)}),
        ([3, 1, 2], {(0, 1), (1, 2), (0, 2)}),
        ([2, 2, 2], {(0, 1), (1, 2)}),
        ([], set()),
        ([5], set()),
    ],
)
def test_build_hvg_examples(weights, expected):
    graph = hvg.build_hvg(WeightSeries.from_weights(weights))

    assert graph.edge_set() == expected
    assert graph.node_count == len(weights)


def test_build_hvg_matches_bruteforce_on_random_series():
    """Test the linear sweep against the quadratic definition."""
    rng = np.random.default_rng(2024)
    for _ in range(100):
        length = int(rng.integers(2, 501))
        series = WeightSeries.from_weights(list(rng.uniform(size=length)))

        assert hvg.build_hvg(series).edges == hvg.build_hvg_bruteforce(series).edges


def test_build_hvg_matches_bruteforce_with_ties():
    rng = np.random.default_rng(99)
    for _ in range(20):
        length = int(rng.integers(2, 301))
        series = WeightSeries.from_weights(list(rng.integers(0, 4, size=length)))

        assert hvg.build_hvg(series).edges == hvg.build_hvg_bruteforce(series).edges


def test_build_hvg_never_crosses_documents():
    series = _series_from_docs([[1, 5, 2], [4, 1, 3], [2]])

    graph = hvg.build_hvg(series)

    assert graph.edges == hvg.build_hvg_bruteforce(series).edges
    for i, j in graph.edges:
        assert series.doc_ids[i] == series.doc_ids[j]


def test_monotone_series_gives_path():
    rng = np.random.default_rng(5)
    for _ in range(1000):
        length = int(rng.integers(2, 60))
        weights = np.sort(rng.uniform(size=length))
        if rng.random() < 0.5:
            weights = weights[::-1]

        graph = hvg.build_hvg(WeightSeries.from_weights(list(weights)))

        assert graph.edges == [(i, i + 1) for i in range(length - 1)]


def test_hvg_edge_count_bounds():
    """Test the path lower bound and the 2n - 3 upper bound per document."""
    rng = np.random.default_rng(11)
    for _ in range(1000):
        docs = [list(rng.uniform(size=int(rng.integers(2, 40)))) for _ in range(int(rng.integers(1, 4)))]
        series = _series_from_docs(docs)

        graph = hvg.build_hvg(series)

        for start, end in series.doc_boundaries:
            inside = [(i, j) for i, j in graph.edges if start <= i < end]
            assert len(inside) >= end - start - 1
            assert len(inside) <= 2 * (end - start) - 3
        assert {(i, i + 1) for s, e in series.doc_boundaries for i in range(s, e - 1)} <= graph.edge_set()


def test_build_hvg_scales_linearly():
    """Test that doubling the series at most ~doubles construction time."""
    rng = np.random.default_rng(3)
    small = WeightSeries.from_weights(list(rng.uniform(size=100_000)))
    large = WeightSeries.from_weights(list(rng.uniform(size=200_000)))

    def best_of_three(series):
        times = []
        for _ in range(3):
            start = time.perf_counter()
            hvg.build_hvg(series)
            times.append(time.perf_counter() - start)
        return min(times)

    assert best_of_three(large) / best_of_three(small) <= 2.5


def test_compact_hvg_example():
    """Test compaction on a series with a repeated term."""
    # Arrange
    series = WeightSeries.from_weights([3, 1, 2, 4], terms=["a", "b", "a", "c"])
    graph = hvg.build_hvg(series)

    # Act
    chvg = hvg.compact_hvg(graph, series)

    # Assert
    assert graph.edge_set() == {(0, 1), (1, 2), (0, 2), (2, 3), (0, 3)}
    assert chvg.nodes == {"a", "b", "c"}
    assert chvg.multiplicity("a", "b") == 2
    assert chvg.multiplicity("a", "c") == 2
    assert chvg.dropped_self_loops == 1
    assert chvg.node_weight() == {"a": 2, "b": 1, "c": 1}


def test_compact_hvg_multi_weight():
    series = WeightSeries.from_weights([3, 1, 2, 4], terms=["a", "b", "a", "c"])

    chvg = hvg.compact_hvg(hvg.build_hvg(series), series, weight_mode="multi")

    assert chvg.node_weight() == {"a": 4, "b": 2, "c": 2}


def test_compact_hvg_single_pair():
    series = WeightSeries.from_weights([0.3, 0.9], terms=["a", "b"])

    chvg = hvg.compact_hvg(hvg.build_hvg(series), series)

    assert chvg.node_weight() == {"a": 1, "b": 1}


def test_compact_hvg_all_self_loops():
    series = WeightSeries.from_weights([1, 2, 1], terms=["a", "a", "a"])

    chvg = hvg.compact_hvg(hvg.build_hvg(series), series)

    assert chvg.nodes == {"a"}
    assert chvg.node_weight() == {"a": 0}
    assert chvg.graph.number_of_edges() == 0


def test_compaction_merges_across_documents():
    series = WeightSeries(
        tier=1,
        doc_ids=["d1", "d1", "d2", "d2"],
        terms=["a", "b", "b", "a"],
        weights=[1.0, 2.0, 1.0, 2.0],
        doc_boundaries=[(0, 2), (2, 4)],
    )

    chvg = hvg.compact_hvg(hvg.build_hvg(series), series)

    assert chvg.multiplicity("a", "b") == 2
    assert chvg.node_weight() == {"a": 1, "b": 1}


def test_compaction_conserves_edges():
    """Test that multiplicities plus dropped self-loops equal the HVG edges."""
    rng = np.random.default_rng(17)
    for _ in range(50):
        length = int(rng.integers(2, 300))
        terms = [f"w{k}" for k in rng.integers(0, 15, size=length)]
        series = WeightSeries.from_weights(list(rng.uniform(size=length)), terms=terms)
        graph = hvg.build_hvg(series)

        chvg = hvg.compact_hvg(graph, series)

        assert chvg.total_multiplicity() + chvg.dropped_self_loops == len(graph)
        assert chvg.nodes == set(terms)


def test_compact_hvg_rejects_other_series():
    series = WeightSeries.from_weights([1, 2, 3])

    with pytest.raises(ValueError):
        hvg.compact_hvg(hvg.build_hvg(series), WeightSeries.from_weights([1, 2]))


def _chvg_with_weights(weights, tier=1):
    """CHVG where each listed term has ``weight`` private leaf neighbours."""
    graph = nx.Graph()
    for term, weight in weights.items():
        graph.add_node(term)
        for k in range(weight):
            graph.add_edge(term, f"__{term}_{k}", multiplicity=1)
    return ChvgGraph(graph=graph, tier=tier)


def test_rank_terms_breaks_ties_by_term():
    ranked = hvg.rank_terms(_chvg_with_weights({"y": 5, "x": 5, "z": 2}), StopDictionary())

    assert ranked.terms[:3] == [("x", 5), ("y", 5), ("z", 2)]


def test_rank_terms_drops_stop_words():
    ranked = hvg.rank_terms(_chvg_with_weights({"the": 9, "retrieval": 4}), StopDictionary(frozenset({"the"})))

    assert ("the", 9) not in ranked.terms
    assert ranked.terms[0] == ("retrieval", 4)


def test_rank_terms_strict_policy_drops_ngrams():
    chvg = _chvg_with_weights({"information retrieval": 7}, tier=2)
    stop = StopDictionary(frozenset({"information"}))

    strict = hvg.rank_terms(chvg, stop, stopword_ngrams="strict")
    off = hvg.rank_terms(chvg, stop, stopword_ngrams="off")

    assert "information retrieval" not in dict(strict.terms)
    assert dict(off.terms)["information retrieval"] == 7


def test_rank_terms_is_permutation_of_kept_nodes():
    rng = np.random.default_rng(23)
    terms = [f"w{k}" for k in rng.integers(0, 40, size=400)]
    series = WeightSeries.from_weights(list(rng.uniform(size=400)), terms=terms)
    chvg = hvg.compact_hvg(hvg.build_hvg(series), series)
    stop = StopDictionary(frozenset({"w1", "w2", "w3"}))

    ranked = hvg.rank_terms(chvg, stop)

    assert sorted(term for term, _ in ranked) == sorted(chvg.nodes - stop.words)
    weights = [weight for _, weight in ranked]
    assert weights == sorted(weights, reverse=True)


def test_rank_terms_rejects_unknown_policy():
    with pytest.raises(ValueError):
        hvg.rank_terms(_chvg_with_weights({"a": 1}), StopDictionary(), stopword_ngrams="loose")


def test_write_ranking_dump(tmp_path):
    ranked = hvg.rank_terms(_chvg_with_weights({"x": 2, "y": 1}), StopDictionary(frozenset({"__x_0", "__x_1", "__y_0"})))
    path = tmp_path / "tier1.chvg.tsv"

    hvg.write_ranking_dump(ranked, str(path))

    assert path.read_text(encoding="utf-8").splitlines() == ["x\t2", "y\t1"]
