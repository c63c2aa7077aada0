"""
Tests for n-gram extraction, TF-IDF tables and weight series.
"""
import math

import pytest

from app.core.errors import WeightingError
from app.models.document import TokenizedDocument
from app.models.terms import NGram
from app.services import corpus, weighting


def _doc(*tokens, doc_id="d"):
    return TokenizedDocument(id=doc_id, tokens=list(tokens))


def test_extract_bigrams():
    ngrams = weighting.extract_ngrams(_doc("a", "b", "c"), 2)

    assert [g.text for g in ngrams] == ["a b", "b c"]


def test_extract_ngrams_short_document():
    assert weighting.extract_ngrams(_doc("a", "b"), 3) == []


def test_extract_ngrams_preserves_repeats():
    ngrams = weighting.extract_ngrams(_doc("a", "b", "a", "b"), 2)

    assert ngrams == [NGram(("a", "b")), NGram(("b", "a")), NGram(("a", "b"))]


@pytest.mark.parametrize("length", [0, 1, 2, 3, 7])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_extract_ngrams_length_law(length, n):
    doc = _doc(*[f"t{i}" for i in range(length)])

    assert len(weighting.extract_ngrams(doc, n)) == max(0, length - n + 1)


@pytest.mark.parametrize("n", [0, 4])
def test_extract_ngrams_rejects_bad_size(n):
    with pytest.raises(ValueError):
        weighting.extract_ngrams(_doc("a"), n)


def test_compute_tfidf_values(tfidf_corpus):
    """Test TF-IDF against hand-computed values."""
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    assert table.lookup("search", "d1") == pytest.approx(2.0)
    assert table.lookup("engine", "d1") == pytest.approx(0.0)
    assert table.lookup("engine", "d2") == pytest.approx(0.0)
    assert table.lookup("index", "d2") == pytest.approx(1.0)
    assert table.row("d1") == pytest.approx({"search": 2.0, "engine": 0.0})
    assert table.doc_freq[table.terms.index("engine")] == 2


def test_term_in_every_document_has_zero_weight(tfidf_corpus):
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    assert "engine" in table
    assert table.row("d1")["engine"] == 0.0
    assert table.row("d2")["engine"] == 0.0


def test_single_document_corpus_has_zero_weights():
    table = weighting.compute_tfidf([_doc("x", "y", "x")], 1)

    assert all(weight == 0.0 for weight in table.row("d").values())
    assert set(table.row("d")) == {"x", "y"}


def test_compute_tfidf_rejects_empty_corpus():
    with pytest.raises(WeightingError):
        weighting.compute_tfidf([], 1)


def test_compute_tfidf_without_windows():
    """Test a tier where no document is long enough."""
    table = weighting.compute_tfidf([_doc("a", "b")], 3)

    assert table.terms == []
    assert table.row("d") == {}


def test_idf_is_monotone_in_document_frequency():
    docs = [_doc("a", "b", "c", doc_id="1"), _doc("a", "b", doc_id="2"), _doc("a", doc_id="3")]
    table = weighting.compute_tfidf(docs, 1)
    idf = dict(zip(table.terms, table.idf))

    assert idf["c"] > idf["b"] > idf["a"]
    assert idf["c"] == pytest.approx(math.log2(3))


def test_duplicating_corpus_keeps_idf(tfidf_corpus):
    doubled = tfidf_corpus + [TokenizedDocument(id=doc.id + "'", tokens=doc.tokens) for doc in tfidf_corpus]

    original = weighting.compute_tfidf(tfidf_corpus, 1)
    scaled = weighting.compute_tfidf(doubled, 1)

    assert original.terms == scaled.terms
    assert list(original.idf) == pytest.approx(list(scaled.idf))


def test_build_weight_series_example(tfidf_corpus):
    """Test the positional series for the hand-computed corpus."""
    # Arrange
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    # Act
    series = weighting.build_weight_series(tfidf_corpus, table, 1)

    # Assert
    assert series.terms == ["search", "engine", "search", "engine", "index"]
    assert series.weights == pytest.approx([2.0, 0.0, 2.0, 0.0, 1.0])
    assert series.doc_boundaries == [(0, 3), (3, 5)]
    assert series.doc_ids == ["d1", "d1", "d1", "d2", "d2"]


def test_build_weight_series_single_token():
    docs = [_doc("a")]
    series = weighting.build_weight_series(docs, weighting.compute_tfidf(docs, 1), 1)

    assert series.terms == ["a"]
    assert series.weights == [0.0]


def test_series_matches_table(tiny_documents):
    """Test that every series entry carries its table weight."""
    docs = corpus.tokenize_corpus(tiny_documents, stemming="porter")
    for n in (1, 2, 3):
        table = weighting.compute_tfidf(docs, n)
        series = weighting.build_weight_series(docs, table, n)
        for doc_id, term, weight in zip(series.doc_ids, series.terms, series.weights):
            assert weight == pytest.approx(table.lookup(term, doc_id))
        assert len(series) == sum(max(0, len(doc) - n + 1) for doc in docs)


def test_build_weight_series_rejects_foreign_table(tfidf_corpus):
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    with pytest.raises(WeightingError, match="missing"):
        weighting.build_weight_series([_doc("unseen", doc_id="d1")], table, 1)


def test_build_weight_series_rejects_wrong_tier(tfidf_corpus):
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    with pytest.raises(WeightingError, match="tier"):
        weighting.build_weight_series(tfidf_corpus, table, 2)


def test_write_tfidf_dump(tmp_path, tfidf_corpus):
    path = tmp_path / "tier1.tfidf.tsv"

    weighting.write_tfidf_dump(weighting.compute_tfidf(tfidf_corpus, 1), str(path))

    assert path.read_text(encoding="utf-8").splitlines() == ["engine\t2\t0", "index\t1\t1", "search\t1\t2"]


def test_build_weight_series_empty_corpus(tfidf_corpus):
    table = weighting.compute_tfidf(tfidf_corpus, 1)

    series = weighting.build_weight_series([], table, 1)

    assert len(series) == 0
    assert series.doc_boundaries == []
