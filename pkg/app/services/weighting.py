import logging
from pathlib import Path
from typing import List

import numpy as np
import pandas as pd
from scipy import sparse
from sklearn.feature_extraction.text import CountVectorizer

from app.core.errors import WeightingError
from app.models.document import TokenizedDocument
from app.models.terms import VALID_TIERS, NGram, TermWeightTable, WeightSeries

logger = logging.getLogger(__name__)


def _check_tier(n: int) -> None:
    if n not in VALID_TIERS:
        raise ValueError(f"n-gram size must be 1, 2 or 3, got {n}")


def ngram_texts(tokens: List[str], n: int) -> List[str]:
    """Canonical strings of the width-n windows over ``tokens``."""
    _check_tier(n)
    return [" ".join(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def extract_ngrams(doc: TokenizedDocument, n: int) -> List[NGram]:
    """
    Slide a width-n window over a document's tokens.

    Args:
        doc: Tokenized document
        n: Window width, 1 to 3

    Returns:
        List[NGram]: ``max(0, len(tokens) - n + 1)`` n-grams in text order
    """
    _check_tier(n)
    tokens = doc.tokens
    return [NGram(tuple(tokens[i : i + n])) for i in range(len(tokens) - n + 1)]


def compute_tfidf(corpus: List[TokenizedDocument], n: int) -> TermWeightTable:
    """
    Weight every n-gram of every document by TF-IDF.

    tf is the raw window count in the document, idf is
    ``log2(D / df)``.

    Args:
        corpus: Tokenized documents
        n: N-gram size

    Returns:
        TermWeightTable: Weights for tier n
    """
    _check_tier(n)
    if not corpus:
        raise WeightingError("cannot weight an empty corpus")

    doc_ids = [doc.id for doc in corpus]
    if not any(len(doc.tokens) >= n for doc in corpus):
        # CountVectorizer rejects an empty vocabulary
        return TermWeightTable(
            tier=n,
            doc_ids=doc_ids,
            terms=[],
            counts=sparse.csr_matrix((len(corpus), 0), dtype=np.int64),
            doc_freq=np.zeros(0, dtype=np.int64),
            idf=np.zeros(0),
        )

    vectorizer = CountVectorizer(analyzer=lambda tokens: ngram_texts(tokens, n), lowercase=False)
    counts = vectorizer.fit_transform([doc.tokens for doc in corpus]).tocsr()
    terms = list(vectorizer.get_feature_names_out())

    doc_freq = np.diff(counts.tocsc().indptr).astype(np.int64)
    idf = np.log2(len(corpus) / doc_freq)

    logger.debug("Tier %d: %d distinct terms over %d documents", n, len(terms), len(corpus))
    return TermWeightTable(tier=n, doc_ids=doc_ids, terms=terms, counts=counts, doc_freq=doc_freq, idf=idf)


def build_weight_series(corpus: List[TokenizedDocument], table: TermWeightTable, n: int) -> WeightSeries:
    """
    Lay out each n-gram occurrence with its document's TF-IDF, in text order.

    Args:
        corpus: Tokenized documents, same as used for ``table``
        table: TF-IDF table of tier n
        n: N-gram size

    Returns:
        WeightSeries: Concatenated per-document series with boundaries
    """
    _check_tier(n)
    if table.tier != n:
        raise WeightingError(f"weight table is for tier {table.tier}, not {n}")

    series = WeightSeries(tier=n)
    for doc in corpus:
        start = len(series.terms)
        texts = ngram_texts(doc.tokens, n)
        if texts:
            try:
                weights = table.row(doc.id)
            except KeyError:
                raise WeightingError(f"document {doc.id} missing from tier {n} table") from None
            for text in texts:
                if text not in weights:
                    raise WeightingError(f"term '{text}' of document {doc.id} missing from tier {n} table")
                series.terms.append(text)
                series.weights.append(weights[text])
            series.doc_ids.extend([doc.id] * len(texts))
        series.doc_boundaries.append((start, len(series.terms)))
    return series


def write_tfidf_dump(table: TermWeightTable, path: str) -> None:
    """Write ``term<TAB>df<TAB>max_tfidf`` sorted by term."""
    frame = pd.DataFrame(
        {"term": table.terms, "df": table.doc_freq.astype(int), "max_tfidf": table.max_tfidf()}
    ).sort_values("term", kind="mergesort")
    frame.to_csv(Path(path), sep="\t", index=False, header=False, float_format="%.6g", lineterminator="\n")
