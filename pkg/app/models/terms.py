from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
from scipy import sparse

VALID_TIERS = (1, 2, 3)
TIER_NAMES = {1: "unigram", 2: "bigram", 3: "trigram"}


@dataclass(frozen=True)
class NGram:
    """Contiguous run of 1 to 3 normalized tokens."""

    tokens: Tuple[str, ...]

    def __post_init__(self):
        if len(self.tokens) not in VALID_TIERS:
            raise ValueError(f"n-gram must have 1 to 3 tokens, got {len(self.tokens)}")
        if any(not token for token in self.tokens):
            raise ValueError("n-gram tokens must be non-empty")

    @property
    def n(self) -> int:
        return len(self.tokens)

    @property
    def text(self) -> str:
        """Canonical form: tokens joined by a single space."""
        return " ".join(self.tokens)

    @classmethod
    def parse(cls, text: str) -> "NGram":
        return cls(tuple(text.split(" ")))

    def __str__(self) -> str:
        return self.text


@dataclass
class TermWeightTable:
    """
    TF-IDF weights of one tier.

    Rows of ``counts`` follow ``doc_ids``; columns follow ``terms`` (sorted).
    Weights are ``counts * idf`` and are derived on lookup, so terms whose
    weight is zero stay visible in every row they occur in.
    """

    tier: int
    doc_ids: List[str]
    terms: List[str]
    counts: sparse.csr_matrix
    doc_freq: np.ndarray
    idf: np.ndarray
    _term_index: Dict[str, int] = field(init=False, repr=False)
    _doc_index: Dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._term_index = {term: i for i, term in enumerate(self.terms)}
        self._doc_index = {doc_id: i for i, doc_id in enumerate(self.doc_ids)}

    @property
    def corpus_size(self) -> int:
        return len(self.doc_ids)

    def __contains__(self, term: str) -> bool:
        return term in self._term_index

    def lookup(self, term: str, doc_id: str) -> float:
        """TF-IDF of ``term`` in document ``doc_id`` (0.0 when absent from it)."""
        col = self._term_index[term]
        return float(self.counts[self._doc_index[doc_id], col] * self.idf[col])

    def row(self, doc_id: str) -> Dict[str, float]:
        """Every term occurring in one document with its weight."""
        r = self._doc_index[doc_id]
        start, end = self.counts.indptr[r], self.counts.indptr[r + 1]
        cols = self.counts.indices[start:end]
        values = self.counts.data[start:end] * self.idf[cols]
        return {self.terms[col]: float(value) for col, value in zip(cols, values)}

    def max_tfidf(self) -> np.ndarray:
        """Per-term maximum TF-IDF over all documents, in ``terms`` order."""
        if not self.terms:
            return np.zeros(0)
        max_count = self.counts.max(axis=0).toarray().ravel()
        return max_count * self.idf


@dataclass
class WeightSeries:
    """
    Positional (term, weight) sequence of one tier in corpus text order.

    ``doc_boundaries`` holds one half-open ``(start, end)`` index range per
    document, in corpus order.
    """

    tier: int
    doc_ids: List[str] = field(default_factory=list)
    terms: List[str] = field(default_factory=list)
    weights: List[float] = field(default_factory=list)
    doc_boundaries: List[Tuple[int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.terms)

    @classmethod
    def from_weights(cls, weights: List[float], terms: List[str] = None, tier: int = 1) -> "WeightSeries":
        """Single-document series."""
        terms = terms if terms is not None else [str(i) for i in range(len(weights))]
        if len(terms) != len(weights):
            raise ValueError("terms and weights must have the same length")
        boundaries = [(0, len(weights))] if weights else []
        return cls(
            tier=tier,
            doc_ids=["doc"] * len(weights),
            terms=list(terms),
            weights=[float(w) for w in weights],
            doc_boundaries=boundaries,
        )
