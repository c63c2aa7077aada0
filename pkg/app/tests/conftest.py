import json
from pathlib import Path
from typing import List

import numpy as np
import pytest

from app.models.document import Document, TokenizedDocument
from app.models.network import Nnht, TierSelection
from app.models.schemas.pipeline import PipelineConfig
from app.services import export, nnht

DATA_DIR = Path(__file__).resolve().parents[2] / "data"
SAMPLE_CORPUS = DATA_DIR / "sample_abstracts.jsonl"
SAMPLE_STOPWORDS = DATA_DIR / "stopwords_en.txt"

SYLLABLES = ["ka", "lo", "mi", "ne", "ru", "sa", "ti", "vo", "ze", "pu"]


def pseudo_word(index: int) -> str:
    """Distinct alphabetic word for every index below 10000."""
    return "".join(SYLLABLES[int(d)] for d in f"{index:04d}")


def synthetic_abstracts(
    n_docs: int = 200, tokens_per_doc: int = 500, vocab_size: int = 2000, seed: int = 7
) -> List[Document]:
    """
    Seeded Zipf-like corpus with recurring multi-word phrases.

    Words are drawn with probability proportional to 1 / rank; a bank of
    phrases built from frequent words is spliced in so bigrams and trigrams
    repeat across documents.
    """
    rng = np.random.default_rng(seed)
    vocab = [pseudo_word(i) for i in range(vocab_size)]
    p = 1.0 / np.arange(1, vocab_size + 1)
    p /= p.sum()
    phrases = [
        [vocab[i] for i in rng.choice(60, size=rng.integers(2, 4), replace=False)] for _ in range(80)
    ]

    docs = []
    for d in range(n_docs):
        draws = rng.choice(vocab_size, size=tokens_per_doc, p=p)
        splice = rng.random(tokens_per_doc) < 0.2
        picks = rng.integers(len(phrases), size=tokens_per_doc)
        words: List[str] = []
        for i in range(tokens_per_doc):
            if splice[i]:
                words.extend(phrases[picks[i]])
            else:
                words.append(vocab[draws[i]])
        docs.append(Document(id=f"syn{d:04d}", raw_text=" ".join(words[:tokens_per_doc])))
    return docs


@pytest.fixture
def tiny_documents() -> List[Document]:
    """
    Three short documents sharing a few phrases.
    """
    return [
        Document(id="d1", raw_text="Information retrieval systems rank documents for a query."),
        Document(id="d2", raw_text="Neural information retrieval uses a neural network to rank documents."),
        Document(id="d3", raw_text="Query expansion improves information retrieval systems."),
    ]


@pytest.fixture
def tfidf_corpus() -> List[TokenizedDocument]:
    """
    Two-document corpus with hand-checked TF-IDF values.
    """
    return [
        TokenizedDocument(id="d1", tokens=["search", "engine", "search"]),
        TokenizedDocument(id="d2", tokens=["engine", "index"]),
    ]


@pytest.fixture
def five_edge_network() -> Nnht:
    """
    information, retrieval -> information retrieval -> information retrieval system
    """
    selection = TierSelection(
        n_requested=2,
        unigrams=[("information", 5), ("retrieval", 4)],
        bigrams=[("information retrieval", 3)],
        trigrams=[("information retrieval system", 2)],
    )
    return nnht.build_nnht(selection)


@pytest.fixture
def corpus_file(tmp_path, tiny_documents) -> Path:
    """
    The tiny documents written as a jsonl corpus.
    """
    path = tmp_path / "corpus.jsonl"
    with path.open("w", encoding="utf-8") as f:
        for doc in tiny_documents:
            f.write(json.dumps({"id": doc.id, "text": doc.raw_text}) + "\n")
    return path


@pytest.fixture
def stopword_file(tmp_path) -> Path:
    path = tmp_path / "stop.txt"
    path.write_text("a\nfor\nto\nuses\n", encoding="utf-8")
    return path


@pytest.fixture
def output_prefix(tmp_path) -> str:
    return str(tmp_path / "out" / "nnht")


@pytest.fixture
def serial_config(corpus_file, stopword_file, output_prefix) -> PipelineConfig:
    """
    Single-worker config over the tiny corpus.
    """
    return PipelineConfig(
        input=str(corpus_file),
        stopwords=str(stopword_file),
        n=5,
        export=["csv", "gexf", "layout"],
        out_prefix=output_prefix,
        workers=1,
    )


@pytest.fixture(scope="session")
def synthetic_corpus() -> List[Document]:
    """
    About 10^5 tokens over 200 documents.
    """
    return synthetic_abstracts()


@pytest.fixture
def sample_corpus_path() -> str:
    return str(SAMPLE_CORPUS)


@pytest.fixture
def sample_stopwords_path() -> str:
    return str(SAMPLE_STOPWORDS)


def write_csv(path: Path, rows: List[str]) -> Path:
    """Edge CSV with the standard header and the given rows."""
    path.write_text("source,target,source_tier,target_tier\n" + "".join(row + "\n" for row in rows), encoding="utf-8")
    return path


@pytest.fixture
def star_csv(tmp_path) -> Path:
    """
    One word contained in 40 bigrams.
    """
    return write_csv(tmp_path / "star.csv", [f'"hub","hub w{i}",1,2' for i in range(40)])


@pytest.fixture
def power_law_csv(tmp_path) -> Path:
    """
    Words with out-degrees 1 (x8), 2 (x4), 4 (x2) and 8 (x1).
    """
    rows = []
    word = 0
    for degree, count in ((1, 8), (2, 4), (4, 2), (8, 1)):
        for _ in range(count):
            rows.extend(f'"u{word}","u{word} x{j}",1,2' for j in range(degree))
            word += 1
    return write_csv(tmp_path / "power.csv", rows)


@pytest.fixture
def five_edge_csv(tmp_path, five_edge_network) -> Path:
    path = tmp_path / "five.csv"
    export.write_edge_csv(five_edge_network, str(path))
    return path


@pytest.fixture
def make_csv(tmp_path):
    """
    Factory writing an edge CSV with the given rows under tmp_path.
    """
    def _make(name: str, rows: List[str]) -> Path:
        return write_csv(tmp_path / name, rows)

    return _make
