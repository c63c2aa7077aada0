import json
import logging
import re
import unicodedata
from functools import lru_cache
from pathlib import Path
from typing import Callable, List, Optional

from joblib import Parallel, delayed
from nltk.stem import PorterStemmer
from tqdm import tqdm

from app.core.errors import CorpusError
from app.models.document import Document, StopDictionary, TokenizedDocument

logger = logging.getLogger(__name__)

CORPUS_FORMATS = ("jsonl", "text-dir")
STEMMING_MODES = ("porter", "none")

# Runs of letters and digits; everything else (underscore included) separates tokens
TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)

# Reference algorithm, not NLTK's extended rule set
_porter = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@lru_cache(maxsize=200_000)
def _porter_stem(token: str) -> str:
    # Porter alone is not idempotent (character -> charact); repeat until stable
    stem = _porter.stem(token)
    while stem != token:
        token, stem = stem, _porter.stem(stem)
    return stem


def get_stemmer(stemming: str) -> Callable[[str], str]:
    """
    Return the token stemmer for a stemming mode.

    Args:
        stemming: ``porter`` or ``none``

    Returns:
        Callable[[str], str]: Stemming function
    """
    if stemming == "porter":
        return _porter_stem
    if stemming == "none":
        return lambda token: token
    raise ValueError(f"unknown stemming mode: {stemming}")


def normalize_text(text: str, stemming: str = "porter") -> List[str]:
    """NFKC-normalize, casefold, split on non-alphanumeric runs, and stem."""
    stem = get_stemmer(stemming)
    folded = unicodedata.normalize("NFKC", unicodedata.normalize("NFKC", text).casefold())
    tokens = []
    for match in TOKEN_RE.findall(folded):
        token = stem(match)
        if token:
            tokens.append(token)
    return tokens


def normalize_and_tokenize(doc: Document, stemming: str = "porter") -> TokenizedDocument:
    """
    Turn a document into its normalized token sequence.

    Args:
        doc: Source document
        stemming: ``porter`` or ``none``

    Returns:
        TokenizedDocument: Tokens in text order
    """
    return TokenizedDocument(id=doc.id, tokens=normalize_text(doc.raw_text, stemming))


def _tokenize_batch(docs: List[Document], stemming: str) -> List[TokenizedDocument]:
    return [normalize_and_tokenize(doc, stemming) for doc in docs]


def tokenize_corpus(
    docs: List[Document], stemming: str = "porter", workers: int = 1, batch_size: int = 256
) -> List[TokenizedDocument]:
    """
    Tokenize a corpus, optionally across worker processes.

    Output order always equals input order.
    """
    if workers <= 1 or len(docs) <= batch_size:
        return [normalize_and_tokenize(doc, stemming) for doc in tqdm(docs, desc="tokenize", disable=None, leave=False)]

    batches = [docs[i : i + batch_size] for i in range(0, len(docs), batch_size)]
    results = Parallel(n_jobs=workers)(delayed(_tokenize_batch)(batch, stemming) for batch in batches)
    return [tokenized for batch in results for tokenized in batch]


def _load_jsonl(path: Path) -> List[Document]:
    docs = []
    with path.open("r", encoding="utf-8") as f:
        for line_number, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except json.JSONDecodeError as e:
                raise CorpusError(f"{path}:{line_number}: malformed JSON ({e.msg})") from e
            if not isinstance(record, dict):
                raise CorpusError(f"{path}:{line_number}: expected a JSON object")
            doc_id, text = record.get("id"), record.get("text")
            if not isinstance(doc_id, str) or not doc_id:
                raise CorpusError(f"{path}:{line_number}: missing or empty string field 'id'")
            if not isinstance(text, str):
                raise CorpusError(f"{path}:{line_number}: missing string field 'text'")
            docs.append(Document(id=doc_id, raw_text=text))
    return docs


def _load_text_dir(path: Path) -> List[Document]:
    files = sorted((p for p in path.iterdir() if p.is_file()), key=lambda p: p.name)
    if not files:
        raise CorpusError(f"{path}: directory contains no regular files")
    return [Document(id=p.name, raw_text=p.read_text(encoding="utf-8")) for p in files]


def check_unique_ids(docs: List[Document]) -> None:
    """Raise CorpusError on the first repeated document id."""
    seen = set()
    for doc in docs:
        if doc.id in seen:
            raise CorpusError(f"duplicate document id: {doc.id}")
        seen.add(doc.id)


def load_corpus(source_path: str, format: str = "jsonl") -> List[Document]:
    """
    Load documents from a JSON-lines file or a directory of text files.

    Args:
        source_path: File (jsonl) or directory (text-dir)
        format: ``jsonl`` or ``text-dir``

    Returns:
        List[Document]: Documents in line order (jsonl) or file-name order
    """
    fmt = format.replace("_", "-")
    if fmt not in CORPUS_FORMATS:
        raise CorpusError(f"unknown corpus format: {format}")

    path = Path(source_path)
    if not path.exists():
        raise CorpusError(f"corpus path not found: {source_path}")

    if fmt == "jsonl":
        if not path.is_file():
            raise CorpusError(f"{source_path}: jsonl corpus must be a file")
        docs = _load_jsonl(path)
    else:
        if not path.is_dir():
            raise CorpusError(f"{source_path}: text-dir corpus must be a directory")
        docs = _load_text_dir(path)

    check_unique_ids(docs)

    if not docs:
        logger.warning("Corpus %s is empty", source_path)
    else:
        logger.info("Loaded %d documents from %s", len(docs), source_path)
    return docs


def load_stop_dictionary(path: Optional[str], stemming: str = "porter") -> StopDictionary:
    """
    Load a stop-dictionary normalized like corpus tokens.

    Args:
        path: UTF-8 file with one word per line, or ``None`` for no dictionary
        stemming: Stemming mode shared with the corpus

    Returns:
        StopDictionary: Normalized stop words
    """
    if path is None:
        return StopDictionary()

    stop_path = Path(path)
    if not stop_path.is_file():
        raise CorpusError(f"stopword file not found: {path}")

    words = set()
    with stop_path.open("r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            words.update(normalize_text(line, stemming))

    logger.debug("Loaded %d stop words from %s", len(words), path)
    return StopDictionary(words=frozenset(words))


def stop_dictionary_from_words(words: List[str], stemming: str = "porter") -> StopDictionary:
    """Build a stop-dictionary from in-memory words (API requests)."""
    normalized = set()
    for word in words:
        normalized.update(normalize_text(word, stemming))
    return StopDictionary(words=frozenset(normalized))
