from dataclasses import dataclass, field
from typing import FrozenSet, List


@dataclass(frozen=True)
class Document:
    """One corpus record: a text fragment with a unique id."""

    id: str
    raw_text: str

    def __repr__(self):
        return f"<Document {self.id}: {len(self.raw_text)} chars>"


@dataclass(frozen=True)
class TokenizedDocument:
    """Normalized token sequence of a document, in text order."""

    id: str
    tokens: List[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.tokens)

    def __repr__(self):
        return f"<TokenizedDocument {self.id}: {len(self.tokens)} tokens>"


@dataclass(frozen=True)
class StopDictionary:
    """Normalized words excluded from ranking."""

    words: FrozenSet[str] = frozenset()

    def __contains__(self, token: str) -> bool:
        return token in self.words

    def __len__(self) -> int:
        return len(self.words)
