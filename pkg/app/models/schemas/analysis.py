from collections import Counter
from typing import Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field


class DegreeDistribution(BaseModel):
    """Histogram of node degrees: degree k -> number of nodes."""

    counts: Dict[int, int] = Field(default_factory=dict)
    total_nodes: int = 0

    @classmethod
    def from_degrees(cls, degrees: Iterable[int]) -> "DegreeDistribution":
        counter = Counter(int(d) for d in degrees)
        return cls(counts=dict(sorted(counter.items())), total_nodes=sum(counter.values()))

    @classmethod
    def from_counts(cls, counts: Dict[int, int]) -> "DegreeDistribution":
        cleaned = {int(k): int(c) for k, c in sorted(counts.items()) if c > 0}
        return cls(counts=cleaned, total_nodes=sum(cleaned.values()))

    def edge_count(self) -> int:
        """Sum of k * count(k), i.e. the edge total for out-degrees."""
        return sum(k * c for k, c in self.counts.items())

    def to_rows(self) -> List[Tuple[int, int, float]]:
        """``(k, count, p(k))`` rows, ascending k."""
        total = self.total_nodes or 1
        return [(k, c, c / total) for k, c in sorted(self.counts.items())]


class PowerLawFit(BaseModel):
    """Fitted model p(k) = c * k^(-alpha)."""

    alpha: float
    c: float
    k_min: int
    method: Literal["loglog_ls", "mle"]
    residual: Optional[float] = None
    bins_used: int
    nodes_used: int


class SweepPoint(BaseModel):
    """Network size and fit for one N in a size sweep."""

    n: int
    nodes: int
    edges: int
    fit: Optional[PowerLawFit] = None
    error: Optional[str] = None
