from typing import List, Literal, Optional

from pydantic import BaseModel, Field

from app.models.schemas.analysis import DegreeDistribution, PowerLawFit


# Build summary schemas
class TierSummary(BaseModel):
    """Per-tier counts of a build."""
    tier: int
    name: str
    positions: int
    hvg_edges: int
    dropped_self_loops: int
    candidates: int
    selected: int


class BuildSummary(BaseModel):
    """Summary of a build run."""
    documents: int
    tokens: int
    n_requested: int
    tiers: List[TierSummary] = []
    nodes: int = 0
    edges: int = 0
    warnings: List[str] = []
    artifacts: List[str] = []


# Network schemas
class NodeOut(BaseModel):
    term: str
    tier: int
    weight: Optional[int] = None


class EdgeOut(BaseModel):
    source: str
    target: str


class NetworkOut(BaseModel):
    nodes: List[NodeOut] = []
    edges: List[EdgeOut] = []


# Request and response models
class DocumentIn(BaseModel):
    id: str = Field(min_length=1)
    text: str


class BuildRequest(BaseModel):
    """Inline corpus and options for a build."""
    documents: List[DocumentIn]
    stopwords: List[str] = []
    stemmer: Literal["porter", "none"] = "porter"
    n: int = Field(default=20, ge=1)
    chvg_weight: Literal["simple", "multi"] = "simple"
    stopword_ngrams: Literal["strict", "off"] = "strict"


class BuildResponse(BaseModel):
    summary: BuildSummary
    network: NetworkOut


class AnalyzeResponse(BaseModel):
    distribution: DegreeDistribution
    fit: PowerLawFit


class FragmentRequest(BaseModel):
    edges: List[EdgeOut]
    term: str
    radius: int = Field(default=1, ge=0)
