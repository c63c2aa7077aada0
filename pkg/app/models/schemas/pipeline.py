import os
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from app.core.config import settings
from app.core.errors import ConfigError

EXPORT_KINDS = ("csv", "gexf", "layout", "debug")


class PipelineConfig(BaseModel):
    """
    Options of a build or analysis run.

    Field names match the long command-line flags (dashes become
    underscores), so config files and flags share one vocabulary.
    """

    model_config = ConfigDict(extra="forbid")

    input: Optional[str] = None
    format: Literal["jsonl", "text-dir"] = "jsonl"
    stopwords: Optional[str] = None
    stemmer: Literal["porter", "none"] = "porter"
    n: int = 20
    chvg_weight: Literal["simple", "multi"] = "simple"
    stopword_ngrams: Literal["strict", "off"] = "strict"
    fit: Literal["loglog", "mle"] = "loglog"
    k_min: int = 1
    export: List[str] = ["csv", "gexf", "layout"]
    out_prefix: str = Field(default_factory=lambda: f"{settings.OUTPUT_DIR}/nnht")
    spiral_c: float = 1.0
    spiral_dtheta: float = 0.5
    workers: Optional[int] = None

    @field_validator("format", mode="before")
    def normalize_format(cls, v: Any) -> Any:
        """Accept ``text_dir`` as a spelling of ``text-dir``."""
        if isinstance(v, str):
            return v.strip().lower().replace("_", "-")
        return v

    @field_validator("export", mode="before")
    def assemble_export(cls, v: Any) -> List[str]:
        """Parse the export toggles from a comma-separated string."""
        if isinstance(v, str):
            v = [item.strip() for item in v.split(",") if item.strip()]
        if not isinstance(v, (list, tuple)):
            raise ValueError(v)
        unknown = [item for item in v if item not in EXPORT_KINDS]
        if unknown:
            raise ValueError(f"unknown export kind(s): {', '.join(unknown)}")
        return list(dict.fromkeys(v))

    @field_validator("n", "k_min")
    def check_positive_int(cls, v: int) -> int:
        if v < 1:
            raise ValueError("must be >= 1")
        return v

    @field_validator("spiral_c", "spiral_dtheta")
    def check_positive_float(cls, v: float) -> float:
        if not v > 0:
            raise ValueError("must be > 0")
        return v

    @field_validator("workers")
    def check_workers(cls, v: Optional[int]) -> Optional[int]:
        if v is not None and v < 1:
            raise ValueError("must be >= 1")
        return v

    @property
    def worker_count(self) -> int:
        """Workers to use; ``None`` resolves to the available parallelism."""
        if self.workers is not None:
            return self.workers
        if settings.WORKERS is not None:
            return settings.WORKERS
        return os.cpu_count() or 1

    @property
    def fit_method(self) -> str:
        return "loglog_ls" if self.fit == "loglog" else "mle"

    @classmethod
    def from_sources(cls, *sources: Dict[str, Any]) -> "PipelineConfig":
        """
        Build a config from layered sources; later sources win.

        ``None`` values are treated as "not given" so unset flags never
        override config-file values.
        """
        merged: Dict[str, Any] = {}
        for source in sources:
            merged.update({key: value for key, value in source.items() if value is not None})
        try:
            return cls(**merged)
        except ValidationError as e:
            problems = "; ".join(
                f"{'.'.join(str(part) for part in error['loc']) or 'config'}: {error['msg']}"
                for error in e.errors()
            )
            raise ConfigError(f"invalid configuration: {problems}", stage="config") from e
