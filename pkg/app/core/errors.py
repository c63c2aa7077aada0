"""
Error hierarchy shared by the pipeline services, the CLI and the API.
"""
from typing import Optional


class NnhtError(Exception):
    """Base class for all pipeline errors."""

    def __init__(self, message: str, stage: Optional[str] = None):
        super().__init__(message)
        self.message = message
        self.stage = stage

    def __str__(self) -> str:
        if self.stage:
            return f"[{self.stage}] {self.message}"
        return self.message

    def __reduce__(self):
        # Errors cross joblib worker boundaries
        return (self.__class__, (self.message, self.stage))


class ConfigError(NnhtError):
    """Invalid configuration value or config file."""


class CorpusError(NnhtError):
    """Corpus or stop-dictionary could not be loaded."""


class WeightingError(NnhtError):
    """Term weight table and weight series are inconsistent."""


class ExportError(NnhtError):
    """Network file could not be written or parsed."""


class InsufficientDataError(NnhtError):
    """Too few degree bins to fit a power law."""


class PipelineError(NnhtError):
    """A stage failure, tagged with exactly one stage name."""

    def __init__(self, stage: str, cause: BaseException):
        message = cause.message if isinstance(cause, NnhtError) else str(cause)
        super().__init__(message, stage=stage)
        self.cause = cause

    def __reduce__(self):
        return (self.__class__, (self.stage, self.cause))
