"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for all engine errors."""


class ValidationError(EngineError):
    """Input violates an operation precondition."""


class NotFoundError(EngineError):
    """Referenced entity does not exist."""


class GraphError(EngineError):
    """Block graph mutation would break the forest invariant."""


class ConflictError(EngineError):
    """A state-dependent guard rejected the operation."""


class ProviderError(EngineError):
    """Remote provider failed; `raw` holds the last raw response, if any."""

    def __init__(self, message: str, *, stage: str | None = None, raw=None):
        super().__init__(message)
        self.stage = stage
        self.raw = raw


class SchemaViolationError(ProviderError):
    """Provider reply failed schema validation after all retries."""


class NoEmbeddingError(EngineError):
    """No vector could be produced (e.g. every token out of vocabulary)."""


class PoolExhaustedError(EngineError):
    """Candidate pool has no unused member left for the requested refinement."""


class NotEnoughDataError(EngineError):
    """Metric needs more data points than the session provides."""


class StageError(EngineError):
    """Wraps an error from a named pipeline stage."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
