"""Exception types shared across the package."""


class MovieSimError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MovieSimError, ValueError):
    """Input data violates a documented invariant (bad manifest, bad CSV row, ...)."""


class ParameterError(MovieSimError, ValueError):
    """A numeric or structural parameter is outside its documented range."""


class ArtifactVersionError(MovieSimError):
    """A persisted artifact carries a format version this build cannot read."""


class ArtifactIntegrityError(MovieSimError):
    """A persisted artifact is truncated, corrupted, or fails structural checks."""


class StageError(MovieSimError):
    """A pipeline stage failed; carries the stage name and the underlying cause."""

    def __init__(self, stage: str, cause: BaseException):
        super().__init__(f"stage '{stage}' failed: {cause}")
        self.stage = stage
        self.cause = cause
