"""Exception taxonomy shared across the toolkit.

Every error raised by the library derives from :class:`SentiSelectError`
and carries a stable ``error_class`` string so the CLI can emit
machine-readable failures.
"""

from __future__ import annotations


class SentiSelectError(Exception):
    """Base class for all toolkit errors."""

    error_class = "error"


class InvalidArgumentError(SentiSelectError, ValueError):
    """An argument violated a documented precondition."""

    error_class = "invalid-argument"


class ParseError(SentiSelectError, ValueError):
    """Malformed input data; carries the location when known."""

    error_class = "parse-error"

    def __init__(self, message: str, *, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += f"{source}:"
        if line is not None:
            where += f"line {line}: "
        super().__init__(where + message)


class ValidationError(SentiSelectError, ValueError):
    """A record or document failed schema validation."""

    error_class = "validation-error"

    def __init__(self, message: str, violations: list[str] | None = None):
        self.violations = violations or [message]
        super().__init__(message)


class BackendUnavailableError(SentiSelectError, RuntimeError):
    """A remote backend could not be reached or answered with an error."""

    error_class = "backend-unavailable"


class EmptyResultError(SentiSelectError, RuntimeError):
    """A backend answered successfully but produced no candidates."""

    error_class = "empty-result"


class UnsupportedLanguageError(SentiSelectError, ValueError):
    """A scorer has no resources for the requested language."""

    error_class = "unsupported-language"


class ScorerError(SentiSelectError, RuntimeError):
    """A scorer backend failed to produce a score."""

    error_class = "scorer-error"


class ScoringStageError(SentiSelectError, RuntimeError):
    """Scorer failure during re-ranking, tagged with the pipeline stage."""

    error_class = "scoring-stage-error"

    def __init__(self, stage: str, source_id: int, message: str):
        self.stage = stage  # "source-scoring" or "candidate-scoring"
        self.source_id = source_id
        super().__init__(f"[{stage}] segment {source_id}: {message}")


class DataMismatchError(SentiSelectError, ValueError):
    """Corpus inputs do not line up; carries the offending ids."""

    error_class = "data-mismatch"

    def __init__(self, message: str, ids: list[int] | None = None):
        self.ids = ids or []
        super().__init__(message)


class UndefinedStatisticError(SentiSelectError, ArithmeticError):
    """A statistic is undefined for the given data (e.g. zero variance)."""

    error_class = "undefined-statistic"


class ConfigError(SentiSelectError, ValueError):
    """Bad pipeline configuration (unknown key, missing required value)."""

    error_class = "config-error"
