"""Exception hierarchy shared across the framework."""


class ChatkitError(Exception):
    """Base class for all framework errors."""


class KnowledgeParseError(ChatkitError):
    """Malformed knowledge markup. Carries file and, when known, line."""

    def __init__(self, message: str, file: str | None = None, line: int | None = None):
        self.file = file
        self.line = line
        where = ""
        if file:
            where = f" [{file}" + (f":{line}" if line is not None else "") + "]"
        super().__init__(message + where)


class KnowledgeReferenceError(ChatkitError):
    """A knowledge item references an undeclared slot class, type, or supertype."""


class EmptyInputError(ChatkitError):
    """User input is empty or whitespace-only."""


class ModelMissingError(ChatkitError):
    """An operation that needs a trained model was called without one."""


class TrainingDataError(ChatkitError):
    """Training examples are missing, malformed, or do not cover a declared label."""


class TopicError(ChatkitError):
    """Unknown session topic, or no topic left to choose from."""


class EngineInternalError(ChatkitError):
    """Engine invariant broken (e.g. action selection over an empty candidate list)."""


class ConfigError(ChatkitError):
    """Service or engine configuration is invalid or references missing files."""
