"""Exception hierarchy shared by every aspectscope module.

The service layer maps these onto HTTP statuses; the CLI maps them onto
exit code 2. Everything raised on a user-facing path derives from
:class:`AspectScopeError`.
"""


class AspectScopeError(Exception):
    """Base class for all aspectscope errors."""

    code = "error"


class IngestionError(AspectScopeError):
    """Metadata file cannot be parsed (missing column, unreadable file)."""

    code = "ingestion_error"


class TrainingError(AspectScopeError):
    """A model cannot be trained from the given inputs."""

    code = "training_error"


class EmptyQueryError(AspectScopeError):
    """A query was empty, or contained no content words after tokenizing."""

    code = "empty_query"


class UnknownSlotError(AspectScopeError):
    """No model trained for the requested (aspect, covid-scope) slot."""

    code = "unknown_slot"

    def __init__(self, slot: str, available: list[str]):
        self.slot = slot
        self.available = sorted(available)
        super().__init__(
            f"no model for slot {slot!r}; available slots: "
            + (", ".join(self.available) or "none")
        )


class NotAvailableError(AspectScopeError):
    """A resource this deployment has not built (projection, labels, catalog)."""

    code = "not_available"


class UnknownTopicError(AspectScopeError):
    code = "unknown_topic"


class UnknownPaperError(AspectScopeError):
    code = "unknown_paper"


class UnknownConceptError(AspectScopeError):
    code = "unknown_concept"


class DimensionMismatchError(AspectScopeError):
    code = "dimension_mismatch"


class ArtifactError(AspectScopeError):
    """Persistence layer failures (bad magic, corruption, version skew)."""

    code = "artifact_error"


class NotAnArtifactError(ArtifactError):
    code = "not_an_artifact"


class CorruptArtifactError(ArtifactError):
    code = "corrupt_artifact"


class UnsupportedVersionError(ArtifactError):
    code = "unsupported_version"


class KindMismatchError(ArtifactError):
    code = "kind_mismatch"


class ConfigError(AspectScopeError):
    code = "config_error"
