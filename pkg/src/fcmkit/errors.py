"""Exception types shared across the package."""


class FcmKitError(Exception):
    """Base class for all fcmkit errors."""


class ValidationError(FcmKitError):
    """A model or hierarchy violates its structural invariants.

    Carries the full violation report so callers can show every problem
    at once instead of the first one found.
    """

    def __init__(self, message: str, report: list[str] | None = None):
        super().__init__(message)
        self.report = list(report or [])


class RepairError(FcmKitError):
    """A printed matrix row cannot be reconciled with its reference sparsity."""


class PersistenceError(FcmKitError):
    """Malformed or unsupported document (carries line/field context in the message)."""


class NumericError(FcmKitError):
    """NaN or infinity appeared during iteration or training."""


class MetricError(FcmKitError):
    """A metric is undefined for the given data (e.g. accuracy of an empty matrix)."""
