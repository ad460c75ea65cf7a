"""Error hierarchy shared by all switchdiag modules.

Every domain failure raises a subclass of :class:`DiagnosisError`; the
``code`` attribute gives CLI and HTTP layers a stable identifier.
"""

from __future__ import annotations


class DiagnosisError(Exception):
    """Base class for all domain errors."""

    code = "domain"


class ValidationError(DiagnosisError):
    """A network violates one or more structural invariants."""

    code = "validation"

    def __init__(self, message: str, diagnostics=()):
        super().__init__(message)
        self.diagnostics = tuple(diagnostics)


class InvalidFaultError(DiagnosisError):
    """A fault references unknown edges or uses disallowed constants."""

    code = "invalid-fault"


class ArityError(DiagnosisError):
    """An assignment or function has the wrong number of variables."""

    code = "arity"


class RangeError(DiagnosisError):
    """A numeric parameter is outside its documented range."""

    code = "range"


class PreconditionError(DiagnosisError):
    """An operation's documented precondition does not hold."""

    code = "precondition"


class ResourceLimitError(DiagnosisError):
    """An instance exceeds a configured size cap.

    ``fallback`` optionally carries a lower-confidence result computed
    before the cap was hit (e.g. a greedy bound).
    """

    code = "resource"

    def __init__(self, message: str, fallback=None):
        super().__init__(message)
        self.fallback = fallback


class TreeStructureError(DiagnosisError):
    """A decision tree is structurally malformed."""

    code = "tree-structure"


class DocumentError(DiagnosisError):
    """A serialized document cannot be parsed or fails validation."""

    code = "document"
