"""Exception hierarchy shared by all tilelab modules.

Every error carries a short machine-readable ``code`` which the CLI puts into
its JSON error payload.
"""

from __future__ import annotations


class TilelabError(Exception):
    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = self.details
        return out


class DomainError(TilelabError, ValueError):
    """Arguments outside an operation's domain."""

    code = "domain"


class InvalidProfileError(DomainError):
    code = "invalid-profile"


class ShapeError(DomainError):
    """Profile is not of the form (a, b, ..., b) with a < b."""

    code = "shape"


class StructuralError(DomainError):
    """A weight map references a (vertex, edge) pair that is not an incidence."""

    code = "structural"


class NotPartiteError(DomainError):
    code = "not-k-partite"


class UndefinedFrobeniusError(DomainError):
    code = "undefined-frobenius"


class FormatError(DomainError):
    """Malformed ``.hg`` input; ``line`` is 1-based."""

    code = "format"

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message, line=line)
        self.line = line


class ResourceError(TilelabError, RuntimeError):
    """A search exceeded its node budget."""

    code = "resource"
