"""Exception types shared across the package."""

from __future__ import annotations


class MorphDesignError(Exception):
    """Base class for package errors."""


class InfeasibleError(MorphDesignError):
    """No admissible combination exists (zero-compatibility pair or budget).

    ``diagnostics`` carries whatever structured detail the failing operation
    can offer, e.g. the zero-valued pairs that block a composition.
    """

    def __init__(self, message: str, diagnostics: list | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or []


class DocumentError(MorphDesignError):
    """A problem document failed to parse or violates the schema.

    ``path`` locates the offending element (JSON pointer-ish list of keys),
    ``line`` is set for raw syntax errors.
    """

    def __init__(self, message: str, path: list | None = None, line: int | None = None):
        super().__init__(message)
        self.path = list(path) if path else []
        self.line = line

    def __str__(self) -> str:
        loc = ""
        if self.line is not None:
            loc = f" (line {self.line})"
        elif self.path:
            loc = " (at " + "/".join(str(p) for p in self.path) + ")"
        return super().__str__() + loc
