"""Error taxonomy shared across modules and surfaced as CLI exit codes."""

from __future__ import annotations


class QuasivarietyError(Exception):
    """Base class for package errors."""


class ParseError(QuasivarietyError):
    """Malformed input text (files, words, polynomial literals)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(prefix + message)


class GuardError(QuasivarietyError):
    """A brute-force guard was exceeded or a hypothesis check failed."""


class PreconditionError(QuasivarietyError):
    """A checked mathematical precondition does not hold; carries a witness."""

    def __init__(self, message: str, witness: object = None):
        self.witness = witness
        super().__init__(message)
