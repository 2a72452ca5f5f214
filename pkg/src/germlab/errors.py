"""Exception hierarchy shared by the library and the command line.

Each class carries the process exit code the CLI uses for it.
"""

from __future__ import annotations


class GermlabError(Exception):
    exit_code = 1

    def __init__(self, message: str, *, invariant: str | None = None):
        super().__init__(message)
        self.invariant = invariant

    def labelled(self, invariant: str) -> "GermlabError":
        if self.invariant is None:
            self.invariant = invariant
        return self

    def __str__(self):
        msg = super().__str__()
        return f"{self.invariant}: {msg}" if self.invariant else msg


class InputError(GermlabError, ValueError):
    """Malformed or inconsistent input."""

    exit_code = 1


class DegenerateGermError(GermlabError):
    """The pair (X, f) is not of finite singularity type."""

    exit_code = 2


class NotFiniteError(GermlabError):
    """A colength that should be finite is infinite (not A-finite, not an ICIS, ...)."""

    exit_code = 2


class NonRealizableError(GermlabError):
    """Weights and degrees that no A-finite germ can have."""

    exit_code = 2


class GenericityError(GermlabError):
    """Random choices disagreed even after escalating the coefficient range."""

    exit_code = 3

    def __init__(self, message: str, values=None, *, invariant: str | None = None):
        super().__init__(message, invariant=invariant)
        self.values = values


class InconsistencyError(GermlabError):
    """Computed invariants violate an identity they must satisfy."""

    exit_code = 2
