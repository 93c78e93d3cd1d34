"""Exception types shared across the package.

The CLI maps these onto exit codes: anything below is a usage/domain error
(exit 1); non-convergence and failed verifications are reported through
result objects, not exceptions.
"""

from __future__ import annotations


class FockmultError(Exception):
    """Base class for all errors raised by fockmult."""


class InvalidSpecError(FockmultError):
    """Monoid description is structurally invalid (bad table, bad rank...)."""


class InvalidElementError(FockmultError):
    """Element payload does not belong to the monoid."""


class UnsupportedOperationError(FockmultError):
    """Operation not defined for this monoid family (e.g. invert on Z+)."""


class CapacityError(FockmultError):
    """Requested window would exceed the capacity cap."""


class OutOfWindowError(FockmultError):
    """Element lies outside the window it was used with."""


class IncompatibleWindowError(FockmultError):
    """Two objects live on windows that cannot be combined."""


class TruncationOverflowError(FockmultError):
    """A product escaped the target window; never silently projected."""


class SymbolParseError(FockmultError):
    """Malformed textual input. `position` is a character offset when known."""

    def __init__(self, message: str, position: int | None = None):
        super().__init__(message)
        self.position = position
