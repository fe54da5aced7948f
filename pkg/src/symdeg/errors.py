"""Exception types shared across the package.

Input problems (bad polynomial text, non-square matrices, points not on the
hypersurface, ...) raise ``ValueError`` or its subclass ``PolyParseError``.
A failed internal consistency check raises ``InternalCheckError``: that
signals a bug or a violated mathematical invariant, never bad user input.
"""

from __future__ import annotations


class PolyParseError(ValueError):
    """Raised when polynomial text cannot be parsed."""


class InternalCheckError(RuntimeError):
    """Raised when a redundant internal verification fails.

    Every certificate this package emits is re-checked before being
    returned. If the re-check fails the computation is unsound and we
    refuse to return a value.
    """
