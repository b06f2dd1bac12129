"""Exception hierarchy shared by the whole package.

Two top-level families matter for the command line driver: bad input
(``InputError``, exit code 1) and a mathematically justified refusal to
produce numbers (``RefusalError``, exit code 2).
"""

from __future__ import annotations


class MeropencilError(Exception):
    """Base class for every error raised by this package."""


class InputError(MeropencilError):
    """The caller supplied something malformed or out of contract."""


class RefusalError(MeropencilError):
    """The input is well formed but the requested invariant is undefined
    or cannot be certified for it."""


class ExpressionError(InputError):
    """Syntax or identifier error while parsing a polynomial expression."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class VariableMismatchError(InputError):
    """Operands live over different variable lists, or a name is unknown."""


class NotVanishingError(InputError):
    """A germ operation was asked at a point where the polynomial does
    not vanish."""


class NonzeroLinearPartError(InputError):
    """Hessian data requested for a germ with nonzero linear part."""


class AtlasError(InputError):
    """Malformed atlas file."""


class NonIsolatedError(RefusalError):
    """Jet dimensions failed to stabilize, or a positive-dimensional
    singular/critical locus was detected."""


class NonReducedFiberError(RefusalError):
    """A fiber of the pencil is not reduced (its equation is not
    square-free), so per-value accounting is undefined."""


class GenericityFailureError(RefusalError):
    """Independent generic samples disagreed twice; the generic value
    cannot be certified."""


class DegenerateFamilyError(RefusalError):
    """The pair (p, q) is functionally dependent or otherwise too
    degenerate to carry a pencil analysis."""


class IncompleteAnalysisError(RefusalError):
    """Aggregated totals were requested but some chart retained
    nonrational solution clusters; totals would be unsound."""
