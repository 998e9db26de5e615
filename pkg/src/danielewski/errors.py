"""Exception hierarchy.

The CLI maps these onto exit codes, so every error raised by the library
belongs to exactly one of the four families below.
"""


class AlgebraError(Exception):
    """Base class for everything raised by this package."""


class InputError(AlgebraError, ValueError):
    """Malformed input: unknown variables, ring mismatches, bad syntax."""


class RejectionError(AlgebraError):
    """The input is well formed but mathematically rejected."""


class BudgetError(AlgebraError):
    """A search or size budget was exhausted before an answer was found."""


class VerificationError(AlgebraError):
    """An internal exact re-check failed. This always indicates a bug."""


class RingMismatchError(InputError):
    pass


class UnknownVariableError(InputError):
    pass


class MissingImageError(InputError):
    pass


class ParseError(InputError):
    def __init__(self, message, text=None, position=None):
        self.text = text
        self.position = position
        if text is not None and position is not None:
            message = f"{message} at position {position}\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class ImproperIdealError(RejectionError):
    pass


class InvalidRingError(RejectionError):
    pass


class RelationNotPreservedError(RejectionError):
    pass


class NotAnAutomorphismError(RejectionError):
    pass


class BaseNotFixedError(RejectionError):
    pass


class UncertifiedNilpotencyError(RejectionError):
    pass


class MissingInverseError(RejectionError):
    pass


class TermLimitError(BudgetError):
    pass


class RadicalBudgetError(BudgetError):
    pass


class InconsistencyError(VerificationError):
    """A computed object contradicts a structural fact the package relies on."""


class CertificateError(RejectionError):
    """A certificate failed independent re-verification."""
