"""
Error hierarchy for geostar.
Every error carries the CLI exit code it maps to.
"""


class GeostarError(Exception):
    """Base class for all geostar errors."""
    exit_code = 1


# --- Input errors (exit 2) ---

class InputError(GeostarError):
    """Malformed or unsuitable input."""
    exit_code = 2


class AlphabetMismatchError(InputError):
    pass


class AlphabetOverlapError(InputError):
    pass


class PresentationError(InputError):
    pass


class NotMinimalError(InputError):
    pass


class NotPrefixClosedError(InputError):
    pass


class WordTooLongError(InputError):
    pass


class PreconditionError(InputError):
    pass


class ExpressionError(InputError):
    """Bad expression text or a letter outside the alphabet."""

    def __init__(self, message: str, position: int | None = None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


# --- Verification errors (exit 1) ---

class VerificationError(GeostarError):
    """An automaton disagrees with the brute-force oracle."""

    def __init__(self, message: str, word: tuple | None = None):
        self.word = word
        super().__init__(message)


class CriterionDisagreement(GeostarError):
    """Aperiodicity and powered-circuit verdicts differ."""


# --- Budgets (exit 3) ---

class BudgetExceeded(GeostarError):
    exit_code = 3

    def __init__(self, budget: str, limit: int, reached: int):
        self.budget = budget
        self.limit = limit
        self.reached = reached
        super().__init__(f"budget '{budget}' exceeded (limit {limit}, reached layer {reached})")
