"""Exception hierarchy shared by every solver and the CLI."""


class PosetGameError(Exception):
    """Base class for all errors raised by this package."""


class CycleDetected(PosetGameError, ValueError):
    pass


class UnknownVertex(PosetGameError, ValueError):
    pass


class DuplicateVertex(PosetGameError, ValueError):
    pass


class ConventionMismatch(PosetGameError, ValueError):
    pass


class NotChainPoset(PosetGameError, ValueError):
    pass


class PreconditionViolated(PosetGameError, ValueError):
    """The game is outside the class a special-purpose solver handles."""


class BoardTooLarge(PosetGameError):
    pass


class GameOver(PosetGameError):
    pass


class NoSolverApplicable(PosetGameError):
    pass


class InvalidBudget(PosetGameError, ValueError):
    pass


class InfeasibleSpec(PosetGameError, ValueError):
    pass


class InstanceSyntaxError(PosetGameError, ValueError):
    """Malformed instance text; ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
