"""Exception hierarchy shared by all modules."""


class BSError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class WordSyntaxError(BSError, ValueError):
    def __init__(self, message, position=None):
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)
        self.position = position


class NegativeAExponent(WordSyntaxError):
    pass


class NotInMonoid(BSError):
    pass


class WrongCase(BSError):
    pass


class DepthExceeded(BSError):
    pass


class InvalidSequence(BSError):
    pass


class EmptyIntersection(BSError):
    pass


class Periodic(BSError):
    pass


class NotComposable(BSError):
    pass


class LevelZero(BSError):
    pass
