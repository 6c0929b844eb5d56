"""Exception hierarchy shared by every module of the package."""


class LerfError(Exception):
    """Base class for all errors raised by lerfkit."""


class UnknownLetter(LerfError, ValueError):
    def __init__(self, symbol, alphabet=None):
        self.symbol = symbol
        self.alphabet = alphabet
        where = f" (alphabet: {' '.join(alphabet)})" if alphabet else ""
        super().__init__(f"unknown letter {symbol!r}{where}")


class EmptyWord(LerfError, ValueError):
    pass


class DanglingVertex(LerfError, ValueError):
    pass


class NotWellLabeled(LerfError):
    pass


class ElementInSubgroup(LerfError):
    """The element to be separated already lies in the subgroup."""

    def __init__(self, message="element lies in subgroup"):
        super().__init__(message)


class EmptyWitness(LerfError, ValueError):
    pass


class NoEmbedding(LerfError):
    pass


class NotPrecover(LerfError):
    pass


class Property1Violated(LerfError):
    """A monochromatic component handed to precover completion is not a cover."""


class NoDeficientVertex(LerfError):
    pass


class Exhausted(LerfError):
    """The separation pipeline ran out of rounds without a verified certificate."""

    def __init__(self, rounds, trail):
        self.rounds = rounds
        self.trail = list(trail)
        super().__init__(f"no verified certificate after {rounds} round(s)")


class SpecInvariantError(LerfError, ValueError):
    pass


class ConfigurationError(LerfError, ValueError):
    pass


class ParseError(LerfError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        if line is not None:
            loc = f"line {line}" + (f", column {column}" if column is not None else "")
            message = f"{loc}: {message}"
        super().__init__(message)
