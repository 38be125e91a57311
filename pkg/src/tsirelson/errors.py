"""Exception hierarchy shared by the library and the command line."""


class TsirelsonError(Exception):
    """Base class for every error raised by this package."""


class ParseError(TsirelsonError, ValueError):
    """A literal (family, theta, vector, functional) could not be parsed."""


class InvalidBlocks(TsirelsonError, ValueError):
    """Blocks are empty, unordered or not successive."""


class ThetaError(TsirelsonError, ValueError):
    """The weight theta lies outside the open interval (0, 1)."""


class HypothesisViolation(TsirelsonError, ValueError):
    """Parameters fall outside the range where the exponent formula applies."""


class CapExceeded(TsirelsonError):
    """An enumeration or dynamic program would exceed its configured size cap."""


class FunctionalError(TsirelsonError, ValueError):
    """A functional tree is not a member of any norming set.

    ``path`` is the sequence of child indices leading from the root to the
    offending node.
    """

    def __init__(self, message, path=()):
        super().__init__(f"{message} (at node path {list(path)})")
        self.path = tuple(path)


class AnalysisError(TsirelsonError, ValueError):
    """Inputs to the initial/final part split violate its preconditions."""
