"""Exception types shared across the package."""


class TowerlabError(Exception):
    """Base class for all errors raised by towerlab."""


class DivisionByZero(TowerlabError, ZeroDivisionError):
    """Division by an exactly-zero scalar or polynomial."""


class GenericityViolation(TowerlabError):
    """A specialized parameter choice hit a zero denominator.

    Callers must abort the computation; guessing a value would silently
    change the answer.  `parameter` names the offending value when known.
    """

    def __init__(self, message: str, parameter: str | None = None):
        super().__init__(message)
        self.parameter = parameter


class RankMismatch(TowerlabError, ValueError):
    """Operands live at different ranks n."""


class TowerMismatch(TowerlabError, ValueError):
    """Operands belong to different towers."""


class IndexOutOfRange(TowerlabError, IndexError):
    """Generator index outside 1..n-1."""


class LengthMismatch(TowerlabError, ValueError):
    """Paths of different lengths compared."""


class InvalidVertex(TowerlabError, ValueError):
    """Vertex not on the branching diagram of the tower."""


class SeparationFailure(TowerlabError):
    """Two paths share the same JM eigenvalue vector."""


class SingularSystem(TowerlabError):
    """A linear system that is invertible generically turned out singular.

    Signals non-generic parameters (or an internal inconsistency).
    """


class NonTermination(TowerlabError):
    """The skein rewriting measure failed to decrease: an engine bug."""
