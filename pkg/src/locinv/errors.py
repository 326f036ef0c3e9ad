"""Exception hierarchy shared by all modules."""


class LocinvError(Exception):
    """Base class for all package errors."""


class NonSkewInput(LocinvError, ValueError):
    pass


class DimensionMismatch(LocinvError, ValueError):
    pass


class ParseError(LocinvError, ValueError):
    """Raised by the Hamiltonian and graph parsers.

    ``position`` is the 0-based character offset in the input text
    (or the 1-based line number for graph files).
    """

    def __init__(self, position: int, reason: str):
        self.position = position
        self.reason = reason
        super().__init__(f"at position {position}: {reason}")


class IndexOutOfRange(LocinvError, IndexError):
    pass


class DiagonalIndex(LocinvError, ValueError):
    pass


class ZeroHamiltonian(LocinvError, ValueError):
    pass


class TooManyRows(LocinvError, ValueError):
    pass


class NonLocalK(LocinvError, ValueError):
    pass


class InconsistentAngles(LocinvError, ValueError):
    pass


class DisconnectedGraph(LocinvError, ValueError):
    pass


class OddDimension(LocinvError, ValueError):
    pass


class NonUnitaryInput(LocinvError, ValueError):
    pass


class WrongQubitCount(LocinvError, ValueError):
    pass


class SymmetryViolation(LocinvError, ValueError):
    pass
