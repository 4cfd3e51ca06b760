"""Exception types.  Every error carries a short machine-readable ``code``."""

from __future__ import annotations


class GroupoidError(Exception):
    code = "error"


class NonInvertible(GroupoidError, ArithmeticError):
    code = "non_invertible"


class UnknownVariable(GroupoidError, KeyError):
    code = "unknown_variable"

    def __str__(self) -> str:  # KeyError quotes its argument otherwise
        return Exception.__str__(self)


class VariableMismatch(GroupoidError, ValueError):
    code = "variable_mismatch"


class InvalidPosition(GroupoidError, IndexError):
    code = "invalid_position"


class NotContractible(GroupoidError, ValueError):
    code = "not_contractible"


class BoundExceeded(GroupoidError, ValueError):
    code = "bound_exceeded"


class NotADiagonal(GroupoidError, ValueError):
    code = "not_a_diagonal"


class NotARoot(GroupoidError, ValueError):
    code = "not_a_root"


class RootOrderTie(GroupoidError, ValueError):
    code = "root_order_tie"


class NonTerminating(GroupoidError, RuntimeError):
    code = "non_terminating"


class NotASymmetry(GroupoidError, ValueError):
    code = "not_a_symmetry"


class DivisionByZero(GroupoidError, ZeroDivisionError):
    """Ptolemy propagation stalled on a zero-valued chord."""

    code = "division_by_zero"

    def __init__(self, message: str, chord: tuple[int, int] | None = None):
        super().__init__(message)
        self.chord = chord


class Incomplete(GroupoidError, ValueError):
    code = "incomplete"


class OffVariety(GroupoidError, ValueError):
    code = "off_variety"

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


class PreconditionViolated(GroupoidError, ValueError):
    code = "precondition_violated"


class InvalidSequence(GroupoidError, ValueError):
    code = "invalid_sequence"


class InvalidTriangulation(GroupoidError, ValueError):
    code = "invalid_triangulation"
