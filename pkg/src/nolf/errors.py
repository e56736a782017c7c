"""Exception hierarchy.

Every error maps onto one of the CLI exit codes: parse problems (2),
violated invariants or illegal moves (3), unsupported hypotheses (4).
"""


class NolfError(Exception):
    exit_code = 1


class ParseError(NolfError):
    exit_code = 2

    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class InvariantError(NolfError):
    """A value failed one of its structural invariants."""

    exit_code = 3


class DimensionMismatch(InvariantError):
    pass


class ZeroClassError(InvariantError):
    pass


class NotUnimodularError(InvariantError):
    pass


class NotSymplecticError(InvariantError):
    pass


class NonPrimitiveError(InvariantError):
    pass


class SelfPairingError(InvariantError):
    """The two lifts of a curve pair nontrivially, so they cannot be disjoint."""


class DuplicateCurveError(InvariantError):
    pass


class UnknownCurveError(InvariantError):
    pass


class DisjointnessError(InvariantError):
    pass


class NotALiftError(InvariantError):
    """Matrix does not commute with the deck involution."""


class IllegalMoveError(InvariantError):
    def __init__(self, message, step=None):
        self.step = step
        if step is not None:
            message = f"step {step}: {message}"
        super().__init__(message)


class HashMismatchError(InvariantError):
    pass


class UnsupportedHypothesis(NolfError):
    exit_code = 4
