"""Exception types shared across the package."""

from __future__ import annotations


class UsageError(Exception):
    """A caller violated a documented precondition (bad offset, wrong arity, ...)."""


class ParseError(Exception):
    """Syntax or structural error in a textual machine/circuit/value description."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        self.message = message
        self.line = line
        self.col = col
        where = f"line {line}, col {col}: " if line else ""
        super().__init__(f"{where}{message}")


class SymbolicDivisionByZero(Exception):
    """Division by the zero fraction in the symbolic domain."""


class ConcreteDivisionByZero(Exception):
    """A denominator evaluated to zero at a concrete point."""


class MachineFault(Exception):
    """Base class for runtime faults raised while stepping a machine."""

    kind = "MachineFault"


class ReadEmptyCell(MachineFault):
    """An instruction read a work-tape cell that was never written."""

    kind = "ReadEmptyCell"


class InputExhausted(MachineFault):
    """An Input instruction ran past the end of the input vector."""

    kind = "InputExhausted"
