"""Algebraic circuits: straight-line gate lists over exact rationals.

A circuit is a sequence of gates; each gate may reference only earlier gates
(acyclicity by construction).  Gate kinds: input, arithmetic (+ - * /),
constant, and sign (1 if the operand is >= 0, else 0).  A circuit whose last
gate is a sign gate is a decision circuit.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .algebra import Rational, format_rational, parse_rational
from .errors import ConcreteDivisionByZero, ParseError, UsageError

ARITH_OPS = ("add", "sub", "mul", "div")


@dataclass(frozen=True)
class InputGate:
    index: int  # 1-based input slot


@dataclass(frozen=True)
class ArithGate:
    op: str
    left: int   # 1-based gate references, strictly smaller than this gate's index
    right: int


@dataclass(frozen=True)
class ConstGate:
    value: Rational


@dataclass(frozen=True)
class SignGate:
    operand: int


Gate = InputGate | ArithGate | ConstGate | SignGate


@dataclass(frozen=True)
class Circuit:
    gates: tuple[Gate, ...]
    input_count: int

    @property
    def size(self) -> int:
        return len(self.gates)

    @property
    def is_decision(self) -> bool:
        return bool(self.gates) and isinstance(self.gates[-1], SignGate)


def validate_circuit(circuit: Circuit) -> None:
    """Check reference ordering and input indexes; raises UsageError."""
    for i, gate in enumerate(circuit.gates, start=1):
        refs: tuple[int, ...]
        if isinstance(gate, InputGate):
            if not 1 <= gate.index <= circuit.input_count:
                raise UsageError(f"g{i}: input index {gate.index} out of range")
            refs = ()
        elif isinstance(gate, ArithGate):
            refs = (gate.left, gate.right)
        elif isinstance(gate, SignGate):
            refs = (gate.operand,)
        else:
            refs = ()
        for r in refs:
            if not 1 <= r < i:
                raise UsageError(f"g{i}: reference g{r} is not an earlier gate")


def eval_circuit(circuit: Circuit, x: list[Rational]) -> list[Rational]:
    """Evaluate every gate in index order; returns one value per gate."""
    if len(x) != circuit.input_count:
        raise UsageError(
            f"circuit takes {circuit.input_count} inputs, got {len(x)}"
        )
    values: list[Rational] = []
    for i, gate in enumerate(circuit.gates, start=1):
        if isinstance(gate, InputGate):
            values.append(x[gate.index - 1])
        elif isinstance(gate, ConstGate):
            values.append(gate.value)
        elif isinstance(gate, SignGate):
            values.append(Rational(1) if values[gate.operand - 1] >= 0 else Rational(0))
        else:
            a = values[gate.left - 1]
            b = values[gate.right - 1]
            if gate.op == "add":
                values.append(a + b)
            elif gate.op == "sub":
                values.append(a - b)
            elif gate.op == "mul":
                values.append(a * b)
            else:
                if b == 0:
                    raise ConcreteDivisionByZero(f"gate g{i} divides by zero")
                values.append(a / b)
    return values


def decide_cdp(circuit: Circuit, x: list[Rational]) -> int:
    """Decision bit of a decision circuit: the final sign gate's value."""
    if not circuit.is_decision:
        raise UsageError("not a decision circuit (last gate must be a sign gate)")
    return int(eval_circuit(circuit, x)[-1])


def circuit_stats(circuit: Circuit) -> tuple[int, int]:
    """(size, depth): gate count and the longest path measured in edges,
    starting from any source gate (input or constant)."""
    depth = [0] * (circuit.size + 1)
    best = 0
    for i, gate in enumerate(circuit.gates, start=1):
        if isinstance(gate, ArithGate):
            depth[i] = 1 + max(depth[gate.left], depth[gate.right])
        elif isinstance(gate, SignGate):
            depth[i] = 1 + depth[gate.operand]
        else:
            depth[i] = 0
        best = max(best, depth[i])
    return circuit.size, best


# textual form ------------------------------------------------------------------

_GATE_LINE_RE = re.compile(r"^g(\d+)\s*=\s*(.*)$")
_REF_RE = re.compile(r"^g(\d+)$")


def parse_circuit(text: str) -> Circuit:
    """Parse the one-gate-per-line format::

        g1 = input 1
        g2 = mul g1 g1
        g3 = const -2
        g4 = add g2 g3
        g5 = sign g4

    Gate numbers must be consecutive from 1; references may only point to
    earlier gates.  ``#`` starts a comment.
    """
    gates: list[Gate] = []
    input_count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        pos = raw.find("#")
        line = (raw if pos < 0 else raw[:pos]).strip()
        if not line:
            continue
        mt = _GATE_LINE_RE.match(line)
        if not mt:
            raise ParseError(f"expected 'g<i> = <gate>', got {line!r}", lineno, 1)
        idx = int(mt.group(1))
        if idx != len(gates) + 1:
            raise ParseError(
                f"gate numbers must be consecutive: expected g{len(gates) + 1}, got g{idx}",
                lineno, 1,
            )

        def ref(token: str) -> int:
            rm = _REF_RE.match(token)
            if not rm:
                raise ParseError(f"bad gate reference {token!r}", lineno, 1)
            j = int(rm.group(1))
            if not 1 <= j < idx:
                raise ParseError(
                    f"g{idx} references g{j}, which is not an earlier gate", lineno, 1
                )
            return j

        words = mt.group(2).split()
        kind = words[0] if words else ""
        if kind == "input" and len(words) == 2 and words[1].isdigit():
            slot = int(words[1])
            if slot < 1:
                raise ParseError("input indexes are 1-based", lineno, 1)
            input_count = max(input_count, slot)
            gates.append(InputGate(slot))
        elif kind == "const" and len(words) == 2:
            try:
                gates.append(ConstGate(parse_rational(words[1])))
            except ParseError as exc:
                raise ParseError(exc.message, lineno, 1) from None
        elif kind == "sign" and len(words) == 2:
            gates.append(SignGate(ref(words[1])))
        elif kind in ARITH_OPS and len(words) == 3:
            gates.append(ArithGate(kind, ref(words[1]), ref(words[2])))
        else:
            raise ParseError(f"unknown gate {mt.group(2)!r}", lineno, 1)
    if not gates:
        raise ParseError("empty circuit")
    circuit = Circuit(tuple(gates), input_count)
    validate_circuit(circuit)
    return circuit


def format_circuit(circuit: Circuit, header: list[str] | None = None) -> str:
    """Render to the textual gate list; ``header`` lines become comments."""
    lines = [f"# {h}" for h in header] if header else []
    for i, gate in enumerate(circuit.gates, start=1):
        if isinstance(gate, InputGate):
            body = f"input {gate.index}"
        elif isinstance(gate, ConstGate):
            body = f"const {format_rational(gate.value)}"
        elif isinstance(gate, SignGate):
            body = f"sign g{gate.operand}"
        else:
            body = f"{gate.op} g{gate.left} g{gate.right}"
        lines.append(f"g{i} = {body}")
    return "\n".join(lines) + "\n"
