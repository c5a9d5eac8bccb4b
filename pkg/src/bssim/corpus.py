"""Builders for the standard test machines.

Each builder renders a description in the machine DSL and parses it, so the
corpus also exercises the parser.  The machines are deliberately small:

* ``sum_ge0(n)``   - sums n inputs, accepts iff the sum is >= 0 (2 work cells)
* ``sum_out(n)``   - sums n inputs and outputs the sum (function machine)
* ``square_chain(k)`` - squares one input k times, then halts plain
* ``max_ge0()``    - accepts iff max(x1, x2) >= 0 (two branches per path)
* ``affine_ge0(a, b)`` - accepts iff a*x1 + b >= 0 using parameter symbols
* ``ratio_ge1()``  - accepts iff x1/x2 >= 1 (divides, so x2 = 0 faults)
* ``const_out(c)`` - outputs the constant c and halts (no inputs)
* ``shift_oscillator()`` - never writes, shifts right/left forever (a lasso)
* ``accept_immediately()`` - halts accepting on any input
"""

from __future__ import annotations

from .algebra import Rational, format_rational
from .machine import Machine, parse_machine


def sum_ge0(n: int) -> Machine:
    """Sum n inputs in cell 0 (cell 1 is the scratch operand), then compare
    against 0.  Unit space stays at 2 for every n."""
    if n < 1:
        raise ValueError("sum_ge0 needs n >= 1")
    lines = [f"machine sum_ge0_{n}", f"inputs {n}", "nodes:"]
    lines += ["  0: start -> 1", "  1: input -> 2"]
    nxt = 2
    for _ in range(n - 1):
        lines += [
            f"  {nxt}: shift right -> {nxt + 1}",
            f"  {nxt + 1}: input -> {nxt + 2}",
            f"  {nxt + 2}: shift left -> {nxt + 3}",
            f"  {nxt + 3}: compute add -> {nxt + 4}",
        ]
        nxt += 4
    lines += [
        f"  {nxt}: shift right -> {nxt + 1}",
        f"  {nxt + 1}: const 0 -> {nxt + 2}",
        f"  {nxt + 2}: shift left -> {nxt + 3}",
        f"  {nxt + 3}: branch {nxt + 5} -> {nxt + 4}",
        f"  {nxt + 4}: halt reject",
        f"  {nxt + 5}: halt accept",
    ]
    return parse_machine("\n".join(lines))


def sum_out(n: int) -> Machine:
    """Sum n inputs, output the sum, halt plain."""
    if n < 1:
        raise ValueError("sum_out needs n >= 1")
    lines = [f"machine sum_out_{n}", f"inputs {n}", "nodes:"]
    lines += ["  0: start -> 1", "  1: input -> 2"]
    nxt = 2
    for _ in range(n - 1):
        lines += [
            f"  {nxt}: shift right -> {nxt + 1}",
            f"  {nxt + 1}: input -> {nxt + 2}",
            f"  {nxt + 2}: shift left -> {nxt + 3}",
            f"  {nxt + 3}: compute add -> {nxt + 4}",
        ]
        nxt += 4
    lines += [f"  {nxt}: output -> {nxt + 1}", f"  {nxt + 1}: halt"]
    return parse_machine("\n".join(lines))


def square_chain(k: int) -> Machine:
    """Read one input and square it k times in place (copy + multiply)."""
    if k < 1:
        raise ValueError("square_chain needs k >= 1")
    lines = [f"machine square_{k}", "inputs 1", "nodes:"]
    lines += ["  0: start -> 1", "  1: input -> 2"]
    nxt = 2
    for _ in range(k):
        lines += [
            f"  {nxt}: copy -> {nxt + 1}",
            f"  {nxt + 1}: compute mul -> {nxt + 2}",
        ]
        nxt += 2
    lines += [f"  {nxt}: halt"]
    return parse_machine("\n".join(lines))


def max_ge0() -> Machine:
    """Accept iff max(x1, x2) >= 0; every run takes exactly two branches."""
    return parse_machine(
        """
machine max_ge0
inputs 2
nodes:
  0: start -> 1
  1: input -> 2
  2: shift right -> 3
  3: input -> 4
  4: shift left -> 5
  5: branch 6 -> 12          # x1 >= x2 ? test x1 : test x2
  6: shift right -> 7
  7: const 0 -> 8
  8: shift left -> 9
  9: branch 10 -> 11         # x1 >= 0 ?
  10: halt accept
  11: halt reject
  12: shift right -> 13
  13: shift right -> 14
  14: const 0 -> 15
  15: shift left -> 16
  16: branch 17 -> 18        # x2 >= 0 ?
  17: halt accept
  18: halt reject
"""
    )


def affine_ge0(a: Rational, b: Rational) -> Machine:
    """Accept iff A1*x1 + A2 >= 0 with parameters A1 = a, A2 = b."""
    return parse_machine(
        f"""
machine affine_ge0
params A1 = {format_rational(a)}, A2 = {format_rational(b)}
inputs 1
nodes:
  0: start -> 1
  1: input -> 2
  2: shift right -> 3
  3: const A1 -> 4
  4: shift left -> 5
  5: compute mul -> 6
  6: shift right -> 7
  7: const A2 -> 8
  8: shift left -> 9
  9: compute add -> 10
  10: shift right -> 11
  11: const 0 -> 12
  12: shift left -> 13
  13: branch 14 -> 15
  14: halt accept
  15: halt reject
"""
    )


def ratio_ge1() -> Machine:
    """Accept iff x1/x2 >= 1; faults with a concrete division by zero when
    x2 = 0."""
    return parse_machine(
        """
machine ratio_ge1
inputs 2
nodes:
  0: start -> 1
  1: input -> 2
  2: shift right -> 3
  3: input -> 4
  4: shift left -> 5
  5: compute div -> 6
  6: shift right -> 7
  7: const 1 -> 8
  8: shift left -> 9
  9: branch 10 -> 11
  10: halt accept
  11: halt reject
"""
    )


def const_out(c: Rational) -> Machine:
    """Write the constant c, output it, halt plain.  Takes no input."""
    return parse_machine(
        f"""
machine const_out
inputs 0
nodes:
  0: start -> 1
  1: const {format_rational(c)} -> 2
  2: output -> 3
  3: halt
"""
    )


def shift_oscillator() -> Machine:
    """Head bounces between two positions without writing: a two-cycle lasso."""
    return parse_machine(
        """
machine shift_oscillator
inputs 0
nodes:
  0: start -> 1
  1: shift right -> 2
  2: shift left -> 1
"""
    )


def accept_immediately() -> Machine:
    return parse_machine(
        """
machine accept_immediately
inputs 1
nodes:
  0: start -> 1
  1: halt accept
"""
    )


def decision_corpus() -> list[Machine]:
    """The decision machines used for compiler equivalence checks."""
    from fractions import Fraction

    return [sum_ge0(2), max_ge0(), affine_ge0(Fraction(3, 2), Fraction(-7))]


def audit_corpus() -> list[Machine]:
    """Machines for the symbolic/concrete coherence audit (>= 6 machines)."""
    from fractions import Fraction

    return [
        sum_ge0(2),
        sum_ge0(4),
        square_chain(5),
        max_ge0(),
        affine_ge0(Fraction(3, 2), Fraction(-7)),
        ratio_ge1(),
        sum_out(3),
    ]
