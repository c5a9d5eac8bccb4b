"""Compile a decision machine into an algebraic decision circuit that
simulates T steps over a bounded tape window.

Encoding: the machine state after each step is a bank of wires -

* one-hot node indicators (halt nodes loop to themselves, freezing state),
* one-hot work-head positions over [-W, W] and input-head positions over
  [0, n],
* one value wire per tape cell over [-W, W+1] (one spare cell on the right
  because compute/branch/copy at head +W touch position head+1),
* an accept latch acc' = acc + (1-acc)*at_accept.

Branches become sign gates: the taken bit is Sign(cell[h] - cell[h+1])
multiplexed over head positions; the compared cells depend only on the head,
so one selected bit per step serves every branch node.  Cell updates multiplex
candidate values with one-hot selectors (sel*v + (1-sel)*old).  A division on
an untaken path must not poison evaluation, so each selected divisor d is
replaced by sel*d + (1-sel): inactive divisions divide by 1.

The result is exact for every input on which the machine halts within T
steps, keeps its work head in [-W, W] and its input head in [0, n) while
reading, and never faults; outside those bounds the circuit's output is
unspecified.  Circuit size is O(T * W * node_count).
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Rational
from .circuits import (
    ArithGate,
    Circuit,
    ConstGate,
    Gate,
    InputGate,
    SignGate,
    decide_cdp,
)
from .errors import UsageError
from .machine import Machine, RunLimits, RunStatus, run


@dataclass(frozen=True)
class CompileBounds:
    n: int  # input count
    T: int  # step bound
    W: int  # tape window half-width

    def __post_init__(self) -> None:
        if self.n < 1 or self.T < 1 or self.W < 1:
            raise UsageError("compile bounds require n >= 1, T >= 1, W >= 1")


class _Builder:
    """Gate-list builder with constant folding and algebraic identities.

    Indicators at early steps are known constants, so folding collapses most
    of the first transitions; it never changes the simulated semantics."""

    def __init__(self, input_count: int):
        self.gates: list[Gate] = []
        self.input_count = input_count
        self._const_val: dict[int, Rational] = {}  # gate index -> folded value
        self._const_cache: dict[Rational, int] = {}

    def _push(self, gate: Gate, value: Rational | None = None) -> int:
        self.gates.append(gate)
        idx = len(self.gates)
        if value is not None:
            self._const_val[idx] = value
        return idx

    def cv(self, idx: int) -> Rational | None:
        return self._const_val.get(idx)

    def input(self, slot: int) -> int:
        return self._push(InputGate(slot))

    def const(self, value: Rational | int) -> int:
        value = Rational(value)
        if value not in self._const_cache:
            self._const_cache[value] = self._push(ConstGate(value), value)
        return self._const_cache[value]

    def add(self, a: int, b: int) -> int:
        va, vb = self.cv(a), self.cv(b)
        if va is not None and vb is not None:
            return self.const(va + vb)
        if va == 0:
            return b
        if vb == 0:
            return a
        return self._push(ArithGate("add", a, b))

    def sub(self, a: int, b: int) -> int:
        va, vb = self.cv(a), self.cv(b)
        if va is not None and vb is not None:
            return self.const(va - vb)
        if vb == 0:
            return a
        return self._push(ArithGate("sub", a, b))

    def mul(self, a: int, b: int) -> int:
        va, vb = self.cv(a), self.cv(b)
        if va is not None and vb is not None:
            return self.const(va * vb)
        if va == 0 or vb == 0:
            return self.const(0)
        if va == 1:
            return b
        if vb == 1:
            return a
        return self._push(ArithGate("mul", a, b))

    def div(self, a: int, b: int) -> int:
        va, vb = self.cv(a), self.cv(b)
        if vb is not None and vb != 0:
            if va is not None:
                return self.const(va / vb)
            if vb == 1:
                return a
        return self._push(ArithGate("div", a, b))

    def sign(self, a: int, fold: bool = True) -> int:
        va = self.cv(a)
        if fold and va is not None:
            return self.const(1 if va >= 0 else 0)
        return self._push(SignGate(a))

    def total(self, idxs: list[int]) -> int:
        acc = self.const(0)
        for i in idxs:
            acc = self.add(acc, i)
        return acc


def compile_machine(machine: Machine, bounds: CompileBounds) -> Circuit:
    """Unroll T steps of the machine into a decision circuit with n inputs.

    The machine must be a decision machine (no output nodes); its parameters
    are rational by construction and become constant gates.
    """
    if machine.output_node_indexes():
        raise UsageError("only decision machines (no output nodes) can be compiled")
    n, T, W = bounds.n, bounds.T, bounds.W
    b = _Builder(n)

    xs = [b.input(j) for j in range(1, n + 1)]
    zero, one = b.const(0), b.const(1)

    heads = list(range(-W, W + 1))
    cell_range = list(range(-W, W + 2))

    node_ind = {q: one if q == 0 else zero for q in range(len(machine.nodes))}
    whead = {p: one if p == 0 else zero for p in heads}
    ihead = {j: one if j == 0 else zero for j in range(n + 1)}
    cell = {p: zero for p in cell_range}
    acc = zero

    nodes = machine.nodes
    accept_nodes = [q for q, ins in enumerate(nodes) if ins.kind == "halt" and ins.mode == "accept"]
    branch_nodes = [q for q, ins in enumerate(nodes) if ins.kind == "branch"]
    input_nodes = [q for q, ins in enumerate(nodes) if ins.kind == "input"]
    copy_nodes = [q for q, ins in enumerate(nodes) if ins.kind == "copy"]
    const_nodes = [q for q, ins in enumerate(nodes) if ins.kind == "const"]
    ops_present = sorted({ins.op for ins in nodes if ins.kind == "compute"})
    op_nodes = {op: [q for q, ins in enumerate(nodes) if ins.kind == "compute" and ins.op == op]
                for op in ops_present}
    shift_right = [q for q, ins in enumerate(nodes) if ins.kind == "shift" and ins.direction == "right"]
    shift_left = [q for q, ins in enumerate(nodes) if ins.kind == "shift" and ins.direction == "left"]

    def const_value(q: int) -> Rational:
        ins = nodes[q]
        if ins.param is not None:
            return machine.params[ins.param - 1][1]
        assert ins.value is not None
        return ins.value

    def latch(acc_wire: int) -> int:
        at_acc = b.total([node_ind[q] for q in accept_nodes])
        return b.add(acc_wire, b.mul(b.sub(one, acc_wire), at_acc))

    for _ in range(T):
        acc = latch(acc)

        # value pulled from the input tape this step (0 once exhausted)
        xsel = b.total([b.mul(ihead[j], xs[j]) for j in range(n)])

        # shared taken-bit for all branch nodes
        if branch_nodes:
            cmp_at = {h: b.sign(b.sub(cell[h], cell[h + 1])) for h in heads}
            taken = b.total([b.mul(whead[h], cmp_at[h]) for h in heads])
            not_taken = b.sub(one, taken)

        s_in = b.total([node_ind[q] for q in input_nodes])
        s_copy = b.total([node_ind[q] for q in copy_nodes])
        s_right = b.total([node_ind[q] for q in shift_right])
        s_left = b.total([node_ind[q] for q in shift_left])
        s_op = {op: b.total([node_ind[q] for q in qs]) for op, qs in op_nodes.items()}

        # per-position results of each arithmetic operation
        op_val: dict[str, dict[int, int]] = {}
        div_sel: dict[int, int] = {}
        for op in ops_present:
            vals = {}
            for p in heads:
                if op == "add":
                    vals[p] = b.add(cell[p], cell[p + 1])
                elif op == "sub":
                    vals[p] = b.sub(cell[p], cell[p + 1])
                elif op == "mul":
                    vals[p] = b.mul(cell[p], cell[p + 1])
                else:
                    sel = b.mul(s_op["div"], whead[p])
                    div_sel[p] = sel
                    guarded = b.add(b.mul(sel, cell[p + 1]), b.sub(one, sel))
                    vals[p] = b.div(cell[p], guarded)
            op_val[op] = vals

        new_cell: dict[int, int] = {}
        for p in cell_range:
            contribs: list[tuple[int, int]] = []  # (selector, value)
            if p in whead:
                if input_nodes:
                    contribs.append((b.mul(s_in, whead[p]), xsel))
                for op in ops_present:
                    sel = div_sel[p] if op == "div" else b.mul(s_op[op], whead[p])
                    contribs.append((sel, op_val[op][p]))
                for q in const_nodes:
                    contribs.append((b.mul(node_ind[q], whead[p]), b.const(const_value(q))))
            if copy_nodes and (p - 1) in whead:
                contribs.append((b.mul(s_copy, whead[p - 1]), cell[p - 1]))
            written = b.total([sel for sel, _ in contribs])
            kept = b.mul(b.sub(one, written), cell[p])
            new_cell[p] = b.total([kept] + [b.mul(sel, v) for sel, v in contribs])

        new_whead = {}
        for p in heads:
            parts = [b.mul(b.sub(one, b.add(s_left, s_right)), whead[p])]
            if (p - 1) in whead:
                parts.append(b.mul(s_right, whead[p - 1]))
            if (p + 1) in whead:
                parts.append(b.mul(s_left, whead[p + 1]))
            new_whead[p] = b.total(parts)

        new_ihead = {}
        for j in range(n + 1):
            parts = [b.mul(b.sub(one, s_in), ihead[j])]
            if j >= 1:
                parts.append(b.mul(s_in, ihead[j - 1]))
            new_ihead[j] = b.total(parts)

        flow: dict[int, list[int]] = {q: [] for q in range(len(nodes))}
        for q, ins in enumerate(nodes):
            if ins.kind == "halt":
                flow[q].append(node_ind[q])
            elif ins.kind == "branch":
                assert ins.target is not None and ins.succ is not None
                flow[ins.target].append(b.mul(node_ind[q], taken))
                flow[ins.succ].append(b.mul(node_ind[q], not_taken))
            else:
                assert ins.succ is not None
                flow[ins.succ].append(node_ind[q])
        node_ind = {q: b.total(parts) for q, parts in flow.items()}

        cell, whead, ihead = new_cell, new_whead, new_ihead

    acc = latch(acc)
    # map the {0,1} latch to the sign convention: acc-1 is >= 0 only for 1
    b.sign(b.sub(acc, one), fold=False)
    return Circuit(tuple(b.gates), n)


@dataclass(frozen=True)
class VerificationReport:
    total: int
    matches: int
    mismatches: tuple[tuple[tuple[Rational, ...], int, str], ...]

    @property
    def all_match(self) -> bool:
        return not self.mismatches


def verify_compilation(
    machine: Machine,
    circuit: Circuit,
    samples: list[list[Rational]],
    max_steps: int = 10_000,
) -> VerificationReport:
    """Compare the circuit's decision with the interpreter on each sample."""
    mismatches = []
    for x in samples:
        bit = decide_cdp(circuit, list(x))
        result = run(machine, list(x), RunLimits(max_steps=max_steps))
        expected = {RunStatus.ACCEPTED: 1, RunStatus.REJECTED: 0}.get(result.status)
        if expected != bit:
            mismatches.append((tuple(x), bit, result.status_text()))
    return VerificationReport(
        total=len(samples),
        matches=len(samples) - len(mismatches),
        mismatches=tuple(mismatches),
    )
