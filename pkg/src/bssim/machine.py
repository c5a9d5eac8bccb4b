"""Register machines over exact rationals: description parsing, configuration
semantics, the dual concrete/symbolic interpreter, and the space/time
profiler.

Every work-tape cell carries both its concrete rational value and the
canonical polynomial fraction over the input variables X1..Xn and the
machine's parameter symbols A1..Am that produced it; the two are updated in
lockstep, so the fraction always evaluates to the value on the run's input.

Instruction set: start, input, output, compute {add|sub|mul|div}, const
(rational literal or parameter symbol), branch (taken iff the cell under the
head is >= the cell to its right), shift {left|right}, copy (duplicates the
cell under the head one position right), halt {accept|reject|plain}.
Reading a never-written cell is a runtime fault, not an implicit zero.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field, replace

from .algebra import (
    Polynomial,
    Rational,
    RationalFunction,
    format_rational,
    parse_rational,
)
from .errors import ParseError, UsageError
from .measures import (
    ConfigMeasure,
    check_space_budget,
    weak_cost_transition,
    weak_size_fraction,
    weak_size_configuration,
)

OPS = ("add", "sub", "mul", "div")
HALT_MODES = ("accept", "reject", "plain")


@dataclass(frozen=True)
class Instruction:
    kind: str
    succ: int | None = None       # fall-through successor (all but halt)
    target: int | None = None     # branch: taken successor
    op: str | None = None         # compute
    value: Rational | None = None  # const literal
    param: int | None = None      # const parameter index (1-based)
    direction: str | None = None  # shift: left | right
    mode: str | None = None       # halt: accept | reject | plain


@dataclass(frozen=True)
class Machine:
    """Immutable instruction graph plus parameter bindings."""

    name: str
    nodes: tuple[Instruction, ...]
    params: tuple[tuple[str, Rational], ...] = ()
    n_hint: int | None = None

    @property
    def m(self) -> int:
        return len(self.params)

    def param_values(self) -> list[Rational]:
        return [v for _, v in self.params]

    def output_node_indexes(self) -> list[int]:
        return [i for i, ins in enumerate(self.nodes) if ins.kind == "output"]


@dataclass(frozen=True)
class Cell:
    """One non-empty work cell: exact value plus the fraction it realizes."""

    value: Rational
    symbolic: RationalFunction


@dataclass(frozen=True)
class Configuration:
    node: int
    input_head: int
    work_head: int
    output_head: int
    work: dict[int, Cell]
    output: tuple[Rational, ...]
    input: tuple[Rational, ...]

    def cells(self) -> list[tuple[int, RationalFunction]]:
        return [(i, self.work[i].symbolic) for i in sorted(self.work)]


def initial_configuration(x: list[Rational]) -> Configuration:
    return Configuration(
        node=0, input_head=0, work_head=0, output_head=0,
        work={}, output=(), input=tuple(x),
    )


class RunStatus(enum.Enum):
    ACCEPTED = "Accepted"
    REJECTED = "Rejected"
    HALTED_PLAIN = "HaltedPlain"
    STEP_LIMIT = "StepLimit"
    SPACE_LIMIT = "SpaceLimit"
    RUNTIME_ERROR = "RuntimeError"


# step outcomes ---------------------------------------------------------------


@dataclass(frozen=True)
class StepNext:
    config: Configuration
    cost: int


@dataclass(frozen=True)
class StepHalted:
    status: RunStatus


@dataclass(frozen=True)
class StepFault:
    kind: str  # ReadEmptyCell | InputExhausted | ConcreteDivisionByZero | SymbolicDivisionByZero


StepOutcome = StepNext | StepHalted | StepFault


def step(machine: Machine, cfg: Configuration) -> StepOutcome:
    """Execute the instruction at cfg.node.  Pure: returns a fresh
    configuration, never mutates its arguments."""
    ins = machine.nodes[cfg.node]
    n, m = len(cfg.input), machine.m

    def write(coord: int, cell: Cell) -> dict[int, Cell]:
        work = dict(cfg.work)
        work[coord] = cell
        return work

    if ins.kind == "start":
        return StepNext(replace(cfg, node=ins.succ), 1)

    if ins.kind == "input":
        if cfg.input_head >= n:
            return StepFault("InputExhausted")
        value = cfg.input[cfg.input_head]
        symbolic = RationalFunction.from_poly(
            Polynomial.input_var(n, m, cfg.input_head + 1)
        )
        return StepNext(
            replace(
                cfg,
                node=ins.succ,
                input_head=cfg.input_head + 1,
                work=write(cfg.work_head, Cell(value, symbolic)),
            ),
            1,
        )

    if ins.kind == "output":
        cell = cfg.work.get(cfg.work_head)
        if cell is None:
            return StepFault("ReadEmptyCell")
        return StepNext(
            replace(
                cfg,
                node=ins.succ,
                output=cfg.output + (cell.value,),
                output_head=cfg.output_head + 1,
            ),
            1,
        )

    if ins.kind == "compute":
        a = cfg.work.get(cfg.work_head)
        b = cfg.work.get(cfg.work_head + 1)
        if a is None or b is None:
            return StepFault("ReadEmptyCell")
        if ins.op == "div":
            if b.symbolic.is_zero:
                return StepFault("SymbolicDivisionByZero")
            if b.value == 0:
                return StepFault("ConcreteDivisionByZero")
        if ins.op == "add":
            value, symbolic = a.value + b.value, a.symbolic + b.symbolic
        elif ins.op == "sub":
            value, symbolic = a.value - b.value, a.symbolic - b.symbolic
        elif ins.op == "mul":
            value, symbolic = a.value * b.value, a.symbolic * b.symbolic
        else:
            value, symbolic = a.value / b.value, a.symbolic / b.symbolic
        cost = weak_cost_transition("computation", symbolic)
        return StepNext(
            replace(cfg, node=ins.succ, work=write(cfg.work_head, Cell(value, symbolic))),
            cost,
        )

    if ins.kind == "const":
        if ins.param is not None:
            value = machine.params[ins.param - 1][1]
            symbolic = RationalFunction.from_poly(Polynomial.param(n, m, ins.param))
        else:
            assert ins.value is not None
            value = ins.value
            symbolic = RationalFunction.from_rational(n, m, ins.value)
        return StepNext(
            replace(cfg, node=ins.succ, work=write(cfg.work_head, Cell(value, symbolic))),
            1,
        )

    if ins.kind == "branch":
        a = cfg.work.get(cfg.work_head)
        b = cfg.work.get(cfg.work_head + 1)
        if a is None or b is None:
            return StepFault("ReadEmptyCell")
        nxt = ins.target if a.value >= b.value else ins.succ
        return StepNext(replace(cfg, node=nxt), 1)

    if ins.kind == "shift":
        delta = 1 if ins.direction == "right" else -1
        return StepNext(replace(cfg, node=ins.succ, work_head=cfg.work_head + delta), 1)

    if ins.kind == "copy":
        cell = cfg.work.get(cfg.work_head)
        if cell is None:
            return StepFault("ReadEmptyCell")
        return StepNext(
            replace(cfg, node=ins.succ, work=write(cfg.work_head + 1, cell)), 1
        )

    if ins.kind == "halt":
        status = {
            "accept": RunStatus.ACCEPTED,
            "reject": RunStatus.REJECTED,
            "plain": RunStatus.HALTED_PLAIN,
        }[ins.mode or "plain"]
        return StepHalted(status)

    raise UsageError(f"unknown instruction kind {ins.kind!r}")


# run -------------------------------------------------------------------------


@dataclass(frozen=True)
class RunLimits:
    max_steps: int
    max_weak_space: int | None = None
    max_unit_space: int | None = None

    def __post_init__(self) -> None:
        if self.max_steps < 1:
            raise UsageError("max_steps must be >= 1")


@dataclass(frozen=True)
class TraceEntry:
    """One configuration of a traced run; cost is the weak cost of the
    transition leaving it (0 on the final configuration)."""

    step: int
    node: int
    kind: str
    input_head: int
    work_head: int
    output_head: int
    cells: tuple[tuple[int, RationalFunction], ...]
    measure: ConfigMeasure
    cost: int


@dataclass(frozen=True)
class RunResult:
    status: RunStatus
    error_kind: str | None
    output: tuple[Rational, ...]
    steps: int
    weak_time: int
    weak_space: int
    unit_space: int
    peak: ConfigMeasure
    trace: tuple[TraceEntry, ...] | None = None

    def status_text(self) -> str:
        if self.status is RunStatus.RUNTIME_ERROR:
            return f"RuntimeError({self.error_kind})"
        return self.status.value


def run(
    machine: Machine,
    x: list[Rational],
    limits: RunLimits,
    trace: bool = False,
) -> RunResult:
    """Iterate ``step`` from the initial configuration, accumulating weak
    time (sum of transition costs), weak space (max configuration weak size)
    and unit space (max non-empty cell count).  Every configuration from the
    initial to the final one is measured.  Faults surface in the status."""
    n_eff = max(1, len(x))
    cfg = initial_configuration(list(x))
    measure = weak_size_configuration(cfg.cells(), n_eff)

    steps = 0
    weak_time = 0
    weak_space = measure.weak_size
    unit_space = measure.unit_size
    peak = measure
    entries: list[TraceEntry] = []
    status = RunStatus.STEP_LIMIT
    error_kind: str | None = None

    def emit(cost: int) -> None:
        if trace:
            entries.append(
                TraceEntry(
                    step=steps,
                    node=cfg.node,
                    kind=machine.nodes[cfg.node].kind,
                    input_head=cfg.input_head,
                    work_head=cfg.work_head,
                    output_head=cfg.output_head,
                    cells=tuple(cfg.cells()),
                    measure=measure,
                    cost=cost,
                )
            )

    def over_budget() -> bool:
        if limits.max_weak_space is not None and measure.weak_size > limits.max_weak_space:
            return True
        if limits.max_unit_space is not None and measure.unit_size > limits.max_unit_space:
            return True
        return False

    while True:
        if over_budget():
            status = RunStatus.SPACE_LIMIT
            emit(0)
            break
        if steps >= limits.max_steps:
            status = RunStatus.STEP_LIMIT
            emit(0)
            break
        outcome = step(machine, cfg)
        if isinstance(outcome, StepHalted):
            status = outcome.status
            emit(0)
            break
        if isinstance(outcome, StepFault):
            status = RunStatus.RUNTIME_ERROR
            error_kind = outcome.kind
            emit(0)
            break
        emit(outcome.cost)
        steps += 1
        weak_time += outcome.cost
        cfg = outcome.config
        measure = weak_size_configuration(cfg.cells(), n_eff)
        if measure.weak_size > weak_space:
            weak_space = measure.weak_size
            peak = measure
        unit_space = max(unit_space, measure.unit_size)

    return RunResult(
        status=status,
        error_kind=error_kind,
        output=cfg.output,
        steps=steps,
        weak_time=weak_time,
        weak_space=weak_space,
        unit_space=unit_space,
        peak=peak,
        trace=tuple(entries) if trace else None,
    )


def check_budget(result: RunResult, n: int, budget: str) -> bool:
    """Check the run's weak space against ``log:K | poly:K,D | const:M``."""
    return check_space_budget(result.weak_space, n, budget)


def check_flogspace_output(result: RunResult, m_cap: int) -> bool:
    """True iff at every traced configuration sitting on an output node, the
    weak size of the cell under the work head (minimized over offsets) is
    below ``m_cap``.  Requires a traced run."""
    if result.trace is None:
        raise UsageError("check_flogspace_output needs a traced run")
    for entry in result.trace:
        if entry.kind != "output":
            continue
        cell = dict(entry.cells).get(entry.work_head)
        if cell is None:
            continue  # the run faulted here; nothing was output
        n_eff = max(1, cell.num.n)
        size = min(weak_size_fraction(cell, off, n_eff) for off in range(n_eff))
        if size >= m_cap:
            return False
    return True


# coherence audit ---------------------------------------------------------------


@dataclass(frozen=True)
class AuditMismatch:
    step: int
    coord: int
    symbolic: RationalFunction
    expected: Rational
    actual: Rational


@dataclass(frozen=True)
class AuditReport:
    passed: bool
    status: RunStatus
    steps: int
    cells_checked: int
    mismatch: AuditMismatch | None = None


def run_symbolic_concrete_audit(
    machine: Machine, x: list[Rational], limits: RunLimits
) -> AuditReport:
    """Run and assert, at every step and for every non-empty cell, that the
    cell's fraction evaluates on (x, params) to the cell's concrete value."""
    params = machine.param_values()
    cfg = initial_configuration(list(x))
    steps = 0
    checked = 0
    status = RunStatus.STEP_LIMIT

    def check(c: Configuration) -> AuditMismatch | None:
        nonlocal checked
        for coord in sorted(c.work):
            cell = c.work[coord]
            checked += 1
            try:
                got = cell.symbolic.evaluate(list(c.input), params)
            except Exception:
                return AuditMismatch(steps, coord, cell.symbolic, cell.value, cell.value)
            if got != cell.value:
                return AuditMismatch(steps, coord, cell.symbolic, got, cell.value)
        return None

    bad = check(cfg)
    while bad is None:
        if steps >= limits.max_steps:
            status = RunStatus.STEP_LIMIT
            break
        outcome = step(machine, cfg)
        if isinstance(outcome, StepHalted):
            status = outcome.status
            break
        if isinstance(outcome, StepFault):
            status = RunStatus.RUNTIME_ERROR
            break
        steps += 1
        cfg = outcome.config
        bad = check(cfg)

    return AuditReport(
        passed=bad is None,
        status=status,
        steps=steps,
        cells_checked=checked,
        mismatch=bad,
    )


# textual machine descriptions ---------------------------------------------------

_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_\-]*$")
_PARAM_RE = re.compile(r"^A(\d+)$")
_NODE_RE = re.compile(r"^(\d+)\s*:\s*(.*)$")


def _split_comment(line: str) -> str:
    pos = line.find("#")
    return line if pos < 0 else line[:pos]


def parse_machine(text: str) -> Machine:
    """Parse the line-oriented machine description language.

    Layout: a ``machine <name>`` header, optional ``params A1 = v, ...`` and
    ``inputs <k>`` lines, then ``nodes:`` followed by one ``idx: instruction``
    line per node.  ``#`` starts a comment.
    """
    name: str | None = None
    params: list[tuple[str, Rational]] = []
    n_hint: int | None = None
    raw_nodes: dict[int, tuple[Instruction, int]] = {}
    in_nodes = False

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _split_comment(raw).strip()
        if not line:
            continue
        if name is None:
            parts = line.split()
            if len(parts) != 2 or parts[0] != "machine" or not _NAME_RE.match(parts[1]):
                raise ParseError("expected 'machine <name>'", lineno, 1)
            name = parts[1]
            continue
        if not in_nodes:
            if line.startswith("params "):
                for piece in line[len("params "):].split(","):
                    sym, eq, val = piece.partition("=")
                    sym = sym.strip()
                    if not eq or not _PARAM_RE.match(sym):
                        raise ParseError(
                            f"malformed parameter binding {piece.strip()!r}", lineno, 1
                        )
                    try:
                        value = parse_rational(val)
                    except ParseError as exc:
                        raise ParseError(exc.message, lineno, 1) from None
                    params.append((sym, value))
                continue
            if line.startswith("inputs "):
                try:
                    n_hint = int(line[len("inputs "):].strip())
                except ValueError:
                    raise ParseError("malformed 'inputs <k>' line", lineno, 1) from None
                continue
            if line == "nodes:":
                in_nodes = True
                continue
            raise ParseError(f"unexpected line {line!r}", lineno, 1)
        mt = _NODE_RE.match(line)
        if not mt:
            raise ParseError(f"expected '<index>: <instruction>', got {line!r}", lineno, 1)
        idx = int(mt.group(1))
        if idx in raw_nodes:
            raise ParseError(f"duplicate node index {idx}", lineno, 1)
        raw_nodes[idx] = (_parse_instruction(mt.group(2).strip(), lineno, params), lineno)

    if name is None:
        raise ParseError("empty machine description")
    if not in_nodes or not raw_nodes:
        raise ParseError("machine has no nodes")

    # parameter symbols must be distinct and contiguous A1..Am
    seen = [s for s, _ in params]
    if len(set(seen)) != len(seen):
        raise ParseError("duplicate parameter symbol")
    for k, sym in enumerate(seen, start=1):
        if sym != f"A{k}":
            raise ParseError(f"parameters must be declared as A1..A{len(seen)} in order")

    count = len(raw_nodes)
    nodes: list[Instruction] = []
    for idx in range(count):
        if idx not in raw_nodes:
            raise ParseError(f"missing node index {idx} (indexes must be 0..{count - 1})")
        nodes.append(raw_nodes[idx][0])

    for idx, ins in enumerate(nodes):
        lineno = raw_nodes[idx][1]
        if idx == 0 and ins.kind != "start":
            raise ParseError("node 0 must be the start node", lineno, 1)
        if idx != 0 and ins.kind == "start":
            raise ParseError("only node 0 may be a start node", lineno, 1)
        for ref in (ins.succ, ins.target):
            if ref is not None and not 0 <= ref < count:
                raise ParseError(
                    f"dangling successor index {ref} (valid range 0..{count - 1})",
                    lineno, 1,
                )

    return Machine(name=name, nodes=tuple(nodes), params=tuple(params), n_hint=n_hint)


def _parse_instruction(
    body: str, lineno: int, params: list[tuple[str, Rational]]
) -> Instruction:
    head, arrow, tail = body.partition("->")
    head = head.strip()
    tail = tail.strip()

    def succ() -> int:
        if not arrow or not tail.isdigit():
            raise ParseError(f"instruction {body!r} needs '-> <successor>'", lineno, 1)
        return int(tail)

    words = head.split()
    kind = words[0] if words else ""
    if kind == "start" and len(words) == 1:
        return Instruction("start", succ=succ())
    if kind == "input" and len(words) == 1:
        return Instruction("input", succ=succ())
    if kind == "output" and len(words) == 1:
        return Instruction("output", succ=succ())
    if kind == "compute" and len(words) == 2:
        if words[1] not in OPS:
            raise ParseError(f"unknown operation {words[1]!r}", lineno, 1)
        return Instruction("compute", succ=succ(), op=words[1])
    if kind == "const" and len(words) == 2:
        pm = _PARAM_RE.match(words[1])
        if pm:
            j = int(pm.group(1))
            if not 1 <= j <= len(params):
                raise ParseError(f"undeclared parameter {words[1]}", lineno, 1)
            return Instruction("const", succ=succ(), param=j)
        try:
            value = parse_rational(words[1])
        except ParseError as exc:
            raise ParseError(exc.message, lineno, 1) from None
        return Instruction("const", succ=succ(), value=value)
    if kind == "branch" and len(words) == 2 and words[1].isdigit():
        return Instruction("branch", succ=succ(), target=int(words[1]))
    if kind == "shift" and len(words) == 2 and words[1] in ("left", "right"):
        return Instruction("shift", succ=succ(), direction=words[1])
    if kind == "copy" and len(words) == 1:
        return Instruction("copy", succ=succ())
    if kind == "halt" and len(words) <= 2 and not arrow:
        mode = words[1] if len(words) == 2 else "plain"
        if mode not in HALT_MODES:
            raise ParseError(f"unknown halt mode {words[1]!r}", lineno, 1)
        return Instruction("halt", mode=mode)
    raise ParseError(f"unknown instruction {body!r}", lineno, 1)


def format_machine(machine: Machine) -> str:
    """Canonical textual form; parses back to an equal Machine."""
    lines = [f"machine {machine.name}"]
    if machine.params:
        bound = ", ".join(f"{s} = {format_rational(v)}" for s, v in machine.params)
        lines.append(f"params {bound}")
    if machine.n_hint is not None:
        lines.append(f"inputs {machine.n_hint}")
    lines.append("nodes:")
    for idx, ins in enumerate(machine.nodes):
        if ins.kind == "compute":
            body = f"compute {ins.op} -> {ins.succ}"
        elif ins.kind == "const":
            lit = f"A{ins.param}" if ins.param is not None else format_rational(ins.value)
            body = f"const {lit} -> {ins.succ}"
        elif ins.kind == "branch":
            body = f"branch {ins.target} -> {ins.succ}"
        elif ins.kind == "shift":
            body = f"shift {ins.direction} -> {ins.succ}"
        elif ins.kind == "halt":
            body = "halt" if ins.mode == "plain" else f"halt {ins.mode}"
        else:
            body = f"{ins.kind} -> {ins.succ}"
        lines.append(f"  {idx}: {body}")
    return "\n".join(lines) + "\n"
