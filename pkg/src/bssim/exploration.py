"""Configuration-graph construction on concrete runs (with lasso detection)
and symbolic path exploration emitting sign-condition systems.

Concrete exploration canonicalizes every configuration (normalized cell
fractions keyed by coordinate, plus instruction and head positions) into a
digest string; revisiting a digest proves the deterministic run has entered a
cycle (a lasso).

Symbolic exploration runs the machine on fractions only: inputs become the
variables X1..Xn and both sides of every branch are explored.  Comparing
f1 = g1/h1 against f2 = g2/h2 appends the literal
``(g1*h2 - g2*h1)*h1*h2 >= 0`` (taken) or ``< 0`` (fall-through) together
with ``h != 0`` literals for non-constant denominators; multiplying by
(h1*h2)^2 keeps the sign test correct without case-splitting on denominator
signs.  Paths whose literal set contains the same polynomial with >= 0 and
< 0 (or an identically-zero polynomial with < 0 or != 0) are pruned.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .algebra import Polynomial, Rational, RationalFunction, format_polynomial
from .errors import UsageError
from .machine import (
    Configuration,
    Machine,
    RunLimits,
    RunStatus,
    StepFault,
    StepHalted,
    initial_configuration,
    step,
)
from .measures import weak_size_configuration


class GraphClass(enum.Enum):
    HALT_ACCEPT = "HaltAccept"
    HALT_REJECT = "HaltReject"
    HALT_PLAIN = "HaltPlain"
    LASSO = "Lasso"
    BUDGET_EXCEEDED = "BudgetExceeded"
    RUNTIME_ERROR = "RuntimeError"


@dataclass(frozen=True)
class ConfigGraph:
    vertices: tuple[str, ...]              # canonical digests, in visit order
    edges: tuple[tuple[int, int], ...]     # indexes into vertices
    classification: GraphClass
    lasso: tuple[int, int] | None = None   # (prefix length, cycle length)
    error_kind: str | None = None
    labels: tuple[tuple[int, int], ...] = ()  # per-vertex (node index, Size_w)


def digest_configuration(cfg: Configuration) -> str:
    cells = ";".join(f"{coord}={frac}" for coord, frac in cfg.cells())
    return (
        f"node={cfg.node} ih={cfg.input_head} wh={cfg.work_head}"
        f" oh={cfg.output_head} cells[{cells}]"
    )


def reachable_graph(
    machine: Machine, x: list[Rational], budget: RunLimits
) -> ConfigGraph:
    """Forward exploration from the initial configuration; stops on halt,
    digest revisit (lasso), budget, or a runtime fault."""
    n_eff = max(1, len(x))
    cfg = initial_configuration(list(x))

    seen: dict[str, int] = {}
    vertices: list[str] = []
    labels: list[tuple[int, int]] = []
    edges: list[tuple[int, int]] = []

    def admit(c: Configuration) -> int:
        d = digest_configuration(c)
        if d in seen:
            return seen[d]
        seen[d] = len(vertices)
        vertices.append(d)
        labels.append((c.node, weak_size_configuration(c.cells(), n_eff).weak_size))
        return -1

    def snapshot(
        cls: GraphClass, lasso: tuple[int, int] | None = None, err: str | None = None
    ) -> ConfigGraph:
        return ConfigGraph(
            vertices=tuple(vertices),
            edges=tuple(edges),
            classification=cls,
            lasso=lasso,
            error_kind=err,
            labels=tuple(labels),
        )

    admit(cfg)
    steps = 0
    while True:
        measure = weak_size_configuration(cfg.cells(), n_eff)
        if (
            budget.max_weak_space is not None and measure.weak_size > budget.max_weak_space
        ) or (
            budget.max_unit_space is not None and measure.unit_size > budget.max_unit_space
        ):
            return snapshot(GraphClass.BUDGET_EXCEEDED)
        if steps >= budget.max_steps:
            return snapshot(GraphClass.BUDGET_EXCEEDED)
        outcome = step(machine, cfg)
        if isinstance(outcome, StepHalted):
            cls = {
                RunStatus.ACCEPTED: GraphClass.HALT_ACCEPT,
                RunStatus.REJECTED: GraphClass.HALT_REJECT,
                RunStatus.HALTED_PLAIN: GraphClass.HALT_PLAIN,
            }[outcome.status]
            return snapshot(cls)
        if isinstance(outcome, StepFault):
            return snapshot(GraphClass.RUNTIME_ERROR, err=outcome.kind)
        steps += 1
        src = len(vertices) - 1
        revisit = admit(outcome.config)
        if revisit >= 0:
            edges.append((src, revisit))
            prefix = revisit
            cycle = len(vertices) - revisit
            return snapshot(GraphClass.LASSO, lasso=(prefix, cycle))
        edges.append((src, len(vertices) - 1))
        cfg = outcome.config


def export_dot(graph: ConfigGraph) -> str:
    """Render the graph in DOT form; the lasso back-edge is dashed."""
    lines = ["digraph configurations {", "  rankdir=LR;"]
    for i, (node, size_w) in enumerate(graph.labels):
        lines.append(f'  v{i} [label="c{i}: node {node}\\nSize_w {size_w}"];')
    back = graph.edges[-1] if graph.classification is GraphClass.LASSO else None
    for a, c in graph.edges:
        if (a, c) == back:
            lines.append(f"  v{a} -> v{c} [style=dashed, color=red];")
        else:
            lines.append(f"  v{a} -> v{c};")
    lines.append(f'  label="{graph.classification.value}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# symbolic path exploration -----------------------------------------------------


class Relation(enum.Enum):
    GE0 = ">= 0"
    LT0 = "< 0"
    NE0 = "!= 0"


class Verdict(enum.Enum):
    ACCEPT = "Accept"
    REJECT = "Reject"
    DEPTH_LIMIT = "DepthLimit"
    ERROR = "Error"


Literal = tuple[Polynomial, Relation]


@dataclass(frozen=True)
class PathCondition:
    literals: tuple[Literal, ...]
    verdict: Verdict
    trace_length: int
    error_kind: str | None = None

    def render(self) -> str:
        body = ", ".join(f"{format_polynomial(p)} {r.value}" for p, r in self.literals)
        return f"{{{body}}} -> {self.verdict.value}"


def _contradicts(literals: tuple[Literal, ...], new: Literal) -> bool:
    p, rel = new
    if p.is_zero and rel in (Relation.LT0, Relation.NE0):
        return True
    opposite = Relation.LT0 if rel is Relation.GE0 else Relation.GE0
    if rel in (Relation.GE0, Relation.LT0):
        return any(q == p and r is opposite for q, r in literals)
    return False


@dataclass(frozen=True)
class _SymState:
    node: int
    input_head: int
    work_head: int
    output_head: int
    cells: tuple[tuple[int, RationalFunction], ...]
    literals: tuple[Literal, ...]
    steps: int


def symbolic_paths(machine: Machine, n: int, depth: int) -> list[PathCondition]:
    """Depth-first exploration of all branch outcomes with symbolic cells.

    Each leaf yields a PathCondition whose literals, in branch-encounter
    order, describe the inputs that drive the machine down that path.  A
    machine halting plain counts as Accept.  Paths longer than ``depth``
    steps end as DepthLimit; symbolic faults (division by the zero fraction,
    reading an empty cell, input exhaustion past n) end as Error.
    """
    if depth < 1:
        raise UsageError("depth must be >= 1")
    m = machine.m
    results: list[PathCondition] = []
    start = _SymState(0, 0, 0, 0, (), (), 0)
    stack = [start]

    def leaf(st: _SymState, verdict: Verdict, err: str | None = None) -> None:
        results.append(PathCondition(st.literals, verdict, st.steps, err))

    while stack:
        st = stack.pop()
        cells = dict(st.cells)
        ins = machine.nodes[st.node]

        if ins.kind == "halt":
            verdict = Verdict.REJECT if ins.mode == "reject" else Verdict.ACCEPT
            leaf(st, verdict)
            continue
        if st.steps >= depth:
            leaf(st, Verdict.DEPTH_LIMIT)
            continue

        def advance(
            node: int,
            ih: int | None = None,
            wh: int | None = None,
            oh: int | None = None,
            new_cells: dict[int, RationalFunction] | None = None,
            extra: tuple[Literal, ...] = (),
        ) -> _SymState:
            src = new_cells if new_cells is not None else cells
            return _SymState(
                node=node,
                input_head=st.input_head if ih is None else ih,
                work_head=st.work_head if wh is None else wh,
                output_head=st.output_head if oh is None else oh,
                cells=tuple(sorted(src.items())),
                literals=st.literals + extra,
                steps=st.steps + 1,
            )

        if ins.kind == "start":
            stack.append(advance(ins.succ))
        elif ins.kind == "input":
            if st.input_head >= n:
                leaf(st, Verdict.ERROR, "InputExhausted")
                continue
            cells[st.work_head] = RationalFunction.from_poly(
                Polynomial.input_var(n, m, st.input_head + 1)
            )
            stack.append(advance(ins.succ, ih=st.input_head + 1, new_cells=cells))
        elif ins.kind == "output":
            if st.work_head not in cells:
                leaf(st, Verdict.ERROR, "ReadEmptyCell")
                continue
            stack.append(advance(ins.succ, oh=st.output_head + 1))
        elif ins.kind == "const":
            if ins.param is not None:
                f = RationalFunction.from_poly(Polynomial.param(n, m, ins.param))
            else:
                assert ins.value is not None
                f = RationalFunction.from_rational(n, m, ins.value)
            cells[st.work_head] = f
            stack.append(advance(ins.succ, new_cells=cells))
        elif ins.kind == "shift":
            delta = 1 if ins.direction == "right" else -1
            stack.append(advance(ins.succ, wh=st.work_head + delta))
        elif ins.kind == "copy":
            if st.work_head not in cells:
                leaf(st, Verdict.ERROR, "ReadEmptyCell")
                continue
            cells[st.work_head + 1] = cells[st.work_head]
            stack.append(advance(ins.succ, new_cells=cells))
        elif ins.kind == "compute":
            a = cells.get(st.work_head)
            bb = cells.get(st.work_head + 1)
            if a is None or bb is None:
                leaf(st, Verdict.ERROR, "ReadEmptyCell")
                continue
            if ins.op == "div" and bb.is_zero:
                leaf(st, Verdict.ERROR, "SymbolicDivisionByZero")
                continue
            if ins.op == "add":
                cells[st.work_head] = a + bb
            elif ins.op == "sub":
                cells[st.work_head] = a - bb
            elif ins.op == "mul":
                cells[st.work_head] = a * bb
            else:
                cells[st.work_head] = a / bb
            stack.append(advance(ins.succ, new_cells=cells))
        elif ins.kind == "branch":
            f1 = cells.get(st.work_head)
            f2 = cells.get(st.work_head + 1)
            if f1 is None or f2 is None:
                leaf(st, Verdict.ERROR, "ReadEmptyCell")
                continue
            guards: list[Literal] = []
            for den in (f1.den, f2.den):
                if den.total_degree() > 0:
                    guards.append((den, Relation.NE0))
            p = (f1.num * f2.den - f2.num * f1.den) * f1.den * f2.den
            branches = []
            assert ins.target is not None and ins.succ is not None
            for target, rel in ((ins.target, Relation.GE0), (ins.succ, Relation.LT0)):
                lits = st.literals
                dead = False
                for lit in guards + [(p, rel)]:
                    if _contradicts(lits, lit):
                        dead = True
                        break
                    lits = lits + (lit,)
                if not dead:
                    branches.append(
                        _SymState(
                            node=target,
                            input_head=st.input_head,
                            work_head=st.work_head,
                            output_head=st.output_head,
                            cells=st.cells,
                            literals=lits,
                            steps=st.steps + 1,
                        )
                    )
            # LIFO: push fall-through first so the taken side is explored first
            for nxt in reversed(branches):
                stack.append(nxt)
        else:
            raise UsageError(f"unknown instruction kind {ins.kind!r}")

    return results


def satisfies(
    path: PathCondition, x: list[Rational], params: list[Rational]
) -> bool:
    """Exact check that the input satisfies every literal of the path."""
    for poly, rel in path.literals:
        value = poly.evaluate(list(x), list(params))
        if rel is Relation.GE0 and not value >= 0:
            return False
        if rel is Relation.LT0 and not value < 0:
            return False
        if rel is Relation.NE0 and value == 0:
            return False
    return True
