"""Simulator and space/time profiler for register machines over exact
rationals, with an algebraic-circuit evaluator and a machine-to-circuit
compiler."""

from .algebra import (
    Polynomial,
    Rational,
    RationalFunction,
    evaluate,
    effective_vars,
    format_fraction,
    format_polynomial,
    format_rational,
    frac_op,
    parse_fraction,
    parse_polynomial,
    parse_rational,
    poly_gcd,
    poly_op,
    poly_stats,
)
from .circuits import (
    Circuit,
    circuit_stats,
    decide_cdp,
    eval_circuit,
    format_circuit,
    parse_circuit,
)
from .compiler import CompileBounds, compile_machine, verify_compilation
from .errors import (
    ConcreteDivisionByZero,
    InputExhausted,
    ParseError,
    ReadEmptyCell,
    SymbolicDivisionByZero,
    UsageError,
)
from .exploration import (
    ConfigGraph,
    GraphClass,
    PathCondition,
    Relation,
    Verdict,
    export_dot,
    reachable_graph,
    satisfies,
    symbolic_paths,
)
from .machine import (
    Cell,
    Configuration,
    Machine,
    RunLimits,
    RunResult,
    RunStatus,
    check_budget,
    check_flogspace_output,
    format_machine,
    parse_machine,
    run,
    run_symbolic_concrete_audit,
    step,
)
from .measures import (
    ConfigMeasure,
    WeakSizeBreakdown,
    height,
    unit_size,
    weak_cost_transition,
    weak_size_configuration,
    weak_size_fraction,
    weak_size_poly,
)

__version__ = "0.1.0"
