"""Complexity measures for work-tape contents and transitions.

Four measures are implemented:

* integer ``height``: ceil(log2(|c|+1)), the binary digit count of c;
* ``weak size`` of a polynomial for an offset O:
  ``N * (S_bits + V*R_bits + V*D_bits)`` where N is the monomial count,
  S_bits the height of twice the largest |coefficient|, D_bits the height of
  the total degree, V the largest number of distinct input variables in one
  monomial, and R_bits the height of the range
  ``max{(i+O) mod n : X_i occurs}``; a fraction takes the max of its two
  sides, and a configuration takes the offset minimizing the sum over cells;
* ``weak cost`` of a transition: for a computation step producing g/h, the
  max of deg(g), deg(h) and the coefficient heights; 1 for any other step;
* ``unit size``: the number of non-empty work cells.

All logarithms are base 2 and all results are exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Polynomial, RationalFunction
from .errors import UsageError


def height(c: int) -> int:
    """ceil(log2(|c|+1)): the number of binary digits of |c| (0 for 0)."""
    return abs(c).bit_length()


@dataclass(frozen=True)
class WeakSizeBreakdown:
    """The six statistics behind one polynomial's weak size at one offset."""

    N: int
    S_bits: int
    D_bits: int
    V: int
    R_bits: int
    offset: int
    range_raw: int
    total: int

    def as_dict(self) -> dict[str, int]:
        return {
            "N": self.N,
            "S_bits": self.S_bits,
            "D_bits": self.D_bits,
            "V": self.V,
            "R_bits": self.R_bits,
            "offset": self.offset,
            "range_raw": self.range_raw,
            "total": self.total,
        }


_ZERO_BREAKDOWN_FIELDS = dict(N=0, S_bits=0, D_bits=0, V=0, R_bits=0, range_raw=0, total=0)


def weak_size_poly(g: Polynomial, offset: int, n: int) -> WeakSizeBreakdown:
    """Weak size of a polynomial with input arity n at the given offset."""
    if n < 1:
        raise UsageError("weak size needs at least one input variable (n >= 1)")
    if not 0 <= offset < n:
        raise UsageError(f"offset {offset} out of range [0, {n})")
    if g.n != n:
        raise UsageError(f"polynomial has input arity {g.n}, expected {n}")
    if g.is_zero:
        return WeakSizeBreakdown(offset=offset, **_ZERO_BREAKDOWN_FIELDS)
    N = g.term_count()
    s_bits = height(2 * g.max_abs_coeff())
    d_bits = height(g.total_degree())
    V = g.max_input_vars_per_term()
    rng = max(((i + offset) % n for i in g.input_var_set()), default=0)
    r_bits = height(rng)
    return WeakSizeBreakdown(
        N=N,
        S_bits=s_bits,
        D_bits=d_bits,
        V=V,
        R_bits=r_bits,
        offset=offset,
        range_raw=rng,
        total=N * (s_bits + V * r_bits + V * d_bits),
    )


def weak_size_fraction(f: RationalFunction, offset: int, n: int) -> int:
    """Max of the weak sizes of numerator and denominator; 0 for the zero
    fraction (the zero fraction counts as contentless)."""
    if f.is_zero:
        return 0
    return max(
        weak_size_poly(f.num, offset, n).total,
        weak_size_poly(f.den, offset, n).total,
    )


def fraction_breakdown(f: RationalFunction, offset: int, n: int) -> WeakSizeBreakdown:
    """Breakdown of whichever side of the fraction attains the weak size
    (ties go to the numerator)."""
    if f.is_zero:
        return WeakSizeBreakdown(offset=offset, **_ZERO_BREAKDOWN_FIELDS)
    top = weak_size_poly(f.num, offset, n)
    bot = weak_size_poly(f.den, offset, n)
    return top if top.total >= bot.total else bot


@dataclass(frozen=True)
class ConfigMeasure:
    """Weak size of one configuration's work tape plus its unit size."""

    weak_size: int
    best_offset: int
    per_cell: tuple[tuple[int, WeakSizeBreakdown], ...]
    unit_size: int


def weak_size_configuration(
    cells: list[tuple[int, RationalFunction]], n: int
) -> ConfigMeasure:
    """Brute-force minimum over the n offsets of the per-cell weak-size sums.

    ``cells`` lists the non-empty work-tape cells as (coordinate, fraction).
    Ties between offsets break toward the smallest offset.
    """
    if not cells:
        return ConfigMeasure(0, 0, (), 0)
    if n < 1:
        raise UsageError("weak size needs at least one input variable (n >= 1)")
    best_total: int | None = None
    best_offset = 0
    for offset in range(n):
        total = sum(weak_size_fraction(f, offset, n) for _, f in cells)
        if best_total is None or total < best_total:
            best_total, best_offset = total, offset
    per_cell = tuple(
        (idx, fraction_breakdown(f, best_offset, n)) for idx, f in cells
    )
    assert best_total is not None
    return ConfigMeasure(best_total, best_offset, per_cell, len(cells))


def weak_cost_transition(kind: str, result: RationalFunction | None = None) -> int:
    """Weak cost of one transition: degree/coefficient-height based for a
    computation step, 1 for every other step."""
    if kind == "computation":
        if result is None:
            raise UsageError("computation transitions carry the produced fraction")
        coeff_heights = [height(c) for c in result.num.terms.values()]
        coeff_heights += [height(c) for c in result.den.terms.values()]
        return max(
            result.num.total_degree(),
            result.den.total_degree(),
            max(coeff_heights, default=0),
        )
    if kind == "other":
        if result is not None:
            raise UsageError("only computation transitions carry a fraction")
        return 1
    raise UsageError(f"unknown transition kind {kind!r}")


def unit_size(cells: list[tuple[int, RationalFunction]]) -> int:
    """Number of non-empty cells; a written cell holding 0 is non-empty."""
    return len(cells)


def check_space_budget(weak_space: int, n: int, budget: str) -> bool:
    """Check a weak-space value against a budget.

    Budgets: ``log:K`` (weak_space < K*log2(n), needs n >= 2), ``poly:K,D``
    (weak_space < K*n^D), ``const:M`` (weak_space < M).  All comparisons are
    exact integer arithmetic.
    """
    kind, _, arg = budget.partition(":")
    try:
        if kind == "log":
            k = int(arg)
            if n < 2:
                raise UsageError("log budget needs n >= 2")
            # weak_space < k*log2(n)  <=>  2^weak_space < n^k
            return 2 ** weak_space < n ** k
        if kind == "poly":
            k_s, d_s = arg.split(",")
            return weak_space < int(k_s) * n ** int(d_s)
        if kind == "const":
            return weak_space < int(arg)
    except ValueError as exc:
        raise UsageError(f"malformed budget {budget!r}") from exc
    raise UsageError(f"unknown budget kind {kind!r} (use log:K | poly:K,D | const:M)")
