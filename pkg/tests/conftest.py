"""Shared strategies and independent oracles for the test suite.

The oracles here deliberately re-derive everything from scratch (plain dict
arithmetic, float log2) so they stay independent of the implementation paths
they check.
"""

from __future__ import annotations

import math
from fractions import Fraction

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from bssim.algebra import Polynomial, RationalFunction

settings.register_profile(
    "suite",
    deadline=None,
    database=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")

# -- hypothesis strategies -------------------------------------------------------


def poly_terms(n: int, m: int, max_terms: int = 3, max_exp: int = 2, max_coeff: int = 5):
    exponent = st.tuples(*([st.integers(0, max_exp)] * (n + m)))
    coeff = st.integers(-max_coeff, max_coeff).filter(lambda c: c != 0)
    return st.dictionaries(exponent, coeff, max_size=max_terms)


def polys(n: int = 2, m: int = 1, **kw):
    return poly_terms(n, m, **kw).map(lambda d: Polynomial(n, m, d))


def nonzero_polys(n: int = 2, m: int = 1, **kw):
    return polys(n, m, **kw).filter(lambda p: not p.is_zero)


def fractions_nm(n: int = 2, m: int = 1, **kw):
    return st.tuples(polys(n, m, **kw), nonzero_polys(n, m, **kw)).map(
        lambda t: RationalFunction.new(*t)
    )


def rationals(max_num: int = 6, max_den: int = 5):
    return st.builds(
        Fraction, st.integers(-max_num, max_num), st.integers(1, max_den)
    )


# -- independent oracles ---------------------------------------------------------


def oracle_poly_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for e, c in b.items():
        out[e] = out.get(e, 0) + c
    return {e: c for e, c in out.items() if c != 0}


def oracle_poly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            out[e] = out.get(e, 0) + ca * cb
    return {e: c for e, c in out.items() if c != 0}


def oracle_bits(x: int) -> int:
    """ceil(log2(x+1)) computed through float log2, not bit_length."""
    return 0 if x == 0 else math.ceil(math.log2(x + 1))


def oracle_weak_size(terms: dict, n: int, offset: int) -> int:
    """Direct transcription of the weak-size formula on a raw term map."""
    if not terms:
        return 0
    N = len(terms)
    S = max(abs(c) for c in terms.values())
    deg = max(sum(e) for e in terms)
    var = {i + 1 for e in terms for i in range(n) if e[i] > 0}
    V = max(sum(1 for i in range(n) if e[i] > 0) for e in terms)
    R = max(((i + offset) % n for i in var), default=0)
    return N * (oracle_bits(2 * S) + V * oracle_bits(R) + V * oracle_bits(deg))


def oracle_weak_size_fraction(f: RationalFunction, n: int, offset: int) -> int:
    if f.num.is_zero:
        return 0
    return max(
        oracle_weak_size(f.num.terms, n, offset),
        oracle_weak_size(f.den.terms, n, offset),
    )


def oracle_config_weak_size(
    cells: list[tuple[int, RationalFunction]], n: int
) -> tuple[int, int]:
    """(min-over-offset sum, minimizing offset), brute force."""
    best = None
    for offset in range(n):
        total = sum(oracle_weak_size_fraction(f, n, offset) for _, f in cells)
        if best is None or total < best[0]:
            best = (total, offset)
    assert best is not None
    return best
