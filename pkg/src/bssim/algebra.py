"""Exact arithmetic foundation: big rationals, sparse multivariate polynomials
with integer coefficients, and canonically normalized polynomial fractions.

Polynomials live in Z[X1..Xn, A1..Am]: the first n slots of an exponent vector
belong to the input variables X1..Xn, the remaining m slots to the parameter
symbols A1..Am.  Parameter symbols are carried symbolically and never
substituted except by ``evaluate``.

Monomial order everywhere (display, leading coefficients) is graded
lexicographic with X1 < ... < Xn < A1 < ... < Am.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ConcreteDivisionByZero, ParseError, SymbolicDivisionByZero, UsageError

# Concrete scalar values are stdlib Fractions: already reduced, denominator
# positive, zero unique.
Rational = Fraction

Exponent = tuple[int, ...]

_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Rational:
    """Parse `p` or `p/q` (decimal integers, optional leading minus on p)."""
    m = _RATIONAL_RE.match(text.strip())
    if not m:
        raise ParseError(f"malformed rational {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError(f"malformed rational {text!r}: zero denominator")
    return Fraction(num, den)


def format_rational(value: Rational) -> str:
    return str(value)


def _grlex_key(exponent: Exponent) -> tuple:
    # Graded lex with the *last* slot (highest variable) most significant.
    return (sum(exponent), tuple(reversed(exponent)))


class Polynomial:
    """Immutable sparse polynomial in Z[X1..Xn, A1..Am].

    ``terms`` maps exponent vectors of length n+m to nonzero integer
    coefficients; the zero polynomial has an empty map.
    """

    __slots__ = ("n", "m", "terms", "_hash")

    def __init__(self, n: int, m: int, terms: dict[Exponent, int]):
        self.n = n
        self.m = m
        self.terms = {e: c for e, c in terms.items() if c != 0}
        self._hash: int | None = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, n: int, m: int = 0) -> Polynomial:
        return cls(n, m, {})

    @classmethod
    def const(cls, n: int, m: int, value: int) -> Polynomial:
        if value == 0:
            return cls(n, m, {})
        return cls(n, m, {(0,) * (n + m): value})

    @classmethod
    def input_var(cls, n: int, m: int, i: int) -> Polynomial:
        """The polynomial X_i, 1-based, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise UsageError(f"input variable index {i} out of range 1..{n}")
        e = [0] * (n + m)
        e[i - 1] = 1
        return cls(n, m, {tuple(e): 1})

    @classmethod
    def param(cls, n: int, m: int, j: int) -> Polynomial:
        """The polynomial A_j, 1-based, 1 <= j <= m."""
        if not 1 <= j <= m:
            raise UsageError(f"parameter index {j} out of range 1..{m}")
        e = [0] * (n + m)
        e[n + j - 1] = 1
        return cls(n, m, {tuple(e): 1})

    # -- basic protocol ------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.n == other.n and self.m == other.m and self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.m, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def __str__(self) -> str:
        return format_polynomial(self)

    def _check_arity(self, other: Polynomial) -> None:
        if self.n != other.n or self.m != other.m:
            raise UsageError(
                f"arity mismatch: ({self.n},{self.m}) vs ({other.n},{other.m})"
            )

    # -- ring operations -----------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_arity(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.n, self.m, out)

    def __sub__(self, other: Polynomial) -> Polynomial:
        self._check_arity(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return Polynomial(self.n, self.m, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.n, self.m, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check_arity(other)
        out: dict[Exponent, int] = {}
        for ea, ca in self.terms.items():
            for eb, cb in other.terms.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = out.get(e, 0) + ca * cb
        return Polynomial(self.n, self.m, out)

    def scale(self, c: int) -> Polynomial:
        return Polynomial(self.n, self.m, {e: c * v for e, v in self.terms.items()})

    # -- structural queries ---------------------------------------------------

    def total_degree(self) -> int:
        """Total degree over all n+m variables; 0 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=0)

    def term_count(self) -> int:
        return len(self.terms)

    def max_abs_coeff(self) -> int:
        return max((abs(c) for c in self.terms.values()), default=0)

    def input_var_set(self) -> frozenset[int]:
        """1-based indexes i <= n with a positive exponent in some term."""
        return frozenset(
            i + 1 for e in self.terms for i in range(self.n) if e[i] > 0
        )

    def max_input_vars_per_term(self) -> int:
        """Max over terms of the count of distinct input variables it uses."""
        return max(
            (sum(1 for i in range(self.n) if e[i] > 0) for e in self.terms),
            default=0,
        )

    def leading_coeff(self) -> int:
        """Coefficient of the graded-lex leading monomial; 0 for zero."""
        if not self.terms:
            return 0
        return self.terms[max(self.terms, key=_grlex_key)]

    def content(self) -> int:
        """Nonnegative gcd of all integer coefficients (0 for zero)."""
        return math.gcd(*self.terms.values()) if self.terms else 0

    def rotate_inputs(self, c: int) -> Polynomial:
        """Substitute X_i -> X_{((i-1+c) mod n)+1}; parameter slots unchanged."""
        if self.n == 0:
            return self
        out: dict[Exponent, int] = {}
        for e, coeff in self.terms.items():
            rot = [0] * self.n
            for i in range(self.n):
                rot[(i + c) % self.n] = e[i]
            key = tuple(rot) + e[self.n:]
            out[key] = out.get(key, 0) + coeff
        return Polynomial(self.n, self.m, out)

    def evaluate(self, xs: list[Rational], params: list[Rational]) -> Rational:
        if len(xs) != self.n or len(params) != self.m:
            raise UsageError(
                f"evaluation point has wrong arity: got ({len(xs)},{len(params)}),"
                f" need ({self.n},{self.m})"
            )
        point = list(xs) + list(params)
        total = Fraction(0)
        for e, c in self.terms.items():
            term = Fraction(c)
            for exp, v in zip(e, point):
                if exp:
                    term *= v ** exp
            total += term
        return total


def poly_op(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    """Exact ring operation, op in {'add', 'sub', 'mul'}."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise UsageError(f"unknown polynomial operation {op!r}")


def poly_stats(g: Polynomial) -> tuple[int, int, int]:
    """(total degree, non-zero monomial count, max |coefficient|)."""
    return g.total_degree(), g.term_count(), g.max_abs_coeff()


def effective_vars(g: Polynomial) -> tuple[frozenset[int], int]:
    """(set of input-variable indexes occurring in g, max input vars per monomial).

    Parameter symbols are treated as algebraically independent: only the first
    n exponent slots count.
    """
    return g.input_var_set(), g.max_input_vars_per_term()


# -- gcd machinery -----------------------------------------------------------


def _divexact_int(p: Polynomial, c: int) -> Polynomial:
    out = {}
    for e, v in p.terms.items():
        q, r = divmod(v, c)
        if r:
            raise UsageError("integer content does not divide exactly")
        out[e] = q
    return Polynomial(p.n, p.m, out)


def poly_divexact(a: Polynomial, b: Polynomial) -> Polynomial:
    """Exact division a / b; raises UsageError when b does not divide a."""
    if b.is_zero:
        raise UsageError("division by the zero polynomial")
    if a.is_zero:
        return a
    lead_b = max(b.terms, key=_grlex_key)
    cb = b.terms[lead_b]
    quot: dict[Exponent, int] = {}
    r = a
    while not r.is_zero:
        lead_r = max(r.terms.keys(), key=_grlex_key)
        qe = tuple(x - y for x, y in zip(lead_r, lead_b))
        if any(x < 0 for x in qe):
            raise UsageError("polynomial division is not exact")
        qc, rem = divmod(r.terms[lead_r], cb)
        if rem:
            raise UsageError("polynomial division is not exact")
        quot[qe] = quot.get(qe, 0) + qc
        r = r - Polynomial(a.n, a.m, {qe: qc}) * b
    return Polynomial(a.n, a.m, quot)


def _split_by_var(p: Polynomial, v: int) -> dict[int, Polynomial]:
    """View p as univariate in variable slot v: degree -> coefficient polynomial
    (the coefficients keep the full arity but have exponent 0 on slot v)."""
    out: dict[int, dict[Exponent, int]] = {}
    for e, c in p.terms.items():
        d = e[v]
        rest = e[:v] + (0,) + e[v + 1:]
        bucket = out.setdefault(d, {})
        bucket[rest] = bucket.get(rest, 0) + c
    return {d: Polynomial(p.n, p.m, t) for d, t in out.items()}


def _join_by_var(parts: dict[int, Polynomial], n: int, m: int, v: int) -> Polynomial:
    out: dict[Exponent, int] = {}
    for d, coeff in parts.items():
        for e, c in coeff.terms.items():
            key = e[:v] + (d,) + e[v + 1:]
            out[key] = out.get(key, 0) + c
    return Polynomial(n, m, out)


def _max_var_slot(p: Polynomial) -> int:
    """Highest variable slot with a positive exponent, or -1 for constants."""
    best = -1
    for e in p.terms:
        for i in range(len(e) - 1, best, -1):
            if e[i] > 0:
                best = i
                break
    return best


def _normalize_sign(p: Polynomial) -> Polynomial:
    return -p if p.leading_coeff() < 0 else p


def _content_and_pp(p: Polynomial, v: int) -> tuple[Polynomial, dict[int, Polynomial]]:
    """Content (gcd of the coefficients of p seen in variable v) and the
    primitive part, split by degree in v."""
    parts = _split_by_var(p, v)
    coeffs = list(parts.values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = poly_gcd(cont, c)
        if cont.term_count() == 1 and cont.total_degree() == 0 and cont.leading_coeff() == 1:
            break  # content is already 1
    pp = {d: poly_divexact(c, cont) for d, c in parts.items()}
    return cont, pp


def _prem(a: dict[int, Polynomial], b: dict[int, Polynomial],
          n: int, m: int, v: int) -> Polynomial:
    """Pseudo-remainder of a by b, both split by degree in v, deg_v(b) >= 0.

    Uses the naive variant (multiply by lead(b) once per reduction step);
    coefficients stay integral and the primitive part is unaffected.
    """
    db = max(b)
    lb = b[db]
    r = _join_by_var(a, n, m, v)
    while not r.is_zero:
        parts = _split_by_var(r, v)
        dr = max(parts)
        if dr < db:
            break
        lr = parts[dr]
        # r := lb*r - lr * v^(dr-db) * b  (leading v-terms cancel)
        shifted = _join_by_var({d + dr - db: c * lr for d, c in b.items()}, n, m, v)
        r = _join_by_var({d: c * lb for d, c in parts.items()}, n, m, v) - shifted
    return r


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Gcd in Z[X,A] including integer content, graded-lex leading coefficient
    positive.  Recursive content/primitive-part reduction with primitive
    pseudo-remainder sequences."""
    a._check_arity(b)
    if a.is_zero:
        return _normalize_sign(b)
    if b.is_zero:
        return _normalize_sign(a)
    va, vb = _max_var_slot(a), _max_var_slot(b)
    if va < 0 and vb < 0:
        c = math.gcd(a.leading_coeff(), b.leading_coeff())
        return Polynomial.const(a.n, a.m, c)
    if va < 0:
        return poly_gcd(b, a)
    if vb < 0 or vb < va:
        # gcd must be free of variable va: reduce a to its content in va.
        cont_a, _ = _content_and_pp(a, va)
        return poly_gcd(cont_a, b)
    if va < vb:
        return poly_gcd(b, a)
    v = va
    cont_a, pp_a = _content_and_pp(a, v)
    cont_b, pp_b = _content_and_pp(b, v)
    cont = poly_gcd(cont_a, cont_b)
    A, B = pp_a, pp_b
    if max(A) < max(B):
        A, B = B, A
    while True:
        r = _prem(A, B, a.n, a.m, v)
        if r.is_zero:
            break
        A = B
        _, B = _content_and_pp(r, v)
        if max(B) == 0:
            # a degree-0 primitive remainder divides the v-free part only
            B = {0: Polynomial.const(a.n, a.m, 1)}
            break
    g = _join_by_var(B, a.n, a.m, v)
    return _normalize_sign(cont * g)


# -- fractions ----------------------------------------------------------------


@dataclass(frozen=True)
class RationalFunction:
    """Canonical quotient num/den of integer polynomials.

    Invariants: den is nonzero; gcd(num, den) is a constant; the joint integer
    content of (num, den) is 1; den's graded-lex leading coefficient is
    positive.  Construct through :meth:`new` (or the arithmetic operators),
    which normalizes.
    """

    num: Polynomial
    den: Polynomial

    @classmethod
    def new(cls, num: Polynomial, den: Polynomial) -> RationalFunction:
        num._check_arity(den)
        if den.is_zero:
            raise SymbolicDivisionByZero("fraction with zero denominator")
        if num.is_zero:
            return cls(Polynomial.zero(num.n, num.m), Polynomial.const(num.n, num.m, 1))
        g = poly_gcd(num, den)
        num = poly_divexact(num, g)
        den = poly_divexact(den, g)
        # joint content is 1 after dividing by the full gcd; fix den's sign
        if den.leading_coeff() < 0:
            num, den = -num, -den
        return cls(num, den)

    @classmethod
    def from_poly(cls, p: Polynomial) -> RationalFunction:
        return cls.new(p, Polynomial.const(p.n, p.m, 1))

    @classmethod
    def from_rational(cls, n: int, m: int, value: Rational) -> RationalFunction:
        return cls(
            Polynomial.const(n, m, value.numerator),
            Polynomial.const(n, m, value.denominator),
        )

    @property
    def is_zero(self) -> bool:
        return self.num.is_zero

    def __str__(self) -> str:
        return format_fraction(self)

    def __add__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.new(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.new(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __mul__(self, other: RationalFunction) -> RationalFunction:
        return RationalFunction.new(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: RationalFunction) -> RationalFunction:
        if other.num.is_zero:
            raise SymbolicDivisionByZero("division by the zero fraction")
        return RationalFunction.new(self.num * other.den, self.den * other.num)

    def evaluate(self, xs: list[Rational], params: list[Rational]) -> Rational:
        den = self.den.evaluate(xs, params)
        if den == 0:
            raise ConcreteDivisionByZero(
                f"denominator {self.den} vanishes at the given point"
            )
        return self.num.evaluate(xs, params) / den


def frac_op(a: RationalFunction, b: RationalFunction, op: str) -> RationalFunction:
    """Field operation followed by canonical normalization."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise UsageError(f"unknown fraction operation {op!r}")


def evaluate(f: RationalFunction, xs: list[Rational], params: list[Rational]) -> Rational:
    return f.evaluate(xs, params)


# -- textual forms -------------------------------------------------------------

_TERM_RE = re.compile(r"^(\d+)?((?:\*?[XA]\d+(?:\^\d+)?)*)$")
_FACTOR_RE = re.compile(r"([XA])(\d+)(?:\^(\d+))?")


def format_polynomial(p: Polynomial) -> str:
    """Render as a signed term list, descending graded-lex order; round-trips
    through :func:`parse_polynomial`."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for e in sorted(p.terms, key=_grlex_key, reverse=True):
        c = p.terms[e]
        factors = []
        for i, exp in enumerate(e):
            if exp == 0:
                continue
            name = f"X{i + 1}" if i < p.n else f"A{i - p.n + 1}"
            factors.append(name if exp == 1 else f"{name}^{exp}")
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else "*".join([str(mag)] + factors)
        else:
            body = str(mag)
        if not pieces:
            pieces.append(body if c > 0 else f"-{body}")
        else:
            pieces.append(f"{' + ' if c > 0 else ' - '}{body}")
    return "".join(pieces)


def parse_polynomial(text: str, n: int, m: int) -> Polynomial:
    """Parse the term-list form produced by :func:`format_polynomial`."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if s == "0":
        return Polynomial.zero(n, m)
    # split into signed terms
    s = s.replace(" ", "")
    terms: dict[Exponent, int] = {}
    sign = 1
    i = 0
    if s[0] in "+-":
        sign = -1 if s[0] == "-" else 1
        i = 1
    start = i
    chunks: list[tuple[int, str]] = []
    while i <= len(s):
        if i == len(s) or s[i] in "+-":
            chunks.append((sign, s[start:i]))
            if i < len(s):
                sign = -1 if s[i] == "-" else 1
            start = i + 1
        i += 1
    for sgn, chunk in chunks:
        if not chunk:
            raise ParseError(f"empty term in polynomial {text!r}")
        mt = _TERM_RE.match(chunk)
        if not mt:
            raise ParseError(f"malformed term {chunk!r}")
        coeff = int(mt.group(1)) if mt.group(1) else 1
        e = [0] * (n + m)
        for kind, idx_s, exp_s in _FACTOR_RE.findall(mt.group(2) or ""):
            idx = int(idx_s)
            exp = int(exp_s) if exp_s else 1
            if kind == "X":
                if not 1 <= idx <= n:
                    raise ParseError(f"input variable X{idx} out of arity n={n}")
                slot = idx - 1
            else:
                if not 1 <= idx <= m:
                    raise ParseError(f"parameter A{idx} out of arity m={m}")
                slot = n + idx - 1
            e[slot] += exp
        key = tuple(e)
        terms[key] = terms.get(key, 0) + sgn * coeff
    return Polynomial(n, m, terms)


def format_fraction(f: RationalFunction) -> str:
    return f"({format_polynomial(f.num)})/({format_polynomial(f.den)})"


_FRACTION_RE = re.compile(r"^\((.*)\)/\((.*)\)$")


def parse_fraction(text: str, n: int, m: int) -> RationalFunction:
    mt = _FRACTION_RE.match(text.strip())
    if not mt:
        raise ParseError(f"malformed fraction {text!r}: expected (g)/(h)")
    return RationalFunction.new(
        parse_polynomial(mt.group(1), n, m), parse_polynomial(mt.group(2), n, m)
    )
