"""Rational-function expressions for cone combinations, and exact counting.

A cone C with generators v_1..v_k and fundamental-parallelepiped lattice
points u_1..u_N has the generating function

    Phi_C(z) = (z^{u_1} + ... + z^{u_N}) / ((1 - z^{v_1}) ... (1 - z^{v_k}))

and a signed combination of cones turns into the matching signed sum of
such terms. Nothing here attempts cross-term normalization; expressions
are structured sums, rendered as-is.

Counting substitutes z_i -> exp(lam_i t) for an integer direction lam that
is non-orthogonal to every denominator exponent and reads off the constant
Laurent coefficient at t = 0 with exact rational series arithmetic.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .barvinok import decompose_combination
from .cones import ConeCombination, SymbolicCone, enum_fundpar
from .exactmath import IntVec, is_forward, vec_dot, vec_sub

FP = "fp"
BARVINOK = "barvinok"


@dataclass(frozen=True)
class RatFunTerm:
    """One summand: mult * (sum of z^u for u in numerator) / prod (1 - z^v).

    Denominator vectors coming out of the solver pipeline are non-zero,
    forward and primitive. A term with an empty numerator is the zero term
    (a cone whose affine hull misses the lattice).
    """

    mult: int
    numerator: tuple[IntVec, ...]
    denominator: tuple[IntVec, ...]

    def __post_init__(self):
        if not self.denominator:
            raise ValueError("term needs at least one denominator factor")
        d = len(self.denominator[0])
        vectors = list(self.numerator) + list(self.denominator)
        if any(len(v) != d for v in vectors):
            raise ValueError("exponent vectors must have equal length")
        if any(all(x == 0 for x in v) for v in self.denominator):
            raise ValueError("denominator exponent must be non-zero")

    @property
    def is_zero(self) -> bool:
        return not self.numerator or self.mult == 0

    @property
    def dimension(self) -> int:
        return len(self.denominator[0])


@dataclass(frozen=True)
class RatFunExpr:
    """A structured sum of RatFunTerm, with no normalization across terms."""

    terms: tuple[RatFunTerm, ...]

    def __iter__(self) -> Iterator[RatFunTerm]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def dimension(self) -> int | None:
        return self.terms[0].dimension if self.terms else None


def cone_to_term_fp(c: SymbolicCone) -> RatFunTerm:
    """Generating-function term of one cone via parallelepiped enumeration.

    Numerator exponents are the lattice points of the half-open fundamental
    parallelepiped (lex-sorted), denominator exponents the generator
    columns verbatim. The zero term results when the affine hull of the
    cone contains no lattice point.
    """
    points = tuple(sorted(enum_fundpar(c)))
    return RatFunTerm(1, points, c.generators)


def _forward_normalized(mult: int, nums: tuple[IntVec, ...], dens: tuple[IntVec, ...]):
    """Flip backward denominator factors: z^u/(1-z^v) = -z^(u-v)/(1-z^-v)."""
    for i, v in enumerate(dens):
        if not is_forward(v):
            flipped = tuple(-x for x in v)
            mult = -mult
            nums = tuple(vec_sub(u, v) for u in nums)
            dens = dens[:i] + (flipped,) + dens[i + 1:]
    return mult, nums, dens


def combination_to_ratfun(
    combination: ConeCombination,
    method: str = FP,
    *,
    index_threshold: int = 1,
    rng: random.Random | None = None,
) -> RatFunExpr:
    """Turn a signed cone combination into a rational-function expression.

    ``fp`` enumerates each fundamental parallelepiped directly; the number
    of numerator monomials per term is then the index of the cone.
    ``barvinok`` first rewrites each cone as a signed sum of cones with
    index at most ``index_threshold`` (unimodular by default), giving one
    short term per output cone, with backward denominator factors flipped
    forward. Zero terms are dropped.
    """
    if method not in (FP, BARVINOK):
        raise ValueError(f"unknown conversion method: {method!r}")
    if method == BARVINOK:
        combination = decompose_combination(combination, index_threshold, rng)
    terms = []
    for c, mult in combination.sorted_items():
        base = cone_to_term_fp(c)
        if base.is_zero:
            continue
        m, nums, dens = mult * base.mult, base.numerator, base.denominator
        if method == BARVINOK:
            m, nums, dens = _forward_normalized(m, nums, dens)
        terms.append(RatFunTerm(m, nums, dens))
    return RatFunExpr(tuple(terms))


# --- counting ---------------------------------------------------------------

def _series_mul(f: list[Fraction], g: list[Fraction], order: int) -> list[Fraction]:
    out = [Fraction(0)] * (order + 1)
    for i, a in enumerate(f):
        if a == 0:
            continue
        for j in range(min(order - i, len(g) - 1) + 1):
            out[i + j] += a * g[j]
    return out


def _series_inv(f: list[Fraction], order: int) -> list[Fraction]:
    inv0 = 1 / f[0]
    out = [inv0]
    for m in range(1, order + 1):
        acc = Fraction(0)
        for j in range(1, m + 1):
            if j < len(f):
                acc += f[j] * out[m - j]
        out.append(-inv0 * acc)
    return out


def _series_exp(a: int, order: int) -> list[Fraction]:
    out = [Fraction(1)]
    for j in range(1, order + 1):
        out.append(out[-1] * a / j)
    return out


def _series_expm1_over_x(b: int, order: int) -> list[Fraction]:
    """(e^{bx} - 1)/(bx) truncated: sum of (bx)^j / (j+1)!."""
    out = [Fraction(1)]
    power = Fraction(1)
    fact = 1
    for j in range(1, order + 1):
        power *= b
        fact *= j + 1
        out.append(power / fact)
    return out


def _term_constant_coefficient(term: RatFunTerm, direction: IntVec) -> Fraction:
    """Constant Laurent coefficient of the term under z_i -> e^{lam_i t}."""
    d = len(term.denominator)
    dots = [int(vec_dot(direction, v)) for v in term.denominator]
    if any(b == 0 for b in dots):
        raise ValueError("direction is orthogonal to a denominator exponent")
    series = [Fraction(1)] + [Fraction(0)] * d
    for b in dots:
        series = _series_mul(series, _series_inv(_series_expm1_over_x(b, d), d), d)
    total = Fraction(0)
    for u in term.numerator:
        a = int(vec_dot(direction, u))
        total += _series_mul(series, _series_exp(a, d), d)[d]
    lead = Fraction((-1) ** d, 1)
    for b in dots:
        lead /= b
    return term.mult * lead * total


def evaluate_count(expr: RatFunExpr, direction: IntVec) -> int:
    """Sum of constant Laurent coefficients; must come out an integer."""
    total = sum(
        (_term_constant_coefficient(t, direction) for t in expr.terms), Fraction(0)
    )
    if total.denominator != 1:
        raise RuntimeError(f"evaluation inconsistency: non-integer total {total}")
    return int(total)


def _pick_direction(
    dens: Iterable[IntVec], dimension: int, rng: random.Random
) -> IntVec:
    vectors = list(dens)
    for _ in range(100000):
        lam = tuple(rng.randint(-7, 7) for _ in range(dimension))
        if all(x == 0 for x in lam):
            continue
        if all(vec_dot(lam, v) != 0 for v in vectors):
            return lam
    raise RuntimeError("could not find a direction avoiding all denominators")


def count_lattice_points(
    combination: ConeCombination,
    *,
    assert_bounded: bool,
    rng: random.Random | None = None,
) -> int:
    """Number of lattice points of the set represented by the combination.

    The caller must assert that the represented solution set is finite by
    passing ``assert_bounded=True``; for an unbounded set the result is
    meaningless. Each cone is first decomposed into unimodular terms so
    every Laurent expansion has pole order exactly the ambient dimension.
    """
    if not assert_bounded:
        raise ValueError("count requires the caller to assert boundedness")
    if len(combination) == 0:
        return 0
    rng = rng if rng is not None else random.Random(0)
    expr = combination_to_ratfun(combination, BARVINOK, rng=rng)
    if not expr.terms:
        return 0
    dens = [v for t in expr.terms for v in t.denominator]
    direction = _pick_direction(dens, expr.dimension, rng)
    return evaluate_count(expr, direction)


# --- rendering ---------------------------------------------------------------

PLAIN = "plain"
LATEX = "latex"
JSON = "json"


def _monomial_plain(u: IntVec) -> str:
    parts = []
    for i, e in enumerate(u):
        if e == 0:
            continue
        name = f"z{i + 1}"
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _monomial_latex(u: IntVec, vector_exponents: bool) -> str:
    if vector_exponents:
        return "z^{(" + ",".join(str(e) for e in u) + ")}"
    parts = []
    for i, e in enumerate(u):
        if e == 0:
            continue
        name = f"z_{{{i + 1}}}"
        parts.append(name if e == 1 else f"{name}^{{{e}}}")
    return " ".join(parts) if parts else "1"


def _render_term_plain(t: RatFunTerm) -> tuple[int, str]:
    num = " + ".join(_monomial_plain(u) for u in t.numerator)
    if len(t.numerator) > 1:
        num = f"({num})"
    den = "*".join(f"(1-{_monomial_plain(v)})" for v in t.denominator)
    mag = abs(t.mult)
    prefix = "" if mag == 1 else f"{mag} * "
    return (1 if t.mult >= 0 else -1), f"{prefix}{num} / ({den})"


def _render_term_latex(t: RatFunTerm, vector_exponents: bool) -> tuple[int, str]:
    num = " + ".join(_monomial_latex(u, vector_exponents) for u in t.numerator)
    den = " ".join(
        f"\\left(1 - {_monomial_latex(v, vector_exponents)}\\right)"
        for v in t.denominator
    )
    mag = abs(t.mult)
    prefix = "" if mag == 1 else f"{mag} \\, "
    return (1 if t.mult >= 0 else -1), f"{prefix}\\frac{{{num}}}{{{den}}}"


def _join_signed(parts: list[tuple[int, str]]) -> str:
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("- " if sign < 0 else "") + body
    for sign, body in parts[1:]:
        out += (" - " if sign < 0 else " + ") + body
    return out


def render(expr: RatFunExpr, fmt: str = PLAIN, *, vector_exponents: bool = False) -> str:
    """Deterministic text form of an expression in plain, LaTeX or JSON.

    JSON is lossless (an array of term objects, big integers as decimal
    strings); plain and LaTeX are write-only display formats.
    """
    if fmt == PLAIN:
        return _join_signed([_render_term_plain(t) for t in expr.terms])
    if fmt == LATEX:
        return _join_signed(
            [_render_term_latex(t, vector_exponents) for t in expr.terms]
        )
    if fmt == JSON:
        payload = [
            {
                "mult": str(t.mult),
                "num": [list(u) for u in t.numerator],
                "den": [list(v) for v in t.denominator],
            }
            for t in expr.terms
        ]
        return json.dumps(payload)
    raise ValueError(f"unknown format: {fmt!r}")


def ratfun_from_json(text: str) -> RatFunExpr:
    """Parse the JSON produced by ``render(..., JSON)`` back into terms."""
    payload = json.loads(text)
    terms = []
    for obj in payload:
        terms.append(
            RatFunTerm(
                int(obj["mult"]),
                tuple(tuple(int(x) for x in u) for u in obj["num"]),
                tuple(tuple(int(x) for x in v) for v in obj["den"]),
            )
        )
    return RatFunExpr(tuple(terms))
