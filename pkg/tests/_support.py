"""Shared generators and oracles for the test suite.

Everything here is deliberately independent of the solver's internals:
membership by brute inequality checks, determinants by cofactor expansion,
semigroup membership by exact coefficient solves. These are the second
route that the package's formulas are checked against.
"""

from fractions import Fraction
from itertools import product
import random

from symcones import LDSystem, Relation, SymbolicCone, cone, solve_rational
from symcones.exactmath import IntMat, det


def cols_from_rows(rows) -> IntMat:
    """Spec-style row-list matrix to the package's column-tuple form."""
    m, n = len(rows), len(rows[0])
    return tuple(tuple(rows[i][j] for i in range(m)) for j in range(n))


def cofactor_det(rows) -> int:
    """Independent determinant oracle by Laplace expansion."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    total = 0
    for j in range(n):
        if rows[0][j] == 0:
            continue
        minor = [[rows[i][c] for c in range(n) if c != j] for i in range(1, n)]
        total += (-1) ** j * rows[0][j] * cofactor_det(minor)
    return total


def random_full_dim_cone(
    rng: random.Random,
    dim: int,
    entry_bound: int,
    max_det: int | None = None,
    rational_apex: bool = False,
    apex_denominator_bound: int = 5,
    random_openness: bool = False,
) -> SymbolicCone:
    """Random full-dimensional simplicial cone, optionally det-capped."""
    while True:
        gens = tuple(
            tuple(rng.randint(-entry_bound, entry_bound) for _ in range(dim))
            for _ in range(dim)
        )
        if any(all(x == 0 for x in g) for g in gens):
            continue
        d = det(gens)
        if d == 0:
            continue
        if max_det is not None and abs(d) > max_det:
            continue
        break
    if rational_apex:
        apex = tuple(
            Fraction(rng.randint(-4, 4), rng.randint(1, apex_denominator_bound))
            for _ in range(dim)
        )
    else:
        apex = tuple(Fraction(rng.randint(-3, 3)) for _ in range(dim))
    bits = tuple(rng.randint(0, 1) if random_openness else 0 for _ in range(dim))
    return cone(gens, apex, bits)


def random_system(rng: random.Random, dim: int, num_rows: int, entry_bound: int = 5) -> LDSystem:
    rows = tuple(
        tuple(rng.randint(-entry_bound, entry_bound) for _ in range(dim))
        for _ in range(num_rows)
    )
    rhs = tuple(rng.randint(-entry_bound, entry_bound) for _ in range(num_rows))
    return LDSystem(rows, (Relation.GEQ,) * num_rows, rhs)


def box_points(dim: int, lo: int, hi: int):
    return product(range(lo, hi + 1), repeat=dim)


def brute_force_solutions(system: LDSystem, bound: int) -> set[tuple[int, ...]]:
    """All solutions with coordinates in [0, bound], by direct checking."""
    return {
        x for x in box_points(system.num_variables, 0, bound) if system.satisfies(x)
    }


def in_discrete_cone(generators: IntMat, base, x) -> bool:
    """Is x in base + non-negative *integer* combinations of the generators?"""
    coeffs = solve_rational(generators, tuple(a - b for a, b in zip(x, base)))
    if coeffs is None:
        return False
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def in_half_open_parallelepiped(c: SymbolicCone, x) -> bool:
    """Direct membership in the half-open fundamental parallelepiped."""
    coeffs = solve_rational(
        c.generators, tuple(Fraction(a) - b for a, b in zip(x, c.apex))
    )
    if coeffs is None:
        return False
    for value, bit in zip(coeffs, c.openness):
        if bit == 0 and not 0 <= value < 1:
            return False
        if bit == 1 and not 0 < value <= 1:
            return False
    return True
