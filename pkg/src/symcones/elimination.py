"""Pipeline from a linear Diophantine system to a signed cone combination.

Given integer constraints ``A x >= b`` (rows may also be equations) over
non-negative integer vectors x, the solver lifts the positive orthant into
dimension d+m with one slack coordinate per constraint, then repeatedly
intersects with the half-space where the last coordinate is non-negative
and projects that coordinate away. Both steps have closed-form effects on
symbolic cones, so the set of solutions comes out as an exact signed sum
of half-open simplicial cones in R^d - no triangulation, no rational
function arithmetic along the way.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .cones import ConeCombination, SymbolicCone, canonicalize, flip
from .exactmath import IntVec, prim


class Relation(enum.Enum):
    GEQ = ">="
    EQ = "="


@dataclass(frozen=True)
class LDSystem:
    """Integer constraint system A x (>= or =) b over x in Z^d, x >= 0."""

    rows: tuple[IntVec, ...]
    relations: tuple[Relation, ...]
    rhs: IntVec

    def __post_init__(self):
        m = len(self.rows)
        if m == 0:
            raise ValueError("system needs at least one constraint")
        d = len(self.rows[0])
        if d == 0:
            raise ValueError("system needs at least one variable")
        if any(len(r) != d for r in self.rows):
            raise ValueError("constraint rows must have equal length")
        if len(self.relations) != m or len(self.rhs) != m:
            raise ValueError("relations and right-hand side must match row count")

    @property
    def num_constraints(self) -> int:
        return len(self.rows)

    @property
    def num_variables(self) -> int:
        return len(self.rows[0])

    def satisfies(self, x: Sequence[int]) -> bool:
        """Direct check of A x >= b (resp. =) and x >= 0; the test oracle."""
        if any(v < 0 for v in x):
            return False
        for row, rel, beta in zip(self.rows, self.relations, self.rhs):
            value = sum(a * v for a, v in zip(row, x))
            if rel is Relation.EQ:
                if value != beta:
                    return False
            elif value < beta:
                return False
        return True


def system(rows, relations, rhs) -> LDSystem:
    """Coercing constructor for LDSystem."""
    rel = tuple(
        r if isinstance(r, Relation) else Relation(r) for r in relations
    )
    return LDSystem(
        tuple(tuple(int(a) for a in row) for row in rows),
        rel,
        tuple(int(b) for b in rhs),
    )


def macmahon_lift(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> SymbolicCone:
    """Lift ``A x >= b`` to a closed unimodular cone in dimension d+m.

    Generator j is the j-th unit vector extended by column j of A, and the
    apex is (0, -b). Intersecting with the half-spaces where the m slack
    coordinates are non-negative and projecting them away recovers exactly
    the solution set of the system, one coordinate at a time.
    """
    m = len(rows)
    d = len(rows[0])
    if any(len(r) != d for r in rows) or len(rhs) != m:
        raise ValueError("inconsistent system dimensions")
    gens = tuple(
        tuple(1 if i == j else 0 for i in range(d)) + tuple(int(rows[i][j]) for i in range(m))
        for j in range(d)
    )
    apex = tuple(Fraction(0) for _ in range(d)) + tuple(Fraction(-int(b)) for b in rhs)
    return SymbolicCone(gens, apex, (0,) * d)


def eliminate_last_coordinate(c: SymbolicCone) -> ConeCombination:
    """Intersect with {x_n >= 0}, drop x_n, return the exact signed sum.

    Requires a forward cone on which forgetting the last coordinate is
    injective on the affine hull (true all along the lifted pipeline). The
    result is a Lawrence-Varchenko style decomposition: one vertex cone per
    generator crossing the hyperplane, each flipped forward with its sign
    recorded as multiplicity, plus the cone itself when its apex already
    lies on or above the hyperplane. Empty when the cone lies strictly
    below. The identity holds exactly, not merely modulo lines.
    """
    k, n = c.dim, c.ambient_dim
    v = c.generators
    q = c.apex
    q_n = q[-1]
    last = tuple(g[-1] for g in v)
    sg = 1 if q_n >= 0 else -1

    crossing = [j for j in range(k) if (last[j] < 0 if q_n >= 0 else last[j] > 0)]

    raw: list[SymbolicCone] = []
    for j in crossing:
        # apex: the ray through generator j meets the hyperplane here
        ratio = q_n / last[j]
        apex = tuple(q[i] - ratio * v[j][i] for i in range(n - 1))
        cols = []
        for i in range(k):
            if i == j:
                col = tuple(-sg * x for x in v[j][:-1])
            else:
                col = tuple(
                    sg * (last[i] * v[j][r] - last[j] * v[i][r]) for r in range(n - 1)
                )
            cols.append(prim(col))
        bits = tuple(0 if i == j else c.openness[i] for i in range(k))
        raw.append(SymbolicCone(tuple(cols), apex, bits))
    if q_n >= 0:
        proj = tuple(prim(g[:-1]) for g in v)
        raw.append(SymbolicCone(proj, q[:-1], c.openness))

    out = ConeCombination()
    for candidate in raw:
        sign, forward = flip(candidate)
        out.add(canonicalize(forward), sign)
    return out


@dataclass(frozen=True)
class TraceRow:
    iteration: int
    cone_count: int
    max_entry_bits: int


@dataclass(frozen=True)
class EliminationTrace:
    rows: tuple[TraceRow, ...]

    def format_lines(self, d: int) -> list[str]:
        lines = []
        for r in self.rows:
            bound = math.comb(d + r.iteration, d)
            lines.append(
                f"iteration {r.iteration}: {r.cone_count} cones "
                f"(bound {bound}), max generator entry {r.max_entry_bits} bits"
            )
        return lines


def _max_entry_bits(combination: ConeCombination) -> int:
    bits = 0
    for c in combination:
        for g in c.generators:
            for x in g:
                bits = max(bits, abs(x).bit_length())
    return bits


def elimination_rounds(c: SymbolicCone, rounds: int) -> Iterator[ConeCombination]:
    """Yield the collected combination after each elimination round."""
    current = ConeCombination({canonicalize(c): 1})
    for _ in range(rounds):
        current = current.map_cones(eliminate_last_coordinate)
        yield current


def eliminate(c: SymbolicCone, rounds: int) -> ConeCombination:
    """Apply ``eliminate_last_coordinate`` the given number of times.

    Multiplicities are collected by canonical cone after every round;
    cancellation between rounds is what keeps intermediate combinations
    small, so this is not an optional optimization.
    """
    current = ConeCombination({canonicalize(c): 1})
    for _ in range(rounds):
        current = current.map_cones(eliminate_last_coordinate)
    return current


def eliminate_with_trace(c: SymbolicCone, rounds: int) -> tuple[ConeCombination, EliminationTrace]:
    current = ConeCombination({canonicalize(c): 1})
    trace = []
    for i, step in enumerate(elimination_rounds(c, rounds), start=1):
        current = step
        trace.append(TraceRow(i, len(current), _max_entry_bits(current)))
    return current, EliminationTrace(tuple(trace))


def expand_equalities(sys: LDSystem) -> tuple[tuple[IntVec, ...], IntVec]:
    """Replace every equation a.x = beta by the pair a.x >= beta, -a.x >= -beta."""
    rows: list[IntVec] = []
    rhs: list[int] = []
    for row, rel, beta in zip(sys.rows, sys.relations, sys.rhs):
        rows.append(row)
        rhs.append(beta)
        if rel is Relation.EQ:
            rows.append(tuple(-a for a in row))
            rhs.append(-beta)
    return tuple(rows), tuple(rhs)


def solve(sys: LDSystem) -> ConeCombination:
    """Signed cone combination equal to the solution-set indicator on R^d.

    Equations are expanded into inequality pairs first. Infeasible systems
    come out as the empty combination or one evaluating to 0 everywhere on
    the non-negative orthant.
    """
    rows, rhs = expand_equalities(sys)
    return eliminate(macmahon_lift(rows, rhs), len(rows))


def solve_with_trace(sys: LDSystem) -> tuple[ConeCombination, EliminationTrace]:
    rows, rhs = expand_equalities(sys)
    return eliminate_with_trace(macmahon_lift(rows, rhs), len(rows))
