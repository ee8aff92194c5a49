"""Signed decomposition of a simplicial cone into unimodular half-open cones.

The recursion replaces one generator at a time by a short lattice vector w
found through LLL reduction of det(V) * V^-1 Z^d, which shrinks the index
|det| of every child cone. Exchanging generator i for w = V @ alpha yields
the classical identity

    [C] = sum over {i : alpha_i != 0} of sign(alpha_i) [C_i]

valid away from finitely many hyperplanes, provided some alpha_i is
positive (otherwise -w is used). It is turned into an identity of actual
indicator functions by half-opening every cone with respect to one generic
reference direction xi: a facet stays closed exactly when its inner normal
has positive inner product with xi. Choosing xi so that its pattern on the
input cone's facets reproduces the input openness makes the final signed
sum equal to [C] pointwise, with every output cone unimodular and sharing
the apex of C.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable

from .cones import ConeCombination, SymbolicCone, canonicalize
from .exactmath import IntMat, IntVec, det, lll_reduce, mat_vec, scaled_inverse, solve_rational


class _DegenerateDirection(Exception):
    """Raised when xi lies on a facet hyperplane; caller resamples xi."""


def index(c: SymbolicCone) -> int:
    """Number of lattice points in the fundamental parallelepiped, |det V|."""
    if c.dim != c.ambient_dim:
        raise ValueError("index requires a full-dimensional cone")
    return abs(det(c.generators))


def _openness_from_direction(generators: IntMat, xi: IntVec) -> tuple[int, ...]:
    """Closure rule: facet j is closed iff its inner normal sees xi positively.

    The inner normal of facet j is row j of V^-1 (up to positive scale), so
    the signs of V^-1 @ xi decide every bit at once.
    """
    coeffs = solve_rational(generators, xi)
    bits = []
    for value in coeffs:
        if value == 0:
            raise _DegenerateDirection
        bits.append(0 if value > 0 else 1)
    return tuple(bits)


def _shortest_exchange_vector(generators: IntMat) -> tuple[IntVec, IntVec, int]:
    """Return (w, alpha_scaled, d) with w = V @ alpha_scaled / d integral.

    alpha_scaled is the sup-norm shortest column of the LLL-reduced basis of
    d * V^-1 Z^n (ties broken lexicographically); |alpha_scaled_i| is the
    index of the child that replaces generator i, so max |alpha_scaled_i|
    must drop below |d| for the recursion to make progress. If the reduced
    basis misses that bound, small integer recombinations of it are tried
    before giving up.
    """
    adj, d = scaled_inverse(generators)
    reduced = lll_reduce(adj)
    target = abs(d)

    def sup(v: IntVec) -> int:
        return max(abs(x) for x in v)

    candidates = sorted(reduced, key=lambda v: (sup(v), v))
    best = candidates[0]
    if sup(best) >= target:
        # LLL's worst-case factor can miss strict descent on tiny indices;
        # scan +-2 recombinations of the reduced basis before declaring a bug.
        n = len(reduced)
        for coeffs in itertools.product((-2, -1, 0, 1, 2), repeat=n):
            if all(c == 0 for c in coeffs):
                continue
            v = tuple(
                sum(coeffs[t] * reduced[t][i] for t in range(n)) for i in range(n)
            )
            if sup(v) < sup(best) or (sup(v) == sup(best) and v < best):
                best = v
        if sup(best) >= target:
            raise AssertionError("lattice reduction failed to reduce the cone index")
    w = mat_vec(generators, best)
    if any(x % d for x in w):
        raise AssertionError("exchange vector is not integral")
    return tuple(x // d for x in w), best, d


def _decompose_with_direction(
    c: SymbolicCone, xi: IntVec, index_threshold: int
) -> ConeCombination:
    out = ConeCombination()
    stack: list[tuple[IntMat, int]] = [(c.generators, 1)]
    while stack:
        gens, sign = stack.pop()
        d = det(gens)
        if abs(d) <= index_threshold:
            bits = _openness_from_direction(gens, xi)
            out.add(SymbolicCone(gens, c.apex, bits), sign)
            continue
        w, alpha_scaled, d = _shortest_exchange_vector(gens)
        sign_d = 1 if d > 0 else -1
        if not any(a * sign_d > 0 for a in alpha_scaled):
            # the exchange identity needs w on the positive side; use -w
            w = tuple(-x for x in w)
            alpha_scaled = tuple(-a for a in alpha_scaled)
        parent_index = abs(d)
        for i, a in enumerate(alpha_scaled):
            if a == 0:
                continue
            if abs(a) >= parent_index:
                raise AssertionError("child index did not decrease")
            child = tuple(w if j == i else gens[j] for j in range(len(gens)))
            child_sign = 1 if a * sign_d > 0 else -1
            stack.append((child, sign * child_sign))
    return out


def barvinok_decompose(
    c: SymbolicCone,
    index_threshold: int = 1,
    rng: random.Random | None = None,
) -> ConeCombination:
    """Write [C] as an exact signed sum of low-index half-open cones.

    Every output cone keeps the apex of C and has |det| at most
    ``index_threshold`` (1 by default, i.e. fully unimodular). The reference
    direction xi is drawn once per call with its sign pattern on the facets
    of C matching C's own openness, so the input cone needs no separate
    openness correction; xi is resampled whenever it happens to lie on a
    facet hyperplane met during the recursion.
    """
    if c.dim != c.ambient_dim:
        raise ValueError("decomposition requires a full-dimensional cone")
    if index_threshold < 1:
        raise ValueError("index_threshold must be at least 1")
    c = canonicalize(c)
    if index(c) <= index_threshold:
        return ConeCombination({c: 1})
    rng = rng if rng is not None else random.Random(0)
    for _ in range(64):
        weights = tuple(
            rng.randint(1, 2**20) * (1 if bit == 0 else -1) for bit in c.openness
        )
        xi = mat_vec(c.generators, weights)
        try:
            return _decompose_with_direction(c, xi, index_threshold)
        except _DegenerateDirection:
            continue
    raise AssertionError("could not find a generic reference direction")


def decompose_combination(
    combination: ConeCombination | Iterable[tuple[SymbolicCone, int]],
    index_threshold: int = 1,
    rng: random.Random | None = None,
) -> ConeCombination:
    """Decompose every cone of a combination and collect the results."""
    rng = rng if rng is not None else random.Random(0)
    items = combination.items() if isinstance(combination, ConeCombination) else combination
    out = ConeCombination()
    for c, mult in items:
        for leaf, sign in barvinok_decompose(c, index_threshold, rng).items():
            out.add(leaf, mult * sign)
    return out
