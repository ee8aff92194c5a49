import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from symcones import (
    ConeCombination,
    canonicalize,
    cone,
    combination_to_ratfun,
    cone_to_term_fp,
    count_lattice_points,
    eval_combination,
    lattice_points_in_box,
    ratfun_from_json,
    render,
    solve,
    system,
)
from symcones.exactmath import det
from symcones.ratfun import RatFunExpr, RatFunTerm, evaluate_count
from _support import in_discrete_cone, random_full_dim_cone


# --- per-cone terms ----------------------------------------------------------

def test_term_fp_fig1_cone():
    term = cone_to_term_fp(canonicalize(cone([(1, 0), (1, 3)])))
    assert term.mult == 1
    assert set(term.numerator) == {(0, 0), (1, 1), (1, 2)}
    assert term.denominator == ((1, 0), (1, 3))


def test_term_fp_unimodular_translated():
    term = cone_to_term_fp(cone([(1, 0), (0, 1)], (2, 5)))
    assert term.numerator == ((2, 5),)


def test_term_fp_rational_apex():
    term = cone_to_term_fp(cone([(2, 0), (0, 1)], (Fraction(1, 2), 0)))
    assert set(term.numerator) == {(1, 0), (2, 0)}


def test_term_fp_zero_term():
    term = cone_to_term_fp(cone([(1, 1)], (Fraction(1, 2), 0)))
    assert term.is_zero


def test_term_numerator_size_is_the_index():
    rng = random.Random(15)
    for _ in range(20):
        c = random_full_dim_cone(rng, rng.randint(1, 3), 7, max_det=40,
                                 rational_apex=True, random_openness=True)
        c = canonicalize(c)
        term = cone_to_term_fp(c)
        assert len(term.numerator) == abs(det(c.generators))


def test_term_semigroup_fidelity():
    # numerator points translated by the generator semigroup tile the cone
    rng = random.Random(52)
    for _ in range(10):
        c = canonicalize(random_full_dim_cone(rng, 2, 5, max_det=12,
                                              rational_apex=True,
                                              random_openness=True))
        term = cone_to_term_fp(c)
        lo = tuple(int(q) - 4 for q in c.apex)
        hi = tuple(int(q) + 4 for q in c.apex)
        expected = lattice_points_in_box(c, lo, hi)
        grid = itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)])
        tiled = {
            x for x in grid
            if any(in_discrete_cone(term.denominator, u, x) for u in term.numerator)
        }
        assert tiled == expected


# --- combinations to expressions ------------------------------------------------

def test_empty_combination_gives_empty_expression():
    assert combination_to_ratfun(ConeCombination()).terms == ()


def test_multiplicity_passes_through():
    comb = ConeCombination({canonicalize(cone([(1, 0), (1, 3)])): 2})
    expr = combination_to_ratfun(comb)
    assert len(expr) == 1 and expr.terms[0].mult == 2


def test_fp_expression_of_equality_system():
    comb = solve(system([(1, 1)], ["="], [100]))
    expr = combination_to_ratfun(comb)
    max_index = max(abs(det(c.generators)) for c in comb)
    assert sum(len(t.numerator) for t in expr.terms) <= len(comb) * max_index
    # per-term semigroup sums reproduce the indicator from the combination
    for x in itertools.product(range(0, 110, 7), repeat=2):
        want = eval_combination(comb, x)
        got = sum(
            t.mult
            for t in expr.terms
            for u in t.numerator
            if in_discrete_cone(t.denominator, u, x)
        )
        assert got == want


def test_barvinok_expression_denominators_forward_and_single_monomial():
    from symcones.exactmath import is_forward

    comb = solve(system([(2, 3)], [">="], [5]))
    expr = combination_to_ratfun(comb, "barvinok", rng=random.Random(1))
    for t in expr.terms:
        assert len(t.numerator) == 1
        assert all(is_forward(v) for v in t.denominator)


def test_unknown_method_rejected():
    with pytest.raises(ValueError, match="unknown conversion method"):
        combination_to_ratfun(ConeCombination(), "magic")


# --- counting ---------------------------------------------------------------------

def test_count_equality_line():
    comb = solve(system([(1, 1)], ["="], [100]))
    assert count_lattice_points(comb, assert_bounded=True) == 101


def test_count_single_point():
    comb = solve(system([(-1,)], [">="], [0]))
    assert count_lattice_points(comb, assert_bounded=True) == 1


def test_count_partitions_of_ten():
    comb = solve(system([(1, 2, 3)], ["="], [10]))
    oracle = sum(
        1
        for x in itertools.product(range(11), repeat=3)
        if x[0] + 2 * x[1] + 3 * x[2] == 10
    )
    assert oracle == 14
    assert count_lattice_points(comb, assert_bounded=True) == 14


def test_count_empty_set():
    comb = solve(system([(1,), (-1,)], [">=", ">="], [1, 0]))
    assert count_lattice_points(comb, assert_bounded=True) == 0


def test_count_requires_boundedness_assertion():
    comb = solve(system([(1, 1)], ["="], [4]))
    with pytest.raises(ValueError, match="assert boundedness"):
        count_lattice_points(comb, assert_bounded=False)


def test_count_direction_independent():
    rng = random.Random(0)
    for _ in range(8):
        target = rng.randint(3, 25)
        weights = tuple(rng.randint(1, 4) for _ in range(rng.randint(1, 3)))
        comb = solve(system([weights], ["="], [target]))
        first = count_lattice_points(comb, assert_bounded=True, rng=random.Random(101))
        second = count_lattice_points(comb, assert_bounded=True, rng=random.Random(999))
        assert first == second
        oracle = sum(
            1
            for x in itertools.product(range(target + 1), repeat=len(weights))
            if sum(w * v for w, v in zip(weights, x)) == target
        )
        assert first == oracle


def test_count_agrees_between_fp_and_unimodular_routes():
    # the constant Laurent coefficient is route-independent: evaluating the
    # raw parallelepiped expression must match the unimodular-term count
    from symcones.ratfun import _pick_direction

    rng = random.Random(77)
    for trial in range(10):
        d = rng.randint(1, 2)
        w = tuple(rng.randint(1, 5) for _ in range(d))
        target = rng.randint(0, 20)
        comb = solve(system([w], ["="], [target]))
        via_unimodular = count_lattice_points(comb, assert_bounded=True,
                                              rng=random.Random(trial))
        fp_expr = combination_to_ratfun(comb)
        dens = [v for t in fp_expr.terms for v in t.denominator]
        lam = _pick_direction(dens, d, random.Random(trial + 1))
        assert evaluate_count(fp_expr, lam) == via_unimodular


def test_evaluate_count_rejects_orthogonal_direction():
    term = RatFunTerm(1, ((0, 0),), ((1, 0), (0, 1)))
    with pytest.raises(ValueError, match="orthogonal"):
        evaluate_count(RatFunExpr((term,)), (0, 1))


def test_evaluate_count_flags_non_integer_totals():
    # a lone half-line: the constant coefficient of 1/(1-e^t) is -1/2
    expr = RatFunExpr((RatFunTerm(1, ((0,),), ((1,),)),))
    with pytest.raises(RuntimeError, match="evaluation inconsistency"):
        evaluate_count(expr, (1,))


# --- rendering --------------------------------------------------------------------

def test_render_plain_single_term():
    expr = RatFunExpr((RatFunTerm(1, ((0, 0),), ((1, 0), (1, 3))),))
    assert render(expr) == "1 / ((1-z1)*(1-z1*z2^3))"


def test_render_plain_negative_and_multiple():
    term1 = RatFunTerm(-1, ((1, 2),), ((1, 0),))
    term2 = RatFunTerm(3, ((0, 0), (1, 1)), ((0, 1),))
    expr = RatFunExpr((term1, term2))
    assert render(expr) == "- z1*z2^2 / ((1-z1)) + 3 * (1 + z1*z2) / ((1-z2))"


def test_render_plain_empty():
    assert render(RatFunExpr(())) == "0"


def test_render_latex_forms():
    expr = RatFunExpr((RatFunTerm(1, ((2, 0),), ((1, 3),)),))
    assert render(expr, "latex") == "\\frac{z_{1}^{2}}{\\left(1 - z_{1} z_{2}^{3}\\right)}"
    assert (
        render(expr, "latex", vector_exponents=True)
        == "\\frac{z^{(2,0)}}{\\left(1 - z^{(1,3)}\\right)}"
    )


def test_render_unknown_format():
    with pytest.raises(ValueError, match="unknown format"):
        render(RatFunExpr(()), "yaml")


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_json_round_trip(data):
    dim = data.draw(st.integers(1, 3))
    n_terms = data.draw(st.integers(0, 3))
    vec = st.tuples(*[st.integers(-20, 20)] * dim)
    terms = []
    for _ in range(n_terms):
        mult = data.draw(st.integers(-10**12, 10**12).filter(lambda m: m != 0))
        nums = tuple(data.draw(vec) for _ in range(data.draw(st.integers(0, 3))))
        dens = tuple(
            data.draw(vec.filter(lambda v: any(v)))
            for _ in range(data.draw(st.integers(1, 3)))
        )
        terms.append(RatFunTerm(mult, nums, dens))
    expr = RatFunExpr(tuple(terms))
    assert ratfun_from_json(render(expr, "json")) == expr
