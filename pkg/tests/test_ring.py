from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given
from hypothesis import strategies as st

from schubcob.oracle import naive_add, naive_mul, to_sympy, truncate_expr
from schubcob.ring import (BetaRing, IllDefinedSubstitution, InexactDivision, IntegerRing,
                           NotInvertible, RationalRing, RingMismatch, SeriesError,
                           TruncatedSeries, TruncationMismatch, UniversalLogRing,
                           exact_divide_linear, invert_unit, series_product,
                           specialize_params, substitute)

NAMES = ("x1", "x2", "y1")
D = 5

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4)
exponents = st.tuples(*[st.integers(0, 3) for _ in NAMES])
dicts = st.dictionaries(exponents, coeffs, max_size=6)


def series(terms: dict, d=D, ring=RationalRing) -> TruncatedSeries:
    return TruncatedSeries.from_terms(
        ring, d, {tuple(zip(NAMES, e)): c for e, c in terms.items()}, variables=NAMES)


def truncated(terms: dict, d=D) -> dict:
    return {e: c for e, c in terms.items() if sum(e) <= d and c}


def as_dict(f: TruncatedSeries) -> dict:
    return {tuple(m.get(v, 0) for v in NAMES): Fraction(c) for m, c in f.items()}


@pytest.fixture
def x():
    return TruncatedSeries.variable("x1", IntegerRing, 4)


# -- construction and printing ---------------------------------------------------


def test_canonical_string_puts_parameters_first():
    f = TruncatedSeries.from_terms(BetaRing, 3, {(("x1", 2), ("beta", 1)): -1,
                                                 (("y1", 1),): 1, (("x1", 1),): -1})
    assert str(f) == "-x1 + y1 - beta*x1^2"


def test_terms_above_truncation_are_dropped(x):
    assert (x ** 5).is_zero()
    assert str(x ** 4) == "x1^4"


def test_zero_prints_as_zero():
    assert str(TruncatedSeries.zero(IntegerRing, 3)) == "0"


def test_weighted_variable_degree():
    c2 = TruncatedSeries.variable("c2", IntegerRing, 5, weight=2)
    assert (c2 * c2).degree() == 4
    assert (c2 ** 3).is_zero()


def test_parameter_grades():
    beta = TruncatedSeries.param("beta", BetaRing, 3)
    x = TruncatedSeries.variable("x1", BetaRing, 3)
    assert (beta * x * x).grades() == {1}
    m2 = TruncatedSeries.param("m2", UniversalLogRing(3), 4)
    u = TruncatedSeries.variable("u", UniversalLogRing(3), 4)
    assert (m2 * u ** 3).grades() == {1}


def test_unknown_parameter_rejected():
    with pytest.raises(SeriesError):
        TruncatedSeries.param("beta", IntegerRing, 3)


def test_json_round_trip():
    f = TruncatedSeries.from_terms(BetaRing, 4, {(("x1", 1), ("beta", 2)): Fraction(-3, 2),
                                                 (("y2", 2),): 1})
    assert TruncatedSeries.from_json(f.to_json()) == f
    assert f.to_json() == TruncatedSeries.from_json(f.to_json()).to_json()


def test_latex():
    f = TruncatedSeries.from_terms(BetaRing, 3, {(("x1", 1), ("beta", 1)): -1, (("y1", 2),): 3})
    assert f.latex() == r"-\beta x_{1} + 3 y_{1}^{2}"


# -- algebra against naive dictionaries --------------------------------------------


@given(dicts, dicts)
def test_addition_matches_naive(a, b):
    assert as_dict(series(a) + series(b)) == truncated(naive_add(truncated(a), truncated(b)))


@given(dicts, dicts)
def test_multiplication_matches_naive(a, b):
    expected = naive_mul(truncated(a), truncated(b), D)
    assert as_dict(series(a) * series(b)) == expected


@given(dicts, dicts, dicts)
def test_ring_axioms(a, b, c):
    f, g, h = series(a), series(b), series(c)
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert f - f == TruncatedSeries.zero(RationalRing, D)


@given(dicts)
def test_power_matches_repeated_product(a):
    f = series(a)
    assert f ** 3 == f * f * f
    assert f ** 0 == TruncatedSeries.one(RationalRing, D)


def test_mismatched_rings_and_truncations():
    a = TruncatedSeries.variable("x1", IntegerRing, 3)
    with pytest.raises(RingMismatch):
        a + TruncatedSeries.variable("x1", BetaRing, 3)
    with pytest.raises(TruncationMismatch):
        a + TruncatedSeries.variable("x1", IntegerRing, 4)


# -- inversion and division ------------------------------------------------------------


@given(dicts, st.fractions(min_value=1, max_value=4, max_denominator=3))
def test_unit_inverse(a, c0):
    f = series(a)
    f = f - f.constant_term() + c0
    inv = invert_unit(f)
    assert f * inv == TruncatedSeries.one(RationalRing, D)


def test_non_unit_not_invertible(x):
    with pytest.raises(NotInvertible):
        invert_unit(x)


def test_geometric_series_inverse():
    beta = TruncatedSeries.param("beta", BetaRing, 4)
    u = TruncatedSeries.variable("u", BetaRing, 4)
    assert str(invert_unit(1 - beta * u)) == "1 + beta*u + beta^2*u^2 + beta^3*u^3 + beta^4*u^4"


@given(dicts)
def test_exact_division_round_trip(a):
    q = series(a, d=D - 1)
    x1 = TruncatedSeries.variable("x1", RationalRing, D)
    x2 = TruncatedSeries.variable("x2", RationalRing, D)
    prod = (x1 - x2) * q.extend(D)
    assert exact_divide_linear(prod, "x1", "x2") == q.truncate(D - 1)
    assert exact_divide_linear(x1 * q.extend(D), "x1") == q.truncate(D - 1)


def test_inexact_division_reports_remainder():
    f = TruncatedSeries.from_terms(IntegerRing, 3, {(("x1", 2),): 1}, variables=["x1", "x2"])
    with pytest.raises(InexactDivision) as info:
        exact_divide_linear(f, "x1", "x2")
    assert str(info.value.remainder) == "x2^2"


def test_division_matches_sympy():
    f = TruncatedSeries.from_terms(IntegerRing, 6, {(("x1", 3), ("x2", 1)): 1,
                                                    (("x1", 1), ("x2", 3)): -1})
    q = exact_divide_linear(f, "x1", "x2")
    x1, x2 = sp.symbols("x1 x2")
    assert sp.expand(to_sympy(q) - sp.cancel(to_sympy(f) / (x1 - x2))) == 0


# -- substitution ------------------------------------------------------------------------


@given(dicts, dicts)
def test_substitution_matches_sympy(a, b):
    f, g = series(a, d=4), series(b, d=4)
    g = g - g.constant_term()
    out = substitute(f, {"x1": g})
    syms = sp.symbols(" ".join(NAMES))
    expected = truncate_expr(to_sympy(f).subs(syms[0], to_sympy(g)), syms, 4)
    assert sp.expand(to_sympy(out) - expected) == 0


def test_constant_binding_is_refused():
    f = TruncatedSeries.variable("x1", IntegerRing, 3) ** 2
    with pytest.raises(IllDefinedSubstitution):
        substitute(f, {"x1": 1})
    assert substitute(f, {"x1": 2}, polynomial=True).scalar() == 4


def test_specialize_beta():
    f = TruncatedSeries.from_terms(BetaRing, 3, {(("x1", 1), ("beta", 1)): 2, (("x1", 1),): 1})
    assert str(specialize_params(f, {"beta": -1}, IntegerRing)) == "-x1"
    assert str(specialize_params(f, {"beta": 0}, IntegerRing)) == "x1"


def test_series_product_of_linear_factors():
    xs = [TruncatedSeries.variable(f"x{i}", IntegerRing, 3) for i in (1, 2, 3)]
    assert str(series_product(xs, IntegerRing, 3)) == "x1*x2*x3"
    low = [TruncatedSeries.variable(f"x{i}", IntegerRing, 2) for i in (1, 2, 3)]
    assert series_product(low, IntegerRing, 2).is_zero()


def test_integrality_flag():
    f = TruncatedSeries.from_terms(RationalRing, 2, {(("x1", 1),): Fraction(1, 2)})
    assert not f.is_integral()
    assert (2 * f).is_integral()
