import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semideg.exact import BiLaurent, ParseError, PuiseuxPoly, ZeroPolynomialError, parse_expr, parse_puiseux
from semideg.semidegree import (
    InvalidSpecError,
    SemidegreeSpec,
    auto_scale,
    check,
    evaluate,
    format_datum,
    from_weights,
    parse_datum,
    validate,
)

from conftest import random_datum, random_poly, sympy_semidegree


def test_from_weights():
    spec = from_weights(2, 3)
    assert spec.phi.is_zero() and spec.r == Fraction(3, 2) and spec.scale == 2
    assert evaluate(spec, parse_expr("x")) == 2
    assert evaluate(spec, parse_expr("y")) == 3
    assert evaluate(spec, parse_expr("x^2*y + y^3")) == 9
    with pytest.raises(InvalidSpecError):
        from_weights(0, 1)


def test_key_example_values(key_example):
    assert evaluate(key_example, parse_expr("x")) == 10
    assert evaluate(key_example, parse_expr("y")) == 25
    assert evaluate(key_example, parse_expr("y^2 - x^5")) == 15
    assert evaluate(key_example, parse_expr("y^2 - x^5 - 2*x^-1*y")) == -3


def test_negative_example_values(negative_example):
    assert evaluate(negative_example, parse_expr("y")) == -1
    assert evaluate(negative_example, parse_expr("x*y - 1")) == -1
    assert evaluate(negative_example, parse_expr("y - x^-1")) == -2


def test_zero_has_no_semidegree(key_example):
    with pytest.raises(ZeroPolynomialError):
        evaluate(key_example, BiLaurent.zero())


def test_validation():
    phi = parse_puiseux("x^(5/2) + x^(-1)")
    assert validate(SemidegreeSpec(phi, Fraction(-14, 5), 10)) == []
    problems = validate(SemidegreeSpec(phi, Fraction(-14, 5), 4))
    assert any("5/2" not in p and "scale*r" in p for p in problems)
    assert validate(SemidegreeSpec(phi, Fraction(0), 2))
    assert validate(SemidegreeSpec(phi, Fraction(-2), 0))
    with pytest.raises(InvalidSpecError) as info:
        check(SemidegreeSpec(phi, Fraction(-1), 2))
    assert info.value.violations


def test_auto_scale():
    spec = auto_scale(parse_puiseux("x^(5/2) + x^(-1)"), Fraction(-14, 5))
    assert spec.scale == 10
    assert auto_scale(PuiseuxPoly.zero(), Fraction(3)).scale == 1
    with pytest.raises(InvalidSpecError):
        auto_scale(parse_puiseux("x"), 2)


def test_datum_round_trip(key_example):
    assert parse_datum(format_datum(key_example)) == key_example
    assert parse_datum("phi = x^(5/2) + x^(-1); r = -14/5; scale = auto") == key_example
    with pytest.raises(ParseError):
        parse_datum("phi = x; r = 1/2")
    with pytest.raises(ParseError):
        parse_datum("phi = x; r = -1; scale = 2.5")


def test_against_sympy_oracle():
    rng = random.Random(7)
    for _ in range(150):
        spec = random_datum(rng)
        f = random_poly(rng, max_terms=4, max_degree=5)
        assert evaluate(spec, f) == sympy_semidegree(spec, f), (spec, f)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_semidegree_axioms(seed):
    rng = random.Random(seed)
    spec = random_datum(rng)
    f, g = random_poly(rng, 4, 5), random_poly(rng, 4, 5)
    assert evaluate(spec, f * g) == evaluate(spec, f) + evaluate(spec, g)
    if not (f + g).is_zero():
        assert evaluate(spec, f + g) <= max(evaluate(spec, f), evaluate(spec, g))
    assert evaluate(spec, BiLaurent.const(seed % 7 + 1)) == 0


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 4))
def test_scaling_covariance(seed, t):
    rng = random.Random(seed)
    spec = random_datum(rng)
    f = random_poly(rng, 4, 5)
    scaled = SemidegreeSpec(spec.phi, spec.r, spec.scale * t)
    assert evaluate(scaled, f) == t * evaluate(spec, f)
