import dataclasses
import random
from fractions import Fraction as F

import pytest

from semideg.exact import parse_expr
from semideg.geometry import (
    UNKNOWN,
    CrossCheckError,
    DeltaEqualsDeg,
    SignClass,
    alpha_verdict,
    bound_check,
    compact_classify,
    d_delta,
    geometry_report,
    inf_ratio,
    m_delta,
    matrices,
    nef_edges,
    puiseux_pairs,
    ratio_check,
    self_intersection,
    sign_classify,
    skewness,
)
from semideg.keyforms import compute_key_forms
from semideg.semidegree import SemidegreeSpec, from_weights

from conftest import key_forms_or_partial, random_datum, random_poly


@pytest.fixture
def key_seq(key_example):
    return compute_key_forms(key_example)


@pytest.fixture
def neg_seq(negative_example):
    return compute_key_forms(negative_example)


@pytest.fixture
def same_seq(same_semi):
    return compute_key_forms(same_semi)


@pytest.fixture
def w23():
    return compute_key_forms(from_weights(2, 3))


def test_key_example_invariants(key_example, key_seq):
    assert (d_delta(key_seq), m_delta(key_seq)) == (25, 5)
    pp = puiseux_pairs(key_example, key_seq)
    assert pp.pairs == ((5, 2),)
    assert (pp.p_last, pp.q_last) == (5, -28)
    assert key_seq.last.g.total_degree() == 5
    assert skewness(key_seq) == F(-3, 125)
    assert sign_classify(key_seq) is SignClass.TAKES_NEGATIVE_VALUES
    assert nef_edges(key_seq) is None
    report = bound_check(key_seq)
    assert (report.lhs, report.rhs, report.equality) == (-15, 625, False)


def test_negative_example(negative_example, neg_seq):
    pp = puiseux_pairs(negative_example, neg_seq)
    assert pp.pairs == () and (pp.p_last, pp.q_last) == (1, -2)
    assert m_delta(neg_seq) == 1
    assert skewness(neg_seq) == -2
    M, I = matrices(neg_seq)
    assert M == ((1, 1), (1, -2))
    assert I == ((F(2, 3), F(1, 3)), (F(1, 3), F(-1, 3)))
    assert self_intersection(1, -1, I) == F(-1, 3)
    assert self_intersection(0, 1, I) == F(-1, 3)
    assert self_intersection(0, 0, I) == 0
    assert compact_classify(neg_seq) == (False, False)
    assert alpha_verdict(neg_seq) == (False, False, None)
    assert inf_ratio(neg_seq) is UNKNOWN
    assert ratio_check(negative_example, neg_seq, parse_expr("y")) == (-1, False)


def test_same_semi(same_seq):
    assert sign_classify(same_seq) is SignClass.POSITIVE_ON_NONCONSTANTS
    assert compact_classify(same_seq) == (True, False)
    assert alpha_verdict(same_seq) == (True, False, None)
    assert inf_ratio(same_seq) == F(1, 5)
    assert nef_edges(same_seq) == (5, F(1, 5))
    assert F(same_seq.last.omega, same_seq.last.g.total_degree()) == F(1, 5)


def test_weighted_2_3(w23):
    spec = w23.spec
    pp = puiseux_pairs(spec, w23)
    assert (pp.p_last, pp.q_last) == (2, 3)
    assert d_delta(w23) == 3 and m_delta(w23) == 2
    assert skewness(w23) == F(2, 3)
    assert compact_classify(w23) == (True, True)
    assert alpha_verdict(w23) == (True, True, parse_expr("y"))
    assert inf_ratio(w23) == 2
    assert nef_edges(w23) == (3, 2)
    assert ratio_check(spec, w23, parse_expr("x")) == (2, True)


def test_degree_is_excluded_from_matrices():
    seq = compute_key_forms(from_weights(1, 1))
    with pytest.raises(DeltaEqualsDeg):
        matrices(seq)
    report = bound_check(seq)
    assert report.equality and report.lhs == report.rhs == 1
    assert geometry_report(seq).mat_i is None


def test_weighted_x_degree_is_non_negative():
    assert sign_classify(compute_key_forms(from_weights(1, 0))) is SignClass.NON_NEGATIVE_NOT_POSITIVE


def test_ratio_check_rejects_constants(neg_seq, negative_example):
    with pytest.raises(ValueError):
        ratio_check(negative_example, neg_seq, parse_expr("3"))


def test_ratio_check_meets_bound_at_polynomial_last_form():
    seq = compute_key_forms(from_weights(3, -2))
    assert ratio_check(seq.spec, seq, seq.last.g) == (-2, True)


def test_cross_check_fires_on_inconsistent_sequence(key_example, key_seq):
    # Same key forms attributed to a datum with a different r: the closed formulas disagree.
    wrong = dataclasses.replace(key_seq, spec=SemidegreeSpec(key_example.phi, F(-14, 3), 30))
    with pytest.raises(CrossCheckError):
        puiseux_pairs(wrong.spec, wrong)


def test_report_json(key_seq):
    data = geometry_report(key_seq).to_json()
    assert data["skewness"] == {"num": "-3", "den": "125"}
    assert data["signClass"] == "TakesNegativeValues"
    assert data["infRatio"] == "unknown"
    assert data["lastForm"] == "y^2 - 2*x^-1*y - x^5"


def test_random_invariants():
    rng = random.Random(37)
    for _ in range(200):
        seq, _ = key_forms_or_partial(random_datum(rng))
        report = geometry_report(seq)
        if report.mat_i is not None:
            M, I = report.mat_m, report.mat_i
            for i in range(2):
                for j in range(2):
                    assert sum(M[i][k] * I[k][j] for k in range(2)) == (i == j)
        if not seq.spec.phi.is_zero():
            assert report.d == report.m * seq.last.g.total_degree()
        analytic, algebraic = compact_classify(seq)
        assert analytic or not algebraic
        inf = inf_ratio(seq)
        if inf is not UNKNOWN and report.alpha_holds:
            assert skewness(seq) * report.d == inf
        for _ in range(3):
            ratio, _ = ratio_check(seq.spec, seq, random_poly(rng))
            if inf is not UNKNOWN:
                assert ratio >= inf


@pytest.mark.parametrize("p", range(1, 6))
@pytest.mark.parametrize("q", range(-5, 6))
def test_weighted_grid(p, q):
    seq = compute_key_forms(from_weights(p, q))
    report = geometry_report(seq)
    if q > 0:
        assert report.skewness == F(min(p, q), max(p, q))
    assert bound_check(seq).equality == (p == q)
