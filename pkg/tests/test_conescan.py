import io
import json
import random
from fractions import Fraction as F

import pytest

from semideg.conescan import (
    ScanBudget,
    ScanResult,
    emit,
    emit_to_string,
    enumerate_candidates,
    extremal_witness,
    result_from_json,
    scan,
)
from semideg.exact import parse_expr
from semideg.geometry import UNKNOWN, SignClass, inf_ratio, sign_classify
from semideg.keyforms import compute_key_forms
from semideg.semidegree import evaluate, from_weights

from conftest import key_forms_or_partial, random_datum


def run(spec, **kw):
    return scan(spec, compute_key_forms(spec), ScanBudget(**kw))


def test_negative_example(negative_example):
    result = run(negative_example, max_degree=4)
    assert result.negative_witness == parse_expr("y")
    assert evaluate(negative_example, result.negative_witness) == -1
    assert result.min_slope == -1 > -2
    assert result.predicted_inf is UNKNOWN
    assert result.consistent


def test_same_semi_value_set(same_semi):
    result = run(same_semi, max_degree=10)
    weighted = run(from_weights(2, 3), max_degree=10)
    assert set(range(2, 11)) <= result.value_set
    assert 1 not in result.value_set
    assert result.values_up_to(10) == weighted.values_up_to(10)
    assert result.min_slope > F(1, 5)
    assert result.consistent


def test_candidates_are_polynomial_and_deterministic(key_example):
    seq = compute_key_forms(key_example)
    budget = ScanBudget(max_degree=5, random_samples=30, seed=4)
    first = list(enumerate_candidates(seq, budget))
    assert first == list(enumerate_candidates(seq, budget))
    assert len(set(first)) == len(first)
    assert all(f.is_polynomial() and not f.is_constant() and f.total_degree() <= 5 for f in first)
    other = list(enumerate_candidates(seq, ScanBudget(max_degree=5, random_samples=30, seed=5)))
    assert other != first


def test_extremal_witness_is_minimal(same_semi):
    # Brute force over small integer combinations never beats the linear-algebra witness.
    seq = compute_key_forms(same_semi)
    for D in (2, 3, 5):
        w = extremal_witness(same_semi, D)
        assert w.total_degree() == D and w.is_polynomial()
        best = evaluate(same_semi, w)
        for f in enumerate_candidates(seq, ScanBudget(max_degree=D, random_samples=200, extremal=False)):
            if f.total_degree() == D:
                assert evaluate(same_semi, f) >= best


def test_extremal_slopes_decrease_toward_inf(same_semi):
    slopes = [F(evaluate(same_semi, extremal_witness(same_semi, D)), D) for D in (5, 10, 15)]
    assert slopes == sorted(slopes, reverse=True)
    assert all(s > F(1, 5) for s in slopes)


def test_random_data_are_consistent():
    rng = random.Random(41)
    for _ in range(25):
        seq, _ = key_forms_or_partial(random_datum(rng))
        result = scan(seq.spec, seq, ScanBudget(max_degree=4, random_samples=10, seed=rng.randint(0, 99)))
        assert result.consistent, result.notes
        if sign_classify(seq) is not SignClass.TAKES_NEGATIVE_VALUES:
            assert all(v >= 0 for v in result.value_set)
        inf = inf_ratio(seq)
        if inf is not UNKNOWN:
            assert result.min_slope >= inf


def test_csv_and_json(negative_example):
    result = run(negative_example, max_degree=2, random_samples=0)
    text = emit_to_string(result, "csv")
    lines = text.splitlines()
    assert lines[0] == "deg,value,witness"
    assert lines[1] == "1,1,x"
    assert len(lines) == len(result.points) + 1
    data = json.loads(emit_to_string(result, "json"))
    back = result_from_json(data)
    assert back.points == result.points
    assert back.min_slope == result.min_slope
    assert back.value_set == result.value_set


def test_empty_result_csv_is_header_only():
    assert emit_to_string(ScanResult(), "csv") == "deg,value,witness\n"
    with pytest.raises(ValueError):
        emit(ScanResult(), "xml", io.StringIO())


def test_budget_validation():
    with pytest.raises(ValueError):
        ScanBudget(max_degree=0)
    with pytest.raises(ValueError):
        ScanBudget(random_samples=-1)
