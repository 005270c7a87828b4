import random
from fractions import Fraction
from math import lcm

import pytest
import sympy as sp

from semideg.exact import BiLaurent, PuiseuxPoly
from semideg.keyforms import MixedLeadingCoefficient, compute_key_forms
from semideg.semidegree import SemidegreeSpec, auto_scale, parse_datum

KEY_EXAMPLE = "phi = x^(5/2) + x^(-1); r = -14/5; scale = 10"
NEGATIVE_EXAMPLE = "phi = x^(-1); r = -2; scale = 1"
SAME_SEMI = "phi = x^(5/2) + x^(-1); r = -2; scale = 2"


@pytest.fixture
def key_example() -> SemidegreeSpec:
    return parse_datum(KEY_EXAMPLE)


@pytest.fixture
def negative_example() -> SemidegreeSpec:
    return parse_datum(NEGATIVE_EXAMPLE)


@pytest.fixture
def same_semi() -> SemidegreeSpec:
    return parse_datum(SAME_SEMI)


def random_datum(rng: random.Random) -> SemidegreeSpec:
    """phi with at most three terms, denominators at most 6, r below phi.

    All denominators divide one base denominator, which keeps the scale at
    most 6 and the property suites fast.
    """
    base = rng.randint(1, 6)
    dens = [d for d in range(1, base + 1) if base % d == 0]
    exps: set[Fraction] = set()
    nterms = rng.randint(0, 3)
    while len(exps) < nterms:
        exps.add(Fraction(rng.randint(-12, 12), rng.choice(dens)))
    phi = PuiseuxPoly.from_terms(
        {e: Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 1, 2])) for e in exps}
    )
    low = min(exps) if exps else Fraction(rng.randint(-6, 6))
    r = low - Fraction(rng.randint(1, 12), rng.choice(dens))
    return auto_scale(phi, r)


def random_poly(rng: random.Random, max_terms: int = 6, max_degree: int = 8, nonconstant=True) -> BiLaurent:
    while True:
        terms = {}
        for _ in range(rng.randint(1, max_terms)):
            a = rng.randint(0, max_degree)
            b = rng.randint(0, max_degree - a)
            terms[(a, b)] = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 2]))
        f = BiLaurent(terms)
        if not f.is_zero() and not (nonconstant and f.is_constant()):
            return f


def key_forms_or_partial(spec):
    """The key-form sequence, or the flagged partial one for mixed data."""
    try:
        return compute_key_forms(spec), False
    except MixedLeadingCoefficient as exc:
        return exc.partial, True


_t, _xi = sp.symbols("t xi")


def sympy_semidegree(spec: SemidegreeSpec, f: BiLaurent) -> int:
    """delta(f) by direct substitution in sympy, through x = t^N."""
    exps = [spec.r, *spec.phi.exponents()]
    N = lcm(*(e.denominator for e in exps))
    X = _t ** N
    Y = sum(
        (sp.Rational(c.numerator, c.denominator) * _xi**k * _t ** int(e * N)
         for (e, k), c in spec.phi.raw_terms().items()),
        sp.Integer(0),
    ) + _xi * _t ** int(spec.r * N)
    expr = sp.expand(sum(
        (sp.Rational(c.numerator, c.denominator) * X**a * Y**b for (a, b), c in f.items()),
        sp.Integer(0),
    ))
    by_exp: dict = {}
    for term in sp.Add.make_args(expr):
        coeff, e = term.as_coeff_exponent(_t)
        by_exp[e] = by_exp.get(e, 0) + coeff
    top = max(e for e, c in by_exp.items() if sp.expand(c) != 0)
    value = Fraction(int(top.p), int(top.q)) * spec.scale / N
    assert value.denominator == 1
    return int(value)


# -- acceptance reporting ---------------------------------------------------

ACCEPTANCE_LINES: list[str] = []
_SESSION_START = [0.0]


def pytest_sessionstart(session):
    import time

    _SESSION_START[0] = time.perf_counter()


@pytest.fixture
def criterion():
    """``criterion(label, ok, detail)`` records one pass/fail line and asserts."""

    def record(label: str, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} {label}" + (f": {detail}" if detail else "")
        ACCEPTANCE_LINES.append(line)
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter):
    import time

    if not ACCEPTANCE_LINES:
        return
    elapsed = time.perf_counter() - _SESSION_START[0]
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    status = "PASS" if elapsed < 60 else "FAIL"
    terminalreporter.write_line(f"{status} criterion 5 (runtime): full session took {elapsed:.1f} s (limit 60 s)")
