"""Sampling the value set ``S = {(deg f, delta f)}`` over polynomials.

Sampling can corroborate the classification verdicts but never prove
them: the summary says "consistent" or "inconsistent", never "verified".
"""
from __future__ import annotations

import csv
import io
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterator, TextIO

from .exact import BiLaurent, format_rational, iter_monomials, parse_expr, substitute_y
from .geometry import UNKNOWN, CrossCheckError, SignClass, inf_ratio, ratio_floor, rat_json, sign_classify
from .keyforms import KeyFormSequence
from .semidegree import SemidegreeSpec, evaluate

__all__ = [
    "ScanBudget",
    "ScanPoint",
    "ScanResult",
    "enumerate_candidates",
    "extremal_witness",
    "scan",
    "emit",
    "result_from_json",
]


@dataclass(frozen=True)
class ScanBudget:
    max_degree: int = 6
    max_terms: int = 4
    random_samples: int = 50
    seed: int = 0
    extremal: bool = True

    def __post_init__(self):
        if self.max_degree < 1:
            raise ValueError("max_degree must be at least 1")
        if self.max_terms < 1:
            raise ValueError("max_terms must be positive")
        if self.random_samples < 0:
            raise ValueError("random_samples must be non-negative")


@dataclass(frozen=True)
class ScanPoint:
    deg: int
    value: int
    witness: BiLaurent

    @property
    def slope(self) -> Fraction:
        return Fraction(self.value, self.deg)


@dataclass
class ScanResult:
    points: list[ScanPoint] = field(default_factory=list)
    min_slope: Fraction | None = None
    min_slope_witness: BiLaurent | None = None
    predicted_inf: object = UNKNOWN
    negative_witness: BiLaurent | None = None
    value_set: set[int] = field(default_factory=set)
    consistent: bool = True
    notes: list[str] = field(default_factory=list)

    def values_up_to(self, bound: int) -> set[int]:
        return {v for v in self.value_set if v <= bound}

    def to_json(self) -> dict:
        return {
            "points": [
                {"deg": p.deg, "value": p.value, "witness": str(p.witness)} for p in self.points
            ],
            "summary": {
                "minSlope": None if self.min_slope is None else rat_json(self.min_slope),
                "minSlopeWitness": None if self.min_slope_witness is None else str(self.min_slope_witness),
                "predictedInf": "unknown" if self.predicted_inf is UNKNOWN else rat_json(self.predicted_inf),
                "negativeWitness": None if self.negative_witness is None else str(self.negative_witness),
                "valueSet": sorted(self.value_set),
                "verdict": "consistent with prediction" if self.consistent else "inconsistent with prediction",
                "notes": list(self.notes),
            },
        }


def _primitive(coeffs: dict[tuple[int, int], Fraction]) -> BiLaurent:
    """Scale to coprime integer coefficients with a positive leading one."""
    den = lcm(1, *(c.denominator for c in coeffs.values()))
    ints = {k: int(c * den) for k, c in coeffs.items() if c}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    f = BiLaurent({k: Fraction(v, g) for k, v in ints.items()})
    (_, lead), = f.sorted_terms()[:1]
    return -f if lead < 0 else f


def extremal_witness(spec: SemidegreeSpec, degree: int) -> BiLaurent:
    """A polynomial of total degree exactly ``degree`` with minimal delta.

    ``{f : deg f <= D, delta f <= v}`` is a linear space, cut out by the
    vanishing of every coefficient of ``f(x, phi + xi x^r)`` at x-exponents
    above ``v/scale``.  Adding those conditions exponent by exponent, top
    down, the last kernel still reaching degree D holds the minimizer.
    """
    columns = [(0, 0), *iter_monomials(degree)]
    images = [substitute_y(BiLaurent.monomial(a, b), spec.generic).raw_terms() for a, b in columns]
    rows: dict[Fraction, dict[int, dict[int, Fraction]]] = {}
    for col, image in enumerate(images):
        for (e, k), c in image.items():
            rows.setdefault(e, {}).setdefault(k, {})[col] = c
    top = {col for col, (a, b) in enumerate(columns) if a + b == degree}
    basis: list[dict[int, Fraction]] = [{col: Fraction(1)} for col in range(len(columns))]

    def reaches_top(vecs):
        return next((v for v in vecs if top & v.keys()), None)

    best = reaches_top(basis)
    for e in sorted(rows, reverse=True):
        for k in sorted(rows[e]):
            row = rows[e][k]
            values = [sum(c * v.get(col, 0) for col, c in row.items()) for v in basis]
            pivot = next((i for i, val in enumerate(values) if val), None)
            if pivot is None:
                continue
            pv, pval = basis[pivot], values[pivot]
            reduced = []
            for i, v in enumerate(basis):
                if i == pivot:
                    continue
                if values[i]:
                    ratio = values[i] / pval
                    w = dict(v)
                    for col, c in pv.items():
                        w[col] = w.get(col, 0) - ratio * c
                        if not w[col]:
                            del w[col]
                    v = w
                reduced.append(v)
            basis = reduced
        candidate = reaches_top(basis)
        if candidate is None:
            break
        best = candidate
    return _primitive({columns[col]: c for col, c in best.items()})


def enumerate_candidates(seq: KeyFormSequence, budget: ScanBudget) -> Iterator[BiLaurent]:
    """Nonconstant polynomial candidates, deterministic for a fixed seed.

    Families, in order: monomials; products of the polynomial key forms;
    pole-cleared powers ``x^k g_last^m``; minimal-delta witnesses per
    degree (when ``budget.extremal``); random sparse polynomials.
    """
    D = budget.max_degree
    seen: set[BiLaurent] = set()

    def fresh(f: BiLaurent) -> bool:
        if f.is_zero() or f.is_constant() or not f.is_polynomial() or f.total_degree() > D or f in seen:
            return False
        seen.add(f)
        return True

    for a, b in iter_monomials(D):
        f = BiLaurent.monomial(a, b)
        if fresh(f):
            yield f

    poly_forms = [g for g in seq.forms if g.is_polynomial()]
    for f in _form_products(poly_forms, D):
        if fresh(f):
            yield f

    last = seq.last.g
    if not last.is_polynomial():
        power = BiLaurent.const(1)
        for _ in range(1, D + 1):
            power = power * last
            cleared = power.shift_x(-power.min_x_exponent())
            if cleared.total_degree() > D:
                break
            if fresh(cleared):
                yield cleared

    if budget.extremal:
        for degree in range(1, D + 1):
            f = extremal_witness(seq.spec, degree)
            if fresh(f):
                yield f

    rng = random.Random(budget.seed)
    monomials = [(0, 0), *iter_monomials(D)]
    for _ in range(budget.random_samples):
        nterms = rng.randint(1, budget.max_terms)
        picks = rng.sample(monomials, min(nterms, len(monomials)))
        f = BiLaurent({m: rng.choice([-3, -2, -1, 1, 2, 3]) for m in picks})
        if fresh(f):
            yield f


def _form_products(forms: list[BiLaurent], max_degree: int) -> Iterator[BiLaurent]:
    degs = [g.total_degree() for g in forms]

    def rec(i: int, budget: int, acc: BiLaurent, used: bool):
        if i == len(forms):
            if used:
                yield acc
            return
        power, e = BiLaurent.const(1), 0
        while e * degs[i] <= budget:
            yield from rec(i + 1, budget - e * degs[i], acc * power, used or e > 0)
            if degs[i] == 0:
                break
            power, e = power * forms[i], e + 1

    yield from rec(0, max_degree, BiLaurent.const(1), False)


def scan(spec: SemidegreeSpec, seq: KeyFormSequence, budget: ScanBudget) -> ScanResult:
    floor = ratio_floor(seq)
    result = ScanResult(predicted_inf=inf_ratio(seq))
    for f in enumerate_candidates(seq, budget):
        deg, value = f.total_degree(), evaluate(spec, f)
        point = ScanPoint(deg, value, f)
        if point.slope < floor:
            raise CrossCheckError(f"{f} has delta/deg = {point.slope} below the floor {floor}")
        result.points.append(point)
        result.value_set.add(value)
        if value < 0 and result.negative_witness is None:
            result.negative_witness = f
        if result.min_slope is None or point.slope < result.min_slope:
            result.min_slope, result.min_slope_witness = point.slope, f
    _judge(seq, result)
    return result


def _judge(seq: KeyFormSequence, result: ScanResult) -> None:
    cls = sign_classify(seq)
    if cls is SignClass.TAKES_NEGATIVE_VALUES:
        if result.negative_witness is None:
            result.notes.append("no negative value found within budget")
    elif result.negative_witness is not None:
        result.consistent = False
        result.notes.append(f"negative value at {result.negative_witness} contradicts {cls.value}")
    if cls is SignClass.NON_NEGATIVE_NOT_POSITIVE and seq.last.g.is_polynomial():
        if 0 not in result.value_set:
            result.notes.append("no value-0 witness found within budget")
    inf = result.predicted_inf
    if inf is not UNKNOWN and result.min_slope is not None and result.min_slope < inf:
        result.consistent = False
        result.notes.append(f"observed slope {result.min_slope} below the predicted infimum {inf}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def emit(result: ScanResult, fmt: str, sink: TextIO) -> None:
    fmt = fmt.lower()
    if fmt == "csv":
        writer = csv.writer(sink, lineterminator="\n")
        writer.writerow(["deg", "value", "witness"])
        for p in result.points:
            writer.writerow([p.deg, p.value, str(p.witness)])
    elif fmt == "json":
        json.dump(result.to_json(), sink, indent=2, sort_keys=True)
        sink.write("\n")
    else:
        raise ValueError(f"unknown format {fmt!r}")


def emit_to_string(result: ScanResult, fmt: str) -> str:
    buf = io.StringIO()
    emit(result, fmt, buf)
    return buf.getvalue()


def _rat_from_json(obj) -> Fraction:
    return Fraction(int(obj["num"]), int(obj["den"]))


def result_from_json(data: dict) -> ScanResult:
    summary = data["summary"]
    inf = summary["predictedInf"]
    return ScanResult(
        points=[ScanPoint(p["deg"], p["value"], parse_expr(p["witness"])) for p in data["points"]],
        min_slope=None if summary["minSlope"] is None else _rat_from_json(summary["minSlope"]),
        min_slope_witness=None if summary.get("minSlopeWitness") is None else parse_expr(summary["minSlopeWitness"]),
        predicted_inf=UNKNOWN if inf == "unknown" else _rat_from_json(inf),
        negative_witness=None if summary["negativeWitness"] is None else parse_expr(summary["negativeWitness"]),
        value_set=set(summary["valueSet"]),
        consistent=summary["verdict"] == "consistent with prediction",
        notes=list(summary.get("notes", [])),
    )


def format_slope(q: Fraction | None) -> str:
    return "none" if q is None else format_rational(q)
