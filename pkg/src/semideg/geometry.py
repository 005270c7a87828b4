"""Numerical invariants of a semidegree and the classification verdicts.

Everything is read off the key-form sequence: ``d = max(delta(x), delta(y))``,
``m = gcd(omega_0, ..., omega_n)`` and the last value ``omega_{n+1}``
determine the intersection matrix of the two-curve compactification, the
skewness, the sign of ``delta`` on polynomials and whether ``delta``
determines an analytic or algebraic compactification.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from .exact import BiLaurent, format_rational
from .keyforms import KeyFormSequence
from .semidegree import SemidegreeSpec, evaluate

__all__ = [
    "SignClass",
    "PuiseuxPairs",
    "GeometryReport",
    "DeltaEqualsDeg",
    "CrossCheckError",
    "UNKNOWN",
    "d_delta",
    "m_delta",
    "puiseux_pairs",
    "skewness",
    "matrices",
    "self_intersection",
    "sign_classify",
    "compact_classify",
    "alpha_verdict",
    "inf_ratio",
    "ratio_floor",
    "ratio_check",
    "bound_check",
    "nef_edges",
    "is_deg",
    "geometry_report",
]


class DeltaEqualsDeg(ValueError):
    """The intersection matrix is singular exactly when delta is the degree."""


class CrossCheckError(AssertionError):
    """A closed formula disagrees with the directly computed invariant."""


class _Unknown:
    """Tag for an infimum that key forms alone cannot determine."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNKNOWN"

    def __bool__(self) -> bool:
        return False


UNKNOWN = _Unknown()


class SignClass(str, enum.Enum):
    POSITIVE_ON_NONCONSTANTS = "PositiveOnNonconstants"
    NON_NEGATIVE_NOT_POSITIVE = "NonNegativeNotPositive"
    TAKES_NEGATIVE_VALUES = "TakesNegativeValues"


@dataclass(frozen=True)
class PuiseuxPairs:
    pairs: tuple[tuple[int, int], ...]
    p_last: int
    q_last: int

    @property
    def polydromy(self) -> int:
        """``p_1 * ... * p_l``."""
        return prod(p for _, p in self.pairs)


def d_delta(seq: KeyFormSequence) -> int:
    return max(seq.omegas[0], seq.omegas[1])


def m_delta(seq: KeyFormSequence) -> int:
    g = 0
    for w in seq.omegas[:-1]:
        g = gcd(g, w)
    return g


def is_deg(spec: SemidegreeSpec) -> bool:
    """``delta`` is a positive multiple of the usual degree."""
    return spec.phi.is_zero() and spec.r == 1


def _structurally_deg(seq: KeyFormSequence) -> bool:
    return len(seq.steps) == 2 and seq.omegas[0] == seq.omegas[1]


def _normalization(spec: SemidegreeSpec) -> int:
    """``scale`` divided by the minimal admissible scale."""
    minimal = 1
    for e in [spec.r, *spec.phi.exponents()]:
        minimal = minimal * e.denominator // gcd(minimal, e.denominator)
    return spec.scale // minimal


def puiseux_pairs(spec: SemidegreeSpec, seq: KeyFormSequence | None = None) -> PuiseuxPairs:
    """Puiseux pairs of ``phi`` plus the pair ``(q_last, p_last)`` of ``r``.

    With ``seq`` the closed formulas for ``m``, ``d`` and ``deg g_{n+1}``
    are checked against the computed sequence; any disagreement raises
    :class:`CrossCheckError`.  The formulas are stated for the primitive
    normalization, so values are compared after dividing out
    ``scale / minimal_scale``.
    """
    pairs = []
    P = 1
    for e in spec.phi.exponents():  # descending
        eP = e * P
        if eP.denominator != 1:
            p_i = eP.denominator
            pairs.append((int(eP * p_i), p_i))
            P *= p_i
    rP = spec.r * P
    result = PuiseuxPairs(tuple(pairs), rP.denominator, int(rP * rP.denominator))
    if seq is not None:
        _cross_check(spec, seq, result)
    return result


def _cross_check(spec: SemidegreeSpec, seq: KeyFormSequence, pp: PuiseuxPairs) -> None:
    t = _normalization(spec)
    m, d = m_delta(seq), d_delta(seq)
    deg_last = seq.last.g.total_degree()
    if m != t * pp.p_last:
        raise CrossCheckError(f"m = {m} but p_last = {pp.p_last} (normalization {t})")
    if spec.phi.is_zero():
        d_formula = max(pp.p_last, pp.q_last)
        deg_formula = 1
    else:
        top = max(Fraction(1), spec.phi.max_exponent())
        d_formula = top * pp.polydromy * pp.p_last
        deg_formula = top * pp.polydromy
    if d != t * d_formula:
        raise CrossCheckError(f"d = {d} but the closed formula gives {d_formula} (normalization {t})")
    if deg_last != deg_formula:
        raise CrossCheckError(f"deg g_last = {deg_last} but the closed formula gives {deg_formula}")


def skewness(seq: KeyFormSequence) -> Fraction:
    return Fraction(m_delta(seq) * seq.last.omega, d_delta(seq) ** 2)


Matrix = tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]


def matrices(seq: KeyFormSequence) -> tuple[tuple[tuple[int, int], tuple[int, int]], Matrix]:
    """``(M, I)``: M is the inverse of the intersection matrix I of the
    boundary curves (degree curve, delta curve)."""
    d, m, w = d_delta(seq), m_delta(seq), seq.last.omega
    det = d * d - m * w
    if _structurally_deg(seq) or det == 0:
        raise DeltaEqualsDeg("intersection matrix undefined for delta = deg")
    M = ((1, d), (d, m * w))
    I = (
        (Fraction(-m * w, det), Fraction(d, det)),
        (Fraction(d, det), Fraction(-1, det)),
    )
    for i in range(2):
        for j in range(2):
            entry = sum(M[i][k] * I[k][j] for k in range(2))
            if entry != (1 if i == j else 0):
                raise CrossCheckError("M * I is not the identity")
    return M, I


def self_intersection(a1, a2, I: Matrix) -> Fraction:
    v = (Fraction(a1), Fraction(a2))
    return sum(v[i] * I[i][j] * v[j] for i in range(2) for j in range(2))


def sign_classify(seq: KeyFormSequence) -> SignClass:
    w = seq.last.omega
    if w > 0:
        return SignClass.POSITIVE_ON_NONCONSTANTS
    if w == 0:
        if not seq.last.g.is_polynomial():
            return SignClass.POSITIVE_ON_NONCONSTANTS
        return SignClass.NON_NEGATIVE_NOT_POSITIVE
    return SignClass.TAKES_NEGATIVE_VALUES


def compact_classify(seq: KeyFormSequence) -> tuple[bool, bool]:
    analytic = seq.last.omega > 0
    return analytic, analytic and seq.last.g.is_polynomial()


def alpha_verdict(seq: KeyFormSequence) -> tuple[bool, bool, BiLaurent | None]:
    """``(identity holds, inf attained, minimizer)`` for the skewness identity."""
    polynomial = seq.last.g.is_polynomial()
    holds = seq.last.omega >= 0 or polynomial
    return holds, polynomial, (seq.last.g if polynomial else None)


def inf_ratio(seq: KeyFormSequence):
    """Infimum of ``delta(f)/deg(f)`` over nonconstant polynomials, or ``UNKNOWN``."""
    w = seq.last.omega
    if w >= 0:
        return Fraction(m_delta(seq) * w, d_delta(seq))
    if seq.last.g.is_polynomial():
        return Fraction(w, seq.last.g.total_degree())
    return UNKNOWN


def ratio_floor(seq: KeyFormSequence) -> Fraction:
    """Lower bound for ``delta(f)/deg(f)`` on nonconstant polynomials.

    ``omega_{n+1}/deg(g_{n+1})``, except for weighted degrees where the
    last form is ``y`` and the floor is ``min(delta(x), delta(y))``.
    """
    if seq.spec.phi.is_zero():
        return Fraction(min(seq.omegas[0], seq.omegas[1]))
    return Fraction(seq.last.omega, seq.last.g.total_degree())


def ratio_check(spec: SemidegreeSpec, seq: KeyFormSequence, f: BiLaurent) -> tuple[Fraction, bool]:
    """``(delta(f)/deg(f), whether the floor is met with equality)``."""
    if f.is_zero() or f.is_constant():
        raise ValueError("ratio undefined for constants")
    ratio = Fraction(evaluate(spec, f), f.total_degree())
    floor = ratio_floor(seq)
    if ratio < floor:
        raise CrossCheckError(f"delta/deg = {ratio} of {f} is below the floor {floor}")
    return ratio, ratio == floor


@dataclass(frozen=True)
class BoundReport:
    lhs: int
    rhs: int
    holds: bool
    equality: bool
    expected_equality: bool

    @property
    def ok(self) -> bool:
        return self.holds and self.equality == self.expected_equality


def bound_check(seq: KeyFormSequence) -> BoundReport:
    """``m * omega_{n+1} <= d^2`` with equality exactly for multiples of deg."""
    lhs = m_delta(seq) * seq.last.omega
    rhs = d_delta(seq) ** 2
    report = BoundReport(lhs, rhs, lhs <= rhs, lhs == rhs, is_deg(seq.spec))
    if not report.ok:
        raise CrossCheckError(f"bound check failed: {report}")
    return report


def nef_edges(seq: KeyFormSequence) -> tuple[Fraction, Fraction] | None:
    if seq.last.omega < 0 or _structurally_deg(seq):
        return None
    d = d_delta(seq)
    return Fraction(d), Fraction(m_delta(seq) * seq.last.omega, d)


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeometryReport:
    d: int
    m: int
    omega_last: int
    pairs: PuiseuxPairs
    skewness: Fraction
    mat_m: tuple | None
    mat_i: Matrix | None
    sign_class: SignClass
    analytic: bool
    algebraic: bool
    alpha_holds: bool
    inf_attained: bool
    inf_ratio: object
    nef_edges: tuple[Fraction, Fraction] | None
    last_form: BiLaurent
    minimizer: BiLaurent | None

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "m": self.m,
            "omegaLast": self.omega_last,
            "pairs": {
                "pairs": [{"q": q, "p": p} for q, p in self.pairs.pairs],
                "pLast": self.pairs.p_last,
                "qLast": self.pairs.q_last,
            },
            "skewness": rat_json(self.skewness),
            "matM": None if self.mat_m is None else [list(row) for row in self.mat_m],
            "matI": None if self.mat_i is None else [[rat_json(v) for v in row] for row in self.mat_i],
            "signClass": self.sign_class.value,
            "analytic": self.analytic,
            "algebraic": self.algebraic,
            "alphaHolds": self.alpha_holds,
            "infAttained": self.inf_attained,
            "infRatio": "unknown" if self.inf_ratio is UNKNOWN else rat_json(self.inf_ratio),
            "nefEdges": None if self.nef_edges is None else [rat_json(v) for v in self.nef_edges],
            "lastForm": str(self.last_form),
            "minimizer": None if self.minimizer is None else str(self.minimizer),
        }


def rat_json(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def geometry_report(seq: KeyFormSequence) -> GeometryReport:
    spec = seq.spec
    d, m = d_delta(seq), m_delta(seq)
    if not spec.phi.is_zero() and d != m * seq.last.g.total_degree():
        raise CrossCheckError(f"d = {d} != m * deg(g_last) = {m} * {seq.last.g.total_degree()}")
    pairs = puiseux_pairs(spec, seq)
    bound_check(seq)
    try:
        mat_m, mat_i = matrices(seq)
    except DeltaEqualsDeg:
        mat_m = mat_i = None
    analytic, algebraic = compact_classify(seq)
    holds, attained, minimizer = alpha_verdict(seq)
    return GeometryReport(
        d=d,
        m=m,
        omega_last=seq.last.omega,
        pairs=pairs,
        skewness=skewness(seq),
        mat_m=mat_m,
        mat_i=mat_i,
        sign_class=sign_classify(seq),
        analytic=analytic,
        algebraic=algebraic,
        alpha_holds=holds,
        inf_attained=attained,
        inf_ratio=inf_ratio(seq),
        nef_edges=nef_edges(seq),
        last_form=seq.last.g,
        minimizer=minimizer,
    )


def describe(report: GeometryReport) -> str:
    """Human-readable multi-line summary."""
    lines = [
        f"d = {report.d}, m = {report.m}, delta(g_last) = {report.omega_last}",
        f"last key form: {report.last_form}",
        f"Puiseux pairs: {list(report.pairs.pairs)}, (q_last, p_last) = ({report.pairs.q_last}, {report.pairs.p_last})",
        f"skewness: {format_rational(report.skewness)}",
        f"sign: {report.sign_class.value}",
        f"analytic compactification: {report.analytic}; algebraic: {report.algebraic}",
        f"skewness identity holds: {report.alpha_holds}; inf attained: {report.inf_attained}",
        "inf delta/deg: " + ("unknown" if report.inf_ratio is UNKNOWN else format_rational(report.inf_ratio)),
    ]
    if report.mat_i is not None:
        lines.append("intersection matrix: " + str([[format_rational(v) for v in row] for row in report.mat_i]))
    if report.nef_edges is not None:
        lines.append("nef cone edge slopes: " + ", ".join(format_rational(v) for v in report.nef_edges))
    return "\n".join(lines)
