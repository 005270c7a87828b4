"""Key-form-adic presentations.

Every ``f`` in Q[x, 1/x, y] is written as a polynomial ``G`` in
``x, 1/x, y_1, ..., y_{n+1}`` with ``G(x, g_1, ..., g_{n+1}) = f`` by
repeated monic division, top form first.  The weight of the resulting
standard presentation is the semidegree of ``f``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from .exact import BiLaurent, ZeroPolynomialError, as_fraction
from .keyforms import KeyFormSequence
from .semidegree import evaluate

__all__ = ["Presentation", "MinRealizationError", "adic_expand", "weight", "reconstruct"]


class MinRealizationError(AssertionError):
    """The standard presentation's weight disagrees with direct evaluation."""


class Presentation:
    """``{(a, (m_1, ..., m_{n+1})): c}`` meaning ``c x^a y_1^m_1 ... y_{n+1}^m_{n+1}``."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[tuple[int, tuple[int, ...]], object] | None = None):
        out = {}
        for (a, m), c in (terms or {}).items():
            c = as_fraction(c)
            if c:
                out[(int(a), tuple(int(v) for v in m))] = c
        self._terms = out

    @property
    def terms(self) -> dict[tuple[int, tuple[int, ...]], Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def is_standard(self, alphas: list[int]) -> bool:
        """``m_i < alpha_i`` for every form except the last."""
        return all(
            all(m[i] < alphas[i] for i in range(len(alphas)))
            for _, m in self._terms
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Presentation):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        return hash(frozenset(self._terms.items()))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, m), c in sorted(self._terms.items(), key=lambda t: (tuple(-v for v in reversed(t[0][1])), -t[0][0])):
            factors = []
            if a:
                factors.append("x" if a == 1 else f"x^{a}")
            for i, e in enumerate(m, start=1):
                if e:
                    factors.append(f"y{i}" if e == 1 else f"y{i}^{e}")
            mono = "*".join(factors)
            coeff = str(c) if c.denominator == 1 else f"({c})"
            if not mono:
                parts.append(coeff)
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{coeff}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"Presentation({self})"


def _adic_digits(f: BiLaurent, g: BiLaurent) -> list[BiLaurent]:
    """``f = sum digits[k] * g^k`` with ``deg_y digits[k] < deg_y g``."""
    digits = []
    q = f
    while not q.is_zero():
        q, r = q.divmod_monic_y(g)
        digits.append(r)
    return digits


def _expand(f: BiLaurent, forms: list[BiLaurent], level: int, width: int) -> dict:
    if f.is_zero():
        return {}
    if level == 0:
        # Only x-Laurent terms remain once the y-degree is below deg_y(g_1) = 1.
        out = {}
        for (a, b), c in f.items():
            assert b == 0, "y survived the descent to level 0"
            out[(a, (0,) * width)] = c
        return out
    out = {}
    for k, digit in enumerate(_adic_digits(f, forms[level])):
        for (a, m), c in _expand(digit, forms, level - 1, width).items():
            m = list(m)
            m[level - 1] = k
            out[(a, tuple(m))] = c
    return out


def adic_expand(f: BiLaurent, seq: KeyFormSequence, check: bool = True) -> Presentation:
    """Standard-form presentation of ``f`` in the key forms of ``seq``.

    With ``check`` the minimum-realization property is asserted: the weight
    of the presentation must equal ``delta(f)``; a mismatch raises
    :class:`MinRealizationError` instead of returning.
    """
    if f.is_zero():
        raise ZeroPolynomialError("adic expansion of the zero polynomial")
    forms = seq.forms
    width = len(forms) - 1
    pres = Presentation(_expand(f, forms, width, width))
    if check:
        w = weight(pres, seq.omegas)
        v = evaluate(seq.spec, f)
        if w != v:
            raise MinRealizationError(f"weight {w} of the adic expansion of {f} != delta = {v}")
    return pres


def weight(G: Presentation, omegas: list[int]) -> int:
    """Max over monomials of ``a*omega_0 + sum m_j*omega_j``."""
    if G.is_zero():
        raise ZeroPolynomialError("weight of the empty presentation")
    return max(a * omegas[0] + sum(e * w for e, w in zip(m, omegas[1:])) for (a, m) in G.terms)


def reconstruct(G: Presentation, seq: KeyFormSequence) -> BiLaurent:
    forms = seq.forms
    total = BiLaurent.zero()
    cache: dict[tuple[int, int], BiLaurent] = {}
    for (a, m), c in G.terms.items():
        term = BiLaurent.monomial(a, 0, c)
        for i, e in enumerate(m, start=1):
            if e:
                if (i, e) not in cache:
                    cache[(i, e)] = forms[i] ** e
                term = term * cache[(i, e)]
        total = total + term
    return total
