"""Exact arithmetic for the objects a semidegree acts on.

Three value types live here:

``XiPoly``
    univariate polynomial in the generic marker ``xi`` with rational
    coefficients.
``PuiseuxPoly``
    finite sum of terms ``c * xi^k * x^e`` with rational exponents ``e``;
    stored over a lattice denominator ``N`` so that every exponent is
    ``num / N`` with integer ``num``.
``BiLaurent``
    element of Q[x, 1/x, y].

All three are immutable and canonical (no zero coefficients stored), so
``==`` and ``hash`` are structural.  Rationals are ``fractions.Fraction``
throughout; nothing here ever touches a float.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Iterator, Mapping

__all__ = [
    "XiPoly",
    "PuiseuxPoly",
    "BiLaurent",
    "ParseError",
    "ZeroPolynomialError",
    "as_fraction",
    "parse_rational",
    "format_rational",
    "parse_expr",
    "parse_puiseux",
    "substitute_y",
    "leading_term",
    "total_degree",
    "is_polynomial",
]


class ZeroPolynomialError(ValueError):
    """A degree-like query was made on the zero element."""


class ParseError(ValueError):
    """Malformed expression text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} (at position {position})")


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"expected an exact rational, got {type(value).__name__}")


_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-14/5"``, ``"3"`` or ``"(3/2)"`` into a Fraction."""
    stripped = text.strip()
    if stripped.startswith("(") and stripped.endswith(")"):
        stripped = stripped[1:-1]
    m = _RATIONAL_RE.match(stripped)
    if not m:
        raise ParseError(f"not a rational number: {text!r}", 0, text)
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", 0, text)
    return Fraction(int(m.group(1)), den)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# XiPoly
# ---------------------------------------------------------------------------


class XiPoly:
    """Polynomial in ``xi``; ``coeffs[k]`` is the coefficient of ``xi^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c) -> XiPoly:
        return cls((c,))

    @classmethod
    def xi(cls) -> XiPoly:
        return cls((0, 1))

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """xi-degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def constant_term(self) -> Fraction:
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def depends_on_xi(self) -> bool:
        return self.degree >= 1

    def is_mixed(self) -> bool:
        """Nonzero constant part together with positive xi-degree part."""
        return self.depends_on_xi() and self.constant_term != 0

    def __add__(self, other: XiPoly) -> XiPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return XiPoly(out)

    def __neg__(self) -> XiPoly:
        return XiPoly(-c for c in self.coeffs)

    def __sub__(self, other: XiPoly) -> XiPoly:
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, XiPoly):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return XiPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return XiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> XiPoly:
        if n < 0:
            raise ValueError("negative power of a xi-polynomial")
        result, base = XiPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> XiPoly:
        c = as_fraction(c)
        return XiPoly(c * a for a in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, XiPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == XiPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("XiPoly", self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if k == 0 else ("xi" if k == 1 else f"xi^{k}")
            parts.append(_signed_term(c, mono))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"XiPoly({self})"


# ---------------------------------------------------------------------------
# PuiseuxPoly
# ---------------------------------------------------------------------------


class PuiseuxPoly:
    """Finite degree-wise Puiseux polynomial with xi-polynomial coefficients.

    Internally a dict ``(num, k) -> c`` meaning ``c * xi^k * x^(num/N)``
    where ``N`` is the (minimal) lattice denominator.
    """

    __slots__ = ("_den", "_terms")

    def __init__(self, den: int = 1, terms: Mapping[tuple[int, int], Fraction] | None = None):
        # Trusted constructor; public code should go through the classmethods.
        terms = {key: c for key, c in (terms or {}).items() if c != 0}
        g = den
        for num, _ in terms:
            g = gcd(g, num)
            if g == 1:
                break
        if g > 1:
            terms = {(num // g, k): c for (num, k), c in terms.items()}
            den //= g
        self._den = den
        self._terms = terms

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls) -> PuiseuxPoly:
        return cls()

    @classmethod
    def monomial(cls, coeff=1, exponent=0, xi_degree: int = 0) -> PuiseuxPoly:
        e = as_fraction(exponent)
        return cls(e.denominator, {(e.numerator, xi_degree): as_fraction(coeff)})

    @classmethod
    def from_terms(cls, terms: Mapping) -> PuiseuxPoly:
        """Build from ``{exponent: coefficient}``; a coefficient may be an
        XiPoly or a plain rational."""
        items = []
        for e, c in terms.items():
            e = as_fraction(e)
            xc = c if isinstance(c, XiPoly) else XiPoly.constant(c)
            items.append((e, xc))
        den = lcm(1, *(e.denominator for e, _ in items))
        out: dict[tuple[int, int], Fraction] = {}
        for e, xc in items:
            num = e.numerator * (den // e.denominator)
            for k, c in enumerate(xc.coeffs):
                if c:
                    out[(num, k)] = out.get((num, k), Fraction(0)) + c
        return cls(den, out)

    # -- inspection ---------------------------------------------------------

    @property
    def lattice_denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def raw_terms(self) -> dict[tuple[Fraction, int], Fraction]:
        """``{(exponent, xi_degree): coefficient}``."""
        return {(Fraction(num, self._den), k): c for (num, k), c in self._terms.items()}

    @property
    def terms(self) -> dict[Fraction, XiPoly]:
        """Exponent -> xi-polynomial coefficient, exponents descending."""
        grouped: dict[int, dict[int, Fraction]] = {}
        for (num, k), c in self._terms.items():
            grouped.setdefault(num, {})[k] = c
        out = {}
        for num in sorted(grouped, reverse=True):
            ks = grouped[num]
            out[Fraction(num, self._den)] = XiPoly(ks.get(k, 0) for k in range(max(ks) + 1))
        return out

    def exponents(self) -> list[Fraction]:
        return list(self.terms)

    def coefficient(self, exponent) -> XiPoly:
        return self.terms.get(as_fraction(exponent), XiPoly())

    def is_xi_free(self) -> bool:
        return all(k == 0 for _, k in self._terms)

    def num_terms(self) -> int:
        return len({num for num, _ in self._terms})

    def max_exponent(self) -> Fraction:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero series")
        return Fraction(max(num for num, _ in self._terms), self._den)

    def min_exponent(self) -> Fraction:
        if not self._terms:
            raise ZeroPolynomialError("order of the zero series")
        return Fraction(min(num for num, _ in self._terms), self._den)

    def leading_term(self) -> tuple[Fraction, XiPoly]:
        if not self._terms:
            raise ZeroPolynomialError("leading term of the zero series")
        top = max(num for num, _ in self._terms)
        ks = {k: c for (num, k), c in self._terms.items() if num == top}
        return Fraction(top, self._den), XiPoly(ks.get(k, 0) for k in range(max(ks) + 1))

    # -- arithmetic ---------------------------------------------------------

    def _rescaled(self, den: int) -> dict[tuple[int, int], Fraction]:
        f = den // self._den
        if f == 1:
            return self._terms
        return {(num * f, k): c for (num, k), c in self._terms.items()}

    def __add__(self, other) -> PuiseuxPoly:
        other = _coerce_puiseux(other)
        den = lcm(self._den, other._den)
        out = dict(self._rescaled(den))
        for key, c in other._rescaled(den).items():
            out[key] = out.get(key, 0) + c
        return PuiseuxPoly(den, out)

    __radd__ = __add__

    def __neg__(self) -> PuiseuxPoly:
        return PuiseuxPoly(self._den, {key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> PuiseuxPoly:
        return self + (-_coerce_puiseux(other))

    def __rsub__(self, other) -> PuiseuxPoly:
        return _coerce_puiseux(other) - self

    def __mul__(self, other) -> PuiseuxPoly:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce_puiseux(other)
        den = lcm(self._den, other._den)
        a, b = self._rescaled(den), other._rescaled(den)
        out: dict[tuple[int, int], Fraction] = {}
        for (n1, k1), c1 in a.items():
            for (n2, k2), c2 in b.items():
                key = (n1 + n2, k1 + k2)
                out[key] = out.get(key, 0) + c1 * c2
        return PuiseuxPoly(den, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> PuiseuxPoly:
        if n < 0:
            raise ValueError("negative power of a Puiseux polynomial")
        result, base = PuiseuxPoly.monomial(1, 0), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> PuiseuxPoly:
        c = as_fraction(c)
        return PuiseuxPoly(self._den, {key: c * v for key, v in self._terms.items()})

    def shift(self, exponent) -> PuiseuxPoly:
        """Multiply by ``x^exponent`` (any rational exponent)."""
        e = as_fraction(exponent)
        den = lcm(self._den, e.denominator)
        off = e.numerator * (den // e.denominator)
        return PuiseuxPoly(den, {(num + off, k): c for (num, k), c in self._rescaled(den).items()})

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = PuiseuxPoly.monomial(other, 0)
        if not isinstance(other, PuiseuxPoly):
            return NotImplemented
        return self._den == other._den and self._terms == other._terms

    def __hash__(self) -> int:
        return hash(("PuiseuxPoly", self._den, frozenset(self._terms.items())))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (e, k), c in sorted(self.raw_terms().items(), key=lambda t: (-t[0][0], -t[0][1])):
            factors = []
            if k:
                factors.append("xi" if k == 1 else f"xi^{k}")
            if e:
                factors.append(_format_x_power(e, parenthesize=True))
            parts.append(_signed_term(c, "*".join(factors)))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"PuiseuxPoly({self})"


def _coerce_puiseux(value) -> PuiseuxPoly:
    if isinstance(value, PuiseuxPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return PuiseuxPoly.monomial(value, 0)
    raise TypeError(f"cannot combine PuiseuxPoly with {type(value).__name__}")


def leading_term(s: PuiseuxPoly) -> tuple[Fraction, XiPoly]:
    return s.leading_term()


# ---------------------------------------------------------------------------
# BiLaurent
# ---------------------------------------------------------------------------


class BiLaurent:
    """Element of Q[x, 1/x, y] as ``{(a, b): c}`` meaning ``c * x^a * y^b``."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        out = {}
        for (a, b), c in (terms or {}).items():
            if b < 0:
                raise ValueError("negative power of y")
            c = as_fraction(c)
            if c:
                out[(int(a), int(b))] = c
        self._terms: dict[tuple[int, int], Fraction] = out
        self._hash = None

    @classmethod
    def _trusted(cls, terms: dict[tuple[int, int], Fraction]) -> BiLaurent:
        obj = cls.__new__(cls)
        obj._terms = {key: c for key, c in terms.items() if c}
        obj._hash = None
        return obj

    @classmethod
    def zero(cls) -> BiLaurent:
        return cls._trusted({})

    @classmethod
    def const(cls, c) -> BiLaurent:
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, coeff=1) -> BiLaurent:
        return cls({(a, b): coeff})

    @classmethod
    def x(cls) -> BiLaurent:
        return cls.monomial(1, 0)

    @classmethod
    def y(cls) -> BiLaurent:
        return cls.monomial(0, 1)

    @property
    def terms(self) -> dict[tuple[int, int], Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def is_constant(self) -> bool:
        return all(key == (0, 0) for key in self._terms)

    def total_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("degree of the zero polynomial")
        return max(a + b for a, b in self._terms)

    def y_degree(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("y-degree of the zero polynomial")
        return max(b for _, b in self._terms)

    def min_x_exponent(self) -> int:
        if not self._terms:
            raise ZeroPolynomialError("x-order of the zero polynomial")
        return min(a for a, _ in self._terms)

    def is_polynomial(self) -> bool:
        return all(a >= 0 for a, _ in self._terms)

    def y_coefficients(self) -> dict[int, dict[int, Fraction]]:
        """``{b: {a: c}}``: the coefficient of ``y^b`` as a Laurent polynomial in x."""
        out: dict[int, dict[int, Fraction]] = {}
        for (a, b), c in self._terms.items():
            out.setdefault(b, {})[a] = c
        return out

    def is_monic_in_y(self) -> bool:
        if not self._terms:
            return False
        top = self.y_degree()
        return {a: c for (a, b), c in self._terms.items() if b == top} == {0: Fraction(1)}

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other) -> BiLaurent:
        other = _coerce_bilaurent(other)
        out = dict(self._terms)
        for key, c in other._terms.items():
            out[key] = out.get(key, 0) + c
        return BiLaurent._trusted(out)

    __radd__ = __add__

    def __neg__(self) -> BiLaurent:
        return BiLaurent._trusted({key: -c for key, c in self._terms.items()})

    def __sub__(self, other) -> BiLaurent:
        return self + (-_coerce_bilaurent(other))

    def __rsub__(self, other) -> BiLaurent:
        return _coerce_bilaurent(other) - self

    def __mul__(self, other) -> BiLaurent:
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = _coerce_bilaurent(other)
        out: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self._terms.items():
            for (a2, b2), c2 in other._terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return BiLaurent._trusted(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> BiLaurent:
        if n < 0:
            if len(self._terms) == 1:
                ((a, b), c), = self._terms.items()
                if b == 0:
                    return BiLaurent._trusted({(a * n, 0): c ** n})
            raise ValueError("negative powers exist only for monomials in x")
        result, base = BiLaurent._trusted({(0, 0): Fraction(1)}), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c) -> BiLaurent:
        c = as_fraction(c)
        return BiLaurent._trusted({key: c * v for key, v in self._terms.items()})

    def shift_x(self, k: int) -> BiLaurent:
        return BiLaurent._trusted({(a + k, b): c for (a, b), c in self._terms.items()})

    def divmod_monic_y(self, divisor: BiLaurent) -> tuple[BiLaurent, BiLaurent]:
        """Euclidean division in the variable y by a divisor monic in y.

        Returns ``(q, r)`` with ``self = q*divisor + r`` and
        ``deg_y r < deg_y divisor``; exact over Q[x, 1/x].
        """
        if not divisor.is_monic_in_y():
            raise ValueError("divisor must be monic in y")
        n = divisor.y_degree()
        lower = [((a, b), c) for (a, b), c in divisor._terms.items() if b < n]
        rem = dict(self._terms)
        quo: dict[tuple[int, int], Fraction] = {}
        while True:
            top = max((b for (_, b), c in rem.items() if c), default=-1)
            if top < n:
                break
            shift = top - n
            for (a, b) in [key for key in rem if key[1] == top]:
                c = rem.pop((a, b))
                if not c:
                    continue
                quo[(a, shift)] = quo.get((a, shift), 0) + c
                for (a2, b2), c2 in lower:
                    key = (a + a2, b2 + shift)
                    rem[key] = rem.get(key, 0) - c * c2
        return BiLaurent._trusted(quo), BiLaurent._trusted(rem)

    def substitute_y(self, s: PuiseuxPoly) -> PuiseuxPoly:
        """Replace y by the Puiseux polynomial ``s`` (Horner in y)."""
        return substitute_y(self, s)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BiLaurent.const(other)
        if not isinstance(other, BiLaurent):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def sorted_terms(self) -> list[tuple[tuple[int, int], Fraction]]:
        """Printing order: descending y-degree, then descending x-exponent."""
        return sorted(self._terms.items(), key=lambda t: (-t[0][1], -t[0][0]))

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (a, b), c in self.sorted_terms():
            factors = []
            if a:
                factors.append(_format_x_power(Fraction(a), parenthesize=False))
            if b:
                factors.append("y" if b == 1 else f"y^{b}")
            parts.append(_signed_term(c, "*".join(factors)))
        return _join_terms(parts)

    def __repr__(self) -> str:
        return f"BiLaurent({self})"


def _coerce_bilaurent(value) -> BiLaurent:
    if isinstance(value, BiLaurent):
        return value
    if isinstance(value, (int, Fraction)):
        return BiLaurent.const(value)
    raise TypeError(f"cannot combine BiLaurent with {type(value).__name__}")


def substitute_y(f: BiLaurent, s: PuiseuxPoly) -> PuiseuxPoly:
    """Exact expansion of ``f(x, s)``."""
    if f.is_zero():
        raise ZeroPolynomialError("substitution into the zero polynomial")
    by_y = f.y_coefficients()
    result = PuiseuxPoly.zero()
    for b in range(max(by_y), -1, -1):
        result = result * s
        coeff = by_y.get(b)
        if coeff:
            result = result + PuiseuxPoly.from_terms(coeff)
    return result


def total_degree(f: BiLaurent) -> int:
    return f.total_degree()


def is_polynomial(f: BiLaurent) -> bool:
    return f.is_polynomial()


# ---------------------------------------------------------------------------
# printing helpers
# ---------------------------------------------------------------------------


def _format_x_power(e: Fraction, parenthesize: bool) -> str:
    if e == 1:
        return "x"
    if e.denominator == 1 and (e > 0 or not parenthesize):
        return f"x^{e.numerator}"
    return f"x^({format_rational(e)})"


def _signed_term(c: Fraction, mono: str) -> tuple[str, str]:
    sign = "-" if c < 0 else "+"
    mag = abs(c)
    if not mono:
        body = format_rational(mag)
    elif mag == 1:
        body = mono
    elif mag.denominator == 1:
        body = f"{mag.numerator}*{mono}"
    else:
        body = f"({format_rational(mag)})*{mono}"
    return sign, body


def _join_terms(parts: list[tuple[str, str]]) -> str:
    out = []
    for i, (sign, body) in enumerate(parts):
        if i == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|(xi|x|y)|([-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m:
            start = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[start]!r}", start, text)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("var", m.group(2), m.start(2)))
        else:
            tokens.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for sums of monomial terms.

    Produces ``[(coeff, {var: (exponent, position)})]``; the callers decide
    which variables and exponents are admissible.
    """

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.tokens[self.i]
        if tok[0] != kind or (value is not None and tok[1] != value):
            want = value or kind
            got = tok[1] or "end of input"
            raise ParseError(f"expected {want!r}, got {got!r}", tok[2], self.text)
        self.i += 1
        return tok

    def at(self, kind: str, value: str | None = None) -> bool:
        tok = self.tokens[self.i]
        return tok[0] == kind and (value is None or tok[1] == value)

    def parse(self):
        if self.at("end"):
            raise ParseError("empty expression", 0, self.text)
        terms = []
        sign = 1
        if self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op")[1] == "-" else 1
        terms.append(self.term(sign))
        while self.at("op", "+") or self.at("op", "-"):
            sign = -1 if self.take("op")[1] == "-" else 1
            terms.append(self.term(sign))
        self.take("end")
        return terms

    def term(self, sign: int):
        coeff = Fraction(sign)
        powers: dict[str, tuple[Fraction, int]] = {}
        self.factor(powers, coeff_box := [coeff])
        while self.at("op", "*"):
            self.take("op", "*")
            self.factor(powers, coeff_box)
        return coeff_box[0], powers

    def factor(self, powers, coeff_box):
        tok = self.peek()
        if tok[0] == "num":
            coeff_box[0] *= self.number()
        elif tok[0] == "op" and tok[1] == "(":
            self.take("op", "(")
            coeff_box[0] *= self.signed_number()
            self.take("op", ")")
        elif tok[0] == "var":
            self.take("var")
            exponent, pos = Fraction(1), tok[2]
            if self.at("op", "^"):
                self.take("op", "^")
                pos = self.peek()[2]
                exponent = self.exponent()
            old = powers.get(tok[1], (Fraction(0), pos))
            powers[tok[1]] = (old[0] + exponent, pos)
        else:
            got = tok[1] or "end of input"
            raise ParseError(f"unexpected {got!r}", tok[2], self.text)

    def number(self) -> Fraction:
        num = int(self.take("num")[1])
        if self.at("op", "/"):
            self.take("op", "/")
            tok = self.take("num")
            if int(tok[1]) == 0:
                raise ParseError("zero denominator", tok[2], self.text)
            return Fraction(num, int(tok[1]))
        return Fraction(num)

    def signed_number(self) -> Fraction:
        sign = 1
        if self.at("op", "-") or self.at("op", "+"):
            sign = -1 if self.take("op")[1] == "-" else 1
        return sign * self.number()

    def exponent(self) -> Fraction:
        if self.at("op", "("):
            self.take("op", "(")
            e = self.signed_number()
            self.take("op", ")")
            return e
        if self.at("op", "-"):
            self.take("op", "-")
            return -Fraction(int(self.take("num")[1]))
        return Fraction(int(self.take("num")[1]))


def parse_expr(text: str) -> BiLaurent:
    """Parse an element of Q[x, 1/x, y].

    >>> str(parse_expr("y^2 - x^5 - 2*x^-1*y"))
    'y^2 - 2*x^-1*y - x^5'
    """
    out: dict[tuple[int, int], Fraction] = {}
    for coeff, powers in _Parser(text).parse():
        a = b = 0
        for var, (e, pos) in powers.items():
            if var == "xi":
                raise ParseError("the generic marker xi is not allowed here", pos, text)
            if e.denominator != 1:
                raise ParseError(f"fractional exponent {format_rational(e)} on {var}", pos, text)
            if var == "x":
                a = int(e)
            else:
                if e < 0:
                    raise ParseError("negative exponent on y", pos, text)
                b = int(e)
        out[(a, b)] = out.get((a, b), 0) + coeff
    return BiLaurent._trusted(out)


def parse_puiseux(text: str) -> PuiseuxPoly:
    """Parse a xi-free sum of ``c*x^(p/q)`` terms."""
    terms: dict[Fraction, Fraction] = {}
    for coeff, powers in _Parser(text).parse():
        e = Fraction(0)
        for var, (ev, pos) in powers.items():
            if var == "xi":
                raise ParseError("the generic marker xi is not allowed in phi", pos, text)
            if var == "y":
                raise ParseError("phi must be a series in x alone", pos, text)
            e = ev
        terms[e] = terms.get(e, 0) + coeff
    return PuiseuxPoly.from_terms(terms)


def iter_monomials(max_degree: int) -> Iterator[tuple[int, int]]:
    """All ``(a, b)`` with ``1 <= a + b <= max_degree``, by degree then y-power."""
    for d in range(1, max_degree + 1):
        for b in range(d + 1):
            yield d - b, b
