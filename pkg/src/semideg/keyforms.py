"""Key forms of a semidegree by iterated leading-term cancellation.

Starting from ``g0 = x`` and ``g1 = y`` we carry, next to every form
``g_j``, its substituted series ``s_j = g_j(x, phi + xi x^r)``.  As long
as the leading coefficient of ``s_j`` is free of ``xi`` it can be cancelled
by a monomial in the earlier forms::

    g_{j+1} = g_j^alpha_j - theta_j * g_0^beta_0 ... g_{j-1}^beta_{j-1}

and the loop stops at the first form whose leading coefficient involves
``xi``; that form is the last key form.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .exact import BiLaurent, PuiseuxPoly, ZeroPolynomialError
from .semidegree import SemidegreeSpec, check, evaluate

__all__ = [
    "KeyStep",
    "KeyFormSequence",
    "KeyFormError",
    "IterationBoundExceeded",
    "MixedLeadingCoefficient",
    "ZeroSeries",
    "compute_key_forms",
    "semigroup_solve",
    "subgroup_gcds",
    "verify_axioms",
    "AxiomReport",
]


class KeyFormError(RuntimeError):
    pass


class IterationBoundExceeded(KeyFormError):
    pass


MAX_STEPS = 10_000


class MixedLeadingCoefficient(KeyFormError):
    """Leading coefficient with both a constant and a xi-part.

    ``partial`` holds the sequence computed so far, ending at the offending
    step (whose omega is treated as the last value).
    """

    def __init__(self, message: str, partial: KeyFormSequence):
        self.partial = partial
        super().__init__(message)


class ZeroSeries(KeyFormError):
    pass


@dataclass(frozen=True)
class KeyStep:
    g: BiLaurent
    omega: int
    substituted: PuiseuxPoly
    alpha: int | None = None
    beta: tuple[int, ...] | None = None
    theta: Fraction | None = None


@dataclass(frozen=True)
class KeyFormSequence:
    spec: SemidegreeSpec
    steps: tuple[KeyStep, ...]

    @property
    def forms(self) -> list[BiLaurent]:
        return [s.g for s in self.steps]

    @property
    def omegas(self) -> list[int]:
        return [s.omega for s in self.steps]

    @property
    def alphas(self) -> list[int]:
        return [s.alpha for s in self.steps[1:] if s.alpha is not None]

    @property
    def betas(self) -> list[tuple[int, ...]]:
        return [s.beta for s in self.steps[1:] if s.beta is not None]

    @property
    def thetas(self) -> list[Fraction]:
        return [s.theta for s in self.steps[1:] if s.theta is not None]

    @property
    def n(self) -> int:
        """Index of the last form is ``n + 1``."""
        return len(self.steps) - 2

    @property
    def last(self) -> KeyStep:
        return self.steps[-1]

    def __len__(self) -> int:
        return len(self.steps)


def subgroup_gcds(omegas: list[int]) -> list[int]:
    """``G_i = gcd(|w_0|, ..., |w_i|)`` for every prefix."""
    out, g = [], 0
    for w in omegas:
        g = gcd(g, w)
        out.append(g)
    return out


def semigroup_solve(omegas: list[int], alphas: list[int], target: int) -> tuple[int, ...]:
    """Write ``target = sum beta_i * omegas[i]`` with ``0 <= beta_i < alphas[i-1]``.

    ``alphas[i-1]`` bounds ``beta_i`` for ``i >= 1``; ``beta_0`` is an
    unrestricted integer.  Descending reduction: ``beta_i`` is the unique
    residue pushing the remainder into the subgroup generated by
    ``omegas[:i]``.
    """
    if len(alphas) != len(omegas) - 1:
        raise ValueError("need one alpha per omega after the first")
    G = subgroup_gcds(omegas)
    if G[-1] == 0 or target % G[-1]:
        raise ValueError(f"{target} is not in the subgroup generated by {omegas}")
    beta = [0] * len(omegas)
    rem = target
    for i in range(len(omegas) - 1, 0, -1):
        lower = G[i - 1]
        for b in range(alphas[i - 1]):
            if (rem - b * omegas[i]) % lower == 0:
                beta[i] = b
                break
        else:
            raise ValueError(f"no residue for index {i}; alphas inconsistent with omegas")
        rem -= beta[i] * omegas[i]
    beta[0] = rem // omegas[0]
    return tuple(beta)


def _leading(s: PuiseuxPoly):
    try:
        return s.leading_term()
    except ZeroPolynomialError:
        raise ZeroSeries("substituted series vanished") from None


def compute_key_forms(spec: SemidegreeSpec) -> KeyFormSequence:
    check(spec)
    x_series = PuiseuxPoly.monomial(1, 1)
    steps: list[KeyStep] = [KeyStep(BiLaurent.x(), spec.scale, x_series)]
    forms = [BiLaurent.x(), BiLaurent.y()]
    series = [x_series, spec.generic]
    omegas = [spec.scale]
    alphas: list[int] = []
    y_degrees = [0, 1]

    e1, _ = _leading(spec.generic)
    omegas.append(int(spec.scale * e1))

    while True:
        j = len(forms) - 1
        s_j = series[j]
        _, lc = _leading(s_j)
        if lc.depends_on_xi():
            steps.append(KeyStep(forms[j], omegas[j], s_j))
            seq = KeyFormSequence(spec, tuple(steps))
            if lc.is_mixed():
                raise MixedLeadingCoefficient(
                    f"leading coefficient {lc} of s_{j} mixes a constant and xi", seq
                )
            return seq
        if j + 1 >= MAX_STEPS:
            raise IterationBoundExceeded(f"more than {MAX_STEPS} key forms")
        G = subgroup_gcds(omegas)
        alpha = G[j - 1] // G[j]
        beta = semigroup_solve(omegas[:j], alphas, alpha * omegas[j])

        power = s_j ** alpha
        monomial_series = PuiseuxPoly.monomial(1, beta[0])
        monomial_form = BiLaurent.monomial(beta[0], 0)
        for i in range(1, j):
            if beta[i]:
                monomial_series = monomial_series * series[i] ** beta[i]
                monomial_form = monomial_form * forms[i] ** beta[i]
        e_pow, lc_pow = _leading(power)
        e_mon, lc_mon = _leading(monomial_series)
        assert e_pow == e_mon, "semigroup solution does not match leading exponents"
        theta = lc_pow.constant_term / lc_mon.constant_term

        next_series = power - monomial_series.scale(theta)
        next_form = forms[j] ** alpha - monomial_form.scale(theta)
        e_next, _ = _leading(next_series)
        # A form monic of y-degree d carries xi^d x^(r d), which nothing cancels;
        # values strictly drop along alpha = 1 runs, so this floor forces termination.
        y_degrees.append(alpha * y_degrees[j])
        if e_next < spec.r * y_degrees[-1]:
            raise IterationBoundExceeded(
                f"delta(g_{j + 1}) fell below the generic floor scale*r*deg_y = "
                f"{spec.scale * spec.r * y_degrees[-1]}"
            )

        steps.append(KeyStep(forms[j], omegas[j], s_j, alpha, beta, theta))
        alphas.append(alpha)
        forms.append(next_form)
        series.append(next_series)
        omegas.append(int(spec.scale * e_next))


# ---------------------------------------------------------------------------
# independent re-verification
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    results: dict[str, bool] = field(default_factory=dict)
    messages: list[str] = field(default_factory=list)

    def record(self, name: str, ok: bool, message: str = "") -> None:
        self.results[name] = self.results.get(name, True) and ok
        if not ok and message:
            self.messages.append(f"{name}: {message}")

    @property
    def ok(self) -> bool:
        return all(self.results.values())


def verify_axioms(seq: KeyFormSequence, corpus: list[BiLaurent] | None = None) -> AxiomReport:
    """Re-derive the key-form axioms from scratch.

    Omegas are recomputed by fresh substitution, the recurrence is replayed
    with ring arithmetic, and, when ``corpus`` is given, the generating
    property is spot-checked through adic expansions.
    """
    report = AxiomReport()
    spec, steps = seq.spec, seq.steps
    forms = seq.forms

    report.record("P0", len(forms) >= 2 and forms[0] == BiLaurent.x() and forms[1] == BiLaurent.y(),
                  "sequence must start with x, y")

    omegas = []
    for j, g in enumerate(forms):
        w = evaluate(spec, g)
        omegas.append(w)
        report.record("omega", w == steps[j].omega, f"delta(g_{j}) = {w}, stored {steps[j].omega}")

    last = len(forms) - 1
    _, lc = steps[-1].substituted.leading_term()
    report.record("last", lc.depends_on_xi(), "last leading coefficient must involve xi")
    for j in range(1, last):
        _, lcj = steps[j].substituted.leading_term()
        report.record("last", not lcj.depends_on_xi(), f"g_{j} already has a xi leading coefficient")

    for j in range(1, last):
        st = steps[j]
        if st.alpha is None or st.beta is None or st.theta is None:
            report.record("P1", False, f"step {j} lacks alpha/beta/theta")
            continue
        minimal = next(a for a in range(1, abs(omegas[0]) + 1)
                       if (a * omegas[j]) % _gcd_all(omegas[:j]) == 0)
        report.record("P1", st.alpha == minimal, f"alpha_{j} = {st.alpha}, minimal is {minimal}")
        report.record("P1", omegas[j + 1] < st.alpha * omegas[j],
                      f"omega_{j + 1} = {omegas[j + 1]} not below alpha*omega = {st.alpha * omegas[j]}")
        report.record("P1", sum(b * w for b, w in zip(st.beta, omegas)) == st.alpha * omegas[j],
                      f"beta_{j} does not solve alpha_{j}*omega_{j}")
        bounds_ok = len(st.beta) == j and all(
            0 <= st.beta[i] < steps[i].alpha for i in range(1, j)
        )
        report.record("P1", bounds_ok, f"beta_{j} = {st.beta} violates 0 <= beta_i < alpha_i")
        product = BiLaurent.monomial(st.beta[0], 0)
        for i in range(1, j):
            product = product * forms[i] ** st.beta[i]
        expected = forms[j] ** st.alpha - product.scale(st.theta)
        report.record("P2", st.theta != 0 and forms[j + 1] == expected,
                      f"g_{j + 1} != g_{j}^{st.alpha} - theta*monomial")
    for j in range(last, len(steps)):
        st = steps[j]
        report.record("P1", st.alpha is None and st.beta is None and st.theta is None,
                      "the last step must not carry alpha/beta/theta")

    if corpus:
        from .expansion import adic_expand, weight

        for f in corpus:
            if f.is_zero():
                continue
            G = adic_expand(f, seq, check=False)
            w = weight(G, omegas)
            report.record("P3", w == evaluate(spec, f), f"weight {w} != delta for {f}")
    return report


def _gcd_all(values: list[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, v)
    return g
