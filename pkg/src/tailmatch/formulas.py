"""Closed-form extremal tail values and their breakpoints."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .numeric import (
    PreconditionError,
    Q,
    RationalLike,
    RootInterval,
    binomial,
    bisect_exact,
    format_rational,
)

BELOW_X0 = "below-x0"
BETWEEN = "between-x0-and-1/k"
AT_LEAST_INV_K = "at-least-1/k"

ONE = Fraction(1)


@dataclass(frozen=True)
class PiecewiseReport:
    value: Fraction
    regime: str
    formula_used: str

    def to_dict(self) -> dict:
        return {"value": format_rational(self.value), "regime": self.regime, "formula": self.formula_used}


def _check_k(k: int, least: int = 1) -> None:
    if k < least:
        raise PreconditionError(f"k must be at least {least}, got {k}")


def union_branch(k: int, x: Fraction) -> Fraction:
    """1 - (1-x)^k: the {0,1} witness tail."""
    return 1 - (1 - x) ** k


def clique_branch(k: int, x: Fraction) -> Fraction:
    """(kx)^k: the {0,1/k} witness tail."""
    return (k * x) ** k


def conjectured_m(k: int, x: RationalLike) -> PiecewiseReport:
    """Conjectured maximal tail for k i.i.d. nonnegative variables of mean at most x.

    The regime is chosen by comparing the two branches exactly; they meet
    once inside (0, 1/k) for k >= 2, and the later branch owns the tie.
    """
    _check_k(k)
    x = Q(x)
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    if x >= Fraction(1, k):
        return PiecewiseReport(ONE, AT_LEAST_INV_K, "1")
    a, b = union_branch(k, x), clique_branch(k, x)
    # at x = 0 both branches vanish, and for k = 1 they coincide everywhere
    if a > b or x == 0 or k == 1:
        return PiecewiseReport(a, BELOW_X0, "1-(1-x)^k")
    return PiecewiseReport(b, BETWEEN, "(kx)^k")


def hoeffding_shrikhande_m2(x: RationalLike) -> Fraction:
    x = Q(x)
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    if x < Fraction(2, 5):
        return 2 * x - x * x
    if x < Fraction(1, 2):
        return 4 * x * x
    return ONE


def samuels_term(k: int, x: Fraction, t: int) -> Fraction:
    """(1 - x/(1-tx))^(k-t), the miss probability of the t-th Samuels vector."""
    return (1 - x / (1 - t * x)) ** (k - t)


def samuels_s(k: int, x: RationalLike) -> tuple[Fraction, int | None]:
    """Samuels' conjectured bound and the minimising t (smallest on ties).

    For x >= 1/k the bound is 1 and no t is reported.
    """
    _check_k(k)
    x = Q(x)
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    if x >= Fraction(1, k):
        return ONE, None
    best_t, best = 0, samuels_term(k, x, 0)
    for t in range(1, k):
        term = samuels_term(k, x, t)
        if term < best:
            best_t, best = t, term
    return 1 - best, best_t


def erdos_bound(n: int, k: int, s: int) -> int:
    """max{C(n,k) - C(n-s,k), C(ks+k-1,k)}, valid when n >= ks + k - 1."""
    _check_k(k)
    if s < 0:
        raise PreconditionError("s must be nonnegative")
    if n < k * s + k - 1:
        raise PreconditionError(f"need n >= ks + k - 1 = {k * s + k - 1}, got n={n}")
    return max(binomial(n, k) - binomial(n - s, k), binomial(k * s + k - 1, k))


def _left_bracket(f, k: int) -> Fraction:
    # both crossing equations vanish at 0 with positive slope; walk left from
    # 1/(2k) until f is strictly positive
    lo = Fraction(1, 2 * k)
    while f(lo) <= 0:
        lo /= 2
    return lo


def x0(k: int, eps: RationalLike) -> RootInterval:
    """Bracket the crossing of 1-(1-x)^k and (kx)^k inside (0, 1/k)."""
    _check_k(k, 2)

    def f(x: Fraction) -> Fraction:
        return union_branch(k, x) - clique_branch(k, x)

    return bisect_exact(f, _left_bracket(f, k), Fraction(1, k), eps)


def x1(k: int, eps: RationalLike) -> RootInterval:
    """Bracket the crossing of 1-(1-x)^k and x/(1-(k-1)x) inside (0, 1/k)."""
    _check_k(k, 2)

    def f(x: Fraction) -> Fraction:
        return union_branch(k, x) - x / (1 - (k - 1) * x)

    return bisect_exact(f, _left_bracket(f, k), Fraction(1, k), eps)


def lemma1_M(k: int, x: RationalLike) -> Fraction:
    """Continuous envelope used by the discretisation argument (the piecewise m_k)."""
    return conjectured_m(k, x).value
