"""Exact rational helpers, binomials and sign-based bisection.

Rationals are plain :class:`fractions.Fraction` values; nothing in this
package rounds except :func:`to_decimal`, which only renders output.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

RationalLike = Union[Fraction, int, str]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


class PreconditionError(ValueError):
    """An operation was called outside its documented domain."""


class ConsistencyError(RuntimeError):
    """A mathematical identity that must hold was violated (solver bug)."""


class BracketError(PreconditionError):
    pass


def Q(value: RationalLike) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to Fraction.

    Floats are rejected: a float has already lost exactness.
    """
    if isinstance(value, bool):
        raise TypeError("bool is not a rational")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot convert {type(value).__name__} to an exact rational")


def parse_rational(text: str) -> Fraction:
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"malformed rational {text!r}; expected 'p/q' or 'p'")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def to_decimal(q: Fraction | int, places: int = 12) -> str:
    """Round ``q`` half-to-even at ``places`` decimals and render it."""
    q = Fraction(q)
    scaled = round(q * 10**places)  # Fraction.__round__ is exact, half-even
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled)).rjust(places + 1, "0")
    if places == 0:
        return sign + digits
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def sign(q: Fraction | int) -> int:
    return (q > 0) - (q < 0)


def binomial(n: int, k: int) -> int:
    """C(n, k) for nonnegative integers, 0 when k > n."""
    if n < 0 or k < 0:
        raise PreconditionError(f"binomial needs nonnegative arguments, got ({n}, {k})")
    return math.comb(n, k)


@dataclass(frozen=True)
class RootInterval:
    """A closed interval ``[lo, hi]`` isolating one sign change of a function.

    ``root`` is set when bisection landed exactly on a zero; the interval
    is then a small bracket centred on it whose endpoints still carry
    opposite signs.
    """

    lo: Fraction
    hi: Fraction
    root: Fraction | None = None

    def __post_init__(self) -> None:
        if not self.lo < self.hi:
            raise ValueError(f"empty root interval [{self.lo}, {self.hi}]")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, q: RationalLike) -> bool:
        q = Q(q)
        return self.lo <= q <= self.hi

    def to_dict(self) -> dict:
        return {
            "lo": format_rational(self.lo),
            "hi": format_rational(self.hi),
            "width": format_rational(self.width),
            "exact_root": None if self.root is None else format_rational(self.root),
            "midpoint_decimal": to_decimal(self.midpoint),
        }


def bisect_exact(
    f: Callable[[Fraction], Fraction],
    lo: RationalLike,
    hi: RationalLike,
    eps: RationalLike,
) -> RootInterval:
    """Halve ``[lo, hi]`` until narrower than ``eps``, keeping a sign change.

    ``f`` must be exactly evaluable at rationals (polynomials or rational
    functions with rational coefficients), so every sign test is exact.
    """
    lo, hi, eps = Q(lo), Q(hi), Q(eps)
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    if not lo < hi:
        raise PreconditionError(f"need lo < hi, got [{lo}, {hi}]")
    s_lo, s_hi = sign(f(lo)), sign(f(hi))
    if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
        raise BracketError(
            f"f does not change sign strictly on [{lo}, {hi}] (signs {s_lo}, {s_hi})"
        )
    while hi - lo > eps:
        mid = (lo + hi) / 2
        s_mid = sign(f(mid))
        if s_mid == 0:
            return _bracket_exact_root(f, mid, min(eps, hi - lo) / 2, s_lo)
        if s_mid == s_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)


def _bracket_exact_root(f, root: Fraction, half: Fraction, s_left: int) -> RootInterval:
    # The zero sits strictly inside the current bracket, so shrinking `half`
    # keeps us inside it; a simple root shows opposite signs once close enough.
    for _ in range(200):
        a, b = root - half, root + half
        if sign(f(a)) == s_left and sign(f(b)) == -s_left:
            return RootInterval(a, b, root)
        half /= 2
    raise BracketError(f"zero at {root} is not a simple sign change")
