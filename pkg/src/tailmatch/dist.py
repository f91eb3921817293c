"""Finite distributions on [0, 1] with exact rational data.

Tails of sums are computed by convolution over partial sums, with every
partial sum at or above the threshold folded into one absorbing state
(values are nonnegative, so such a sum never drops back below it).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .numeric import PreconditionError, Q, RationalLike, format_rational

ZERO = Fraction(0)
ONE = Fraction(1)

Atom = tuple[Fraction, Fraction]


@dataclass(frozen=True)
class DiscreteDistribution:
    """Atoms ``(value, prob)`` sorted by strictly increasing value.

    Zero-probability atoms are dropped on construction; duplicate values
    are an error here (use :meth:`from_pairs` to merge them).
    """

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        cleaned = []
        for value, prob in self.atoms:
            value, prob = Q(value), Q(prob)
            if not 0 <= value <= 1:
                raise PreconditionError(f"value {value} outside [0,1]")
            if not 0 <= prob <= 1:
                raise PreconditionError(f"probability {prob} outside [0,1]")
            if prob:
                cleaned.append((value, prob))
        cleaned.sort()
        values = [v for v, _ in cleaned]
        if len(set(values)) != len(values):
            raise PreconditionError("atom values must be distinct")
        total = sum((p for _, p in cleaned), ZERO)
        if total != 1:
            raise PreconditionError(f"probabilities sum to {total}, not 1")
        object.__setattr__(self, "atoms", tuple(cleaned))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[RationalLike, RationalLike]]) -> "DiscreteDistribution":
        merged: dict[Fraction, Fraction] = {}
        for value, prob in pairs:
            value = Q(value)
            merged[value] = merged.get(value, ZERO) + Q(prob)
        return cls(tuple(merged.items()))

    @classmethod
    def point(cls, value: RationalLike) -> "DiscreteDistribution":
        return cls(((Q(value), ONE),))

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(v for v, _ in self.atoms)

    @property
    def probs(self) -> tuple[Fraction, ...]:
        return tuple(p for _, p in self.atoms)

    def support(self) -> tuple[Fraction, ...]:
        return self.values

    def mean(self) -> Fraction:
        return sum((v * p for v, p in self.atoms), ZERO)

    def scale(self, factor: RationalLike) -> "DiscreteDistribution":
        """Multiply every value by ``factor``; leaving [0,1] is an error, not a cap."""
        factor = Q(factor)
        if factor <= 0:
            raise PreconditionError("scale factor must be positive")
        scaled = [(v * factor, p) for v, p in self.atoms]
        if any(v > 1 for v, _ in scaled):
            raise PreconditionError("scaling pushes a value above 1; capping would change the tail event")
        return DiscreteDistribution(tuple(scaled))

    def denominator_lcm(self) -> int:
        return math.lcm(*(p.denominator for p in self.probs))

    def to_list(self) -> list[list[str]]:
        return [[format_rational(v), format_rational(p)] for v, p in self.atoms]

    def to_json(self) -> str:
        return json.dumps(self.to_list())

    @classmethod
    def from_list(cls, data: Sequence[Sequence[RationalLike]]) -> "DiscreteDistribution":
        pairs = []
        for item in data:
            if len(item) != 2:
                raise PreconditionError(f"distribution entry {item!r} is not a [value, prob] pair")
            pairs.append((Q(item[0]), Q(item[1])))
        return cls(tuple(pairs))

    @classmethod
    def from_json(cls, text: str) -> "DiscreteDistribution":
        return cls.from_list(json.loads(text))

    def __str__(self) -> str:
        inner = ", ".join(f"{format_rational(v)}: {format_rational(p)}" for v, p in self.atoms)
        return "{" + inner + "}"


@dataclass(frozen=True)
class IndependentVector:
    components: tuple[DiscreteDistribution, ...]

    def __len__(self) -> int:
        return len(self.components)

    def means(self) -> tuple[Fraction, ...]:
        return tuple(d.mean() for d in self.components)

    def to_list(self) -> list[list[list[str]]]:
        return [d.to_list() for d in self.components]


def _convolve_capped(components: Iterable[DiscreteDistribution], threshold: Fraction) -> Fraction:
    states: dict[Fraction, Fraction] = {ZERO: ONE}
    hit = ZERO
    for d in components:
        nxt: dict[Fraction, Fraction] = {}
        for s, ps in states.items():
            for v, pv in d.atoms:
                t = s + v
                if t >= threshold:
                    hit += ps * pv
                else:
                    nxt[t] = nxt.get(t, ZERO) + ps * pv
        states = nxt
    return hit


def iid_tail(d: DiscreteDistribution, k: int, threshold: RationalLike = 1) -> Fraction:
    """Exact ``P(X_1 + ... + X_k >= threshold)`` for i.i.d. copies of ``d``."""
    threshold = Q(threshold)
    if k < 1:
        raise PreconditionError("k must be at least 1")
    if threshold <= 0:
        raise PreconditionError("threshold must be positive")
    return _convolve_capped([d] * k, threshold)


def vector_tail(vec: IndependentVector, threshold: RationalLike = 1) -> Fraction:
    threshold = Q(threshold)
    if threshold <= 0:
        raise PreconditionError("threshold must be positive")
    return _convolve_capped(vec.components, threshold)


def two_point_one(x: RationalLike) -> DiscreteDistribution:
    """Mass ``x`` at 1, the rest at 0."""
    x = Q(x)
    if not 0 <= x <= 1:
        raise PreconditionError(f"two_point_one needs 0 <= x <= 1, got {x}")
    return DiscreteDistribution(((ZERO, 1 - x), (ONE, x)))


def two_point_inv_k(k: int, x: RationalLike) -> DiscreteDistribution:
    """Mass ``kx`` at ``1/k``, the rest at 0."""
    x = Q(x)
    if k < 1 or not 0 <= k * x <= 1:
        raise PreconditionError(f"two_point_inv_k needs k >= 1 and 0 <= kx <= 1, got k={k}, x={x}")
    return DiscreteDistribution(((ZERO, 1 - k * x), (Fraction(1, k), k * x)))


def samuels_vector(k: int, x: RationalLike, t: int) -> IndependentVector:
    """``t`` constants equal to ``x`` followed by ``k - t`` copies of {0, 1 - tx}."""
    x = Q(x)
    if not 0 <= t <= k - 1:
        raise PreconditionError(f"need 0 <= t <= k-1, got t={t}, k={k}")
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    top = 1 - t * x
    if top <= 0 or x > top:
        raise PreconditionError(f"x/(1-tx) must lie in [0,1] (k={k}, x={x}, t={t})")
    p = x / top
    free = DiscreteDistribution(((ZERO, 1 - p), (top, p)))
    return IndependentVector((DiscreteDistribution.point(x),) * t + (free,) * (k - t))


def round_values(d: DiscreteDistribution, m: int) -> DiscreteDistribution:
    """Push each value ``a`` up to ``min(ceil(m a)/m, 1)``, merging collisions."""
    if m < 1:
        raise PreconditionError("m must be a positive integer")
    return DiscreteDistribution.from_pairs(
        (min(Fraction(math.ceil(m * v), m), ONE), p) for v, p in d.atoms
    )


class ProbabilityRoundingError(PreconditionError):
    def __init__(self, n: int, residual: Fraction, minimal_n: int):
        self.n = n
        self.residual = residual
        self.minimal_n = minimal_n
        super().__init__(
            f"n={n} too small: residual first-atom probability would be {residual}; "
            f"minimal usable n is {minimal_n}"
        )


def _round_up_probs(probs: Sequence[Fraction], n: int) -> list[Fraction]:
    return [Fraction(math.ceil(n * p), n) for p in probs]


def round_probs(d: DiscreteDistribution, n: int) -> DiscreteDistribution:
    """Round probabilities of atoms 2.. up to multiples of ``1/n``; atom 1 takes the rest.

    Atom 1 is the smallest value (atoms are kept in ascending order).
    """
    if n < 1:
        raise PreconditionError("n must be a positive integer")
    values, probs = d.values, d.probs
    rest = _round_up_probs(probs[1:], n)
    residual = 1 - sum(rest, ZERO)
    if residual <= 0:
        raise ProbabilityRoundingError(n, residual, _minimal_round_n(probs))
    return DiscreteDistribution(tuple(zip(values, [residual] + rest)))


def _minimal_round_n(probs: Sequence[Fraction]) -> int:
    # any n > (atoms - 1) / p_1 leaves a positive residual, so the scan ends
    limit = math.floor((len(probs) - 1) / probs[0]) + 1
    for n in range(1, limit + 1):
        if 1 - sum(_round_up_probs(probs[1:], n), ZERO) > 0:
            return n
    return limit
