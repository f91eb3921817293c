"""Exhaustive grid search for large tails, and probes of the extremal witnesses."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterator

from .bridge import max_enum
from .dist import DiscreteDistribution, iid_tail, two_point_inv_k, two_point_one
from .formulas import conjectured_m, erdos_bound
from .hypergraph import Hypergraph, matching_number
from .numeric import PreconditionError, Q, RationalLike, binomial, format_rational

DEFAULT_GRID_BUDGET = 2_000_000


def _serial(d: DiscreteDistribution) -> str:
    return json.dumps(d.to_list())


def proven_regime(k: int, x: Fraction) -> bool:
    """Whether the conjectured value is a theorem at (k, x)."""
    return k in (1, 2, 3) or (k >= 5 and x < Fraction(1, 2 * k - 1))


@dataclass(frozen=True)
class SearchReport:
    k: int
    x: Fraction
    best_tail: Fraction
    best_dist: DiscreteDistribution
    ceiling: Fraction
    m: int
    n_den: int
    max_support: int
    exhausted: bool
    candidates: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "x": format_rational(self.x),
            "grid": {"m": self.m, "n_den": self.n_den, "max_support": self.max_support},
            "best_tail": format_rational(self.best_tail),
            "ceiling": format_rational(self.ceiling),
            "best_dist": self.best_dist.to_list(),
            "exhausted": self.exhausted,
            "candidates": self.candidates,
        }


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of ``parts`` positive integers summing to ``total``."""
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def grid_size(m: int, n_den: int, max_support: int) -> int:
    return sum(binomial(m + 1, s) * binomial(n_den - 1, s - 1) for s in range(1, max_support + 1))


def grid_distributions(m: int, n_den: int, max_support: int) -> Iterator[DiscreteDistribution]:
    """Every distribution on {0, 1/m, ..., 1} with probabilities in (1/n_den)Z and support <= max_support."""
    for size in range(1, max_support + 1):
        for support in combinations(range(m + 1), size):
            for weights in _compositions(n_den, size):
                yield DiscreteDistribution(
                    tuple((Fraction(v, m), Fraction(w, n_den)) for v, w in zip(support, weights))
                )


def grid_search_mk(
    k: int,
    x: RationalLike,
    m: int,
    n_den: int,
    max_support: int,
    budget: int | None = None,
) -> SearchReport:
    """Largest exact tail over a grid of distributions with mean at most x.

    Ties go to the lexicographically smallest serialised distribution. If
    the grid is larger than ``budget`` only its first ``budget`` members are
    scanned and the report says ``exhausted=False``.
    """
    x = Q(x)
    if k < 1 or m < 1 or n_den < 1:
        raise PreconditionError("k, m and n_den must be positive")
    if not 1 <= max_support <= m + 1:
        raise PreconditionError(f"max_support must lie in 1..{m + 1}")
    if x < 0:
        raise PreconditionError("x must be nonnegative")
    budget = max_enum(DEFAULT_GRID_BUDGET) if budget is None else budget
    total = grid_size(m, n_den, max_support)
    best_key = None
    best = None
    seen = 0
    for d in islice(grid_distributions(m, n_den, max_support), budget):
        seen += 1
        if d.mean() > x:
            continue
        tail = iid_tail(d, k, 1)
        key = (-tail, _serial(d))
        if best_key is None or key < best_key:
            best_key, best = key, d
    if best is None:
        # only reachable with a zero budget; the point mass at 0 is always feasible
        best = DiscreteDistribution.point(0)
    return SearchReport(
        k=k,
        x=x,
        best_tail=iid_tail(best, k, 1),
        best_dist=best,
        ceiling=conjectured_m(k, x).value,
        m=m,
        n_den=n_den,
        max_support=max_support,
        exhausted=seen == total,
        candidates=seen,
    )


@dataclass(frozen=True)
class HuntReport:
    k: int
    s: int
    n: int
    trials: int
    seed: int
    max_edges: int
    bound: int
    best_edges: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def exceeded(self) -> bool:
        return self.max_edges > self.bound

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "s": self.s,
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "max_edges": self.max_edges,
            "erdos_bound": self.bound,
            "exceeded": self.exceeded,
            "best_edges": [list(e) for e in self.best_edges],
        }


def _fits(edges: list[tuple[int, ...]], candidate: tuple[int, ...], n: int, k: int, s: int) -> bool:
    # adding e lifts nu above s iff s disjoint edges already avoid e
    blocked = set(candidate)
    rest = [e for e in edges if blocked.isdisjoint(e)]
    return matching_number(Hypergraph(n, k, tuple(rest)), target=s) < s


def counterexample_hunt(k: int, s: int, n: int, trials: int, seed: int) -> HuntReport:
    """Greedy random densification keeping the matching number at most s.

    Each trial walks all k-subsets in a seeded random order and keeps an
    edge whenever the matching number stays at most ``s``.
    """
    bound = erdos_bound(n, k, s)
    if trials < 1:
        raise PreconditionError("trials must be positive")
    pool = list(combinations(range(1, n + 1), k))
    best: list[tuple[int, ...]] = []
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        order = pool[:]
        rng.shuffle(order)
        edges: list[tuple[int, ...]] = []
        for e in order:
            if _fits(edges, e, n, k, s):
                edges.append(e)
        if len(edges) > len(best):
            best = edges
    return HuntReport(k, s, n, trials, seed, len(best), bound, tuple(sorted(best)))


@dataclass(frozen=True)
class Perturbation:
    description: str
    dist: DiscreteDistribution
    tail: Fraction

    def to_dict(self) -> dict:
        return {"move": self.description, "dist": self.dist.to_list(), "tail": format_rational(self.tail)}


@dataclass(frozen=True)
class PerturbationReport:
    k: int
    x: Fraction
    d: int
    witness: str
    base: DiscreteDistribution
    base_tail: Fraction
    tried: int
    improving: tuple[Perturbation, ...]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "x": format_rational(self.x),
            "d": self.d,
            "witness": self.witness,
            "base": self.base.to_list(),
            "base_tail": format_rational(self.base_tail),
            "tried": self.tried,
            "improving": [p.to_dict() for p in self.improving],
        }


def _perturbations(base: DiscreteDistribution, step: Fraction) -> Iterator[tuple[str, list]]:
    atoms = list(base.atoms)
    for i, (v, p) in enumerate(atoms):
        for delta in (step, -step):
            w = v + delta
            if 0 <= w <= 1:
                moved = atoms[:i] + [(w, p)] + atoms[i + 1 :]
                yield f"value {v} -> {w}", moved
        if p < step:
            continue
        shrunk = atoms[:i] + [(v, p - step)] + atoms[i + 1 :]
        for j, (u, _) in enumerate(atoms):
            if j != i:
                yield f"mass {step} from {v} to {u}", shrunk + [(u, step)]
        for delta in (step, -step):
            w = v + delta
            if 0 <= w <= 1:
                yield f"mass {step} from {v} to new value {w}", shrunk + [(w, step)]


def witness_optimality_probe(k: int, x: RationalLike, d: int, witness: str = "one") -> PerturbationReport:
    """Try every single-atom value or mass move of size 1/d on a witness.

    ``witness`` is ``"one"`` for mass x at 1 or ``"inv_k"`` for mass kx at
    1/k. Moves that break mean <= x or leave [0,1] are skipped; the report
    lists the moves that strictly raise the tail.
    """
    x = Q(x)
    if d < 2:
        raise PreconditionError("perturbation denominator must be at least 2")
    if witness == "one":
        base = two_point_one(x)
    elif witness == "inv_k":
        base = two_point_inv_k(k, x)
    else:
        raise PreconditionError(f"witness must be 'one' or 'inv_k', got {witness!r}")
    base_tail = iid_tail(base, k, 1)
    step = Fraction(1, d)
    tried = 0
    better = []
    for label, pairs in _perturbations(base, step):
        cand = DiscreteDistribution.from_pairs(pairs)
        if cand.mean() > x:
            continue
        tried += 1
        tail = iid_tail(cand, k, 1)
        if tail > base_tail:
            better.append(Perturbation(label, cand, tail))
    return PerturbationReport(k, x, d, witness, base, base_tail, tried, tuple(better))
