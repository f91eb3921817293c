"""Distributions <-> vertex-weighted hypergraphs, with the exact counting identities.

Going one way, a rational distribution becomes ``n*r`` weighted vertices
whose heavy k-sets form a hypergraph; the tail of the sum of k draws then
splits into distinct-vertex tuples (``k! |E|``) and tuples that repeat a
vertex (``N``). Going the other way, an optimal fractional cover of any
hypergraph becomes a distribution whose tail dominates the edge density.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .dist import DiscreteDistribution, iid_tail
from .formulas import clique_branch, union_branch
from .hypergraph import Hypergraph, clique, cov
from .lp import fractional_cover
from .numeric import ConsistencyError, PreconditionError, Q, RationalLike, binomial, format_rational

DEFAULT_MAX_ENUM = 2_000_000
DIRECT_TUPLE_LIMIT = 10_000_000

ZERO = Fraction(0)


class EnumerationLimitError(PreconditionError):
    pass


def max_enum(default: int = DEFAULT_MAX_ENUM) -> int:
    """Enumeration cap, overridable through ``TAILMATCH_MAX_ENUM``."""
    raw = os.environ.get("TAILMATCH_MAX_ENUM")
    if raw is None:
        return default
    try:
        value = int(raw)
    except ValueError as exc:
        raise PreconditionError(f"TAILMATCH_MAX_ENUM must be an integer, got {raw!r}") from exc
    if value < 1:
        raise PreconditionError("TAILMATCH_MAX_ENUM must be positive")
    return value


@dataclass(frozen=True)
class BridgeInstance:
    source: DiscreteDistribution
    k: int
    r: int
    n: int
    hypergraph: Hypergraph
    weights: tuple[Fraction, ...]  # weights[v - 1] is the weight of vertex v

    @property
    def vertex_count(self) -> int:
        return self.n * self.r

    def weight(self, v: int) -> Fraction:
        return self.weights[v - 1]

    def cover_size(self) -> Fraction:
        return sum(self.weights, ZERO)

    def sidecar(self) -> dict:
        return {
            "k": self.k,
            "r": self.r,
            "n": self.n,
            "weights": [format_rational(w) for w in self.weights],
            "source": self.source.to_list(),
        }

    def write(self, hypergraph_path, sidecar_path) -> None:
        self.hypergraph.write(hypergraph_path)
        with open(sidecar_path, "w") as fh:
            json.dump(self.sidecar(), fh)


def _integer_weights(weights: Sequence[Fraction]) -> tuple[list[int], int]:
    scale = math.lcm(*(w.denominator for w in weights)) if weights else 1
    return [int(w * scale) for w in weights], scale


def dist_to_hypergraph(
    d: DiscreteDistribution, k: int, n: int, cap: int | None = None
) -> BridgeInstance:
    """Replicate ``d`` on ``n*r`` vertices and keep every k-set of weight at least 1.

    ``r`` is the lcm of the probability denominators, so value ``a_j`` sits on
    exactly ``n * r * p_j`` vertices. Heavier values get the lower labels.
    """
    if k < 1 or n < 1:
        raise PreconditionError("k and n must be positive")
    cap = max_enum() if cap is None else cap
    r = d.denominator_lcm()
    weights: list[Fraction] = []
    for value, prob in sorted(d.atoms, reverse=True):
        weights.extend([value] * (n * int(r * prob)))
    size = len(weights)
    if binomial(size, k) > cap:
        raise EnumerationLimitError(
            f"C({size},{k}) = {binomial(size, k)} k-sets exceeds the enumeration cap {cap}"
        )
    ints, scale = _integer_weights(weights)
    edges = [
        tuple(i + 1 for i in combo)
        for combo in combinations(range(size), k)
        if sum(ints[i] for i in combo) >= scale
    ]
    return BridgeInstance(d, k, r, n, Hypergraph(size, k, tuple(edges)), tuple(weights))


def _set_partitions(items: list[int]) -> Iterable[list[list[int]]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def repeated_tuple_count(weights: Sequence[Fraction], k: int) -> int:
    """Ordered k-tuples of vertices with a repeated coordinate and weight sum >= 1.

    Sums over coordinate-equality patterns (set partitions of the k positions
    with some block of size >= 2), assigning distinct vertices to the blocks.
    """
    ints, scale = _integer_weights(list(weights))
    total = 0
    for pattern in _set_partitions(list(range(k))):
        if len(pattern) == k:
            continue
        mult = [len(block) for block in pattern]
        for verts in permutations(range(len(ints)), len(pattern)):
            if sum(m * ints[v] for m, v in zip(mult, verts)) >= scale:
                total += 1
    return total


@dataclass(frozen=True)
class TailIdentity:
    lhs: Fraction
    rhs: Fraction
    repeated: int
    edges: int
    vertices: int
    method: str

    def to_dict(self) -> dict:
        return {
            "lhs": format_rational(self.lhs),
            "rhs": format_rational(self.rhs),
            "N_n": self.repeated,
            "edges": self.edges,
            "vertices": self.vertices,
            "equal": self.lhs == self.rhs,
            "N_n_method": self.method,
        }


def tail_identity_check(b: BridgeInstance, k: int | None = None) -> TailIdentity:
    """Check ``P(sum >= 1) == (k!|E_n| + N_n) / (nr)^k`` exactly."""
    k = b.k if k is None else k
    if k != b.hypergraph.k:
        raise PreconditionError(f"instance was built for k={b.hypergraph.k}, not k={k}")
    size = b.vertex_count
    lhs = iid_tail(b.source, k, 1)
    distinct = math.factorial(k) * len(b.hypergraph)
    if size**k <= DIRECT_TUPLE_LIMIT:
        repeated = repeated_tuple_count(b.weights, k)
        method = "patterns"
    else:
        favourable = lhs * size**k
        if favourable.denominator != 1:
            raise ConsistencyError(f"tail times (nr)^k is not an integer: {favourable}")
        repeated = int(favourable) - distinct
        method = "complement"
    rhs = Fraction(distinct + repeated, size**k)
    if lhs != rhs:
        raise ConsistencyError(f"tail identity broken: P={lhs} but (k!|E|+N)/(nr)^k={rhs}")
    if repeated > binomial(k, 2) * size ** (k - 1):
        raise ConsistencyError("repeated-tuple count exceeds C(k,2) (nr)^(k-1)")
    return TailIdentity(lhs, rhs, repeated, len(b.hypergraph), size, method)


@dataclass(frozen=True)
class ForwardBound:
    density_term: Fraction
    tail: Fraction
    cover_mean: Fraction
    empirical: DiscreteDistribution

    def to_dict(self) -> dict:
        return {
            "density_term": format_rational(self.density_term),
            "tail": format_rational(self.tail),
            "cover_mean": format_rational(self.cover_mean),
            "empirical": self.empirical.to_list(),
            "holds": self.density_term <= self.tail,
        }


def hypergraph_to_tail_bound(h: Hypergraph, k: int | None = None) -> ForwardBound:
    """Turn an optimal fractional cover into i.i.d. vertex weights and compare.

    Drawing k uniform vertices lands on an edge with probability
    ``k!|E|/n^k``; every edge has cover weight at least 1, so that is at most
    the tail of the sum of the drawn weights.
    """
    k = h.k if k is None else k
    if k != h.k:
        raise PreconditionError(f"hypergraph is {h.k}-uniform, not {k}-uniform")
    if h.n < 1:
        raise PreconditionError("need at least one vertex")
    tau, cover = fractional_cover(h)
    per_vertex = Fraction(1, h.n)
    empirical = DiscreteDistribution.from_pairs((cover[v], per_vertex) for v in h.vertices)
    density = Fraction(math.factorial(k) * len(h), h.n**k)
    tail = iid_tail(empirical, k, 1)
    if density > tail:
        raise ConsistencyError(f"edge density term {density} exceeds cover tail {tail}")
    if empirical.mean() != tau / h.n:
        raise ConsistencyError("empirical mean differs from tau*/n")
    return ForwardBound(density, tail, tau / h.n, empirical)


@dataclass(frozen=True)
class ProbeRow:
    n: int
    parameter: int
    edges: int
    density: Fraction
    limit: Fraction
    cover_size: Fraction
    cover_verified: bool | None

    @property
    def gap(self) -> Fraction:
        return self.density - self.limit

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "parameter": self.parameter,
            "edges": self.edges,
            "density": format_rational(self.density),
            "limit": format_rational(self.limit),
            "gap": format_rational(self.gap),
            "cover_size": format_rational(self.cover_size),
            "cover_verified": self.cover_verified,
        }


def density_convergence_probe(
    family: str, k: int, x: RationalLike, n_list: Iterable[int], cap: int | None = None
) -> list[ProbeRow]:
    """Edge densities of Cov_{n,k}(floor(xn)) or Cl_{n,k}(floor(kxn)) against their limits.

    Edge counts come from binomials. When ``C(n,k)`` is within the cap the
    hypergraph is also built and the indicator cover (weight 1 on S, or 1/k
    on T) is checked edge by edge, certifying nu* <= xn.
    """
    x = Q(x)
    if k < 1 or not 0 <= x <= Fraction(1, k):
        raise PreconditionError(f"need k >= 1 and 0 <= x <= 1/k, got k={k}, x={x}")
    if family not in ("cov", "clique"):
        raise PreconditionError(f"family must be 'cov' or 'clique', got {family!r}")
    cap = max_enum() if cap is None else cap
    rows = []
    for n in n_list:
        if n < k:
            raise PreconditionError(f"n={n} smaller than k={k}")
        if family == "cov":
            param = math.floor(x * n)
            edges = binomial(n, k) - binomial(n - param, k)
            limit = union_branch(k, x)
            cover_size = Fraction(param)
            weight = {v: Fraction(1) for v in range(1, param + 1)}
        else:
            param = math.floor(k * x * n)
            edges = binomial(param, k)
            limit = clique_branch(k, x)
            cover_size = Fraction(param, k)
            weight = {v: Fraction(1, k) for v in range(1, param + 1)}
        if cover_size > x * n:
            raise ConsistencyError(f"cover size {cover_size} exceeds xn = {x * n}")
        verified = None
        if binomial(n, k) <= cap:
            if family == "cov":
                h = cov(n, k, param)
            else:
                h = clique(n, k, param) if param >= k else Hypergraph(n, k)
            if len(h) != edges:
                raise ConsistencyError("constructed edge count differs from the binomial count")
            verified = all(sum((weight.get(v, ZERO) for v in e), ZERO) >= 1 for e in h.edges)
            if not verified:
                raise ConsistencyError("indicator weights fail to cover the constructed hypergraph")
        rows.append(ProbeRow(n, param, edges, Fraction(edges, binomial(n, k)), limit, cover_size, verified))
    return rows
