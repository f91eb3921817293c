"""Fractional matching and fractional vertex cover by exact simplex.

Both programs are solved from scratch by :func:`simplex_max`; the cover is
never read off the matching tableau, so ``nu* == tau*`` is a real check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .hypergraph import Hypergraph
from .numeric import ConsistencyError, Q, format_rational

MATCHING = "fractional-matching"
COVER = "fractional-cover"

ZERO = Fraction(0)
ONE = Fraction(1)


class Unbounded(ConsistencyError):
    pass


class Infeasible(ConsistencyError):
    pass


@dataclass(frozen=True)
class LPResult:
    value: Fraction
    x: tuple[Fraction, ...]
    pivots: int


def simplex_max(
    c: Sequence[Fraction | int],
    A: Sequence[Sequence[Fraction | int]],
    b: Sequence[Fraction | int],
) -> LPResult:
    """Maximise ``c.x`` subject to ``A x <= b``, ``x >= 0``, exactly.

    Dense dictionary form (one column per nonbasic variable) with Bland's
    smallest-index rule in both phases. Negative entries of ``b`` trigger
    the auxiliary-variable phase one.
    """
    m, n = len(A), len(c)
    T = [[Q(a) for a in row] for row in A]
    rhs = [Q(v) for v in b]
    for row in T:
        if len(row) != n:
            raise ValueError("constraint row length does not match objective")
    # variables 0..n-1 original, n..n+m-1 slacks, n+m auxiliary
    nonbasic = list(range(n))
    basic = list(range(n, n + m))
    pivots = 0

    def pivot(r: int, s: int, obj: list[Fraction], z: list[Fraction]) -> None:
        nonlocal pivots
        pivots += 1
        row = T[r]
        p = row[s]
        inv = ONE / p
        row[s] = ONE
        for j in range(len(row)):
            if row[j]:
                row[j] *= inv
        rhs[r] *= inv
        for i in range(m):
            if i == r:
                continue
            f = T[i][s]
            if not f:
                continue
            Ti = T[i]
            Ti[s] = ZERO
            for j, a in enumerate(row):
                if a:
                    Ti[j] -= f * a
            rhs[i] -= f * rhs[r]
        f = obj[s]
        if f:
            obj[s] = ZERO
            for j, a in enumerate(row):
                if a:
                    obj[j] -= f * a
            z[0] += f * rhs[r]
        basic[r], nonbasic[s] = nonbasic[s], basic[r]

    def run(obj: list[Fraction], z: list[Fraction]) -> None:
        while True:
            entering = [j for j in range(len(nonbasic)) if obj[j] > 0]
            if not entering:
                return
            s = min(entering, key=lambda j: nonbasic[j])
            best = None
            for i in range(m):
                a = T[i][s]
                if a > 0:
                    key = (rhs[i] / a, basic[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise Unbounded("objective unbounded")
            pivot(best[1], s, obj, z)

    if m and min(rhs) < 0:
        aux = n + m
        for row in T:
            row.append(-ONE)
        nonbasic.append(aux)
        s = len(nonbasic) - 1
        obj1 = [ZERO] * (len(nonbasic) - 1) + [-ONE]
        z1 = [ZERO]
        r = min(range(m), key=lambda i: (rhs[i], basic[i]))
        pivot(r, s, obj1, z1)
        run(obj1, z1)
        if z1[0] < 0:
            raise Infeasible("constraints are infeasible")
        if aux in basic:
            r = basic.index(aux)
            s = next((j for j in range(len(nonbasic)) if T[r][j]), None)
            if s is None:
                # redundant row: aux is pinned at zero, drop the row
                del T[r], rhs[r], basic[r]
                m -= 1
            else:
                pivot(r, s, obj1, z1)
        s = nonbasic.index(aux)
        for row in T:
            del row[s]
        del nonbasic[s]

    # objective in terms of the current nonbasic variables
    obj = [ZERO] * len(nonbasic)
    z = [ZERO]
    pos = {v: j for j, v in enumerate(nonbasic)}
    for v in range(n):
        cv = Q(c[v])
        if not cv:
            continue
        if v in pos:
            obj[pos[v]] += cv
        else:
            i = basic.index(v)
            z[0] += cv * rhs[i]
            for j, a in enumerate(T[i]):
                if a:
                    obj[j] -= cv * a
    run(obj, z)

    x = [ZERO] * n
    for i, v in enumerate(basic):
        if v < n:
            x[v] = rhs[i]
    value = sum((Q(ci) * xi for ci, xi in zip(c, x)), ZERO)
    if value != z[0]:
        raise ConsistencyError("tableau objective disagrees with recomputed objective")
    return LPResult(value, tuple(x), pivots)


@dataclass(frozen=True)
class WeightFunction:
    """Rational weights on edges (matching) or vertices (cover).

    Keys are 1-based edge positions for a matching and vertex labels for
    a cover. Zero weights are omitted from ``carrier``.
    """

    role: str
    carrier: dict[int, Fraction]

    @property
    def size(self) -> Fraction:
        return sum(self.carrier.values(), ZERO)

    def __getitem__(self, index: int) -> Fraction:
        return self.carrier.get(index, ZERO)

    def violations(self, h: Hypergraph) -> list[str]:
        bad = [f"weight {w} at {i} outside [0,1]" for i, w in self.carrier.items() if not 0 <= w <= 1]
        if self.role == MATCHING:
            load = {v: ZERO for v in h.vertices}
            for i, e in enumerate(h.edges, start=1):
                for v in e:
                    load[v] += self[i]
            bad += [f"vertex {v} load {w} > 1" for v, w in load.items() if w > 1]
            bad += [f"edge index {i} not in hypergraph" for i in self.carrier if not 1 <= i <= len(h)]
        elif self.role == COVER:
            for e in h.edges:
                total = sum((self[v] for v in e), ZERO)
                if total < 1:
                    bad.append(f"edge {e} covered only {total}")
            bad += [f"vertex {v} not in hypergraph" for v in self.carrier if not 1 <= v <= h.n]
        else:
            bad.append(f"unknown role {self.role!r}")
        return bad

    def is_feasible(self, h: Hypergraph) -> bool:
        return not self.violations(h)

    def to_dict(self) -> dict:
        return {
            "role": self.role,
            "size": format_rational(self.size),
            "weights": {str(i): format_rational(w) for i, w in sorted(self.carrier.items())},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "WeightFunction":
        carrier = {int(i): Q(w) for i, w in data["weights"].items()}
        wf = cls(data["role"], {i: w for i, w in carrier.items() if w})
        if "size" in data and Q(data["size"]) != wf.size:
            raise ValueError("stated size does not match the sum of weights")
        return wf


def _carrier(values: Sequence[Fraction], offset: int = 1) -> dict[int, Fraction]:
    out = {}
    for i, w in enumerate(values, start=offset):
        if not 0 <= w <= 1:
            raise ConsistencyError(f"optimal weight {w} at index {i} outside [0,1]")
        if w:
            out[i] = w
    return out


def fractional_matching(h: Hypergraph) -> tuple[Fraction, WeightFunction]:
    """nu*(H): maximise total edge weight with every vertex load at most 1."""
    if not h.edges:
        return ZERO, WeightFunction(MATCHING, {})
    A = [[ONE if v in e else ZERO for e in h.edges] for v in h.vertices]
    res = simplex_max([ONE] * len(h.edges), A, [ONE] * h.n)
    w = WeightFunction(MATCHING, _carrier(res.x))
    return res.value, w


def fractional_cover(h: Hypergraph) -> tuple[Fraction, WeightFunction]:
    """tau*(H): minimise total vertex weight with every edge covered at least once."""
    if not h.edges:
        return ZERO, WeightFunction(COVER, {})
    A = [[-ONE if v in e else ZERO for v in h.vertices] for e in h.edges]
    res = simplex_max([-ONE] * h.n, A, [-ONE] * len(h.edges))
    w = WeightFunction(COVER, _carrier(res.x))
    return -res.value, w


@dataclass(frozen=True)
class DualityReport:
    nu_star: Fraction
    tau_star: Fraction
    matching: WeightFunction
    cover: WeightFunction

    @property
    def equal(self) -> bool:
        return self.nu_star == self.tau_star

    def to_dict(self) -> dict:
        return {
            "nu_star": format_rational(self.nu_star),
            "tau_star": format_rational(self.tau_star),
            "equal": self.equal,
            "matching": self.matching.to_dict(),
            "cover": self.cover.to_dict(),
        }


def verify_duality(h: Hypergraph) -> DualityReport:
    """Solve both programs independently and insist on exact agreement."""
    nu, matching = fractional_matching(h)
    tau, cover = fractional_cover(h)
    problems = matching.violations(h) + cover.violations(h)
    if problems:
        raise ConsistencyError("infeasible LP witness: " + "; ".join(problems[:5]))
    if matching.size != nu or cover.size != tau:
        raise ConsistencyError("witness size differs from reported optimum")
    if nu != tau:
        raise ConsistencyError(f"strong duality violated: nu*={nu} tau*={tau}")
    return DualityReport(nu, tau, matching, cover)
