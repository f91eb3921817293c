"""k-uniform hypergraphs, the Cov/Cl extremal families and the matching number."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Sequence

from .numeric import PreconditionError, binomial

Edge = tuple[int, ...]


@dataclass(frozen=True)
class Hypergraph:
    """A k-uniform hypergraph on vertices ``1..n``.

    Edges keep their first-seen order (witness files index into it);
    duplicates are dropped silently.
    """

    n: int
    k: int
    edges: tuple[Edge, ...] = ()
    _masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise PreconditionError(f"vertex count must be >= 0, got {self.n}")
        if self.k < 1:
            raise PreconditionError(f"uniformity must be >= 1, got {self.k}")
        seen: dict[Edge, None] = {}
        for raw in self.edges:
            edge = tuple(sorted(int(v) for v in raw))
            if len(edge) != self.k or len(set(edge)) != self.k:
                raise PreconditionError(f"edge {raw!r} does not have {self.k} distinct vertices")
            if edge[0] < 1 or edge[-1] > self.n:
                raise PreconditionError(f"edge {raw!r} has a vertex outside 1..{self.n}")
            seen.setdefault(edge, None)
        edges = tuple(seen)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "_masks", tuple(_mask(e) for e in edges))

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def with_edge(self, edge: Sequence[int]) -> "Hypergraph":
        return Hypergraph(self.n, self.k, self.edges + (tuple(edge),))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines.extend(" ".join(map(str, e)) for e in self.edges)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Hypergraph":
        rows = []
        for line in text.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError as exc:
                raise PreconditionError(f"bad hypergraph line {line!r}") from exc
        if not rows or len(rows[0]) != 2:
            raise PreconditionError("hypergraph text must start with a line 'n k'")
        (n, k), edge_rows = rows[0], rows[1:]
        return cls(n, k, tuple(tuple(r) for r in edge_rows))

    def write(self, path: str | Path) -> None:
        Path(path).write_text(self.to_text())

    @classmethod
    def read(cls, path: str | Path) -> "Hypergraph":
        return cls.from_text(Path(path).read_text())


def _mask(edge: Iterable[int]) -> int:
    m = 0
    for v in edge:
        m |= 1 << v
    return m


def cov(n: int, k: int, s: int) -> Hypergraph:
    """All k-subsets of ``1..n`` meeting ``S = {1..s}``."""
    if not (0 <= s <= n and 1 <= k <= n):
        raise PreconditionError(f"cov needs 0 <= s <= n and 1 <= k <= n, got n={n}, k={k}, s={s}")
    edges = tuple(e for e in combinations(range(1, n + 1), k) if e[0] <= s)
    return Hypergraph(n, k, edges)


def clique(n: int, k: int, t: int) -> Hypergraph:
    """All k-subsets of ``T = {1..t}`` inside a vertex set of size n."""
    if not (1 <= k <= t <= n):
        raise PreconditionError(f"clique needs 1 <= k <= t <= n, got n={n}, k={k}, t={t}")
    return Hypergraph(n, k, tuple(combinations(range(1, t + 1), k)))


def random_hypergraph(n: int, k: int, edge_count: int, seed: int) -> Hypergraph:
    """Uniform random edge set of the given size; edges listed in lexicographic order."""
    total = binomial(n, k)
    if not 0 <= edge_count <= total:
        raise PreconditionError(f"edge_count {edge_count} outside 0..C({n},{k})={total}")
    rng = random.Random(seed)
    pool = list(combinations(range(1, n + 1), k))
    chosen = sorted(rng.sample(range(total), edge_count))
    return Hypergraph(n, k, tuple(pool[i] for i in chosen))


def matching_number(h: Hypergraph, target: int | None = None) -> int:
    """Exact size of a largest family of pairwise disjoint edges.

    Branch and bound on the lowest vertex still covered by a live edge:
    either one of its edges joins the matching or the vertex is discarded.
    With ``target`` the search stops as soon as a matching of that size is
    found, so the return value is then only ``min(nu, target)``-exact.
    """
    k = h.k
    best = 0
    stop = target if target is not None else len(h.edges) + 1

    def live_vertices(masks: list[int]) -> int:
        u = 0
        for m in masks:
            u |= m
        return u

    def search(masks: list[int], size: int) -> None:
        nonlocal best
        if size > best:
            best = size
        if best >= stop or not masks:
            return
        union = live_vertices(masks)
        bound = min(len(masks), bin(union).count("1") // k)
        if size + bound <= best:
            return
        low = union & -union
        with_v = [m for m in masks if m & low]
        without_v = [m for m in masks if not m & low]
        for m in with_v:
            search([e for e in without_v if not e & m], size + 1)
            if best >= stop:
                return
        search(without_v, size)

    search(list(h._masks), 0)
    return best
