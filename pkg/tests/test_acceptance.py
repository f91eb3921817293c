"""Exit criteria. Every comparison is exact unless a tolerance is stated inline."""

import math
import random
import time
from fractions import Fraction as F

import pytest

from tailmatch.bridge import density_convergence_probe, dist_to_hypergraph, hypergraph_to_tail_bound, tail_identity_check
from tailmatch.dist import DiscreteDistribution, iid_tail, samuels_vector, two_point_inv_k, two_point_one, vector_tail
from tailmatch.formulas import conjectured_m, erdos_bound, hoeffding_shrikhande_m2, x0, x1
from tailmatch.hypergraph import clique, cov, matching_number, random_hypergraph
from tailmatch.lp import verify_duality
from tailmatch.search import counterexample_hunt, grid_search_mk
from oracles import binom_product

pytestmark = pytest.mark.acceptance


def _random_instances():
    out = []
    for seed in range(100):
        rng = random.Random(seed)
        k = 2 + seed % 2
        n = rng.randint(k + 1, 10)
        m = rng.randint(1, math.comb(n, k))
        out.append(random_hypergraph(n, k, m, seed))
    return out


def _family_instances():
    out = []
    for k in (2, 3):
        for n in range(k, 13):
            out.extend(cov(n, k, s) for s in range(n + 1))
            out.extend(clique(n, k, t) for t in range(k, n + 1))
    return out


@pytest.fixture(scope="module")
def instances():
    return _random_instances() + _family_instances()


@pytest.fixture(scope="module")
def duality_reports(instances):
    start = time.perf_counter()
    reports = [verify_duality(h) for h in instances]
    return reports, time.perf_counter() - start


def test_criterion_1_hoeffding_shrikhande():
    for j in range(121):
        x = F(j, 200)
        assert conjectured_m(2, x).value == hoeffding_shrikhande_m2(x), x
    assert conjectured_m(2, F(2, 5)).value == F(16, 25)
    assert conjectured_m(2, F(1, 2)).value == 1


def test_criterion_2_breakpoints():
    iv = x0(2, F(1, 10**9))
    assert iv.width <= F(1, 10**9) and iv.contains(F(2, 5))
    tol = F(1, 10**5)
    for k, reported in ((3, F(27729, 10**5)), (4, F(21737, 10**5))):
        iv = x1(k, tol)
        assert iv.width <= tol
        # some point of the interval lies within 1e-5 of the 5-decimal value
        assert iv.lo <= reported + tol and iv.hi >= reported - tol, (k, iv)


def test_criterion_3_strong_duality(instances, duality_reports):
    reports, elapsed = duality_reports
    assert len(reports) == len(instances) >= 100
    for h, rep in zip(instances, reports):
        assert rep.nu_star == rep.tau_star
        assert rep.matching.is_feasible(h) and rep.cover.is_feasible(h)
    assert elapsed < 60, f"duality sweep took {elapsed:.1f}s"


def test_criterion_4_integral_below_fractional(instances, duality_reports):
    reports, _ = duality_reports
    for h, rep in zip(instances, reports):
        assert matching_number(h) <= rep.nu_star


def _random_distribution(rng):
    size = rng.randint(1, 3)
    grid = sorted({F(a, b) for b in range(1, 7) for a in range(b + 1)})
    values = rng.sample(grid, size)
    den = rng.randint(size, 6)
    cuts = sorted(rng.sample(range(1, den), size - 1))
    bounds = [0] + cuts + [den]
    return DiscreteDistribution(tuple((v, F(b - a, den)) for v, a, b in zip(values, bounds, bounds[1:])))


def test_criterion_5_lemma2_tail_identity():
    rng = random.Random(2015)
    checked = 0
    for _ in range(50):
        d = _random_distribution(rng)
        for k in (2, 3):
            for n in (1, 2):
                b = dist_to_hypergraph(d, k, n)
                ident = tail_identity_check(b)
                size = b.vertex_count
                assert ident.lhs == iid_tail(d, k, 1)
                assert ident.rhs == F(math.factorial(k) * len(b.hypergraph) + ident.repeated, size**k)
                assert ident.lhs == ident.rhs
                checked += 1
    assert checked == 200


def test_criterion_6_forward_bound(instances):
    for h in instances:
        fb = hypergraph_to_tail_bound(h)
        assert fb.density_term == F(math.factorial(h.k) * len(h), h.n**h.k)
        assert fb.density_term <= fb.tail


def test_criterion_7_witness_tails():
    for k in range(1, 7):
        for j in range(60 // k + 1):
            x = F(j, 60)
            assert iid_tail(two_point_one(x), k, 1) == 1 - (1 - x) ** k
            assert iid_tail(two_point_inv_k(k, x), k, 1) == (k * x) ** k
    for k in range(1, 6):
        for j in range(61):
            x = F(j, 60)
            for t in range(k):
                if t * x >= 1 or x > 1 - t * x:
                    continue
                assert vector_tail(samuels_vector(k, x, t), 1) == 1 - (1 - x / (1 - t * x)) ** (k - t)


def _on_grid(d, m, n_den):
    return all((v * m).denominator == 1 for v in d.values) and all((p * n_den).denominator == 1 for p in d.probs)


def test_criterion_8_grid_search_below_theorem():
    start = time.perf_counter()
    for x in (F(1, 10), F(1, 5), F(3, 10), F(1, 4), F(1, 8)):
        rep = grid_search_mk(3, x, 4, 8, 3)
        assert rep.exhausted
        assert rep.best_tail <= conjectured_m(3, x).value
        assert rep.best_dist.mean() <= x
        for w in (two_point_one(x), two_point_inv_k(3, x) if 3 * x <= 1 else None):
            if w is not None and _on_grid(w, 4, 8) and iid_tail(w, 3, 1) == rep.ceiling:
                assert rep.best_tail == rep.ceiling
    assert grid_search_mk(3, F(1, 4), 4, 8, 3).best_tail == F(37, 64)
    assert time.perf_counter() - start < 180


@pytest.mark.parametrize("k,s,n", [(2, 1, 5), (2, 2, 7), (3, 1, 8), (3, 2, 9)])
def test_criterion_9_erdos_bound(k, s, n):
    independent = max(binom_product(n, k) - binom_product(n - s, k), binom_product(k * s + k - 1, k))
    assert erdos_bound(n, k, s) == independent
    assert independent == {(2, 1, 5): 4, (2, 2, 7): 11, (3, 1, 8): 21, (3, 2, 9): 56}[(k, s, n)]
    rep = counterexample_hunt(k, s, n, 100, seed=0)
    assert rep.max_edges <= rep.bound


def test_criterion_10_convergence_probe():
    rows = density_convergence_probe("cov", 3, F(1, 5), [30, 60, 120])
    limit = F(61, 125)
    densities = [r.density for r in rows]
    assert densities[0] > densities[1] > densities[2] > limit
    for r in rows:
        assert r.limit == limit
        assert 0 < r.gap < F(3, r.n)
        assert r.cover_verified
