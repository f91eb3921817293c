from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from tailmatch.dist import (
    DiscreteDistribution,
    IndependentVector,
    ProbabilityRoundingError,
    iid_tail,
    round_probs,
    round_values,
    samuels_vector,
    two_point_inv_k,
    two_point_one,
    vector_tail,
)
from tailmatch.numeric import PreconditionError
from oracles import brute_tail, brute_vector_tail


def D(*pairs):
    return DiscreteDistribution.from_list([[str(v), str(p)] for v, p in pairs])


@st.composite
def distributions(draw, max_atoms=4, max_den=12):
    size = draw(st.integers(1, max_atoms))
    values = draw(st.lists(st.fractions(0, 1, max_denominator=max_den), min_size=size, max_size=size, unique=True))
    weights = draw(st.lists(st.integers(1, 9), min_size=size, max_size=size))
    total = sum(weights)
    return DiscreteDistribution(tuple((v, F(w, total)) for v, w in zip(values, weights)))


def test_iid_tail_examples():
    assert iid_tail(D((0, "3/4"), (1, "1/4")), 3, 1) == F(37, 64)
    assert iid_tail(D((0, "7/10"), ("1/3", "3/10")), 3, 1) == F(27, 1000)
    assert iid_tail(D((1, 1)), 1, 1) == 1


def test_vector_tail_examples():
    assert vector_tail(samuels_vector(3, F(1, 5), 1)) == F(7, 16)
    assert vector_tail(samuels_vector(3, F(1, 5), 0)) == F(61, 125)
    assert vector_tail(IndependentVector((DiscreteDistribution.point(0),) * 3)) == 0


def test_witness_constructions():
    assert two_point_one(F(1, 4)).mean() == F(1, 4)
    assert two_point_inv_k(3, F(1, 10)) == D((0, "7/10"), ("1/3", "3/10"))
    vec = samuels_vector(3, F(1, 5), 2)
    assert vec.components[:2] == (DiscreteDistribution.point(F(1, 5)),) * 2
    assert vec.components[2] == D((0, "2/3"), ("3/5", "1/3"))
    assert vec.means() == (F(1, 5),) * 3


@pytest.mark.parametrize(
    "call",
    [
        lambda: two_point_one(F(3, 2)),
        lambda: two_point_inv_k(3, F(1, 2)),
        lambda: samuels_vector(3, F(1, 5), 3),
        lambda: samuels_vector(3, F(2, 3), 1),
    ],
)
def test_witness_ranges(call):
    with pytest.raises(PreconditionError):
        call()


def test_witness_tails_closed_forms():
    for k in range(1, 7):
        for j in range(0, 61):
            x = F(j, 60)
            assert iid_tail(two_point_one(x), k) == 1 - (1 - x) ** k
            if k * x <= 1:
                assert iid_tail(two_point_inv_k(k, x), k) == (k * x) ** k


def test_samuels_vector_tail_per_term():
    for k in range(1, 6):
        for j in range(0, 31):
            x = F(j, 30 * k)
            for t in range(k):
                if t * x >= 1 or x > 1 - t * x:
                    continue
                assert vector_tail(samuels_vector(k, x, t)) == 1 - (1 - x / (1 - t * x)) ** (k - t)


@settings(max_examples=200, deadline=None)
@given(distributions(), st.integers(1, 4), st.fractions(F(1, 4), F(3), max_denominator=12))
def test_iid_tail_matches_enumeration(d, k, threshold):
    assert iid_tail(d, k, threshold) == brute_tail(d.atoms, k, threshold)


@settings(max_examples=60, deadline=None)
@given(st.lists(distributions(max_atoms=3), min_size=1, max_size=4))
def test_vector_tail_matches_enumeration(components):
    vec = IndependentVector(tuple(components))
    assert vector_tail(vec) == brute_vector_tail([c.atoms for c in components])


@settings(max_examples=100, deadline=None)
@given(distributions(), st.integers(1, 4), st.fractions(F(1), F(5), max_denominator=7))
def test_rescaling_identity(d, k, t):
    # P(sum >= t) = P(sum/t >= 1); t >= 1 keeps scaled values inside [0,1]
    assert iid_tail(d, k, t) == iid_tail(d.scale(1 / t), k, 1)


def test_scale_refuses_to_cap():
    with pytest.raises(PreconditionError):
        D((0, "1/2"), ("3/4", "1/2")).scale(2)


def test_construction_rules():
    d = DiscreteDistribution(((F(1), F(1, 2)), (F(0), F(1, 2)), (F(1, 2), F(0))))
    assert d.atoms == ((0, F(1, 2)), (1, F(1, 2)))
    with pytest.raises(PreconditionError):
        DiscreteDistribution(((F(0), F(1, 2)), (F(0), F(1, 2))))
    with pytest.raises(PreconditionError):
        D((0, "1/2"), (1, "1/3"))
    with pytest.raises(PreconditionError):
        D(("3/2", 1))
    assert DiscreteDistribution.from_pairs([(0, F(1, 4)), (0, F(1, 4)), (1, F(1, 2))]) == D((0, "1/2"), (1, "1/2"))


def test_json_round_trip():
    d = D((0, "7/10"), ("1/3", "3/10"))
    assert d.to_json() == '[["0", "7/10"], ["1/3", "3/10"]]'
    assert DiscreteDistribution.from_json(d.to_json()) == d


def test_round_values_examples():
    d = D((0, "1/2"), ("3/10", "1/4"), ("9/10", "1/4"))
    out = round_values(d, 4)
    assert out == D((0, "1/2"), ("1/2", "1/4"), (1, "1/4"))
    grid = D((0, "1/3"), ("1/4", "1/3"), ("3/4", "1/3"))
    assert round_values(grid, 4) == grid


def test_round_values_merges_collisions():
    assert round_values(D(("1/10", "1/2"), ("1/5", "1/2")), 2) == DiscreteDistribution.point(F(1, 2))


@settings(max_examples=150, deadline=None)
@given(distributions(), st.integers(1, 30))
def test_round_values_properties(d, m):
    out = round_values(d, m)
    assert out.mean() <= d.mean() + F(1, m)
    assert out.mean() >= d.mean()
    assert all(v * m == int(v * m) for v in out.values)


def test_round_probs_examples():
    d = D(("1/5", "69/200"), ("4/5", "131/200"))
    assert round_probs(d, 10) == D(("1/5", "3/10"), ("4/5", "7/10"))
    grid = D((0, "3/10"), (1, "7/10"))
    assert round_probs(grid, 10) == grid
    half = D((0, "1/2"), (1, "1/2"))
    assert round_probs(half, 2) == half


def test_round_probs_too_small_names_minimal_n():
    d = D((0, "1/10"), ("1/2", "9/20"), (1, "9/20"))
    with pytest.raises(ProbabilityRoundingError) as info:
        round_probs(d, 3)
    minimal = info.value.minimal_n
    assert str(minimal) in str(info.value)
    round_probs(d, minimal)
    for smaller in range(1, minimal):
        with pytest.raises(ProbabilityRoundingError):
            round_probs(d, smaller)


@settings(max_examples=150, deadline=None)
@given(distributions(), st.integers(1, 60))
def test_round_probs_properties(d, n):
    try:
        out = round_probs(d, n)
    except ProbabilityRoundingError:
        return
    assert sum(out.probs) == 1
    assert all(n % p.denominator == 0 for p in out.probs)
    assert out.mean() <= d.mean() + F(len(d.atoms), n)
