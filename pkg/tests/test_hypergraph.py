import pytest
from hypothesis import given, settings, strategies as st

from tailmatch.hypergraph import Hypergraph, clique, cov, matching_number, random_hypergraph
from tailmatch.numeric import PreconditionError, binomial
from oracles import binom_product, brute_matching_number


def test_cov_examples():
    star = cov(5, 2, 1)
    assert len(star) == 4 and all(1 in e for e in star.edges)
    assert len(cov(9, 3, 2)) == 49 == binom_product(9, 3) - binom_product(7, 3)
    assert len(cov(7, 3, 0)) == 0


def test_clique_examples():
    assert clique(5, 2, 3).edges == ((1, 2), (1, 3), (2, 3))
    assert len(clique(9, 3, 8)) == 56
    assert len(clique(7, 3, 5)) == 10


@pytest.mark.parametrize("args", [(5, 2, 6), (5, 2, -1), (2, 3, 1)])
def test_cov_range(args):
    with pytest.raises(PreconditionError):
        cov(*args)


@pytest.mark.parametrize("args", [(5, 2, 1), (5, 2, 6), (5, 6, 6)])
def test_clique_range(args):
    with pytest.raises(PreconditionError):
        clique(*args)


def test_cov_edge_counts_exhaustive():
    for k in (2, 3, 4):
        for n in range(k, 13):
            for s in range(n + 1):
                assert len(cov(n, k, s)) == binomial(n, k) - binomial(n - s, k)


def test_matching_number_examples():
    assert matching_number(cov(9, 3, 2)) == 2
    assert matching_number(clique(7, 3, 5)) == 1
    assert matching_number(Hypergraph(6, 3)) == 0


def test_matching_number_extremal_families():
    for k in (2, 3):
        for n in range(k, 11):
            for s in range(n // k + 1):
                assert matching_number(cov(n, k, s)) == s
            for t in range(k, n + 1):
                assert matching_number(clique(n, k, t)) == t // k


@settings(max_examples=150, deadline=None)
@given(
    st.integers(2, 3).flatmap(
        lambda k: st.tuples(st.just(k), st.integers(k, 8)).flatmap(
            lambda kn: st.tuples(
                st.just(kn[0]),
                st.just(kn[1]),
                st.integers(0, min(12, binomial(kn[1], kn[0]))),
                st.integers(0, 2**32),
            )
        )
    )
)
def test_matching_number_matches_brute_force(params):
    k, n, m, seed = params
    h = random_hypergraph(n, k, m, seed)
    assert matching_number(h) == brute_matching_number(h.edges)


def test_matching_target_early_exit():
    h = cov(12, 3, 4)
    assert matching_number(h, target=2) == 2
    assert matching_number(h, target=10) == 4


def test_random_hypergraph_contracts():
    h = random_hypergraph(6, 3, 20, 7)
    assert len(h) == 20 and len(set(h.edges)) == 20
    assert random_hypergraph(6, 3, 20, 7) == h
    assert set(random_hypergraph(5, 2, 10, 123).edges) == set(clique(5, 2, 5).edges)
    with pytest.raises(PreconditionError):
        random_hypergraph(5, 2, 11, 0)


def test_edges_are_sorted_and_deduplicated():
    h = Hypergraph(4, 2, ((2, 1), (1, 2), (4, 3)))
    assert h.edges == ((1, 2), (3, 4))


@pytest.mark.parametrize("edges", [((1, 1),), ((1, 5),), ((1, 2, 3),), ((0, 1),)])
def test_invalid_edges(edges):
    with pytest.raises(PreconditionError):
        Hypergraph(4, 2, edges)


def test_text_round_trip(tmp_path):
    h = random_hypergraph(8, 3, 11, 5)
    path = tmp_path / "h.hg"
    h.write(path)
    assert Hypergraph.read(path) == h


def test_text_format_comments_and_duplicates():
    text = "# a triangle\n3 2\n1 2\n\n2 3\n# dup below\n2 1\n3 1\n"
    h = Hypergraph.from_text(text)
    assert (h.n, h.k) == (3, 2)
    assert h.edges == ((1, 2), (2, 3), (1, 3))


def test_text_format_errors():
    with pytest.raises(PreconditionError):
        Hypergraph.from_text("3\n1 2\n")
    with pytest.raises(PreconditionError):
        Hypergraph.from_text("3 2\n1 x\n")


def test_isolated_vertices_count():
    h = Hypergraph(10, 2, ((1, 2),))
    assert h.n == 10 and h.degree(7) == 0
