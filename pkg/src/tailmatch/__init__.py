"""Exact tails of nonnegative i.i.d. sums and fractional matchings in k-uniform hypergraphs."""

from .bridge import (
    BridgeInstance,
    density_convergence_probe,
    dist_to_hypergraph,
    hypergraph_to_tail_bound,
    tail_identity_check,
)
from .dist import (
    DiscreteDistribution,
    IndependentVector,
    iid_tail,
    round_probs,
    round_values,
    samuels_vector,
    two_point_inv_k,
    two_point_one,
    vector_tail,
)
from .formulas import (
    conjectured_m,
    erdos_bound,
    hoeffding_shrikhande_m2,
    lemma1_M,
    samuels_s,
    x0,
    x1,
)
from .hypergraph import Hypergraph, clique, cov, matching_number, random_hypergraph
from .lp import WeightFunction, fractional_cover, fractional_matching, verify_duality
from .numeric import ConsistencyError, PreconditionError, RootInterval, binomial, bisect_exact
from .search import counterexample_hunt, grid_search_mk, witness_optimality_probe

__version__ = "0.1.0"
