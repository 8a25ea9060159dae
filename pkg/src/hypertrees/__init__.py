"""Expected numbers of spanning hypertrees in random uniform hypergraphs
with a given degree sequence: exact census, Monte Carlo, and asymptotics."""

from .asymptotics import (
    AsymptoticEstimate,
    beta,
    concentration_K_bound,
    concentration_tail_bound,
    expected_g_closed_form,
    expected_lambda_exact,
    g,
    hypergeom_falling_moment,
    lambda0,
    lambda_x,
    log_D,
    log_F,
    regular_estimate,
    theorem1_estimate,
    tree_probability_estimate,
)
from .census import (
    CensusResult,
    enumerate_hypergraphs,
    exact_expected_spanning_hypertrees,
    leading_factor,
    pairing_expected_copies_bruteforce,
)
from .combinatorics import (
    DegreeSequence,
    LogReal,
    TreeShape,
    degree_stats,
    falling_factorial,
    log_gamma,
    parse_degrees,
    tree_shape,
)
from .enumeration import (
    count_hypertrees,
    count_hypertrees_with_degrees,
    enumerate_hypertrees,
    suitable_degree_sequences,
)
from .errors import BudgetError, DivisibilityError, HypertreeError, RegimeError
from .hypergraph import (
    Hypergraph,
    count_spanning_hypertrees,
    degree_sequence_of,
    is_incidence_forest,
    is_spanning_hypertree,
)
from .sampling import (
    McEstimate,
    mc_expected_spanning_hypertrees,
    sample_degree_vector_X,
    sample_pairing,
    sample_simple_hypergraph,
    sample_uniform_hypertree,
)

__version__ = "0.1.0"
