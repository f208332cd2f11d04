"""Ranked Pairs, Kemeny-Young and p-norm orderings of preferential elections."""
from .convergence import (
    ConvergenceReport,
    cdp_holds,
    cdp_threshold,
    convergence_profile,
    p_star_bound,
)
from .core import (
    E3,
    E4A,
    E4B,
    Ballot,
    ElectionError,
    ElectionProfile,
    InvalidMarginsError,
    MarginMatrix,
    ParseError,
    margin_matrix,
    parse_election,
    permuted_view,
    reverse_profile,
    validate_margins,
)
from .norms import PExponent, QValue, WeightFunction, p_norm, positive_p_norm, q_f_sum, q_sum
from .simulate import FrequencyEstimate, SimulationConfig, condorcet_winner_frequency, random_profile
from .solvers import (
    SizeCapError,
    find_condorcet_loser,
    find_condorcet_winner,
    hamiltonian_orderings,
    kemeny,
    limit_ordering,
    p_ordering,
    ranked_pairs,
)

__version__ = "0.1.0"
