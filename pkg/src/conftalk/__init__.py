"""Bargaining-power bias from conference-restricted Myerson values, and the
cheap-talk partition equilibria it induces."""

from .bias import BiasReport, Conversation, bias_component, bias_report, effective_bias
from .cheaptalk import (
    NoEquilibrium,
    PartitionEquilibrium,
    beta,
    partition_boundaries,
    partition_count,
    solve_conversation,
    verify_equilibrium,
)
from .conference import (
    ConferenceStructure,
    conference_components,
    dyadic_conferences,
    restrict_conferences,
    restricted_worth,
)
from .graph import (
    Graph,
    build_graph,
    distance_histogram,
    distance_worth,
    enumerate_labeled_trees,
    induced_subgraph,
)
from .myerson import myerson_conference, shapley, tree_path_sharing
from .poly import DELTA, NO_SIGN_CHANGE, ZERO, DeltaPoly, poly_arith, poly_eval, sign_change
from .scenarios import (
    TwoStarSpec,
    check_star_dominance,
    check_threshold,
    closed_form,
    make_star,
    make_two_star,
    protocol,
)

__version__ = "0.1.0"
