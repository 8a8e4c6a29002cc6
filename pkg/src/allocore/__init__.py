"""Exact stable cost allocation for transferable-utility games.

Everything is computed over arbitrary-precision rationals so that core
membership, relaxation optima, and the identities linking them can be
asserted as exact equalities.
"""

from .coalition import Coalition, all_coalitions, nonempty_coalitions, proper_coalitions
from .errors import (
    EnumerationLimitError,
    InstanceParseError,
    PreconditionError,
    UndefinedRatioError,
)
from .games import (
    ENUM_LIMIT,
    Allocation,
    ExplicitGame,
    Game,
    Rational,
    is_monotone,
    is_subadditive,
    is_submodular,
    profit_transform_allocation,
    satisfies_last_monotone,
    subset_sums,
    to_profit_game,
)
from .lp import LpProblem, LpSolution, LpStatus, VerifyResult, solve, verify_point
from .mstgame import (
    ApproxTrace,
    GraphInstance,
    MstGame,
    almost_core_approx,
    explicit_from_graph,
    granot_huberman,
    monotonized_cost,
    mst_cost,
    shift_weights,
)
from .relaxations import (
    RelaxationReport,
    SeparationResult,
    almost_core_optimum,
    almost_core_problem,
    brute_force_core_oracle,
    brute_force_nonneg_core_oracle,
    core_nonempty,
    core_optimum,
    core_problem,
    cost_of_stability,
    extended_core_delta,
    full_report,
    gamma_approx,
    least_core_eps,
    min_stable_profit,
    mult_core_eps,
    separate_almost_core,
    separate_almost_core_nonneg,
    weak_core_eps,
)

__all__ = [
    "Allocation",
    "ApproxTrace",
    "Coalition",
    "ENUM_LIMIT",
    "EnumerationLimitError",
    "ExplicitGame",
    "Game",
    "GraphInstance",
    "InstanceParseError",
    "LpProblem",
    "LpSolution",
    "LpStatus",
    "MstGame",
    "PreconditionError",
    "Rational",
    "RelaxationReport",
    "SeparationResult",
    "UndefinedRatioError",
    "VerifyResult",
    "all_coalitions",
    "almost_core_approx",
    "almost_core_optimum",
    "almost_core_problem",
    "brute_force_core_oracle",
    "brute_force_nonneg_core_oracle",
    "core_nonempty",
    "core_optimum",
    "core_problem",
    "cost_of_stability",
    "explicit_from_graph",
    "extended_core_delta",
    "full_report",
    "gamma_approx",
    "granot_huberman",
    "is_monotone",
    "is_subadditive",
    "is_submodular",
    "least_core_eps",
    "min_stable_profit",
    "monotonized_cost",
    "mst_cost",
    "mult_core_eps",
    "nonempty_coalitions",
    "profit_transform_allocation",
    "proper_coalitions",
    "satisfies_last_monotone",
    "separate_almost_core",
    "separate_almost_core_nonneg",
    "shift_weights",
    "solve",
    "subset_sums",
    "to_profit_game",
    "verify_point",
    "weak_core_eps",
]
