"""Two-player zero-sum extensive-form game solving.

Fictitious-play style solvers (counting and behavior-strategy variants),
vanilla counterfactual regret minimization, poker benchmark games with
closed-form reference solutions, and exploitability analysis.
"""

from efgsolve._kernels import BACKEND
from efgsolve.analysis import (
    MetricsRecord,
    best_response_values,
    exploitability,
    find_crossings,
    hand_curve,
    nearest_crossing,
    normal_form_fp_oracle,
    payoff_matrix,
    sequence_curve,
    utility_gap_report,
)
from efgsolve.evaluate import (
    ReachSet,
    StrategySpaceTooLarge,
    ZeroReachError,
    action_utilities,
    behavior_to_mixed,
    compute_reach,
    expected_value,
)
from efgsolve.games import (
    GameParams,
    ReferenceSolution,
    UnsupportedParameters,
    asymmetric_reference,
    bet_raise_reference,
    build_asymmetric,
    build_bet_raise,
    hand_position,
)
from efgsolve.solvers import (
    ALGORITHMS,
    SCHEDULES,
    CfrState,
    GxfpState,
    RunConfig,
    XfpState,
    best_decision,
    build_game,
    make_solver,
    reportable_profile,
    run,
)
from efgsolve.tree import (
    BehaviorProfile,
    GameTree,
    InfoSet,
    chance,
    decision,
    leaf,
    validate_game,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "BACKEND",
    "SCHEDULES",
    "BehaviorProfile",
    "CfrState",
    "GameParams",
    "GameTree",
    "GxfpState",
    "InfoSet",
    "MetricsRecord",
    "ReachSet",
    "ReferenceSolution",
    "RunConfig",
    "StrategySpaceTooLarge",
    "UnsupportedParameters",
    "XfpState",
    "ZeroReachError",
    "action_utilities",
    "asymmetric_reference",
    "behavior_to_mixed",
    "best_decision",
    "best_response_values",
    "bet_raise_reference",
    "build_asymmetric",
    "build_bet_raise",
    "build_game",
    "chance",
    "compute_reach",
    "decision",
    "expected_value",
    "exploitability",
    "find_crossings",
    "hand_curve",
    "hand_position",
    "leaf",
    "make_solver",
    "nearest_crossing",
    "normal_form_fp_oracle",
    "payoff_matrix",
    "reportable_profile",
    "run",
    "sequence_curve",
    "utility_gap_report",
    "validate_game",
]
