"""Builders for the two poker benchmark games plus their closed-form
continuous-game reference solutions.

Both games: each player antes A (pot P = 2A), hands are dealt independently
and uniformly from {1..N} (ties possible, ties split the pot), and payoffs
are net of the ante.  Information sets are keyed ``P<owner>|h=<hand>|<hist>``
with history letters k/b/f/c/r in play order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from efgsolve.tree import GameTree, chance, decision, leaf

# Continuous-game threshold fractions for the bet/raise game at P=B=R=1.
# x4 and x7 trail the free thresholds x5 and x8 at fixed offsets.
_BR_P1 = {"x1": 64 / 1083, "x2": 369 / 722, "x3": 10 / 19, "x6": 307 / 361}
_BR_P1_TIED = {"x4": ("x5", -32 / 1083), "x7": ("x8", -22 / 361)}
_BR_P2_VS_CHECK = {"y1_check": 8 / 57, "y2_check": 41 / 57, "y3_check": 15 / 19}
_BR_P2_VS_BET = {"y1_bet": 1 / 2, "y2_bet": 10 / 19, "y3_bet": 17 / 19}
BET_RAISE_GAME_VALUE = -44 / 1083

P1_SEQUENCE_INTERVALS = [
    "bet-fold",
    "check-fold",
    "check-raise",
    "check-call",
    "bet-fold",
    "check-call",
    "bet-call",
    "check-raise",
    "bet-call",
]
P2_VS_CHECK_INTERVALS = ["bet-fold", "check", "bet-fold", "bet-call"]
P2_VS_BET_INTERVALS = ["fold", "raise", "call", "raise"]


class UnsupportedParameters(ValueError):
    """Analytic reference requested outside its valid parameter family."""


@dataclass(frozen=True)
class GameParams:
    """Hand count, stakes and optional perturbation floor."""

    n_hands: int
    ante: float
    bet: float
    raise_size: float | None = None
    epsilon: float = 0.0

    def __post_init__(self):
        if self.n_hands < 2:
            raise ValueError(f"need at least 2 hands, got {self.n_hands}")
        if self.ante <= 0 or self.bet <= 0:
            raise ValueError("ante and bet must be positive")
        if self.raise_size is not None and self.raise_size <= 0:
            raise ValueError("raise size must be positive")
        if self.epsilon < 0:
            raise ValueError("epsilon must be non-negative")

    @property
    def pot(self) -> float:
        return 2 * self.ante

    @classmethod
    def from_pot(cls, n_hands: int, pot: float, bet: float, raise_size: float | None = None,
                 epsilon: float = 0.0) -> "GameParams":
        return cls(n_hands=n_hands, ante=pot / 2, bet=bet, raise_size=raise_size, epsilon=epsilon)


@dataclass(frozen=True)
class ReferenceSolution:
    """Continuous-game thresholds and value used as test oracles.

    Thresholds map label -> fraction in (0, 1); free thresholds carry no
    value, tied thresholds are (anchor_label, offset) pairs.
    """

    p1_thresholds: dict[str, float]
    p2_thresholds: dict[str, dict[str, float]]
    p1_intervals: list[str]
    p2_intervals: dict[str, list[str]]
    game_value: float | None
    free_thresholds: tuple[str, ...] = ()
    tied_thresholds: dict[str, tuple[str, float]] = field(default_factory=dict)


def _cmp(i: int, j: int) -> int:
    return (i > j) - (i < j)


def build_asymmetric(params: GameParams) -> GameTree:
    """Single bet round: P1 checks or bets B; facing a bet, P2 folds or calls."""
    n, a, b = params.n_hands, params.ante, params.bet
    if params.epsilon >= 0.5:
        raise ValueError("epsilon must be below 1/2 (two actions per information set)")
    deals = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            show = _cmp(i, j)
            deals.append(
                decision(
                    1, f"P1|h={i}|", ("check", "bet"),
                    [
                        leaf(show * a),
                        decision(2, f"P2|h={j}|b", ("fold", "call"),
                                 [leaf(a), leaf(show * (a + b))]),
                    ],
                )
            )
    return GameTree.from_root(chance([1.0 / n**2] * n**2, deals))


def build_bet_raise(params: GameParams) -> GameTree:
    """Bet plus a single raise, check-raise allowed.

    Grammar: P1 check/bet; after a check P2 checks or bets; a bet can be
    folded to, called, or raised once; a raise can be folded to or called.
    """
    n, a, b = params.n_hands, params.ante, params.bet
    if params.raise_size is None:
        raise ValueError("bet/raise game needs a raise size")
    r = params.raise_size
    if params.epsilon >= 1.0 / 3.0:
        raise ValueError("epsilon must be below 1/3 (three actions per information set)")
    deals = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            show = _cmp(i, j)
            after_check = decision(
                2, f"P2|h={j}|k", ("check", "bet"),
                [
                    leaf(show * a),
                    decision(
                        1, f"P1|h={i}|kb", ("fold", "call", "raise"),
                        [
                            leaf(-a),
                            leaf(show * (a + b)),
                            decision(2, f"P2|h={j}|kbr", ("fold", "call"),
                                     [leaf(a + b), leaf(show * (a + b + r))]),
                        ],
                    ),
                ],
            )
            after_bet = decision(
                2, f"P2|h={j}|b", ("fold", "call", "raise"),
                [
                    leaf(a),
                    leaf(show * (a + b)),
                    decision(1, f"P1|h={i}|br", ("fold", "call"),
                             [leaf(-(a + b)), leaf(show * (a + b + r))]),
                ],
            )
            deals.append(decision(1, f"P1|h={i}|", ("check", "bet"), [after_check, after_bet]))
    return GameTree.from_root(chance([1.0 / n**2] * n**2, deals))


def asymmetric_reference(ante: float, bet: float) -> ReferenceSolution:
    """Continuous-game thresholds for the single-bet game.

    P1 bets below x1 (the bluff region) and above x2; the weakly dominant
    P2 strategy folds below y1 and calls above it.
    """
    if ante <= 0 or bet <= 0:
        raise ValueError("ante and bet must be positive")
    a, b = ante, bet
    denom = 4 * a * a + 5 * a * b + b * b
    return ReferenceSolution(
        p1_thresholds={"x1": a * b / denom, "x2": (2 * a * a + 4 * a * b + b * b) / denom},
        p2_thresholds={"vs_bet": {"y1": (3 * a * b + b * b) / denom}},
        p1_intervals=["bet", "check", "bet"],
        p2_intervals={"vs_bet": ["fold", "call"]},
        game_value=None,
    )


def bet_raise_reference(ante: float = 0.5, bet: float = 1.0, raise_size: float = 1.0) -> ReferenceSolution:
    """Continuous-game solution of the bet/raise game, valid only at
    P = 2*ante = 1, B = 1, R = 1; x5 and x8 may be chosen freely as long as
    the thresholds stay ascending."""
    if (ante, bet, raise_size) != (0.5, 1.0, 1.0):
        raise UnsupportedParameters(
            f"closed form known only for pot=1, bet=1, raise=1 "
            f"(got ante={ante}, bet={bet}, raise={raise_size})"
        )
    return ReferenceSolution(
        p1_thresholds=dict(_BR_P1),
        p2_thresholds={"vs_check": dict(_BR_P2_VS_CHECK), "vs_bet": dict(_BR_P2_VS_BET)},
        p1_intervals=list(P1_SEQUENCE_INTERVALS),
        p2_intervals={"vs_check": list(P2_VS_CHECK_INTERVALS), "vs_bet": list(P2_VS_BET_INTERVALS)},
        game_value=BET_RAISE_GAME_VALUE,
        free_thresholds=("x5", "x8"),
        tied_thresholds=dict(_BR_P1_TIED),
    )


def hand_position(hand: int, n_hands: int) -> float:
    """Midpoint map from discrete hand to the continuous unit interval."""
    return (hand - 0.5) / n_hands
