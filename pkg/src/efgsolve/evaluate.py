"""Reach probabilities, action utilities and expected values for a profile.

Thin, allocation-per-call wrappers over the sweep kernels; the solvers use
the kernels directly with reusable workspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from efgsolve import _kernels
from efgsolve.tree import BehaviorProfile, GameTree, InfoSet


class ZeroReachError(ValueError):
    """Normalized action utilities requested at an unreachable information set."""


class StrategySpaceTooLarge(ValueError):
    def __init__(self, player: int, size: int, cap: int):
        super().__init__(f"player {player} has {size} pure strategies (cap {cap})")
        self.size = size
        self.cap = cap


@dataclass(frozen=True)
class ReachSet:
    """Per-node reach split into own and opponent-plus-chance factors."""

    perspective: int
    own_reach: np.ndarray
    opp_reach: np.ndarray
    infoset_opp_reach: np.ndarray  # indexed by InfoSet.index; valid for the perspective's sets


def compute_reach(tree: GameTree, profile: BehaviorProfile, perspective: int) -> ReachSet:
    """Root-to-leaf reach products from ``perspective``'s point of view."""
    _, ws = _kernels.evaluate(tree, profile.probs, perspective)
    return ReachSet(
        perspective=perspective,
        own_reach=ws.own_reach.copy(),
        opp_reach=ws.opp_reach.copy(),
        infoset_opp_reach=ws.iso_opp.copy(),
    )


def action_utilities(
    tree: GameTree,
    profile: BehaviorProfile,
    infoset: InfoSet | str,
    normalize: bool = False,
) -> tuple[np.ndarray, float]:
    """Counterfactual utilities of each action at ``infoset``, for its owner.

    Returns ``(U, opp_reach)`` where ``opp_reach`` is the information set's
    opponent-plus-chance reach.  Unnormalized by default (the solver-internal
    convention: division-free and argmax-equivalent); with ``normalize`` the
    values are divided by ``opp_reach``, raising :class:`ZeroReachError` when
    that reach is zero.
    """
    if isinstance(infoset, str):
        infoset = tree.infoset(infoset)
    _, ws = _kernels.evaluate(tree, profile.probs, infoset.owner)
    u = ws.util[infoset.slot : infoset.slot + infoset.n_actions].copy()
    reach = float(ws.iso_opp[infoset.index])
    if normalize:
        if reach <= 0.0:
            raise ZeroReachError(f"{infoset.key}: opponent reach is zero; no normalized utilities")
        u /= reach
    return u, reach


def expected_value(tree: GameTree, profile: BehaviorProfile) -> float:
    """Expected utility to player 1 under both strategies and chance."""
    value, _ = _kernels.evaluate(tree, profile.probs, 1)
    return value


def pure_strategy_count(tree: GameTree, player: int) -> int:
    n = 1
    for s in tree.infosets_of(player):
        n *= s.n_actions
    return n


def enumerate_pure_strategies(tree: GameTree, player: int, cap: int = 10**6) -> list[tuple[int, ...]]:
    """All pure strategies of ``player`` as action-index tuples, one entry per
    information set in ``tree.infosets_of(player)`` order."""
    size = pure_strategy_count(tree, player)
    if size > cap:
        raise StrategySpaceTooLarge(player, size, cap)
    ranges = [range(s.n_actions) for s in tree.infosets_of(player)]
    return list(itertools.product(*ranges))


def behavior_to_mixed(
    tree: GameTree, profile: BehaviorProfile, player: int, cap: int = 10**6
) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Realization map: behavior strategy to a mixture over pure strategies.

    The probability of a pure strategy is the product of the chosen action's
    behavior probability over all of the player's information sets.  Intended
    for tiny games; refuses when the strategy space exceeds ``cap``.
    """
    strategies = enumerate_pure_strategies(tree, player, cap)
    infosets = tree.infosets_of(player)
    probs = np.empty(len(strategies))
    for k, s in enumerate(strategies):
        p = 1.0
        for iso, a in zip(infosets, s):
            p *= profile.probs[iso.slot + a]
        probs[k] = p
    return probs, strategies
