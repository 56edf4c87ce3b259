"""Solution-quality metrics and the tiny-game normal-form cross-check oracle.

Also hosts the per-hand strategy-curve and level-crossing helpers used to
compare converged profiles against the continuous-game thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from efgsolve import _kernels
from efgsolve.evaluate import enumerate_pure_strategies, expected_value
from efgsolve.tree import BehaviorProfile, GameTree


@dataclass(frozen=True)
class MetricsRecord:
    iteration: int
    value: float  # expected utility to player 1, in chips
    exploitability: float  # total, in chips; >= 0 up to round-off


def best_response_values(tree: GameTree, profile: BehaviorProfile, epsilon: float = 0.0
                         ) -> tuple[float, float]:
    """u^i(best response, opponent profile) for both players."""
    v1, _ = _kernels.best_response(tree, profile.probs, 1, epsilon)
    v2, _ = _kernels.best_response(tree, profile.probs, 2, epsilon)
    return v1, v2


def exploitability(tree: GameTree, profile: BehaviorProfile, epsilon: float = 0.0) -> float:
    """Total exploitability: sum of both players' best-response gains.

    Zero exactly at an equilibrium.  Measured in the unperturbed game by
    default; pass epsilon > 0 to constrain both responses to the perturbed
    strategy space.
    """
    v1, v2 = best_response_values(tree, profile, epsilon)
    return v1 + v2


@dataclass(frozen=True)
class UtilityGapRow:
    infoset_key: str
    utilities: tuple[float, ...] | None  # normalized; None when unreachable
    gap: float | None  # U(first option) - U(second option)
    reachable: bool


@dataclass(frozen=True)
class UtilityGapReport:
    rows: list[UtilityGapRow]

    def gaps(self) -> dict[str, float | None]:
        return {r.infoset_key: r.gap for r in self.rows}


def utility_gap_report(tree: GameTree, profile: BehaviorProfile,
                       pairs: dict[str, tuple[str, str]]) -> UtilityGapReport:
    """Normalized action utilities and option gaps per information set.

    ``pairs`` maps an information-set key to the (favored, other) action
    labels whose normalized utility difference is reported.  Unreachable sets
    (zero opponent reach) are flagged, never fabricated.
    """
    ws = {1: _kernels.Workspace(tree), 2: _kernels.Workspace(tree)}
    for p in (1, 2):
        _kernels.evaluate(tree, profile.probs, p, ws[p])
    rows = []
    for key, (hi, lo) in pairs.items():
        s = tree.infoset(key)
        w = ws[s.owner]
        reach = float(w.iso_opp[s.index])
        if reach <= 0.0:
            rows.append(UtilityGapRow(key, None, None, False))
            continue
        u = w.util[s.slot : s.slot + s.n_actions] / reach
        i_hi = s.action_labels.index(hi)
        i_lo = s.action_labels.index(lo)
        rows.append(UtilityGapRow(key, tuple(float(x) for x in u),
                                  float(u[i_hi] - u[i_lo]), True))
    return UtilityGapReport(rows)


# -- normal-form fictitious play oracle (tiny games only) --------------------


def payoff_matrix(tree: GameTree, cap: int = 10**4) -> np.ndarray:
    """Pure-strategy payoff matrix to player 1, chance averaged out."""
    s1 = enumerate_pure_strategies(tree, 1, cap)
    s2 = enumerate_pure_strategies(tree, 2, cap)
    iso1 = tree.infosets_of(1)
    iso2 = tree.infosets_of(2)
    probs = np.zeros(tree.n_slots)
    prof = BehaviorProfile(tree, probs)
    m = np.empty((len(s1), len(s2)))
    for i, a in enumerate(s1):
        probs[:] = 0.0
        for iso, act in zip(iso1, a):
            probs[iso.slot + act] = 1.0
        for j, b in enumerate(s2):
            for iso, act in zip(iso2, b):
                probs[iso.slot : iso.slot + iso.n_actions] = 0.0
                probs[iso.slot + act] = 1.0
            m[i, j] = expected_value(tree, prof)
    return m


def matrix_fp(m: np.ndarray, iterations: int) -> tuple[float, np.ndarray, np.ndarray]:
    """Classic simultaneous fictitious play on a payoff matrix (row player
    maximizes).  Returns (empirical value, row mixture, column mixture)."""
    rows, cols = m.shape
    x = np.zeros(rows)
    y = np.zeros(cols)
    x[0] = 1.0
    y[0] = 1.0
    for n in range(1, iterations + 1):
        br_row = int(np.argmax(m @ y))
        br_col = int(np.argmin(x @ m))
        a = 1.0 / (n + 1)
        x *= 1.0 - a
        x[br_row] += a
        y *= 1.0 - a
        y[br_col] += a
    return float(x @ m @ y), x, y


def normal_form_fp_oracle(tree: GameTree, iterations: int, cap: int = 10**4
                          ) -> tuple[float, tuple[np.ndarray, np.ndarray]]:
    """Independent cross-check: expand to the payoff matrix and run classic
    normal-form fictitious play.  Refuses games beyond ``cap`` pure
    strategies per player."""
    m = payoff_matrix(tree, cap)
    value, x, y = matrix_fp(m, iterations)
    return value, (x, y)


# -- per-hand strategy curves and threshold crossings ------------------------


def hand_curve(profile: BehaviorProfile, player: int, history: str, action: str,
               n_hands: int) -> np.ndarray:
    """Probability of ``action`` at ``P{player}|h=i|{history}`` for each hand."""
    out = np.empty(n_hands)
    tree = profile.tree
    for i in range(1, n_hands + 1):
        s = tree.infoset(f"P{player}|h={i}|{history}")
        out[i - 1] = profile.probs[s.slot + s.action_labels.index(action)]
    return out


def sequence_curve(profile: BehaviorProfile, player: int, steps: list[tuple[str, str]],
                   n_hands: int) -> np.ndarray:
    """Product of action probabilities along a list of (history, action) steps."""
    out = np.ones(n_hands)
    for history, action in steps:
        out *= hand_curve(profile, player, history, action, n_hands)
    return out


def find_crossings(values: np.ndarray, level: float = 0.5) -> list[float]:
    """Positions (in 1-based hand units) where a per-hand curve crosses
    ``level``, linearly interpolated between adjacent hands."""
    out = []
    v = np.asarray(values, dtype=np.float64)
    above = v >= level
    for i in range(len(v) - 1):
        if above[i] != above[i + 1]:
            lo, hi = v[i], v[i + 1]
            out.append(i + 1 + (level - lo) / (hi - lo))
    return out


def nearest_crossing(values: np.ndarray, target: float, level: float = 0.5) -> float | None:
    """The crossing position closest to ``target`` (hand units), if any."""
    crossings = find_crossings(values, level)
    if not crossings:
        return None
    return min(crossings, key=lambda c: abs(c - target))
