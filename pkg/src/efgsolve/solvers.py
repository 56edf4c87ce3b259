"""The three iterative solvers: GXFP, XFP and vanilla CFR.

Each solver owns its state and exposes ``step(schedule)``; one step updates
both players (alternating: player 2 sees player 1's already-updated strategy;
simultaneous: both update against the same snapshot).  ``run`` drives a full
experiment with periodic metric snapshots.

GXFP accumulates integer counts of how often each action was the local best,
so its implied average strategy is exact (a ratio of integers, optionally
mapped through the epsilon floor).  XFP maintains the behavior average of
best responses with a renormalization step each iteration.  CFR accumulates
unnormalized cumulative regrets (regret matching is scale invariant) and a
reach-weighted strategy sum.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from efgsolve import _kernels
from efgsolve.games import GameParams, build_asymmetric, build_bet_raise
from efgsolve.tree import BehaviorProfile, GameTree

SCHEDULES = ("alternating", "simultaneous")
ALGORITHMS = ("gxfp", "xfp", "cfr")


def best_decision(utilities: np.ndarray, epsilon: float = 0.0, action_count: int | None = None
                  ) -> tuple[np.ndarray, int]:
    """Locally best action mixture given (unnormalized) action utilities.

    epsilon = 0 gives a Kronecker delta at the argmax; with epsilon > 0 every
    action keeps probability epsilon and the argmax gets the remainder.  Ties
    break toward the lowest action index.
    """
    utilities = np.asarray(utilities, dtype=np.float64)
    if utilities.size == 0:
        raise ValueError("empty utility vector")
    k = action_count if action_count is not None else utilities.size
    if not 0.0 <= epsilon <= 1.0 / k:
        raise ValueError(f"epsilon must lie in [0, 1/{k}], got {epsilon}")
    best = int(np.argmax(utilities))
    dist = np.full(k, epsilon)
    dist[best] += 1.0 - k * epsilon
    return dist, best


class _SlotIndex:
    """Per-player flat-slot index tables for vectorized per-set updates."""

    def __init__(self, tree: GameTree):
        self.slot_iso = np.repeat(np.arange(tree.n_infosets, dtype=np.int64), tree.iso_nact)
        self.slot_nact = tree.iso_nact[self.slot_iso]
        self.iso_starts = tree.iso_slot.astype(np.int64)
        self.player_slots = {}
        self.player_isos = {}
        self.groups = {}  # (player, n_actions) -> (iso indices, m x k slot matrix)
        for p in (1, 2):
            isos = np.array([s.index for s in tree.infosets_of(p)], dtype=np.int64)
            self.player_isos[p] = isos
            self.player_slots[p] = np.nonzero(tree.iso_owner[self.slot_iso] == p)[0]
            for k in np.unique(tree.iso_nact[isos]) if len(isos) else []:
                sel = isos[tree.iso_nact[isos] == k]
                mat = tree.iso_slot[sel][:, None] + np.arange(k)[None, :]
                self.groups[(p, int(k))] = (sel, mat)

    def iso_sums(self, x: np.ndarray) -> np.ndarray:
        return np.add.reduceat(x, self.iso_starts)

    def argmax_slots(self, util: np.ndarray, player: int) -> np.ndarray:
        """Flat slot of the best action in each of ``player``'s information
        sets (ties to the lowest action index)."""
        out = []
        for (p, k), (_, mat) in self.groups.items():
            if p != player:
                continue
            out.append(mat[np.arange(len(mat)), np.argmax(util[mat], axis=1)])
        return np.concatenate(out) if out else np.empty(0, dtype=np.int64)


def _index(tree: GameTree) -> _SlotIndex:
    idx = getattr(tree, "_slot_index", None)
    if idx is None:
        idx = _SlotIndex(tree)
        tree._slot_index = idx
    return idx


def _init_probs(tree: GameTree, init: str, seed: int | None) -> np.ndarray:
    if init == "uniform":
        return BehaviorProfile.uniform(tree).probs
    if init == "random":
        return BehaviorProfile.random(tree, np.random.default_rng(seed)).probs
    raise ValueError(f"unknown init mode {init!r}")


class GxfpState:
    """Integer best-decision counts; the implied profile is
    epsilon + (1 - |A|*epsilon) * counts / n."""

    def __init__(self, tree: GameTree, epsilon: float = 0.0, init: str = "uniform",
                 seed: int | None = None, response: str = "best_decision"):
        if response not in ("best_decision", "best_response"):
            raise ValueError(f"unknown response mode {response!r}")
        self.tree = tree
        self.epsilon = float(epsilon)
        self.response = response
        self.counts = np.zeros(tree.n_slots, dtype=np.int64)
        self.iteration = np.zeros(3, dtype=np.int64)  # per player; [0] unused
        self._idx = _index(tree)
        self._ws = _kernels.Workspace(tree)
        self._probs = _init_probs(tree, init, seed)
        self._resp = self._probs.copy()

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    def profile(self) -> BehaviorProfile:
        return BehaviorProfile(self.tree, self._probs.copy())

    def _refresh(self, player: int) -> None:
        n = self.iteration[player]
        if n == 0:
            return
        sl = self._idx.player_slots[player]
        k = self._idx.slot_nact[sl]
        self._probs[sl] = self.epsilon + (1.0 - k * self.epsilon) * (self.counts[sl] / n)

    def _decide(self, player: int) -> np.ndarray:
        if self.response == "best_decision":
            _kernels.evaluate(self.tree, self._probs, player, self._ws)
            return self._idx.argmax_slots(self._ws.util, player)
        _kernels.best_response(self.tree, self._probs, player, self.epsilon, self._ws, self._resp)
        return self._idx.argmax_slots(self._resp, player)

    def step(self, schedule: str = "alternating") -> None:
        if schedule == "alternating":
            for p in (1, 2):
                best = self._decide(p)
                self.counts[best] += 1
                self.iteration[p] += 1
                self._refresh(p)
        elif schedule == "simultaneous":
            picks = [self._decide(p) for p in (1, 2)]
            for p, best in zip((1, 2), picks):
                self.counts[best] += 1
                self.iteration[p] += 1
                self._refresh(p)
        else:
            raise ValueError(f"unknown schedule {schedule!r}")


class XfpState:
    """Behavior-strategy fictitious play with per-iteration renormalization."""

    def __init__(self, tree: GameTree, epsilon: float = 0.0, init: str = "uniform",
                 seed: int | None = None, response: str = "best_response",
                 alpha: Callable[[int], float] | None = None):
        if response not in ("best_decision", "best_response"):
            raise ValueError(f"unknown response mode {response!r}")
        self.tree = tree
        self.epsilon = float(epsilon)
        self.response = response
        self.alpha = alpha if alpha is not None else (lambda n: 1.0 / n)
        self.iteration = np.zeros(3, dtype=np.int64)
        self._idx = _index(tree)
        self._ws = _kernels.Workspace(tree)
        self._probs = _init_probs(tree, init, seed)
        self._resp = self._probs.copy()
        self._own_b = np.empty(tree.n_infosets)
        self._own_B = np.empty(tree.n_infosets)

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    def profile(self) -> BehaviorProfile:
        return BehaviorProfile(self.tree, self._probs.copy())

    def _best(self, player: int) -> None:
        """Fill self._resp with the response strategy for ``player``."""
        if self.response == "best_response":
            _kernels.best_response(self.tree, self._probs, player, self.epsilon, self._ws, self._resp)
            return
        # Cross-wired variant: per-set best decisions instead of a full BR.
        _kernels.evaluate(self.tree, self._probs, player, self._ws)
        best = self._idx.argmax_slots(self._ws.util, player)
        sl = self._idx.player_slots[player]
        self._resp[sl] = self.epsilon
        self._resp[best] += 1.0 - self._idx.slot_nact[best] * self.epsilon

    def _update(self, player: int) -> None:
        self._best(player)
        _kernels.infoset_own_reach(self.tree, self._probs, player, self._own_b)
        _kernels.infoset_own_reach(self.tree, self._resp, player, self._own_B)
        a = self.alpha(int(self.iteration[player]) + 1)
        sl = self._idx.player_slots[player]
        iso = self._idx.slot_iso[sl]
        den = (1.0 - a) * self._own_b[iso] + a * self._own_B[iso]
        ok = den > 0.0
        b = self._probs[sl]
        upd = b + a * self._own_B[iso] * (self._resp[sl] - b) / np.where(ok, den, 1.0)
        self._probs[sl] = np.where(ok, upd, b)
        # Renormalize to guard against round-off drift.
        sums = self._idx.iso_sums(self._probs)
        self._probs[sl] /= sums[iso]
        self.iteration[player] += 1

    def step(self, schedule: str = "alternating") -> None:
        if schedule == "alternating":
            for p in (1, 2):
                self._update(p)
        elif schedule == "simultaneous":
            # Both players update against the same snapshot, then merge.
            merged = self._probs
            snapshot = self._probs.copy()
            for p in (1, 2):
                self._probs = snapshot.copy()
                self._update(p)
                sl = self._idx.player_slots[p]
                merged[sl] = self._probs[sl]
            self._probs = merged
        else:
            raise ValueError(f"unknown schedule {schedule!r}")


class CfrState:
    """Vanilla CFR with unnormalized cumulative regrets and a reach-weighted
    strategy sum; the reportable profile is the weighted average."""

    def __init__(self, tree: GameTree, init: str = "uniform", seed: int | None = None):
        self.tree = tree
        self.cum_regret = np.zeros(tree.n_slots)
        self.cum_strategy = np.zeros(tree.n_slots)
        self.iteration = np.zeros(3, dtype=np.int64)
        self._idx = _index(tree)
        self._ws = _kernels.Workspace(tree)
        self._probs = _init_probs(tree, init, seed)

    @property
    def probs(self) -> np.ndarray:
        return self._probs

    def current(self) -> BehaviorProfile:
        return BehaviorProfile(self.tree, self._probs.copy())

    def _update(self, player: int) -> None:
        _kernels.evaluate(self.tree, self._probs, player, self._ws)
        sl = self._idx.player_slots[player]
        iso = self._idx.slot_iso[sl]
        util = self._ws.util
        ev = self._idx.iso_sums(self._probs * util)
        self.cum_regret[sl] += util[sl] - ev[iso]
        self.cum_strategy[sl] += self._ws.iso_own[iso] * self._probs[sl]
        pos = np.maximum(self.cum_regret[sl], 0.0)
        pos_sums = np.zeros(self.tree.n_infosets)
        np.add.at(pos_sums, iso, pos)
        tot = pos_sums[iso]
        self._probs[sl] = np.where(tot > 0.0, pos / np.where(tot > 0.0, tot, 1.0),
                                   1.0 / self._idx.slot_nact[sl])
        self.iteration[player] += 1

    def step(self, schedule: str = "alternating") -> None:
        if schedule == "alternating":
            for p in (1, 2):
                self._update(p)
        elif schedule == "simultaneous":
            snapshot = self._probs.copy()
            new = self._probs
            for p in (1, 2):
                self._probs = snapshot.copy()
                self._update(p)
                sl = self._idx.player_slots[p]
                new[sl] = self._probs[sl]
            self._probs = new
        else:
            raise ValueError(f"unknown schedule {schedule!r}")

    def average(self) -> BehaviorProfile:
        """Reach-weighted average strategy; uniform where never reached."""
        idx = self._idx
        sums = idx.iso_sums(self.cum_strategy)
        tot = sums[idx.slot_iso]
        probs = np.where(tot > 0.0, self.cum_strategy / np.where(tot > 0.0, tot, 1.0),
                         1.0 / idx.slot_nact)
        return BehaviorProfile(self.tree, probs)


def cfr_average(state: CfrState) -> BehaviorProfile:
    if state.iteration[1:].max() < 1:
        raise ValueError("cfr_average needs at least one iteration")
    return state.average()


def make_solver(algorithm: str, tree: GameTree, epsilon: float = 0.0,
                init: str = "uniform", seed: int | None = None, response: str | None = None):
    if algorithm == "gxfp":
        return GxfpState(tree, epsilon=epsilon, init=init, seed=seed,
                         response=response or "best_decision")
    if algorithm == "xfp":
        return XfpState(tree, epsilon=epsilon, init=init, seed=seed,
                        response=response or "best_response")
    if algorithm == "cfr":
        if epsilon > 0:
            raise ValueError("CFR does not support the perturbed game")
        return CfrState(tree, init=init, seed=seed)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def reportable_profile(state) -> BehaviorProfile:
    """The strategy each algorithm is judged on: GXFP's implied average,
    XFP's current profile, CFR's reach-weighted average."""
    if isinstance(state, CfrState):
        return state.average() if state.iteration[1:].max() >= 1 else state.current()
    return state.profile()


@dataclass(frozen=True)
class RunConfig:
    game: str  # "asym" | "betraise"
    params: GameParams
    algorithm: str
    iterations: int
    schedule: str = "alternating"
    snapshot_interval: int = 10_000
    init: str = "uniform"
    seed: int | None = None
    response: str | None = None  # override the algorithm's better-response kind

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.schedule not in SCHEDULES:
            raise ValueError(f"unknown schedule {self.schedule!r}")
        if self.game not in ("asym", "betraise"):
            raise ValueError(f"unknown game {self.game!r}")
        if self.iterations < 0 or self.snapshot_interval < 1:
            raise ValueError("iterations must be >= 0 and snapshot_interval >= 1")
        if self.algorithm == "cfr" and self.params.epsilon > 0:
            raise ValueError("CFR does not support the perturbed game (epsilon > 0)")


def build_game(config: RunConfig) -> GameTree:
    if config.game == "asym":
        return build_asymmetric(config.params)
    return build_bet_raise(config.params)


def run(config: RunConfig, tree: GameTree | None = None):
    """Run a full experiment; returns (metrics records, reportable profile).

    Metrics are recorded every ``snapshot_interval`` iterations on the
    reportable profile; exploitability is measured in the unperturbed game.
    """
    from efgsolve.analysis import MetricsRecord, exploitability
    from efgsolve.evaluate import expected_value

    if tree is None:
        tree = build_game(config)
    state = make_solver(config.algorithm, tree, epsilon=config.params.epsilon,
                        init=config.init, seed=config.seed, response=config.response)
    series: list[MetricsRecord] = []
    for it in range(1, config.iterations + 1):
        state.step(config.schedule)
        if it % config.snapshot_interval == 0:
            prof = reportable_profile(state)
            series.append(MetricsRecord(iteration=it, value=expected_value(tree, prof),
                                        exploitability=exploitability(tree, prof)))
    return series, reportable_profile(state)
