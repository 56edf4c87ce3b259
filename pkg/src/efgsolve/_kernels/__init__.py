"""Tree-sweep kernels: compiled extension when available, numpy fallback.

Both backends expose the same three functions:

    evaluate(tree, probs, pov, ws) -> float
        Fill ``ws`` with reach probabilities (from ``pov``'s perspective),
        per-node expected values (to player 1), unnormalized counterfactual
        action utilities for ``pov``'s slots (sign-adjusted to ``pov``), and
        per-information-set reaches.  Returns the root value to player 1.

    best_response(tree, probs, pov, epsilon, ws, out) -> float
        Backward-induction best response for ``pov`` against ``probs``
        (epsilon-constrained when ``epsilon > 0``); writes the response into
        ``pov``'s slots of ``out`` and returns its value to ``pov``.

    infoset_own_reach(tree, probs, pov, out) -> None
        Per-information-set own-reach probabilities for ``pov``.

Set EFGSOLVE_BACKEND=python to force the fallback.
"""

from __future__ import annotations

import os

import numpy as np

__all__ = ["BACKEND", "Workspace", "evaluate", "best_response", "infoset_own_reach"]

if os.environ.get("EFGSOLVE_BACKEND", "").lower() == "python":
    from efgsolve._kernels import _pure as _impl

    BACKEND = "python"
else:
    try:
        from efgsolve._kernels import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from efgsolve._kernels import _pure as _impl

        BACKEND = "python"


class Workspace:
    """Reusable buffers for one tree, owned by a single evaluation thread."""

    __slots__ = ("own_reach", "opp_reach", "values", "util", "iso_own", "iso_opp", "eff")

    def __init__(self, tree):
        self.own_reach = np.empty(tree.n_nodes)
        self.opp_reach = np.empty(tree.n_nodes)
        self.values = np.empty(tree.n_nodes)
        self.util = np.empty(tree.n_slots)
        self.iso_own = np.empty(tree.n_infosets)
        self.iso_opp = np.empty(tree.n_infosets)
        self.eff = np.empty(tree.n_slots)


def evaluate(tree, probs, pov, ws=None):
    if ws is None:
        ws = Workspace(tree)
    root_value = _impl.evaluate(tree, np.ascontiguousarray(probs, dtype=np.float64), int(pov), ws)
    return root_value, ws


def best_response(tree, probs, pov, epsilon=0.0, ws=None, out=None):
    if ws is None:
        ws = Workspace(tree)
    if out is None:
        out = np.array(probs, dtype=np.float64)
    value = _impl.best_response(
        tree, np.ascontiguousarray(probs, dtype=np.float64), int(pov), float(epsilon), ws, out
    )
    return value, out


def infoset_own_reach(tree, probs, pov, out=None):
    if out is None:
        out = np.empty(tree.n_infosets)
    _impl.infoset_own_reach(tree, np.ascontiguousarray(probs, dtype=np.float64), int(pov), out)
    return out
