"""Numpy fallback kernels, vectorized over depth levels.

Correctness reference for the compiled backend; roughly an order of magnitude
slower on the benchmark games (see benchmarks/backend_benchmark.py).
"""

from __future__ import annotations

import numpy as np

from efgsolve.tree import DECISION, LEAF


class _SweepCache:
    """Depth-grouped node/edge views used by the vectorized passes."""

    def __init__(self, tree):
        self.down = []  # per depth >= 1: (nodes, parents, slots, fixed_probs, edge_owner)
        for d in range(1, tree.max_depth + 1):
            nodes = tree.nodes_by_depth[d]
            self.down.append(
                (
                    nodes,
                    tree.parent[nodes],
                    tree.parent_slot[nodes],
                    tree.parent_prob[nodes],
                    tree.parent_owner[nodes],
                )
            )

        # Upward pass: edges grouped by parent depth, parents indexed locally
        # within the depth's internal-node list.
        parent_depth = tree.depth[tree.edge_parent]
        self.up = []  # per depth, deepest first: (internal_nodes, local_parent, children, slots, fixed_probs)
        for d in range(tree.max_depth - 1, -1, -1):
            nodes = tree.nodes_by_depth[d]
            internal = nodes[tree.kind[nodes] != LEAF]
            sel = np.nonzero(parent_depth == d)[0]
            local = np.searchsorted(internal, tree.edge_parent[sel])
            self.up.append(
                (
                    internal,
                    local.astype(np.int64),
                    tree.edge_child[sel],
                    tree.edge_slot[sel],
                    tree.edge_chance_prob[sel],
                )
            )

        dec = np.nonzero(tree.kind == DECISION)[0].astype(np.int32)
        self.members = {
            p: (dec[tree.owner[dec] == p], tree.infoset_id[dec[tree.owner[dec] == p]]) for p in (1, 2)
        }
        self.pov_edges = {
            p: np.nonzero(tree.edge_owner == p)[0] for p in (1, 2)
        }
        self.iso_levels = {
            p: sorted(
                {int(tree.iso_own_len[s.index]) for s in tree.infosets if s.owner == p}, reverse=True
            )
            for p in (1, 2)
        }


def _cache(tree) -> _SweepCache:
    c = getattr(tree, "_sweep_cache", None)
    if c is None:
        c = _SweepCache(tree)
        tree._sweep_cache = c
    return c


def _edge_probs(probs, slots, fixed):
    p = fixed.copy()
    m = slots >= 0
    p[m] = probs[slots[m]]
    return p


def _down(tree, cache, probs, pov, own, opp):
    own[0] = opp[0] = 1.0
    for nodes, parents, slots, fixed, eowner in cache.down:
        pe = _edge_probs(probs, slots, fixed)
        mine = eowner == pov
        own[nodes] = own[parents] * np.where(mine, pe, 1.0)
        opp[nodes] = opp[parents] * np.where(mine, 1.0, pe)


def _up(tree, cache, probs, values):
    values[tree.leaf_nodes] = tree.leaf_util[tree.leaf_nodes]
    for internal, local, children, slots, fixed in cache.up:
        if len(internal) == 0:
            continue
        pe = _edge_probs(probs, slots, fixed)
        values[internal] = np.bincount(local, weights=pe * values[children], minlength=len(internal))


def _pov_util(tree, cache, pov, opp, values, util):
    sign = 1.0 if pov == 1 else -1.0
    idx = cache.pov_edges[pov]
    w = opp[tree.edge_parent[idx]] * values[tree.edge_child[idx]] * sign
    util[:] = np.bincount(tree.edge_slot[idx], weights=w, minlength=tree.n_slots)


def evaluate(tree, probs, pov, ws):
    cache = _cache(tree)
    _down(tree, cache, probs, pov, ws.own_reach, ws.opp_reach)
    _up(tree, cache, probs, ws.values)
    _pov_util(tree, cache, pov, ws.opp_reach, ws.values, ws.util)
    nodes, isos = cache.members[pov]
    ws.iso_opp[:] = np.bincount(isos, weights=ws.opp_reach[nodes], minlength=tree.n_infosets)
    ws.iso_own[:] = ws.own_reach[tree.iso_first_member]
    return float(ws.values[0])


def best_response(tree, probs, pov, epsilon, ws, out):
    cache = _cache(tree)
    sign = 1.0 if pov == 1 else -1.0
    _down(tree, cache, probs, pov, ws.own_reach, ws.opp_reach)
    eff = ws.eff
    eff[:] = probs
    mine = [s for s in tree.infosets if s.owner == pov]
    for lvl in cache.iso_levels[pov]:
        _up(tree, cache, eff, ws.values)
        _pov_util(tree, cache, pov, ws.opp_reach, ws.values, ws.util)
        for s in mine:
            if tree.iso_own_len[s.index] != lvl:
                continue
            lo = s.slot
            hi = lo + s.n_actions
            best = int(np.argmax(ws.util[lo:hi]))
            eff[lo:hi] = epsilon
            eff[lo + best] += 1.0 - s.n_actions * epsilon
    _up(tree, cache, eff, ws.values)
    for s in mine:
        out[s.slot : s.slot + s.n_actions] = eff[s.slot : s.slot + s.n_actions]
    return float(ws.values[0]) * sign


def infoset_own_reach(tree, probs, pov, out):
    cache = _cache(tree)
    own = np.empty(tree.n_nodes)
    opp = np.empty(tree.n_nodes)
    _down(tree, cache, probs, pov, own, opp)
    out[:] = own[tree.iso_first_member]
