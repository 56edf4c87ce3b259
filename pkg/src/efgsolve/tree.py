"""Extensive-form game trees for two-player zero-sum games with chance.

Trees are immutable after construction and stored flat in preorder, so every
child has a higher index than its parent; the solver kernels exploit this to
run reach and value sweeps as single passes over contiguous arrays.  Leaf
utilities are stored once, for player 1; player 2's utility is the negation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

CHANCE = 0
DECISION = 1
LEAF = 2

PROB_TOL = 1e-9
CHANCE_TOL = 1e-12


class leaf:
    """Terminal node; ``util`` is the payoff to player 1."""

    __slots__ = ("util",)

    def __init__(self, util: float):
        self.util = float(util)


class decision:
    """Decision node owned by ``player`` (1 or 2) inside information set ``key``."""

    __slots__ = ("player", "key", "labels", "children")

    def __init__(self, player: int, key: str, labels: Sequence[str], children: Sequence):
        if player not in (1, 2):
            raise ValueError(f"player must be 1 or 2, got {player}")
        self.player = player
        self.key = key
        self.labels = tuple(labels)
        self.children = list(children)


class chance:
    """Chance node with a fixed distribution over its children."""

    __slots__ = ("probs", "children")

    def __init__(self, probs: Sequence[float], children: Sequence):
        self.probs = [float(p) for p in probs]
        self.children = list(children)


@dataclass(frozen=True)
class InfoSet:
    """One information set: owner, member nodes and the action slate."""

    index: int
    owner: int
    key: str
    action_labels: tuple[str, ...]
    members: tuple[int, ...]
    slot: int  # offset of this set's action probabilities in a flat profile

    @property
    def n_actions(self) -> int:
        return len(self.action_labels)


@dataclass
class ValidationReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        return "valid" if self.ok else "\n".join(self.violations)


class GameTree:
    """Flat preorder representation of a finite two-player zero-sum game.

    Construct with :meth:`from_root` from nested ``chance`` / ``decision`` /
    ``leaf`` specs.  Node 0 is the root.  All array attributes are read-only
    by convention; the tree is safe to share across concurrent evaluations.
    """

    def __init__(self) -> None:
        raise TypeError("use GameTree.from_root()")

    @classmethod
    def from_root(cls, root) -> "GameTree":
        self = object.__new__(cls)

        kind: list[int] = []
        owner: list[int] = []
        infoset_id: list[int] = []
        parent: list[int] = []
        parent_action: list[int] = []
        parent_prob: list[float] = []
        depth: list[int] = []
        leaf_util: list[float] = []
        children_of: list[list[int]] = []
        chance_probs_of: dict[int, list[float]] = {}

        iso_keys: list[str] = []
        iso_owner: list[int] = []
        iso_labels: list[tuple[str, ...]] = []
        iso_members: list[list[int]] = []
        key_index: dict[str, int] = {}

        # Iterative preorder flatten (trees can exceed recursion limits).
        stack = [(root, -1, -1, 1.0, 0)]
        while stack:
            spec, par, act, prob, dep = stack.pop()
            nid = len(kind)
            parent.append(par)
            parent_action.append(act)
            parent_prob.append(prob)
            depth.append(dep)
            children_of.append([])
            if par >= 0:
                children_of[par].append(nid)
            if isinstance(spec, leaf):
                kind.append(LEAF)
                owner.append(0)
                infoset_id.append(-1)
                leaf_util.append(spec.util)
            elif isinstance(spec, decision):
                kind.append(DECISION)
                owner.append(spec.player)
                leaf_util.append(0.0)
                idx = key_index.get(spec.key)
                if idx is None:
                    idx = len(iso_keys)
                    key_index[spec.key] = idx
                    iso_keys.append(spec.key)
                    iso_owner.append(spec.player)
                    iso_labels.append(spec.labels)
                    iso_members.append([])
                iso_members[idx].append(nid)
                infoset_id.append(idx)
                for a in range(len(spec.children) - 1, -1, -1):
                    stack.append((spec.children[a], nid, a, 1.0, dep + 1))
            elif isinstance(spec, chance):
                kind.append(CHANCE)
                owner.append(0)
                infoset_id.append(-1)
                leaf_util.append(0.0)
                chance_probs_of[nid] = spec.probs
                for a in range(len(spec.children) - 1, -1, -1):
                    p = spec.probs[a] if a < len(spec.probs) else 0.0
                    stack.append((spec.children[a], nid, a, p, dep + 1))
            else:
                raise TypeError(f"unknown node spec {spec!r}")

        # children_of was filled in pop order, which already matches action
        # order because children were pushed reversed.
        n = len(kind)
        self.n_nodes = n
        self.kind = np.asarray(kind, dtype=np.int8)
        self.owner = np.asarray(owner, dtype=np.int8)
        self.infoset_id = np.asarray(infoset_id, dtype=np.int32)
        self.parent = np.asarray(parent, dtype=np.int32)
        self.parent_action = np.asarray(parent_action, dtype=np.int32)
        self.parent_prob = np.asarray(parent_prob, dtype=np.float64)
        self.depth = np.asarray(depth, dtype=np.int32)
        self.leaf_util = np.asarray(leaf_util, dtype=np.float64)

        child_start = np.zeros(n, dtype=np.int32)
        child_count = np.zeros(n, dtype=np.int32)
        flat_children: list[int] = []
        for v in range(n):
            child_start[v] = len(flat_children)
            child_count[v] = len(children_of[v])
            flat_children.extend(children_of[v])
        self.child_start = child_start
        self.child_count = child_count
        self.children = np.asarray(flat_children, dtype=np.int32)

        # Information-set tables.  Action count is the max over members so
        # that invalid trees (mixed counts) survive long enough to validate.
        n_iso = len(iso_keys)
        iso_nact = np.zeros(n_iso, dtype=np.int32)
        for i, mem in enumerate(iso_members):
            iso_nact[i] = max(int(child_count[m]) for m in mem)
        iso_slot = np.zeros(n_iso, dtype=np.int32)
        iso_slot[1:] = np.cumsum(iso_nact)[:-1]
        self.n_slots = int(iso_nact.sum())
        self.iso_owner = np.asarray(iso_owner, dtype=np.int8)
        self.iso_nact = iso_nact
        self.iso_slot = iso_slot
        self.iso_first_member = np.asarray([m[0] for m in iso_members], dtype=np.int32)
        self.key_index = key_index
        self.infosets: list[InfoSet] = [
            InfoSet(
                index=i,
                owner=int(iso_owner[i]),
                key=iso_keys[i],
                action_labels=iso_labels[i],
                members=tuple(iso_members[i]),
                slot=int(iso_slot[i]),
            )
            for i in range(n_iso)
        ]

        # Edge tables aligned with self.children: slot into a flat profile for
        # decision edges (-1 for chance edges), fixed probability otherwise.
        e_parent = np.repeat(np.arange(n, dtype=np.int32), child_count)
        e_child = self.children
        e_action = self.parent_action[e_child]
        e_owner = self.owner[e_parent]
        e_slot = np.full(len(e_child), -1, dtype=np.int32)
        dec = self.kind[e_parent] == DECISION
        e_slot[dec] = iso_slot[self.infoset_id[e_parent[dec]]] + e_action[dec]
        e_prob = self.parent_prob[e_child]
        self.edge_parent = e_parent
        self.edge_child = e_child
        self.edge_slot = e_slot
        self.edge_chance_prob = e_prob
        self.edge_owner = e_owner

        parent_slot = np.full(n, -1, dtype=np.int32)
        parent_slot[e_child] = e_slot
        parent_owner = np.zeros(n, dtype=np.int8)
        parent_owner[e_child] = e_owner
        self.parent_slot = parent_slot
        self.parent_owner = parent_owner
        self.leaf_nodes = np.nonzero(self.kind == LEAF)[0].astype(np.int32)

        # Depth of each information set in own-action count, used to order
        # best-response backward induction (constant per set under perfect
        # recall; validated, not assumed, in validate_game).
        own_len = np.zeros(n_iso, dtype=np.int32)
        for i in range(n_iso):
            v = int(self.iso_first_member[i])
            cnt = 0
            p = int(self.parent[v])
            while p >= 0:
                if self.kind[p] == DECISION and self.owner[p] == iso_owner[i]:
                    cnt += 1
                p = int(self.parent[p])
            own_len[i] = cnt
        self.iso_own_len = own_len

        # Per-depth node groups for the vectorized (fallback) kernels.
        max_depth = int(self.depth.max()) if n else 0
        self.max_depth = max_depth
        order = np.argsort(self.depth, kind="stable").astype(np.int32)
        self.nodes_by_depth = [
            order[np.searchsorted(self.depth[order], d): np.searchsorted(self.depth[order], d + 1)]
            for d in range(max_depth + 1)
        ]
        return self

    # -- lookups -----------------------------------------------------------

    def infoset(self, key: str) -> InfoSet:
        return self.infosets[self.key_index[key]]

    def children_of(self, node: int) -> np.ndarray:
        start = self.child_start[node]
        return self.children[start : start + self.child_count[node]]

    def infosets_of(self, player: int) -> list[InfoSet]:
        return [s for s in self.infosets if s.owner == player]

    @property
    def n_infosets(self) -> int:
        return len(self.infosets)

    def __repr__(self) -> str:
        return f"GameTree(nodes={self.n_nodes}, infosets={self.n_infosets}, slots={self.n_slots})"


class BehaviorProfile:
    """Per-information-set action distributions, stored flat.

    ``probs`` is a single float64 vector; information set ``s`` owns the
    window ``probs[s.slot : s.slot + s.n_actions]``.
    """

    __slots__ = ("tree", "probs")

    def __init__(self, tree: GameTree, probs: np.ndarray):
        probs = np.asarray(probs, dtype=np.float64)
        if probs.shape != (tree.n_slots,):
            raise ValueError(f"expected {tree.n_slots} probabilities, got shape {probs.shape}")
        self.tree = tree
        self.probs = probs

    @classmethod
    def uniform(cls, tree: GameTree) -> "BehaviorProfile":
        p = np.empty(tree.n_slots)
        for s in tree.infosets:
            p[s.slot : s.slot + s.n_actions] = 1.0 / s.n_actions
        return cls(tree, p)

    @classmethod
    def random(cls, tree: GameTree, rng: np.random.Generator) -> "BehaviorProfile":
        """Each information set sampled uniformly from the simplex."""
        p = np.empty(tree.n_slots)
        for s in tree.infosets:
            g = rng.gamma(1.0, 1.0, size=s.n_actions)
            p[s.slot : s.slot + s.n_actions] = g / g.sum()
        return cls(tree, p)

    @classmethod
    def from_mapping(cls, tree: GameTree, mapping: Mapping[str, Iterable[float]]) -> "BehaviorProfile":
        missing = set(tree.key_index) - set(mapping)
        extra = set(mapping) - set(tree.key_index)
        if missing or extra:
            parts = []
            if missing:
                parts.append(f"missing keys: {sorted(missing)[:5]}{'...' if len(missing) > 5 else ''}")
            if extra:
                parts.append(f"unknown keys: {sorted(extra)[:5]}{'...' if len(extra) > 5 else ''}")
            raise KeyError("; ".join(parts))
        p = np.empty(tree.n_slots)
        for key, row in mapping.items():
            s = tree.infoset(key)
            row = np.asarray(list(row), dtype=np.float64)
            if row.shape != (s.n_actions,):
                raise ValueError(f"{key}: expected {s.n_actions} probabilities, got {row.shape}")
            p[s.slot : s.slot + s.n_actions] = row
        return cls(tree, p)

    def to_mapping(self) -> dict[str, list[float]]:
        return {s.key: [float(x) for x in self[s.key]] for s in self.tree.infosets}

    def __getitem__(self, key: str) -> np.ndarray:
        s = self.tree.infoset(key)
        return self.probs[s.slot : s.slot + s.n_actions]

    def __setitem__(self, key: str, row: Iterable[float]) -> None:
        s = self.tree.infoset(key)
        self.probs[s.slot : s.slot + s.n_actions] = np.asarray(list(row), dtype=np.float64)

    def copy(self) -> "BehaviorProfile":
        return BehaviorProfile(self.tree, self.probs.copy())

    def check(self, epsilon: float = 0.0, tol: float = PROB_TOL) -> list[str]:
        """Return normalization / floor violations (empty when valid)."""
        out = []
        for s in self.tree.infosets:
            row = self[s.key]
            if np.any(row < -tol) or (epsilon > 0 and np.any(row < epsilon - tol)):
                out.append(f"{s.key}: probability below floor: {row.tolist()}")
            total = row.sum()
            if abs(total - 1.0) > tol:
                out.append(f"{s.key}: probabilities sum to {total!r}")
        return out


def validate_game(tree: GameTree) -> ValidationReport:
    """Check GameTree invariants; violations are data, not exceptions."""
    v: list[str] = []

    for node in np.nonzero(tree.kind == CHANCE)[0]:
        lo = tree.child_start[node]
        hi = lo + tree.child_count[node]
        total = float(tree.edge_chance_prob[lo:hi].sum())
        if abs(total - 1.0) > CHANCE_TOL:
            v.append(f"node {node}: chance distribution sums to {total:.12g}")
        if np.any(tree.edge_chance_prob[lo:hi] < 0):
            v.append(f"node {node}: negative chance probability")

    for node in np.nonzero(tree.kind == LEAF)[0]:
        if tree.child_count[node] != 0:
            v.append(f"node {node}: leaf has children")

    for s in tree.infosets:
        if not s.members:
            v.append(f"{s.key}: empty information set")
            continue
        counts = {int(tree.child_count[m]) for m in s.members}
        if len(counts) > 1:
            v.append(f"{s.key}: members disagree on action count: {sorted(counts)}")
        owners = {int(tree.owner[m]) for m in s.members}
        if owners != {s.owner}:
            v.append(f"{s.key}: members disagree on owner: {sorted(owners)}")
        histories = {_own_history(tree, m, s.owner) for m in s.members}
        if len(histories) > 1:
            v.append(f"{s.key}: perfect recall violated (distinct own histories: {sorted(histories)})")

    return ValidationReport(v)


def _own_history(tree: GameTree, node: int, player: int) -> tuple[tuple[int, int], ...]:
    """Sequence of (infoset, action) pairs of ``player`` on the root path."""
    seq = []
    v = node
    p = int(tree.parent[v])
    while p >= 0:
        if tree.kind[p] == DECISION and tree.owner[p] == player:
            seq.append((int(tree.infoset_id[p]), int(tree.parent_action[v])))
        v = p
        p = int(tree.parent[v])
    return tuple(reversed(seq))
