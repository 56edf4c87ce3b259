# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled tree-sweep kernels.

Preorder layout guarantees parent < child, so one ascending pass computes
reach probabilities and one descending pass pushes expected values (and, for
the evaluating player's decision edges, counterfactual action utilities) up
toward the root.  No recursion, no per-node allocation; runs without the GIL.
"""

import numpy as np

cimport numpy as cnp


cdef void _down(const signed char[::1] kind,
                const signed char[::1] owner,
                const signed char[::1] parent_owner,
                const int[::1] infoset_id,
                const int[::1] parent,
                const int[::1] parent_slot,
                const double[::1] parent_prob,
                const double[::1] probs,
                int pov, Py_ssize_t n,
                double[::1] own, double[::1] opp,
                double[::1] iso_own, double[::1] iso_opp) noexcept nogil:
    cdef Py_ssize_t v
    cdef int p, slot, i
    cdef double pe
    own[0] = 1.0
    opp[0] = 1.0
    for v in range(iso_opp.shape[0]):
        iso_opp[v] = 0.0
        iso_own[v] = 0.0
    if kind[0] == 1 and owner[0] == pov:
        iso_opp[infoset_id[0]] = 1.0
        iso_own[infoset_id[0]] = 1.0
    for v in range(1, n):
        p = parent[v]
        slot = parent_slot[v]
        pe = probs[slot] if slot >= 0 else parent_prob[v]
        if parent_owner[v] == pov:
            own[v] = own[p] * pe
            opp[v] = opp[p]
        else:
            own[v] = own[p]
            opp[v] = opp[p] * pe
        if kind[v] == 1 and owner[v] == pov:
            i = infoset_id[v]
            iso_opp[i] += opp[v]
            iso_own[i] = own[v]


cdef double _push_up(const signed char[::1] kind,
                     const signed char[::1] parent_owner,
                     const int[::1] parent,
                     const int[::1] parent_slot,
                     const double[::1] parent_prob,
                     const double[::1] leaf_util,
                     const double[::1] probs,
                     const double[::1] opp,
                     int pov, double sign, bint want_util, Py_ssize_t n,
                     double[::1] values, double[::1] util) noexcept nogil:
    """Descending value push; fills ``util`` with the evaluating player's
    unnormalized counterfactual action utilities when ``want_util``."""
    cdef Py_ssize_t v
    cdef int p, slot
    cdef double pe, val
    if want_util:
        for v in range(util.shape[0]):
            util[v] = 0.0
    for v in range(n):
        values[v] = leaf_util[v] if kind[v] == 2 else 0.0
    for v in range(n - 1, 0, -1):
        p = parent[v]
        slot = parent_slot[v]
        val = values[v]
        if slot >= 0:
            values[p] += probs[slot] * val
            if want_util and parent_owner[v] == pov:
                util[slot] += opp[p] * sign * val
        else:
            values[p] += parent_prob[v] * val
    return values[0]


def evaluate(tree, double[::1] probs, int pov, ws):
    cdef signed char[::1] kind = tree.kind
    cdef signed char[::1] owner = tree.owner
    cdef signed char[::1] parent_owner = tree.parent_owner
    cdef int[::1] infoset_id = tree.infoset_id
    cdef int[::1] parent = tree.parent
    cdef int[::1] parent_slot = tree.parent_slot
    cdef double[::1] parent_prob = tree.parent_prob
    cdef double[::1] leaf_util = tree.leaf_util
    cdef double[::1] own = ws.own_reach
    cdef double[::1] opp = ws.opp_reach
    cdef double[::1] values = ws.values
    cdef double[::1] util = ws.util
    cdef double[::1] iso_own = ws.iso_own
    cdef double[::1] iso_opp = ws.iso_opp
    cdef Py_ssize_t n = tree.n_nodes
    cdef double sign = 1.0 if pov == 1 else -1.0
    cdef double root
    with nogil:
        _down(kind, owner, parent_owner, infoset_id, parent, parent_slot,
              parent_prob, probs, pov, n, own, opp, iso_own, iso_opp)
        root = _push_up(kind, parent_owner, parent, parent_slot, parent_prob,
                        leaf_util, probs, opp, pov, sign, True, n, values, util)
    return root


def best_response(tree, double[::1] probs, int pov, double epsilon, ws, double[::1] out):
    cdef signed char[::1] kind = tree.kind
    cdef signed char[::1] owner = tree.owner
    cdef signed char[::1] parent_owner = tree.parent_owner
    cdef int[::1] infoset_id = tree.infoset_id
    cdef int[::1] parent = tree.parent
    cdef int[::1] parent_slot = tree.parent_slot
    cdef double[::1] parent_prob = tree.parent_prob
    cdef double[::1] leaf_util = tree.leaf_util
    cdef signed char[::1] iso_owner = tree.iso_owner
    cdef int[::1] iso_nact = tree.iso_nact
    cdef int[::1] iso_slot = tree.iso_slot
    cdef int[::1] iso_own_len = tree.iso_own_len
    cdef double[::1] own = ws.own_reach
    cdef double[::1] opp = ws.opp_reach
    cdef double[::1] values = ws.values
    cdef double[::1] util = ws.util
    cdef double[::1] iso_own = ws.iso_own
    cdef double[::1] iso_opp = ws.iso_opp
    cdef double[::1] eff = ws.eff
    cdef Py_ssize_t n = tree.n_nodes
    cdef Py_ssize_t n_iso = tree.n_infosets
    cdef double sign = 1.0 if pov == 1 else -1.0
    cdef int lvl, max_lvl = 0
    cdef Py_ssize_t i, a, best, lo, na
    cdef double hi, root
    with nogil:
        for i in range(n_iso):
            if iso_owner[i] == pov and iso_own_len[i] > max_lvl:
                max_lvl = iso_own_len[i]
        _down(kind, owner, parent_owner, infoset_id, parent, parent_slot,
              parent_prob, probs, pov, n, own, opp, iso_own, iso_opp)
        for i in range(probs.shape[0]):
            eff[i] = probs[i]
        for lvl in range(max_lvl, -1, -1):
            _push_up(kind, parent_owner, parent, parent_slot, parent_prob,
                     leaf_util, eff, opp, pov, sign, True, n, values, util)
            for i in range(n_iso):
                if iso_owner[i] != pov or iso_own_len[i] != lvl:
                    continue
                lo = iso_slot[i]
                na = iso_nact[i]
                best = 0
                hi = util[lo]
                for a in range(1, na):
                    if util[lo + a] > hi:
                        hi = util[lo + a]
                        best = a
                for a in range(na):
                    eff[lo + a] = epsilon
                eff[lo + best] += 1.0 - na * epsilon
        root = _push_up(kind, parent_owner, parent, parent_slot, parent_prob,
                        leaf_util, eff, opp, pov, sign, False, n, values, util)
        for i in range(n_iso):
            if iso_owner[i] == pov:
                lo = iso_slot[i]
                for a in range(iso_nact[i]):
                    out[lo + a] = eff[lo + a]
    return root * sign


def infoset_own_reach(tree, double[::1] probs, int pov, double[::1] out):
    cdef signed char[::1] kind = tree.kind
    cdef signed char[::1] owner = tree.owner
    cdef signed char[::1] parent_owner = tree.parent_owner
    cdef int[::1] infoset_id = tree.infoset_id
    cdef int[::1] parent = tree.parent
    cdef int[::1] parent_slot = tree.parent_slot
    cdef double[::1] parent_prob = tree.parent_prob
    cdef int[::1] first_member = tree.iso_first_member
    cdef Py_ssize_t n = tree.n_nodes, i
    own_arr = np.empty(n)
    opp_arr = np.empty(n)
    iso_arr = np.empty(out.shape[0])
    cdef double[::1] own = own_arr
    cdef double[::1] opp = opp_arr
    cdef double[::1] iso_opp = iso_arr
    with nogil:
        _down(kind, owner, parent_owner, infoset_id, parent, parent_slot,
              parent_prob, probs, pov, n, own, opp, out, iso_opp)
        for i in range(out.shape[0]):
            out[i] = own[first_member[i]]
