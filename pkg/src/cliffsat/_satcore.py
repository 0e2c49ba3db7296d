"""Compiled CDCL search kernel.

Literals are encoded as ints: variable v (1-based) becomes 2*(v-1) for the
positive literal and 2*(v-1)+1 for the negative one, so code^1 negates.
Clauses live in one flat array with offsets; the first two positions of each
clause are its watched literals, maintained by swapping within the clause.
Watch lists are intrusive linked lists over node ids 2*clause+slot.

The search is conflict-driven: unit propagation via the two-watched-literal
scheme, first-UIP conflict analysis with activity bumping, backjumping,
phase saving, and Luby-scheduled restarts.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _luby(i):
    """i-th term (0-based) of the Luby restart sequence 1,1,2,1,1,2,4,..."""
    size = 1
    seq = 0
    while size < i + 1:
        seq += 1
        size = 2 * size + 1
    while size - 1 != i:
        size = (size - 1) >> 1
        seq -= 1
        i = i % size
    return 1 << seq


@njit(cache=True)
def _propagate(lits, starts, whead, wnext, assign, level, reason, trail, trail_len, qhead, dlevel):
    """Exhaust unit propagation. Returns (conflict clause or -1, trail_len, qhead)."""
    while qhead < trail_len:
        p = trail[qhead]
        qhead += 1
        f = p ^ 1
        node = whead[f]
        whead[f] = -1
        while node != -1:
            nxt = wnext[node]
            c = node >> 1
            s = node & 1
            base = starts[c]
            other = lits[base + (1 - s)]
            oa = assign[other >> 1]
            oval = -1 if oa < 0 else oa ^ (other & 1)
            if oval == 1:
                # clause satisfied by the other watch; keep watching f
                wnext[node] = whead[f]
                whead[f] = node
            else:
                end = starts[c + 1]
                found = -1
                for k in range(base + 2, end):
                    q = lits[k]
                    qa = assign[q >> 1]
                    if qa < 0 or (qa ^ (q & 1)) == 1:
                        found = k
                        break
                if found >= 0:
                    w = lits[found]
                    lits[found] = f
                    lits[base + s] = w
                    wnext[node] = whead[w]
                    whead[w] = node
                else:
                    wnext[node] = whead[f]
                    whead[f] = node
                    if oval == 0:
                        # conflict: put the unvisited suffix back on f's list
                        while nxt != -1:
                            n2 = nxt
                            nxt = wnext[n2]
                            wnext[n2] = whead[f]
                            whead[f] = n2
                        return c, trail_len, qhead
                    v = other >> 1
                    assign[v] = (other & 1) ^ 1
                    level[v] = dlevel
                    reason[v] = c
                    trail[trail_len] = other
                    trail_len += 1
            node = nxt
    return -1, trail_len, qhead


@njit(cache=True)
def _analyze(confl, lits, starts, assign, level, reason, trail, trail_len, dlevel, seen, learnt, activity, var_inc):
    """First-UIP learning. Fills learnt[0:learnt_len]; returns (learnt_len, backjump level)."""
    counter = 0
    p = -1
    idx = trail_len - 1
    learnt_len = 1
    c = confl
    while True:
        base = starts[c]
        end = starts[c + 1]
        for k in range(base, end):
            q = lits[k]
            if q == p:
                continue
            v = q >> 1
            if seen[v] == 0 and level[v] > 0:
                seen[v] = 1
                activity[v] += var_inc
                if level[v] >= dlevel:
                    counter += 1
                else:
                    learnt[learnt_len] = q
                    learnt_len += 1
        while seen[trail[idx] >> 1] == 0:
            idx -= 1
        p = trail[idx]
        idx -= 1
        v = p >> 1
        seen[v] = 0
        counter -= 1
        if counter == 0:
            break
        c = reason[v]
    learnt[0] = p ^ 1
    btlevel = 0
    for k in range(1, learnt_len):
        lv = level[learnt[k] >> 1]
        if lv > btlevel:
            btlevel = lv
        seen[learnt[k] >> 1] = 0
    return learnt_len, btlevel


@njit(cache=True)
def _backtrack(blevel, trail, trail_len, trail_lim, assign, reason, phase, dlevel):
    """Undo assignments above blevel, saving phases. Returns (trail_len, qhead, dlevel)."""
    if dlevel <= blevel:
        return trail_len, trail_len, dlevel
    bound = trail_lim[blevel + 1]
    for t in range(trail_len - 1, bound - 1, -1):
        code = trail[t]
        v = code >> 1
        phase[v] = assign[v]
        assign[v] = -1
        reason[v] = -1
    return bound, bound, blevel


@njit(cache=True)
def _grow_i32(arr, need):
    if need <= arr.shape[0]:
        return arr
    cap = arr.shape[0] * 2
    if cap < need:
        cap = need
    out = np.empty(cap, np.int32)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def _grow_i64(arr, need):
    if need <= arr.shape[0]:
        return arr
    cap = arr.shape[0] * 2
    if cap < need:
        cap = need
    out = np.empty(cap, np.int64)
    out[: arr.shape[0]] = arr
    return out


@njit(cache=True)
def solve_cnf(nv, lits_in, starts_in):
    """Decide satisfiability of a clause set over nv variables.

    lits_in: int32 literal codes, starts_in: int64 clause offsets.
    Returns (status, model, conflicts): status 1 = satisfiable with model as
    0/1 per variable, status 0 = unsatisfiable (model meaningless).
    """
    ncl0 = starts_in.shape[0] - 1
    model = np.zeros(nv, np.int8)
    conflicts = 0

    # working clause store with growth slack for learnt clauses
    lits = np.empty(max(lits_in.shape[0] * 2, 64), np.int32)
    lits[: lits_in.shape[0]] = lits_in
    lits_len = lits_in.shape[0]
    starts = np.empty(max(ncl0 * 2 + 16, 64), np.int64)
    starts[: ncl0 + 1] = starts_in
    n_clauses = ncl0

    assign = np.full(nv, -1, np.int8)
    level = np.zeros(nv, np.int32)
    reason = np.full(nv, -1, np.int64)
    trail = np.zeros(nv + 1, np.int32)
    trail_len = 0
    trail_lim = np.zeros(nv + 2, np.int64)
    dlevel = 0
    qhead = 0

    activity = np.zeros(nv, np.float64)
    var_inc = 1.0
    phase = np.zeros(nv, np.int8)
    seen = np.zeros(nv, np.uint8)
    learnt = np.zeros(nv + 1, np.int32)

    whead = np.full(2 * nv, -1, np.int64)
    wnext = np.full(2 * max(n_clauses, 1) + 16, -1, np.int64)

    # attach watches; enqueue unit clauses at level 0
    for c in range(n_clauses):
        base = starts[c]
        length = starts[c + 1] - base
        if length == 0:
            return 0, model, conflicts
        if length == 1:
            code = lits[base]
            v = code >> 1
            want = (code & 1) ^ 1
            if assign[v] < 0:
                assign[v] = want
                level[v] = 0
                trail[trail_len] = code
                trail_len += 1
            elif assign[v] != want:
                return 0, model, conflicts
        else:
            node0 = 2 * c
            lit0 = lits[base]
            wnext[node0] = whead[lit0]
            whead[lit0] = node0
            node1 = 2 * c + 1
            lit1 = lits[base + 1]
            wnext[node1] = whead[lit1]
            whead[lit1] = node1

    restart_idx = 0
    restart_limit = 100 * _luby(0)
    conflicts_since = 0

    while True:
        confl, trail_len, qhead = _propagate(
            lits, starts, whead, wnext, assign, level, reason, trail, trail_len, qhead, dlevel
        )
        if confl >= 0:
            conflicts += 1
            conflicts_since += 1
            if dlevel == 0:
                return 0, model, conflicts
            learnt_len, btlevel = _analyze(
                confl, lits, starts, assign, level, reason, trail, trail_len,
                dlevel, seen, learnt, activity, var_inc,
            )
            trail_len, qhead, dlevel = _backtrack(
                btlevel, trail, trail_len, trail_lim, assign, reason, phase, dlevel
            )
            asserting = learnt[0]
            v = asserting >> 1
            if learnt_len == 1:
                assign[v] = (asserting & 1) ^ 1
                level[v] = 0
                reason[v] = -1
                trail[trail_len] = asserting
                trail_len += 1
            else:
                # move a literal from the backjump level into the second watch slot
                for k in range(1, learnt_len):
                    if level[learnt[k] >> 1] == btlevel:
                        tmp = learnt[1]
                        learnt[1] = learnt[k]
                        learnt[k] = tmp
                        break
                cid = n_clauses
                lits = _grow_i32(lits, lits_len + learnt_len)
                for k in range(learnt_len):
                    lits[lits_len + k] = learnt[k]
                starts = _grow_i64(starts, n_clauses + 2)
                lits_len += learnt_len
                starts[n_clauses + 1] = lits_len
                n_clauses += 1
                if 2 * n_clauses > wnext.shape[0]:
                    wnext = _grow_i64(wnext, 2 * n_clauses + 16)
                node0 = 2 * cid
                wnext[node0] = whead[asserting]
                whead[asserting] = node0
                node1 = 2 * cid + 1
                lit1 = learnt[1]
                wnext[node1] = whead[lit1]
                whead[lit1] = node1
                assign[v] = (asserting & 1) ^ 1
                level[v] = btlevel
                reason[v] = cid
                trail[trail_len] = asserting
                trail_len += 1
            var_inc /= 0.95
            if var_inc > 1e100:
                for u in range(nv):
                    activity[u] *= 1e-100
                var_inc *= 1e-100
        else:
            if conflicts_since >= restart_limit:
                trail_len, qhead, dlevel = _backtrack(
                    0, trail, trail_len, trail_lim, assign, reason, phase, dlevel
                )
                conflicts_since = 0
                restart_idx += 1
                restart_limit = 100 * _luby(restart_idx)
                continue
            best = -1
            besta = -1.0
            for u in range(nv):
                if assign[u] < 0 and activity[u] > besta:
                    besta = activity[u]
                    best = u
            if best < 0:
                for u in range(nv):
                    model[u] = assign[u]
                return 1, model, conflicts
            dlevel += 1
            trail_lim[dlevel] = trail_len
            code = 2 * best + (phase[best] ^ 1)
            assign[best] = phase[best]
            level[best] = dlevel
            reason[best] = -1
            trail[trail_len] = code
            trail_len += 1
