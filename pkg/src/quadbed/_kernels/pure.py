"""Pure-Python twins of the compiled kernels.

Every function here is the reference implementation: the Cython core in
``_core.pyx`` must produce bit-identical results (same iteration orders, same
PRNG, same tie-breaks).  Keep the two files in lockstep.
"""
from __future__ import annotations

import math

_MASK64 = (1 << 64) - 1
_INV53 = 1.0 / 9007199254740992.0  # 2^-53


def _mix64(z):
    # splitmix64 finalizer; used to derive per-restart PRNG states
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def _rng_step(state):
    # xorshift64* ; returns (new_state, output)
    state ^= state >> 12
    state = (state ^ (state << 25)) & _MASK64
    state ^= state >> 27
    return state, (state * 2685821657736338717) & _MASK64


def qubo_min_exact(n, lin, nbr_ptr, nbr_idx, nbr_val, offset):
    """Exhaustive QUBO minimum; lexicographic enumeration with flip updates.

    Variable 0 is the most significant enumeration bit, so the first strict
    minimum found is the lexicographically smallest minimizer.
    """
    x = [0] * n
    energy = offset
    best = energy
    best_x = tuple(x)
    for c in range(1, 1 << n):
        m = c ^ (c - 1)
        j = 0
        while m:
            v = n - 1 - j
            field = lin[v]
            for t in range(nbr_ptr[v], nbr_ptr[v + 1]):
                if x[nbr_idx[t]]:
                    field += nbr_val[t]
            if x[v]:
                x[v] = 0
                energy -= field
            else:
                x[v] = 1
                energy += field
            j += 1
            m >>= 1
        if energy < best:
            best = energy
            best_x = tuple(x)
    return best, best_x


def min_over_aux(nl, na, lin, nbr_ptr, nbr_idx, nbr_val, offset):
    """For each of the 2^nl logical assignments, the minimum over aux bits.

    Output index: bit (nl-1-i) of the index holds the value of variable i,
    i.e. assignments are enumerated lexicographically.
    """
    n = nl + na
    x = [0] * n
    energy = offset

    def toggle(v):
        nonlocal energy
        field = lin[v]
        for t in range(nbr_ptr[v], nbr_ptr[v + 1]):
            if x[nbr_idx[t]]:
                field += nbr_val[t]
        if x[v]:
            x[v] = 0
            energy -= field
        else:
            x[v] = 1
            energy += field

    out = []
    for cl in range(1 << nl):
        if cl:
            m = cl ^ (cl - 1)
            j = 0
            while m:
                toggle(nl - 1 - j)
                j += 1
                m >>= 1
        best = energy
        for ca in range(1, 1 << na):
            m = ca ^ (ca - 1)
            j = 0
            while m:
                toggle(n - 1 - j)
                j += 1
                m >>= 1
            if energy < best:
                best = energy
        for v in range(nl, n):
            if x[v]:
                toggle(v)
        out.append(best)
    return out


def sa_anneal(n, lin, nbr_ptr, nbr_idx, nbr_val, offset, sweeps, beta0, beta1, seed, restarts):
    """Single-bit-flip Metropolis under a geometric beta schedule.

    Deterministic: xorshift64* seeded per restart from the master seed; the
    best state visited across restarts wins, ties broken by restart index.
    """
    best_energy = None
    best_bits = None
    best_restart = -1
    for r in range(restarts):
        state = _mix64((seed ^ (r * 0x9E3779B97F4A7C15)) & _MASK64)
        if state == 0:
            state = 0x9E3779B97F4A7C15
        x = [0] * n
        energy = offset
        for v in range(n):
            state, out = _rng_step(state)
            if out >> 63:
                x[v] = 1
                field = lin[v]
                for t in range(nbr_ptr[v], nbr_ptr[v + 1]):
                    if x[nbr_idx[t]]:
                        field += nbr_val[t]
                energy += field
        r_best = energy
        r_best_x = tuple(x)
        for t_sweep in range(sweeps):
            if sweeps > 1:
                beta = beta0 * math.pow(beta1 / beta0, t_sweep / (sweeps - 1.0))
            else:
                beta = beta1
            for v in range(n):
                field = lin[v]
                for t in range(nbr_ptr[v], nbr_ptr[v + 1]):
                    if x[nbr_idx[t]]:
                        field += nbr_val[t]
                de = -field if x[v] else field
                if de <= 0:
                    accept = True
                else:
                    state, out = _rng_step(state)
                    u = (out >> 11) * _INV53
                    accept = u < math.exp(-beta * de)
                if accept:
                    if x[v]:
                        x[v] = 0
                        energy -= field
                    else:
                        x[v] = 1
                        energy += field
                    if energy < r_best:
                        r_best = energy
                        r_best_x = tuple(x)
        if best_energy is None or r_best < best_energy:
            best_energy = r_best
            best_bits = r_best_x
            best_restart = r
    return best_energy, best_bits, best_restart


class _BudgetHit(Exception):
    pass


def embed_dfs(n_host, cand_vertices, cand_nbr_vertices, level_cands, need_adj, sort_prev,
              max_total, node_budget):
    """Backtracking chain assignment over precomputed candidate chains.

    cand_vertices / cand_nbr_vertices: per candidate, the chain's host
    vertices and the neighborhood of the chain (chain vertices excluded).
    level_cands must list candidate indices in ascending order (candidates
    are globally sorted by (size, vertex tuple), so the budget check can
    stop a level early).  Returns (choice list | None, nodes, budget_hit).
    """
    masks = []
    nbrs = []
    sizes = []
    for verts, nbh in zip(cand_vertices, cand_nbr_vertices):
        m = 0
        for v in verts:
            m |= 1 << v
        b = 0
        for v in nbh:
            b |= 1 << v
        masks.append(m)
        nbrs.append(b)
        sizes.append(len(verts))

    n_levels = len(level_cands)
    chosen = [-1] * n_levels
    nodes = 0

    def rec(level, used, total):
        nonlocal nodes
        if level == n_levels:
            return True
        remaining = n_levels - level - 1
        floor = chosen[sort_prev[level]] if sort_prev[level] >= 0 else -1
        adj_masks = [nbrs[chosen[j]] for j in need_adj[level]]
        for ci in level_cands[level]:
            if ci <= floor:
                continue
            if total + sizes[ci] + remaining > max_total:
                break  # candidates sorted by size: no later one fits
            m = masks[ci]
            if m & used:
                continue
            ok = True
            for am in adj_masks:
                if not (am & m):
                    ok = False
                    break
            if not ok:
                continue
            nodes += 1
            if node_budget and nodes > node_budget:
                raise _BudgetHit
            chosen[level] = ci
            if rec(level + 1, used | m, total + sizes[ci]):
                return True
            chosen[level] = -1
        return False

    try:
        found = rec(0, 0, 0)
    except _BudgetHit:
        return None, nodes, True
    return (list(chosen) if found else None), nodes, False
