# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel core; must mirror pure.py exactly (orders, PRNG, ties)."""

from libc.math cimport exp, pow
from libc.stdlib cimport malloc, free

import numpy as np

ctypedef unsigned long long u64
ctypedef long long i64

cdef u64 _MASK64 = <u64>0xFFFFFFFFFFFFFFFF
cdef double _INV53 = 1.0 / 9007199254740992.0


cdef inline u64 _mix64(u64 z) nogil:
    z = z + <u64>0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * <u64>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <u64>0x94D049BB133111EB
    return z ^ (z >> 31)


cdef inline u64 _rng_step(u64* state) nogil:
    cdef u64 s = state[0]
    s ^= s >> 12
    s ^= s << 25
    s ^= s >> 27
    state[0] = s
    return s * <u64>2685821657736338717


def qubo_min_exact(int n, lin, nbr_ptr, nbr_idx, nbr_val, offset):
    cdef i64[::1] clin = np.asarray(lin, dtype=np.int64)
    cdef i64[::1] cptr = np.asarray(nbr_ptr, dtype=np.int64)
    cdef i64[::1] cidx = np.asarray(nbr_idx, dtype=np.int64) if len(nbr_idx) else np.zeros(1, dtype=np.int64)
    cdef i64[::1] cval = np.asarray(nbr_val, dtype=np.int64) if len(nbr_val) else np.zeros(1, dtype=np.int64)
    cdef i64 energy = offset
    cdef i64 best = energy
    cdef i64 field
    cdef u64 c, m
    cdef int j, v, t
    cdef char* x = <char*>malloc(n if n else 1)
    cdef char* bx = <char*>malloc(n if n else 1)
    if x == NULL or bx == NULL:
        raise MemoryError()
    for v in range(n):
        x[v] = 0
        bx[v] = 0
    try:
        for c in range(1, (<u64>1) << n):
            m = c ^ (c - 1)
            j = 0
            while m:
                v = n - 1 - j
                field = clin[v]
                for t in range(cptr[v], cptr[v + 1]):
                    if x[cidx[t]]:
                        field += cval[t]
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
                for v in range(n):
                    bx[v] = x[v]
        return int(best), tuple(int(bx[v]) for v in range(n))
    finally:
        free(x)
        free(bx)


def min_over_aux(int nl, int na, lin, nbr_ptr, nbr_idx, nbr_val, offset):
    cdef i64[::1] clin = np.asarray(lin, dtype=np.int64)
    cdef i64[::1] cptr = np.asarray(nbr_ptr, dtype=np.int64)
    cdef i64[::1] cidx = np.asarray(nbr_idx, dtype=np.int64) if len(nbr_idx) else np.zeros(1, dtype=np.int64)
    cdef i64[::1] cval = np.asarray(nbr_val, dtype=np.int64) if len(nbr_val) else np.zeros(1, dtype=np.int64)
    cdef int n = nl + na
    cdef i64 energy = offset
    cdef i64 best, field
    cdef u64 cl, ca, m
    cdef int j, v, t
    out = []
    cdef char* x = <char*>malloc(n if n else 1)
    if x == NULL:
        raise MemoryError()
    for v in range(n):
        x[v] = 0
    try:
        for cl in range((<u64>1) << nl):
            if cl:
                m = cl ^ (cl - 1)
                j = 0
                while m:
                    v = nl - 1 - j
                    field = clin[v]
                    for t in range(cptr[v], cptr[v + 1]):
                        if x[cidx[t]]:
                            field += cval[t]
                    if x[v]:
                        x[v] = 0
                        energy -= field
                    else:
                        x[v] = 1
                        energy += field
                    j += 1
                    m >>= 1
            best = energy
            for ca in range(1, (<u64>1) << na):
                m = ca ^ (ca - 1)
                j = 0
                while m:
                    v = n - 1 - j
                    field = clin[v]
                    for t in range(cptr[v], cptr[v + 1]):
                        if x[cidx[t]]:
                            field += cval[t]
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
            for v in range(nl, n):
                if x[v]:
                    field = clin[v]
                    for t in range(cptr[v], cptr[v + 1]):
                        if x[cidx[t]]:
                            field += cval[t]
                    x[v] = 0
                    energy -= field
            out.append(int(best))
        return out
    finally:
        free(x)


def sa_anneal(int n, lin, nbr_ptr, nbr_idx, nbr_val, offset,
              int sweeps, double beta0, double beta1, seed, int restarts):
    cdef i64[::1] clin = np.asarray(lin, dtype=np.int64)
    cdef i64[::1] cptr = np.asarray(nbr_ptr, dtype=np.int64)
    cdef i64[::1] cidx = np.asarray(nbr_idx, dtype=np.int64) if len(nbr_idx) else np.zeros(1, dtype=np.int64)
    cdef i64[::1] cval = np.asarray(nbr_val, dtype=np.int64) if len(nbr_val) else np.zeros(1, dtype=np.int64)
    cdef u64 master = <u64>(int(seed) & 0xFFFFFFFFFFFFFFFF)
    cdef u64 state, outv
    cdef i64 energy, field, de, r_best
    cdef double beta, u
    cdef int r, v, t, t_sweep, accept
    best_energy = None
    best_bits = None
    best_restart = -1
    cdef char* x = <char*>malloc(n if n else 1)
    cdef char* rbx = <char*>malloc(n if n else 1)
    if x == NULL or rbx == NULL:
        raise MemoryError()
    try:
        for r in range(restarts):
            state = _mix64(master ^ (<u64>r * <u64>0x9E3779B97F4A7C15))
            if state == 0:
                state = <u64>0x9E3779B97F4A7C15
            energy = offset
            for v in range(n):
                x[v] = 0
            for v in range(n):
                outv = _rng_step(&state)
                if outv >> 63:
                    x[v] = 1
                    field = clin[v]
                    for t in range(cptr[v], cptr[v + 1]):
                        if x[cidx[t]]:
                            field += cval[t]
                    energy += field
            r_best = energy
            for v in range(n):
                rbx[v] = x[v]
            for t_sweep in range(sweeps):
                if sweeps > 1:
                    beta = beta0 * pow(beta1 / beta0, t_sweep / (sweeps - 1.0))
                else:
                    beta = beta1
                for v in range(n):
                    field = clin[v]
                    for t in range(cptr[v], cptr[v + 1]):
                        if x[cidx[t]]:
                            field += cval[t]
                    de = -field if x[v] else field
                    if de <= 0:
                        accept = 1
                    else:
                        outv = _rng_step(&state)
                        u = <double>(outv >> 11) * _INV53
                        accept = 1 if u < exp(-beta * <double>de) else 0
                    if accept:
                        if x[v]:
                            x[v] = 0
                            energy -= field
                        else:
                            x[v] = 1
                            energy += field
                        if energy < r_best:
                            r_best = energy
                            for t in range(n):
                                rbx[t] = x[t]
            if best_energy is None or r_best < best_energy:
                best_energy = int(r_best)
                best_bits = tuple(int(rbx[v]) for v in range(n))
                best_restart = r
        return best_energy, best_bits, best_restart
    finally:
        free(x)
        free(rbx)


def embed_dfs(int n_host, cand_vertices, cand_nbr_vertices, level_cands, need_adj,
              sort_prev, int max_total, long long node_budget):
    cdef int W = (n_host + 63) >> 6
    cdef int n_cand = len(cand_vertices)
    cdef int n_levels = len(level_cands)
    masks_np = np.zeros((n_cand, W), dtype=np.uint64)
    nbrs_np = np.zeros((n_cand, W), dtype=np.uint64)
    sizes_np = np.zeros(n_cand, dtype=np.int64)
    cdef int i, v
    for i in range(n_cand):
        for v in cand_vertices[i]:
            masks_np[i, v >> 6] |= (<u64>1) << (v & 63)
        for v in cand_nbr_vertices[i]:
            nbrs_np[i, v >> 6] |= (<u64>1) << (v & 63)
        sizes_np[i] = len(cand_vertices[i])
    cdef u64[:, ::1] masks = masks_np
    cdef u64[:, ::1] nbrs = nbrs_np
    cdef i64[::1] sizes = sizes_np

    lc_ptr_np = np.zeros(n_levels + 1, dtype=np.int64)
    lc_flat_list = []
    na_ptr_np = np.zeros(n_levels + 1, dtype=np.int64)
    na_flat_list = []
    for i in range(n_levels):
        lc_flat_list.extend(level_cands[i])
        lc_ptr_np[i + 1] = len(lc_flat_list)
        na_flat_list.extend(need_adj[i])
        na_ptr_np[i + 1] = len(na_flat_list)
    cdef i64[::1] lc_ptr = lc_ptr_np
    cdef i64[::1] lc_flat = np.asarray(lc_flat_list, dtype=np.int64) if lc_flat_list else np.zeros(1, dtype=np.int64)
    cdef i64[::1] na_ptr = na_ptr_np
    cdef i64[::1] na_flat = np.asarray(na_flat_list, dtype=np.int64) if na_flat_list else np.zeros(1, dtype=np.int64)
    cdef i64[::1] sprev = np.asarray(sort_prev, dtype=np.int64) if n_levels else np.zeros(1, dtype=np.int64)

    used_np = np.zeros((n_levels + 1, W), dtype=np.uint64)
    cdef u64[:, ::1] used = used_np
    chosen_np = np.full(n_levels, -1, dtype=np.int64)
    cdef i64[::1] chosen = chosen_np
    pos_np = np.zeros(n_levels, dtype=np.int64)
    cdef i64[::1] pos = pos_np
    totals_np = np.zeros(n_levels + 1, dtype=np.int64)
    cdef i64[::1] totals = totals_np

    cdef long long nodes = 0
    cdef int level = 0
    cdef int found = 0
    cdef int budget_hit = 0
    cdef i64 ci, floor_ci, p, o
    cdef int w, ok, j
    cdef u64 overlap

    if n_levels == 0:
        return [], 0, False
    pos[0] = lc_ptr[0]
    while True:
        if level == n_levels:
            found = 1
            break
        ci = -1
        floor_ci = chosen[sprev[level]] if sprev[level] >= 0 else -1
        p = pos[level]
        while p < lc_ptr[level + 1]:
            ci = lc_flat[p]
            if ci <= floor_ci:
                p += 1
                ci = -1
                continue
            if totals[level] + sizes[ci] + (n_levels - level - 1) > max_total:
                p = lc_ptr[level + 1]  # sorted by size: nothing later fits
                ci = -1
                break
            ok = 1
            for w in range(W):
                if masks[ci, w] & used[level, w]:
                    ok = 0
                    break
            if ok:
                for j in range(na_ptr[level], na_ptr[level + 1]):
                    o = chosen[na_flat[j]]
                    overlap = 0
                    for w in range(W):
                        overlap |= nbrs[o, w] & masks[ci, w]
                    if overlap == 0:
                        ok = 0
                        break
            if ok:
                break
            p += 1
            ci = -1
        if ci >= 0:
            nodes += 1
            if node_budget and nodes > node_budget:
                budget_hit = 1
                break
            chosen[level] = ci
            pos[level] = p + 1
            for w in range(W):
                used[level + 1, w] = used[level, w] | masks[ci, w]
            totals[level + 1] = totals[level] + sizes[ci]
            level += 1
            if level < n_levels:
                pos[level] = lc_ptr[level]
        else:
            level -= 1
            if level < 0:
                break
            chosen[level] = -1
    if budget_hit:
        return None, int(nodes), True
    if found:
        return [int(chosen[i]) for i in range(n_levels)], int(nodes), False
    return None, int(nodes), False
