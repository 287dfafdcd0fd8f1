"""Pure-Python and compiled kernels must agree bit for bit."""
import random

import pytest

from quadbed._kernels import backend_name, get_backend

pure = get_backend("pure")
try:
    compiled = get_backend("compiled")
except ImportError:  # pragma: no cover - extension not built
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernels not built")


def _random_qubo(rng, n):
    lin = [rng.randint(-6, 6) for _ in range(n)]
    pairs = {}
    for _ in range(rng.randint(0, 2 * n)):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        pairs[(min(i, j), max(i, j))] = rng.randint(-5, 5)
    adj = [[] for _ in range(n)]
    for (i, j), c in pairs.items():
        adj[i].append((j, c))
        adj[j].append((i, c))
    ptr, idx, val = [0], [], []
    for i in range(n):
        for j, c in sorted(adj[i]):
            idx.append(j)
            val.append(c)
        ptr.append(len(idx))
    return lin, ptr, idx, val, rng.randint(-4, 4)


def _brute_min(n, lin, ptr, idx, val, offset):
    best = None
    best_bits = None
    for code in range(1 << n):
        bits = [(code >> (n - 1 - i)) & 1 for i in range(n)]
        e = offset + sum(c * b for c, b in zip(lin, bits))
        for i in range(n):
            for t in range(ptr[i], ptr[i + 1]):
                j = idx[t]
                if i < j:
                    e += val[t] * bits[i] * bits[j]
        if best is None or e < best:
            best, best_bits = e, tuple(bits)
    return best, best_bits


def test_backend_reports_a_name():
    assert backend_name() in ("pure", "compiled")


@pytest.mark.parametrize("seed", range(6))
def test_qubo_min_matches_bruteforce(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 10)
    args = _random_qubo(rng, n)
    assert pure.qubo_min_exact(n, *args) == _brute_min(n, *args)


@needs_compiled
@pytest.mark.parametrize("seed", range(10))
def test_qubo_min_equivalence(seed):
    rng = random.Random(100 + seed)
    n = rng.randint(1, 13)
    args = _random_qubo(rng, n)
    assert pure.qubo_min_exact(n, *args) == compiled.qubo_min_exact(n, *args)


@needs_compiled
@pytest.mark.parametrize("seed", range(10))
def test_min_over_aux_equivalence(seed):
    rng = random.Random(200 + seed)
    n = rng.randint(2, 12)
    nl = rng.randint(1, n - 1)
    args = _random_qubo(rng, n)
    assert pure.min_over_aux(nl, n - nl, *args) == compiled.min_over_aux(nl, n - nl, *args)


@needs_compiled
@pytest.mark.parametrize("seed", range(6))
def test_sa_bit_identical(seed):
    rng = random.Random(300 + seed)
    n = rng.randint(2, 12)
    args = _random_qubo(rng, n)
    sa_args = (50, 0.05, 6.0, seed * 7919, 3)
    assert pure.sa_anneal(n, *args, *sa_args) == compiled.sa_anneal(n, *args, *sa_args)


@needs_compiled
def test_embed_dfs_equivalence_on_searches():
    from quadbed import embed as E
    from quadbed.gadgets import catalog
    from quadbed.hardware import chimera, pegasus

    cat = catalog()
    cases = [
        ("K4", chimera(1, 1, 4), 2, 2),
        ("K4", chimera(1, 1, 4), 1, 2),  # infeasible: proof node counts must agree
        ("K5-2aux", chimera(1, 1, 4), 3, 2),
        ("K6", pegasus(2), 2, 2),
        ("Coat-Hanger", pegasus(2), 1, 2),
    ]
    for guest_name, host, max_aux, max_chain in cases:
        guest = cat[guest_name]
        verts = sorted(guest.vertices, key=lambda v: (-guest.degree(v), v))
        chains, nbrs = E.candidate_chains(host, max_chain)
        pos = {v: i for i, v in enumerate(verts)}
        need = [
            [pos[u] for u in verts[:i] if guest.adjacent(u, verts[i])]
            for i in range(len(verts))
        ]
        comp = E._swap_components(guest)
        reps = E._orbit_representatives(host, max_chain)
        sort_prev = []
        for i, v in enumerate(verts):
            prev = -1
            for j in range(i - 1, -1, -1):
                if comp[verts[j]] == comp[v] and not (j == 0 and reps is not None):
                    prev = j
                    break
            sort_prev.append(prev)
        nbr_count = [len(nb) for nb in nbrs]
        lc = []
        for i, v in enumerate(verts):
            base = reps if (i == 0 and reps is not None) else list(range(len(chains)))
            lc.append([ci for ci in base if nbr_count[ci] >= guest.degree(v)])
        args = (host.n, chains, nbrs, lc, need, sort_prev, len(verts) + max_aux, 0)
        assert pure.embed_dfs(*args) == compiled.embed_dfs(*args)


@needs_compiled
def test_embed_dfs_budget_behaviour_identical():
    chains = [(0,), (1,), (2,), (0, 1), (1, 2)]
    nbrs = [(1,), (0, 2), (1,), (2,), (0,)]
    lc = [[0, 1, 2, 3, 4]] * 3
    need = [[], [0], [0, 1]]
    sort_prev = [-1, -1, -1]
    args = (3, chains, nbrs, lc, need, sort_prev, 4, 2)
    assert pure.embed_dfs(*args) == compiled.embed_dfs(*args)
