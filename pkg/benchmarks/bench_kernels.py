"""Benchmark the pure-Python kernels against the compiled core.

Usage: python benchmarks/bench_kernels.py [--quick]
"""
import argparse
import random
import time

from quadbed._kernels import get_backend


def _random_qubo(rng, n, density=2):
    lin = [rng.randint(-6, 6) for _ in range(n)]
    pairs = {}
    for _ in range(density * n):
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
    return lin, ptr, idx, val, 0


def _embed_args(guest_name, host, max_aux, max_chain):
    from quadbed import embed as E
    from quadbed.gadgets import catalog

    guest = catalog()[guest_name]
    verts = sorted(guest.vertices, key=lambda v: (-guest.degree(v), v))
    chains, nbrs = E.candidate_chains(host, max_chain)
    pos = {v: i for i, v in enumerate(verts)}
    need = [[pos[u] for u in verts[:i] if guest.adjacent(u, verts[i])] for i in range(len(verts))]
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
    return (host.n, chains, nbrs, lc, need, sort_prev, len(verts) + max_aux, 0)


def bench(label, fn_pure, fn_compiled):
    t0 = time.perf_counter()
    r_pure = fn_pure()
    t_pure = time.perf_counter() - t0
    t0 = time.perf_counter()
    r_comp = fn_compiled()
    t_comp = time.perf_counter() - t0
    agree = "ok" if r_pure == r_comp else "MISMATCH"
    speedup = t_pure / t_comp if t_comp > 0 else float("inf")
    print(f"{label:<42}{t_pure:>9.3f}s {t_comp:>9.3f}s {speedup:>8.1f}x  {agree}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller workloads")
    args = ap.parse_args()

    pure = get_backend("pure")
    comp = get_backend("compiled")
    rng = random.Random(12345)

    n_exact = 18 if args.quick else 22
    qubo = _random_qubo(rng, n_exact)
    n_sa = 48
    qubo_sa = _random_qubo(rng, n_sa)
    sweeps = 500 if args.quick else 2000

    from quadbed.hardware import chimera

    grid = chimera(2, 2, 4)
    embed_find = _embed_args("K6", grid, 8, 3)
    embed_proof = _embed_args("K6", grid, 7, 3)

    print(f"{'kernel workload':<42}{'pure':>10} {'compiled':>10} {'speedup':>8}")
    print("-" * 78)
    bench(
        f"qubo_min_exact ({n_exact} vars)",
        lambda: pure.qubo_min_exact(n_exact, *qubo),
        lambda: comp.qubo_min_exact(n_exact, *qubo),
    )
    nl = n_exact - 6
    bench(
        f"min_over_aux ({nl}+6 vars)",
        lambda: pure.min_over_aux(nl, 6, *qubo),
        lambda: comp.min_over_aux(nl, 6, *qubo),
    )
    bench(
        f"sa_anneal ({n_sa} vars, {sweeps} sweeps x4)",
        lambda: pure.sa_anneal(n_sa, *qubo_sa, sweeps, 0.05, 8.0, 7, 4),
        lambda: comp.sa_anneal(n_sa, *qubo_sa, sweeps, 0.05, 8.0, 7, 4),
    )
    bench(
        "embed_dfs K6->chimera(2,2,4) find @8",
        lambda: pure.embed_dfs(*embed_find),
        lambda: comp.embed_dfs(*embed_find),
    )
    bench(
        "embed_dfs K6->chimera(2,2,4) proof @7",
        lambda: pure.embed_dfs(*embed_proof),
        lambda: comp.embed_dfs(*embed_proof),
    )


if __name__ == "__main__":
    main()
