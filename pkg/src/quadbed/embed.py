"""Minor embedding of gadget graphs into hardware graphs.

Chains are connected, pairwise-disjoint host vertex sets, one per guest
vertex, such that every guest edge is covered by a host edge between the two
chains.  The search backtracks over guest vertices in degree-descending
order, assigning precomputed candidate chains (connected subsets up to the
chain-length limit), pruning on disjointness, edge coverage and the aux
budget.  Exhaustive within its limits: a None result is a proof that no
embedding satisfies them.

Symmetry reductions (both optional and sound):
* host: the first guest vertex only tries orbit representatives of the
  candidate chains under the host automorphism group;
* guest: chains assigned to transposition-equivalent guest vertices are
  forced into ascending candidate order (skipping the orbit-restricted
  first vertex, which keeps the two reductions compatible).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import _kernels
from .errors import EmbedLimitError, SearchBudgetExceededError
from .gadgets import GadgetGraph
from .hardware import HostGraph
from .pbf import Polynomial

MAX_HOST = 512
_AUT_HOST_LIMIT = 80  # compute host automorphisms only for hosts this small


@dataclass(frozen=True)
class EmbedLimits:
    max_aux: int = 0
    max_chain_len: int = 1
    node_budget: int = 0  # 0 = unlimited

    def __post_init__(self):
        if self.max_aux < 0 or self.max_chain_len < 1 or self.node_budget < 0:
            raise EmbedLimitError("limits out of supported range")


@dataclass(frozen=True)
class Embedding:
    chains: dict  # guest vertex -> tuple of host vertex indices

    @property
    def aux_count(self) -> int:
        return sum(len(c) for c in self.chains.values()) - len(self.chains)

    def max_chain_len(self) -> int:
        return max((len(c) for c in self.chains.values()), default=0)

    def to_labels(self, host: HostGraph) -> dict:
        return {g: [host.label_text(v) for v in chain] for g, chain in sorted(self.chains.items())}


@dataclass(frozen=True)
class EmbeddingReport:
    ok: bool
    violation: Optional[str] = None
    witness: Optional[tuple] = None


def validate_embedding(guest: GadgetGraph, host: HostGraph, e: Embedding) -> EmbeddingReport:
    """Check the four embedding invariants; names the first violation."""
    for g, chain in e.chains.items():
        for v in chain:
            if not (0 <= v < host.n):
                raise ValueError(f"unknown host vertex {v} in chain of {g!r}")
    for g in guest.vertices:
        if g not in e.chains or not e.chains[g]:
            return EmbeddingReport(False, "missing chain", (g,))
    seen = {}
    for g in sorted(e.chains):
        for v in e.chains[g]:
            if v in seen:
                return EmbeddingReport(False, "chains not disjoint", (seen[v], g, v))
            seen[v] = g
    for g in sorted(e.chains):
        chain = set(e.chains[g])
        start = min(chain)
        reached = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for u in host.adjacency[v]:
                if u in chain and u not in reached:
                    reached.add(u)
                    stack.append(u)
        if reached != chain:
            return EmbeddingReport(False, "chain disconnected", (g, tuple(sorted(chain - reached))))
    for a, b in sorted(tuple(sorted(edge)) for edge in guest.edges):
        ca, cb = e.chains[a], e.chains[b]
        if not any(u in host.adjacency[v] for v in ca for u in cb):
            return EmbeddingReport(False, "guest edge uncovered", (a, b))
    return EmbeddingReport(True)


def polynomial_graph(p: Polynomial, name: str = "problem") -> GadgetGraph:
    """Connectivity graph of a quadratic polynomial (for embedding)."""
    edges = {m for m in p.terms if len(m) == 2}
    return GadgetGraph(name, tuple(sorted(p.variables)), (), frozenset(edges))


# ---------------------------------------------------------------------------
# preprocessing caches (host-keyed)


def _host_cache(host: HostGraph) -> dict:
    cache = host.__dict__.get("_embed_cache")
    if cache is None:
        cache = {}
        object.__setattr__(host, "_embed_cache", cache)
    return cache


def candidate_chains(host: HostGraph, max_len: int):
    """Connected vertex subsets of size <= max_len, sorted by (size, tuple)."""
    cache = _host_cache(host)
    key = ("chains", max_len)
    if key in cache:
        return cache[key]
    level = {frozenset((v,)) for v in range(host.n)}
    all_sets = set(level)
    for _ in range(max_len - 1):
        nxt = set()
        for s in level:
            for v in s:
                for u in host.adjacency[v]:
                    if u not in s:
                        nxt.add(s | {u})
        all_sets |= nxt
        level = nxt
    chains = sorted(tuple(sorted(s)) for s in all_sets)
    chains.sort(key=lambda t: (len(t), t))
    nbrs = []
    for c in chains:
        cs = set(c)
        nb = set()
        for v in c:
            nb |= host.adjacency[v]
        nbrs.append(tuple(sorted(nb - cs)))
    cache[key] = (chains, nbrs)
    return cache[key]


def _stable_coloring(n, adjacency):
    """1-WL refinement; returns a color id per vertex."""
    colors = [len(adjacency[v]) for v in range(n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[u] for u in adjacency[v]))) for v in range(n)
        ]
        remap = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [remap[s] for s in sigs]
        if new == colors:
            return colors
        colors = new


def host_automorphism_generators(host: HostGraph, probe_cap: int = 50_000):
    """A generating set of the host automorphism group (transversal method).

    For each vertex in a fixed order, find one automorphism fixing all
    earlier vertices and moving it to each possible image: the union of
    these coset representatives generates the full group.  Probes that
    exceed the node cap are skipped (the result then generates a subgroup,
    which keeps every use sound).
    """
    cache = _host_cache(host)
    if "gens" in cache:
        return cache["gens"]
    if host.n > _AUT_HOST_LIMIT:
        cache["gens"] = []
        return []
    n = host.n
    adjacency = host.adjacency
    colors = _stable_coloring(n, adjacency)
    classes = {}
    for v in range(n):
        classes.setdefault(colors[v], []).append(v)
    order = sorted(range(n), key=lambda v: (len(classes[colors[v]]), colors[v], v))

    mapping = [-1] * n
    used = [False] * n
    mapped_targets = set()
    nodes = [0]

    def extend(i, forced):
        """DFS for any automorphism; level i; forced[i] pins order[i]'s image."""
        if i == n:
            return tuple(mapping)
        nodes[0] += 1
        if nodes[0] > probe_cap:
            raise _ProbeCapHit
        v = order[i]
        earlier_targets = [mapping[u] for u in adjacency[v] if mapping[u] != -1]
        k = len(earlier_targets)
        targets = [forced[i]] if i in forced else classes[colors[v]]
        for w in targets:
            if used[w]:
                continue
            if any(t not in adjacency[w] for t in earlier_targets):
                continue
            if len(adjacency[w] & mapped_targets) != k:
                continue
            mapping[v] = w
            used[w] = True
            mapped_targets.add(w)
            got = extend(i + 1, forced)
            mapping[v] = -1
            used[w] = False
            mapped_targets.discard(w)
            if got is not None:
                return got
        return None

    gens = []
    for i in range(n):
        v = order[i]
        for w in classes[colors[v]]:
            if w == v:
                continue
            forced = {j: order[j] for j in range(i)}
            forced[i] = w
            nodes[0] = 0
            try:
                got = extend(0, forced)
            except _ProbeCapHit:
                got = None
            if got is not None:
                gens.append(got)
    cache["gens"] = gens
    return gens


class _ProbeCapHit(Exception):
    pass


def _orbit_representatives(host: HostGraph, max_len: int):
    """Indices of candidate chains minimal in their automorphism orbit.

    Orbits are the union-find closure of candidate -> image under the
    generator set, i.e. orbits of the generated group.
    """
    cache = _host_cache(host)
    key = ("reps", max_len)
    if key in cache:
        return cache[key]
    chains, _ = candidate_chains(host, max_len)
    gens = host_automorphism_generators(host)
    if not gens:
        cache[key] = None
        return None
    index = {c: i for i, c in enumerate(chains)}
    parent = list(range(len(chains)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for p in gens:
        for i, c in enumerate(chains):
            img = tuple(sorted(p[v] for v in c))
            j = index[img]
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups = {}
    for i in range(len(chains)):
        groups.setdefault(find(i), []).append(i)
    reps = sorted(min(members) for members in groups.values())
    cache[key] = reps
    return reps


def _swap_components(guest: GadgetGraph):
    """Components of the transposition-automorphism graph (colors ignored)."""
    verts = list(guest.vertices)
    nbrs = {v: {u for u in verts if u != v and guest.adjacent(u, v)} for v in verts}
    parent = {v: v for v in verts}

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i, u in enumerate(verts):
        for v in verts[i + 1 :]:
            if nbrs[u] - {v} == nbrs[v] - {u}:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[rv] = ru
    return {v: find(v) for v in verts}


def embed_search(guest: GadgetGraph, host: HostGraph, limits: EmbedLimits) -> Optional[Embedding]:
    """First embedding within the limits (deterministic), or None."""
    if host.n > MAX_HOST:
        raise EmbedLimitError(f"host size {host.n} exceeds {MAX_HOST}")
    verts = sorted(guest.vertices, key=lambda v: (-guest.degree(v), v))
    if not verts:
        return Embedding({})
    chains, nbrs = candidate_chains(host, limits.max_chain_len)
    pos = {v: i for i, v in enumerate(verts)}
    need_adj = [
        [pos[u] for u in verts[:i] if guest.adjacent(u, verts[i])] for i in range(len(verts))
    ]
    comp = _swap_components(guest)
    reps = _orbit_representatives(host, limits.max_chain_len)
    sort_prev = []
    for i, v in enumerate(verts):
        prev = -1
        for j in range(i - 1, -1, -1):
            if comp[verts[j]] == comp[v] and not (j == 0 and reps is not None):
                prev = j
                break
        sort_prev.append(prev)
    all_idx = list(range(len(chains)))
    nbr_count = [len(nb) for nb in nbrs]
    level_cands = []
    for i, v in enumerate(verts):
        deg = guest.degree(v)
        base = reps if (i == 0 and reps is not None) else all_idx
        level_cands.append([ci for ci in base if nbr_count[ci] >= deg])
    choice, nodes, budget_hit = _kernels.embed_dfs(
        host.n,
        chains,
        nbrs,
        level_cands,
        need_adj,
        sort_prev,
        len(verts) + limits.max_aux,
        limits.node_budget,
    )
    if budget_hit:
        raise SearchBudgetExceededError(
            f"embedding search exceeded node budget {limits.node_budget} after {nodes} nodes"
        )
    if choice is None:
        return None
    emb = Embedding({verts[i]: chains[ci] for i, ci in enumerate(choice)})
    report = validate_embedding(guest, host, emb)
    assert report.ok, report
    return emb


@dataclass(frozen=True)
class MinAuxResult:
    aux: Optional[int]  # smallest feasible aux count, or None
    searched_up_to: int
    embedding: Optional[Embedding] = None

    @property
    def feasible(self) -> bool:
        return self.aux is not None


def min_aux(guest: GadgetGraph, host: HostGraph, limits: EmbedLimits) -> MinAuxResult:
    """Iterative deepening on the aux budget 0..max_aux."""
    for budget in range(limits.max_aux + 1):
        e = embed_search(
            guest, host, EmbedLimits(budget, limits.max_chain_len, limits.node_budget)
        )
        if e is not None:
            return MinAuxResult(e.aux_count, budget, e)
    return MinAuxResult(None, limits.max_aux)
