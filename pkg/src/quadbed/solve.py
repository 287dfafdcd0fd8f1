"""QUBO assembly over an embedding, exact/SA solvers, and unembedding.

The embedded QUBO places each logical linear coefficient on the first chain
member, each logical quadratic coefficient on one designated host edge, and
adds a ferromagnetic penalty lambda*(x_u + x_v - 2*x_u*x_v) on every edge of
a spanning tree of each chain (zero when the endpoints agree).  The default
lambda = 1 + sum |coefficients| guarantees unbroken chains in any ground
state, so exactness survives embedding.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from . import _kernels
from .embed import Embedding
from .errors import EnumerationBoundError, InvalidEmbeddingError, MissingVariableError
from .hardware import HostGraph
from .pbf import Polynomial

EXACT_BOUND = 24


@dataclass(frozen=True)
class Qubo:
    variables: tuple  # sorted host vertex indices
    linear: dict  # vertex -> int
    quadratic: dict  # (u, v) with u < v -> int
    offset: int = 0

    def energy(self, assignment) -> int:
        e = self.offset
        for v, c in self.linear.items():
            e += c * assignment[v]
        for (u, v), c in self.quadratic.items():
            e += c * assignment[u] * assignment[v]
        return e

    def arrays(self):
        index = {v: i for i, v in enumerate(self.variables)}
        n = len(self.variables)
        lin = [0] * n
        for v, c in self.linear.items():
            lin[index[v]] = c
        adj = [[] for _ in range(n)]
        for (u, v), c in self.quadratic.items():
            adj[index[u]].append((index[v], c))
            adj[index[v]].append((index[u], c))
        ptr, idx, val = [0], [], []
        for i in range(n):
            for j, c in sorted(adj[i]):
                idx.append(j)
                val.append(c)
            ptr.append(len(idx))
        return lin, ptr, idx, val

    def serialize(self, host: Optional[HostGraph] = None) -> str:
        """Coordinate-labelled linear/quadratic lists."""
        label = (lambda v: host.label_text(v)) if host else str
        lines = [f"offset {self.offset}"]
        for v in self.variables:
            if self.linear.get(v):
                lines.append(f"linear {label(v)} {self.linear[v]}")
        for (u, v), c in sorted(self.quadratic.items()):
            lines.append(f"quadratic {label(u)} {label(v)} {c}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Schedule:
    beta_initial: float = 0.1
    beta_final: float = 10.0
    sweeps: int = 1000
    seed: int = 0
    restarts: int = 1

    def __post_init__(self):
        if self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if self.beta_initial <= 0 or self.beta_final <= 0:
            raise ValueError("inverse temperatures must be positive")


def default_chain_strength(q2: Polynomial) -> int:
    return 1 + sum(abs(c) for c in q2.terms.values())


def _chain_tree(host: HostGraph, chain):
    """Deterministic spanning tree of the chain's induced subgraph (BFS)."""
    chain = sorted(chain)
    in_chain = set(chain)
    root = chain[0]
    seen = {root}
    frontier = [root]
    edges = []
    while frontier:
        nxt = []
        for v in frontier:
            for u in sorted(host.adjacency[v]):
                if u in in_chain and u not in seen:
                    seen.add(u)
                    edges.append((min(v, u), max(v, u)))
                    nxt.append(u)
        frontier = nxt
    if seen != in_chain:
        raise InvalidEmbeddingError(f"chain {chain} is not connected in the host")
    return edges


def assemble_qubo(q2: Polynomial, e: Embedding, host: HostGraph,
                  chain_strength: Optional[int] = None) -> Qubo:
    """Compile a quadratic polynomial onto the host through an embedding."""
    if q2.degree() > 2:
        raise ValueError("assemble_qubo expects a quadratic polynomial")
    lam = default_chain_strength(q2) if chain_strength is None else chain_strength
    missing = sorted(q2.variables - set(e.chains))
    if missing:
        raise InvalidEmbeddingError(f"no chain for variables {missing}")
    variables = sorted(v for chain in e.chains.values() for v in chain)
    linear = {}
    quadratic = {}
    offset = 0
    for mono, coeff in q2.terms.items():
        if len(mono) == 0:
            offset += coeff
        elif len(mono) == 1:
            first = min(e.chains[mono[0]])
            linear[first] = linear.get(first, 0) + coeff
        else:
            ca, cb = e.chains[mono[0]], e.chains[mono[1]]
            options = sorted(
                (min(a, b), max(a, b)) for a in ca for b in cb if b in host.adjacency[a]
            )
            if not options:
                raise InvalidEmbeddingError(
                    f"quadratic term {mono} has no host edge between its chains"
                )
            edge = options[0]
            quadratic[edge] = quadratic.get(edge, 0) + coeff
    for g in sorted(e.chains):
        for (u, v) in _chain_tree(host, e.chains[g]):
            linear[u] = linear.get(u, 0) + lam
            linear[v] = linear.get(v, 0) + lam
            quadratic[(u, v)] = quadratic.get((u, v), 0) - 2 * lam
    linear = {v: c for v, c in linear.items() if c}
    quadratic = {k: c for k, c in quadratic.items() if c}
    return Qubo(tuple(variables), linear, quadratic, offset)


def solve_exact(q: Qubo):
    """Global minimum by exhaustive enumeration (<= 24 variables).

    Ties break to the lexicographically smallest assignment over the sorted
    variable order.
    """
    n = len(q.variables)
    if n > EXACT_BOUND:
        raise EnumerationBoundError(f"{n} variables exceed the {EXACT_BOUND}-variable bound")
    if n == 0:
        return {}, q.offset
    lin, ptr, idx, val = q.arrays()
    energy, bits = _kernels.qubo_min_exact(n, lin, ptr, idx, val, q.offset)
    return dict(zip(q.variables, bits)), energy


def solve_sa(q: Qubo, sch: Schedule):
    """Simulated annealing; returned energy >= the exact minimum, and a
    fixed seed reproduces the assignment bit for bit."""
    n = len(q.variables)
    if n == 0:
        return {}, q.offset
    lin, ptr, idx, val = q.arrays()
    energy, bits, _restart = _kernels.sa_anneal(
        n, lin, ptr, idx, val, q.offset,
        sch.sweeps, sch.beta_initial, sch.beta_final, sch.seed, sch.restarts,
    )
    return dict(zip(q.variables, bits)), energy


def unembed(host_assignment, e: Embedding):
    """Majority vote per chain (ties -> 1); counts broken chains."""
    logical = {}
    broken = 0
    for g, chain in sorted(e.chains.items()):
        values = []
        for v in chain:
            if v not in host_assignment:
                raise MissingVariableError(v)
            values.append(host_assignment[v])
        ones = sum(values)
        zeros = len(values) - ones
        logical[g] = 1 if ones >= zeros else 0
        if 0 < ones < len(values):
            broken += 1
    return logical, broken
