"""Chimera and Pegasus hardware-graph generators.

Vertices are indexed densely (0..n-1) and carry coordinate labels:

* Chimera C(m, n, t): label (i, j, u, k) with row i, column j, shore
  u in {0, 1} and in-shore index k in [0, t).  Cells are complete bipartite
  K_{t,t}; inter-cell couplers join equal (u, k) in adjacent rows (u=0) or
  adjacent columns (u=1).
* Pegasus P(m): label (u, w, k, z) with orientation u in {0, 1},
  perpendicular tile w in [0, m), track k in [0, 12) and parallel tile
  z in [0, m-1).  Couplers: external (z, z+1 on the same track), odd
  (paired tracks 2j, 2j+1), and internal couplers between perpendicular
  qubits whose segments cross.  The per-track offsets below are
  configuration constants from the vendor's published definition; the
  generator is validated by structural invariants (vertex count
  8(m-1)(3m-1), max degree 15, native K4) rather than trusted blindly.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

# Per-track segment offsets (even values in [0, 12)).
PEGASUS_VERTICAL_OFFSETS = (2, 2, 2, 2, 10, 10, 10, 10, 6, 6, 6, 6)
PEGASUS_HORIZONTAL_OFFSETS = (6, 6, 6, 6, 2, 2, 2, 2, 10, 10, 10, 10)

# Boundary trim: tracks outside the main fabric at the first/last
# perpendicular tile are degree-deficient and dropped.
_FABRIC_LOW = 2
_FABRIC_HIGH = 10


@dataclass(frozen=True)
class HostGraph:
    family: str
    params: dict
    labels: tuple
    adjacency: tuple  # tuple of frozensets of vertex indices

    @property
    def n(self) -> int:
        return len(self.labels)

    def index_of(self, label) -> int:
        return self._label_index[label]

    @property
    def _label_index(self):
        cache = self.__dict__.get("_label_index_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_label_index_cache", cache)
        return cache

    def edges(self):
        for u in range(self.n):
            for v in self.adjacency[u]:
                if u < v:
                    yield (u, v)

    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    def label_text(self, v: int) -> str:
        return ",".join(str(c) for c in self.labels[v])


def _build(family, params, labels, edge_iter) -> HostGraph:
    index = {lab: i for i, lab in enumerate(labels)}
    adj = [set() for _ in labels]
    for a, b in edge_iter:
        ia, ib = index[a], index[b]
        if ia == ib:
            raise ValueError(f"self-loop at {a}")
        adj[ia].add(ib)
        adj[ib].add(ia)
    return HostGraph(family, params, tuple(labels), tuple(frozenset(s) for s in adj))


def chimera(m: int, n: int, t: int) -> HostGraph:
    """Chimera C(m, n, t): an m x n grid of K_{t,t} cells."""
    if m < 1 or n < 1 or t < 1:
        raise ValueError("chimera parameters must be >= 1")
    labels = [(i, j, u, k) for i in range(m) for j in range(n) for u in (0, 1) for k in range(t)]

    def gen():
        for i in range(m):
            for j in range(n):
                for k0 in range(t):
                    for k1 in range(t):
                        yield (i, j, 0, k0), (i, j, 1, k1)
        for i in range(m - 1):
            for j in range(n):
                for k in range(t):
                    yield (i, j, 0, k), (i + 1, j, 0, k)
        for i in range(m):
            for j in range(n - 1):
                for k in range(t):
                    yield (i, j, 1, k), (i, j + 1, 1, k)

    return _build("chimera", {"m": m, "n": n, "t": t}, labels, gen())


def _pegasus_in_fabric(m, w, k):
    if w == 0 and k < _FABRIC_LOW:
        return False
    if w == m - 1 and k >= _FABRIC_HIGH:
        return False
    return True


def _pegasus_crossing(w_v, k_v, z_v, w_h, k_h, z_h):
    # vertical qubit: column position 12*w_v + k_v, rows [12*z_v + off, +12)
    # horizontal qubit: row position 12*w_h + k_h, cols [12*z_h + off, +12)
    col = 12 * w_v + k_v
    row = 12 * w_h + k_h
    v_lo = 12 * z_v + PEGASUS_VERTICAL_OFFSETS[k_v]
    h_lo = 12 * z_h + PEGASUS_HORIZONTAL_OFFSETS[k_h]
    return h_lo <= col < h_lo + 12 and v_lo <= row < v_lo + 12


def pegasus(m: int) -> HostGraph:
    """Pegasus P(m); fabric-trimmed, 8(m-1)(3m-1) vertices."""
    if m < 2:
        raise ValueError("pegasus size must be >= 2")
    labels = [
        (u, w, k, z)
        for u in (0, 1)
        for w in range(m)
        for k in range(12)
        for z in range(m - 1)
        if _pegasus_in_fabric(m, w, k)
    ]
    present = set(labels)

    def gen():
        for (u, w, k, z) in labels:
            ext = (u, w, k, z + 1)
            if ext in present:
                yield (u, w, k, z), ext
            if k % 2 == 0:
                odd = (u, w, k + 1, z)
                if odd in present:
                    yield (u, w, k, z), odd
        for (u, w, k, z) in labels:
            if u != 0:
                continue
            for w2 in range(m):
                for k2 in range(12):
                    for z2 in range(m - 1):
                        if (1, w2, k2, z2) in present and _pegasus_crossing(w, k, z, w2, k2, z2):
                            yield (0, w, k, z), (1, w2, k2, z2)

    return _build("pegasus", {"m": m}, labels, gen())


@dataclass(frozen=True)
class CellView:
    """Induced subgraph over a vertex subset of a parent host graph."""

    parent: HostGraph
    vertices: tuple

    @property
    def adjacency(self):
        vs = set(self.vertices)
        return {
            v: frozenset(u for u in self.parent.adjacency[v] if u in vs) for v in self.vertices
        }

    def edges(self):
        vs = set(self.vertices)
        for v in self.vertices:
            for u in self.parent.adjacency[v]:
                if u in vs and v < u:
                    yield (v, u)

    def as_host(self) -> HostGraph:
        """Materialize the induced subgraph as a standalone HostGraph."""
        labels = [self.parent.labels[v] for v in self.vertices]
        pos = {v: i for i, v in enumerate(self.vertices)}
        adj = [frozenset(pos[u] for u in self.adjacency[self.parent.index_of(lab)]) for lab in labels]
        return HostGraph(self.parent.family + "-cell", dict(self.parent.params), tuple(labels), tuple(adj))


def chimera_cell(g: HostGraph, i: int = 0, j: int = 0) -> CellView:
    if g.family != "chimera":
        raise ValueError("chimera_cell expects a chimera host")
    verts = tuple(
        g.index_of((i, j, u, k)) for u in (0, 1) for k in range(g.params["t"])
    )
    return CellView(g, verts)


def find_native_k4(g: HostGraph):
    """First 4-clique in index order, or None (Chimera has none: bipartite)."""
    n = g.n
    for a in range(n):
        na = g.adjacency[a]
        for b in sorted(na):
            if b <= a:
                continue
            common_ab = na & g.adjacency[b]
            for c in sorted(common_ab):
                if c <= b:
                    continue
                for d in sorted(common_ab & g.adjacency[c]):
                    if d > c:
                        return (a, b, c, d)
    return None


def pegasus_cell(g: HostGraph) -> CellView:
    """A cell-sized window: the first native K4 plus its neighborhood."""
    k4 = find_native_k4(g)
    if k4 is None:
        raise ValueError("host contains no native K4")
    verts = set(k4)
    for v in k4:
        verts.update(g.adjacency[v])
    return CellView(g, tuple(sorted(verts)))


def is_bipartite(g: HostGraph):
    """2-coloring check; returns the coloring or None."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            v = queue.pop()
            for u in g.adjacency[v]:
                if color[u] == -1:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    return None
    return color


def has_triangle(g: HostGraph) -> bool:
    for u in range(g.n):
        for v in g.adjacency[u]:
            if v > u and g.adjacency[u] & g.adjacency[v]:
                return True
    return False


def export_edge_list(g: HostGraph) -> str:
    """One `u v` index pair per line; coordinate labels in a header block."""
    lines = [f"# {g.family} {g.params}"]
    for i in range(g.n):
        lines.append(f"# {i} ({g.label_text(i)})")
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def export_dot(graph, used=None, embedding=None) -> str:
    """DOT text for a HostGraph or a gadget graph.

    ``used`` is an optional set of vertex indices/names considered active;
    everything else is styled grey.  When ``embedding`` (a minor embedding)
    is supplied, its chain vertices are the used set and intra-chain edges
    are drawn thick.
    """
    from .gadgets import GadgetGraph  # local import to avoid a cycle

    lines = ["graph G {", "  node [shape=circle];"]
    if isinstance(graph, GadgetGraph):
        aux = set(graph.aux)
        for v in graph.logical + graph.aux:
            style = ' color=red style=filled fillcolor="#ffcccc"' if v in aux else ""
            lines.append(f'  "{v}"[label="{v}"{style}];')
        for a, b in sorted(tuple(sorted(e)) for e in graph.edges):
            lines.append(f'  "{a}" -- "{b}";')
        lines.append("}")
        return "\n".join(lines) + "\n"

    g = graph
    chain_vertices = set()
    chain_edges = set()
    if embedding is not None:
        for chain in embedding.chains.values():
            chain_vertices.update(chain)
            chain = sorted(chain)
            for a in chain:
                for b in chain:
                    if a < b and g.has_edge(a, b):
                        chain_edges.add((a, b))
        used = chain_vertices if used is None else set(used) | chain_vertices
    used_set = set(range(g.n)) if used is None else set(used)
    for v in range(g.n):
        grey = "" if v in used_set else ' color=grey fontcolor=grey'
        lines.append(f'  "{g.label_text(v)}"[{grey.strip()}];' if grey else f'  "{g.label_text(v)}";')
    for u, v in g.edges():
        attrs = []
        if (u, v) in chain_edges:
            attrs.append("penwidth=3")
        if u not in used_set or v not in used_set:
            attrs.append("color=grey")
        suffix = f' [{" ".join(attrs)}]' if attrs else ""
        lines.append(f'  "{g.label_text(u)}" -- "{g.label_text(v)}"{suffix};')
    lines.append("}")
    return "\n".join(lines) + "\n"
