"""Gadget catalog, registry and term-by-term quadratization.

A gadget replaces one degree-3/4 monomial by a quadratic polynomial over the
logical variables plus fresh auxiliaries, exact under minimization over the
auxiliaries.  Its gadget graph records which variable pairs appear together
in a quadratic term (linear and constant terms are ignored); graphs are
classified up to color-preserving isomorphism (logical vs auxiliary).

Registry gadgets (closed forms, re-verified by enumeration; S1 = sum x_i,
S2 = sum_{i<j} x_i x_j):

* NTR-KZFD (d=3,4, negative):  -prod x = min_a a*((d-1) - S1)
* PTR-Ishikawa (d=3, positive): prod x = min_w w*(1 - S1) + S2
* PTR-CoatHanger (d=3, positive): x1x2x3 = min_a x2x3 + a*(1 + x1 - x2 - x3)
* PTR-K5 (d=4, positive):       prod x = min_w w*(3 - 2*S1) + S2
* PTR-PAIR (d=4, positive, 2 aux): pairwise substitution; its 7-edge graph
  is deliberately absent from the catalog.

The K6-4e / K6-e catalog graphs (and the gadgets used for them) come from
the synthesis fixture persisted in data/catalog_patterns.json.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Iterable, Optional

from . import _kernels
from .errors import (
    CatalogPatternMissingError,
    DegreeCapError,
    EnumerationBoundError,
    UnknownGadgetError,
)
from .pbf import Polynomial

VERIFY_BOUND = 24  # max logical+aux variables for the enumeration oracle


def _canon_edges(edges) -> frozenset:
    out = set()
    for a, b in edges:
        if a == b:
            raise ValueError(f"self-loop at {a}")
        out.add((a, b) if a <= b else (b, a))
    return frozenset(out)


@dataclass(frozen=True)
class GadgetGraph:
    """Two-colored gadget connectivity graph (logical vs auxiliary)."""

    name: str
    logical: tuple
    aux: tuple
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", _canon_edges(self.edges))
        declared = set(self.logical) | set(self.aux)
        if len(declared) != len(self.logical) + len(self.aux):
            raise ValueError("duplicate vertex names")
        for a, b in self.edges:
            if a not in declared or b not in declared:
                raise ValueError(f"edge ({a},{b}) references undeclared vertex")

    @property
    def vertices(self) -> tuple:
        return self.logical + self.aux

    def degree(self, v) -> int:
        return sum(1 for e in self.edges if v in e)

    def adjacent(self, a, b) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def relabel(self, mapping) -> "GadgetGraph":
        return GadgetGraph(
            self.name,
            tuple(mapping.get(v, v) for v in self.logical),
            tuple(mapping.get(v, v) for v in self.aux),
            frozenset((mapping.get(a, a), mapping.get(b, b)) for a, b in self.edges),
        )


def color_isomorphic(g1: GadgetGraph, g2: GadgetGraph) -> bool:
    """Brute-force color-preserving isomorphism (small graphs only)."""
    if len(g1.logical) != len(g2.logical) or len(g1.aux) != len(g2.aux):
        return False
    if len(g1.edges) != len(g2.edges):
        return False

    def degseq(g):
        return (
            sorted(g.degree(v) for v in g.logical),
            sorted(g.degree(v) for v in g.aux),
        )

    if degseq(g1) != degseq(g2):
        return False
    for perm_l in itertools.permutations(g2.logical):
        for perm_a in itertools.permutations(g2.aux):
            mapping = dict(zip(g1.logical, perm_l))
            mapping.update(zip(g1.aux, perm_a))
            if all(
                (min(mapping[a], mapping[b]), max(mapping[a], mapping[b])) in g2.edges
                for a, b in g1.edges
            ):
                return True
    return False


def _complete(vertices) -> set:
    return {(a, b) for a, b in itertools.combinations(sorted(vertices), 2)}


def _fixed_catalog() -> dict:
    """Catalog entries with text-determined structure (all but K6-4e/K6-e)."""
    x3 = ("x1", "x2", "x3")
    x4 = ("x1", "x2", "x3", "x4")
    entries = {}
    entries["Propeller"] = GadgetGraph("Propeller", x3, ("a1",), {("a1", x) for x in x3})
    entries["Coat-Hanger"] = GadgetGraph(
        "Coat-Hanger", x3, ("a1",), {("a1", x) for x in x3} | {("x2", "x3")}
    )
    entries["K4-e"] = GadgetGraph(
        "K4-e", x3, ("a1",), _complete(x3 + ("a1",)) - {("x1", "x2")}
    )
    entries["K4"] = GadgetGraph("K4", x3, ("a1",), _complete(x3 + ("a1",)))
    entries["K5-2aux"] = GadgetGraph("K5-2aux", x3, ("a1", "a2"), _complete(x3 + ("a1", "a2")))
    entries["X"] = GadgetGraph("X", x4, ("a1",), {("a1", x) for x in x4})
    entries["K5-1aux"] = GadgetGraph("K5-1aux", x4, ("a1",), _complete(x4 + ("a1",)))
    entries["K6"] = GadgetGraph("K6", x4, ("a1", "a2"), _complete(x4 + ("a1", "a2")))
    entries["Double-K4"] = GadgetGraph(
        "Double-K4",
        x4,
        ("a1", "a2", "c"),
        _complete(("x1", "x2", "a1", "c")) | _complete(("x3", "x4", "a2", "c")),
    )
    return entries


PATTERN_GRAPHS = ("K6-4e", "K6-e")


def _load_pattern_fixture() -> dict:
    try:
        text = resources.files("quadbed").joinpath("data/catalog_patterns.json").read_text()
    except (FileNotFoundError, ModuleNotFoundError):
        return {}
    return json.loads(text)


def _pattern_entry(name: str, fixture: dict):
    if name not in fixture:
        raise CatalogPatternMissingError(name)
    rec = fixture[name]
    graph = GadgetGraph(
        name,
        tuple(rec["logical"]),
        tuple(rec["aux"]),
        frozenset(tuple(e) for e in rec["edges"]),
    )
    quadratic = Polynomial({tuple(mono): c for mono, c in rec["gadget"]["terms"]})
    gadget = Gadget(
        sign=+1,
        degree=len(rec["logical"]),
        quadratic=quadratic,
        aux=tuple(rec["aux"]),
        provenance=rec.get("provenance", "synthesized"),
    )
    return graph, gadget


def catalog(include_patterns: bool = True) -> dict:
    """The gadget-graph catalog; pattern-resolved entries need the fixture."""
    entries = _fixed_catalog()
    if include_patterns:
        fixture = _load_pattern_fixture()
        for name in PATTERN_GRAPHS:
            graph, _ = _pattern_entry(name, fixture)
            entries[name] = graph
    return entries


CATALOG_ORDER = (
    "Propeller",
    "Coat-Hanger",
    "K4-e",
    "K4",
    "K5-2aux",
    "X",
    "K5-1aux",
    "K6-4e",
    "K6-e",
    "K6",
    "Double-K4",
)


def classify_graph(graph: GadgetGraph, include_patterns: bool = True) -> Optional[str]:
    """Catalog name under color-preserving isomorphism, or None."""
    if len(graph.vertices) > 8:
        raise ValueError("classification supports at most 8 vertices")
    try:
        entries = catalog(include_patterns)
    except CatalogPatternMissingError:
        entries = catalog(False)
    for name in CATALOG_ORDER:
        if name in entries and color_isomorphic(graph, entries[name]):
            return name
    return None


@dataclass(frozen=True)
class Gadget:
    """Quadratic replacement for one signed monomial of given degree.

    The quadratic polynomial lives over placeholder logical names x1..xd and
    the aux names; validity means: for every logical assignment, the minimum
    of the quadratic over the aux bits equals sign * prod(x).
    """

    sign: int
    degree: int
    quadratic: Polynomial
    aux: tuple
    provenance: str = "registry"

    @property
    def logical(self) -> tuple:
        return tuple(f"x{i+1}" for i in range(self.degree))

    def target_polynomial(self) -> Polynomial:
        return Polynomial({self.logical: self.sign})

    def instantiate(self, variables: Iterable[str], aux_names: Iterable[str], scale: int = 1):
        """Rename placeholders to real variables and scale by a positive int."""
        variables = tuple(variables)
        aux_names = tuple(aux_names)
        if len(variables) != self.degree or len(aux_names) != len(self.aux):
            raise ValueError("wrong variable/aux arity for gadget")
        if scale <= 0:
            raise ValueError("scale must be a positive integer")
        mapping = dict(zip(self.logical, variables))
        mapping.update(zip(self.aux, aux_names))
        return self.quadratic.rename(mapping).scale(scale)


def _registry() -> dict:
    x = lambda i: f"x{i}"
    entries = {}

    def kzfd(d):
        terms = {("a1",): d - 1}
        for i in range(1, d + 1):
            terms[("a1", x(i))] = -1
        return Gadget(-1, d, Polynomial(terms), ("a1",))

    entries[("NTR-KZFD", -1, 3)] = kzfd(3)
    entries[("NTR-KZFD", -1, 4)] = kzfd(4)

    terms = {("w",): 1}
    for i in range(1, 4):
        terms[("w", x(i))] = -1
    for i, j in itertools.combinations(range(1, 4), 2):
        terms[(x(i), x(j))] = 1
    entries[("PTR-Ishikawa", +1, 3)] = Gadget(+1, 3, Polynomial(terms), ("w",))

    entries[("PTR-CoatHanger", +1, 3)] = Gadget(
        +1,
        3,
        Polynomial(
            {
                ("x2", "x3"): 1,
                ("a1",): 1,
                ("a1", "x1"): 1,
                ("a1", "x2"): -1,
                ("a1", "x3"): -1,
            }
        ),
        ("a1",),
    )

    terms = {("w",): 3}
    for i in range(1, 5):
        terms[("w", x(i))] = -2
    for i, j in itertools.combinations(range(1, 5), 2):
        terms[(x(i), x(j))] = 1
    entries[("PTR-K5", +1, 4)] = Gadget(+1, 4, Polynomial(terms), ("w",))

    entries[("PTR-PAIR", +1, 4)] = Gadget(
        +1,
        4,
        Polynomial(
            {
                ("a1", "a2"): 1,
                ("x1", "x2"): 1,
                ("a1", "x1"): -2,
                ("a1", "x2"): -2,
                ("a1",): 3,
                ("x3", "x4"): 1,
                ("a2", "x3"): -2,
                ("a2", "x4"): -2,
                ("a2",): 3,
            }
        ),
        ("a1", "a2"),
    )
    return entries


REGISTRY = _registry()


def registry_ids():
    return sorted({name for name, _, _ in REGISTRY})


def builtin_gadget(name: str, sign: int, degree: int) -> Gadget:
    """Closed-form registry gadget; raises listing the registry on a miss."""
    key = (name, sign, degree)
    if key not in REGISTRY:
        available = [f"{n} ({'+' if s > 0 else '-'}, d={d})" for n, s, d in sorted(REGISTRY)]
        raise UnknownGadgetError(key, available)
    return REGISTRY[key]


def synthesized_gadget(graph_name: str) -> Gadget:
    """Gadget persisted for a pattern-resolved catalog graph (K6-4e / K6-e)."""
    _, gadget = _pattern_entry(graph_name, _load_pattern_fixture())
    return gadget


def _quadratic_arrays(poly: Polynomial, order: list):
    index = {v: i for i, v in enumerate(order)}
    n = len(order)
    lin = [0] * n
    offset = 0
    pairs = {}
    for mono, coeff in poly.terms.items():
        if len(mono) == 0:
            offset = coeff
        elif len(mono) == 1:
            lin[index[mono[0]]] = coeff
        elif len(mono) == 2:
            pairs[(index[mono[0]], index[mono[1]])] = coeff
        else:
            raise ValueError("polynomial is not quadratic")
    adj = [[] for _ in range(n)]
    for (i, j), c in pairs.items():
        adj[i].append((j, c))
        adj[j].append((i, c))
    ptr = [0]
    idx = []
    val = []
    for i in range(n):
        for j, c in sorted(adj[i]):
            idx.append(j)
            val.append(c)
        ptr.append(len(idx))
    return lin, ptr, idx, val, offset


def min_over_aux_profile(quadratic: Polynomial, logical: list, aux: list):
    """min over aux assignments of the quadratic, per logical assignment.

    Returns a list indexed so that bit (len(logical)-1-i) holds variable
    logical[i]; this is the enumeration oracle behind verify_gadget and the
    quadratize validity check.
    """
    nl, na = len(logical), len(aux)
    if nl + na > VERIFY_BOUND:
        raise EnumerationBoundError(
            f"{nl}+{na} variables exceed the {VERIFY_BOUND}-variable enumeration bound"
        )
    extra = sorted(quadratic.variables - set(logical) - set(aux))
    if extra:
        raise ValueError(f"quadratic uses undeclared variables {extra}")
    lin, ptr, idx, val, offset = _quadratic_arrays(quadratic, list(logical) + list(aux))
    return _kernels.min_over_aux(nl, na, lin, ptr, idx, val, offset)


def verify_gadget(g: Gadget, scale: int = 1) -> bool:
    """Exact check of min-over-aux equality on all 2^d logical assignments."""
    logical = list(g.logical)
    profile = min_over_aux_profile(g.quadratic.scale(scale), logical, list(g.aux))
    d = g.degree
    for code in range(1 << d):
        bits = [(code >> (d - 1 - i)) & 1 for i in range(d)]
        target = g.sign * scale * (1 if all(bits) else 0)
        if profile[code] != target:
            return False
    return True


def extract_graph(g: Gadget, name: str = "") -> GadgetGraph:
    """Connectivity of the gadget's quadratic terms (linear/constant ignored)."""
    edges = {mono for mono, c in g.quadratic.terms.items() if len(mono) == 2 and c != 0}
    return GadgetGraph(name or "extracted", g.logical, tuple(g.aux), frozenset(edges))


# ---------------------------------------------------------------------------
# Quadratization


@dataclass(frozen=True)
class QuadratizePolicy:
    hardware: str = "pegasus"  # chimera | pegasus
    objective: str = "min-total-aux"

    def __post_init__(self):
        if self.hardware not in ("chimera", "pegasus"):
            raise ValueError(f"unknown hardware {self.hardware!r}")
        if self.objective != "min-total-aux":
            raise ValueError(f"unsupported objective {self.objective!r}")


def recommend(sign: int, degree: int, hardware: str):
    """Gadget choice minimizing total (quadratization + embedding) aux.

    Returns (gadget id, expected total aux) following the published
    accounting: negative terms always take NTR-KZFD (1 in total); positive
    cubics take the K4-class gadget on Pegasus (1) and the Coat-Hanger class
    on Chimera (2); positive quartics take the K5-class gadget on Pegasus (2)
    and the K6-4e-class synthesized gadget on Chimera (3).
    """
    if degree not in (3, 4):
        raise ValueError(f"unsupported degree {degree}")
    if hardware not in ("chimera", "pegasus"):
        raise ValueError(f"unknown hardware {hardware!r}")
    if sign < 0:
        return ("NTR-KZFD", 1)
    if degree == 3:
        return ("PTR-Ishikawa", 1) if hardware == "pegasus" else ("PTR-CoatHanger", 2)
    return ("PTR-K5", 2) if hardware == "pegasus" else ("SYNTH-K6-4e", 3)


def _resolve_gadget(gadget_id: str, sign: int, degree: int) -> Gadget:
    if gadget_id == "SYNTH-K6-4e":
        return synthesized_gadget("K6-4e")
    return builtin_gadget(gadget_id, sign, degree)


@dataclass
class TermRecord:
    monomial: tuple
    coefficient: int
    gadget_id: str
    graph_name: Optional[str]
    aux_ids: tuple

    @property
    def n_aux(self) -> int:
        return len(self.aux_ids)


@dataclass
class QuadratizationLedger:
    records: list = field(default_factory=list)

    @property
    def total_aux(self) -> int:
        return sum(r.n_aux for r in self.records)

    @property
    def aux_ids(self) -> tuple:
        out = []
        for r in self.records:
            out.extend(r.aux_ids)
        return tuple(out)

    def to_json(self) -> str:
        return json.dumps(
            {
                "terms": [
                    {
                        "monomial": list(r.monomial),
                        "coefficient": r.coefficient,
                        "gadget": r.gadget_id,
                        "graph": r.graph_name,
                        "aux": list(r.aux_ids),
                        "n_aux_quadratization": r.n_aux,
                    }
                    for r in self.records
                ],
                "total_aux": self.total_aux,
            },
            indent=2,
        )


def quadratize(p: Polynomial, policy: QuadratizePolicy | None = None):
    """Rewrite a degree-<=4 polynomial as a quadratic one, gadget per term.

    Every degree-3/4 monomial is replaced by the recommended gadget scaled
    by |coefficient| with fresh auxiliaries; degree-<=2 terms pass through.
    Returns (quadratic polynomial, ledger).
    """
    policy = policy or QuadratizePolicy()
    if p.degree() > 4:
        raise DegreeCapError(f"degree cap: degree {p.degree()} > 4")
    out = Polynomial({m: c for m, c in p.terms.items() if len(m) <= 2})
    ledger = QuadratizationLedger()
    counter = 0
    taken = set(p.variables)
    high = sorted((m for m in p.terms if len(m) > 2), key=lambda m: (-len(m), m))
    for mono in high:
        coeff = p.terms[mono]
        sign = 1 if coeff > 0 else -1
        gadget_id, _ = recommend(sign, len(mono), policy.hardware)
        gadget = _resolve_gadget(gadget_id, sign, len(mono))
        aux_names = []
        for _ in gadget.aux:
            while f"aux{counter}" in taken:
                counter += 1
            aux_names.append(f"aux{counter}")
            taken.add(f"aux{counter}")
        out = out + gadget.instantiate(mono, aux_names, abs(coeff))
        graph_name = classify_graph(extract_graph(gadget))
        ledger.records.append(
            TermRecord(mono, coeff, gadget_id, graph_name, tuple(aux_names))
        )
    return out, ledger
