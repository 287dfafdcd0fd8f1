"""Exact integer gadget synthesis on gadget-graph templates.

Given a signed monomial target and a graph template, find integer
coefficients (quadratic on template edges, linear on vertices, constant) in
[-C, C] such that the minimum over the auxiliary bits reproduces the target
on every logical assignment -- or prove that none exist within the bound.

Search pipeline (deterministic, first-found):

1. symmetry-reduced grid search: coefficients constant on the orbits of the
   template's color automorphism group (the target, a full monomial, is
   fixed by any logical permutation); then the same with the subgroup acting
   on logical vertices only;
2. raw grid search when the full unknown count is small enough;
3. the complete decision procedure: DFS over lexicographic-minimizer
   certificates (which aux assignment attains the minimum per logical
   assignment), accumulating exact rational equalities/inequalities, pruned
   by incremental Gaussian elimination and interval checks, finished by
   Fourier-Motzkin elimination and bounded integer enumeration.

All arithmetic in feasibility decisions is exact (fractions.Fraction); any
returned gadget is re-checked by the enumeration oracle.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from .errors import PatternResolutionError, SynthesisBoundError
from .gadgets import Gadget, GadgetGraph, verify_gadget
from .pbf import Polynomial

_GRID_CAP = 50_000_000  # max candidates a grid stage may enumerate


@dataclass(frozen=True)
class SynthesisProblem:
    target_sign: int  # +1 | -1 ; target monomial is the product of all logical vars
    template: GadgetGraph
    coeff_bound: int = 4
    require_all_edges: bool = True

    def __post_init__(self):
        if self.target_sign not in (1, -1):
            raise ValueError("target sign must be +1 or -1")
        if self.coeff_bound < 1:
            raise ValueError("coefficient bound must be >= 1")
        if len(self.template.logical) not in (3, 4):
            raise SynthesisBoundError("template logical count must equal target degree 3 or 4")
        if len(self.template.aux) > 3:
            raise SynthesisBoundError("at most 3 auxiliaries supported")
        if len(self.template.vertices) > 8:
            raise SynthesisBoundError("at most 8 template vertices supported")


@dataclass
class SynthesisResult:
    gadget: Gadget | None
    certificate: dict | None  # logical assignment tuple -> minimizing aux tuple
    nodes: int = 0
    feasibility_calls: int = 0


# ---------------------------------------------------------------------------
# unknown layout and assignment tables


class _Layout:
    def __init__(self, template: GadgetGraph):
        self.template = template
        self.logical = tuple(template.logical)
        self.aux = tuple(template.aux)
        self.edges = tuple(sorted(tuple(sorted(e)) for e in template.edges))
        self.vertices = tuple(list(self.logical) + list(self.aux))
        self.k = len(self.edges) + len(self.vertices) + 1
        self.edge_slice = slice(0, len(self.edges))
        self.lin_offset = len(self.edges)
        self.const_index = self.k - 1
        self.nl = len(self.logical)
        self.na = len(self.aux)

    def row(self, s_bits, a_bits):
        """0/1 row so that row . coeffs = q(s, a)."""
        val = {}
        for i, v in enumerate(self.logical):
            val[v] = s_bits[i]
        for i, v in enumerate(self.aux):
            val[v] = a_bits[i]
        r = [0] * self.k
        for i, (u, w) in enumerate(self.edges):
            r[i] = val[u] * val[w]
        for i, v in enumerate(self.vertices):
            r[self.lin_offset + i] = val[v]
        r[self.const_index] = 1
        return r

    def all_rows(self):
        """Rows for every (s, a), aux fastest; shape (2^nl * 2^na, k)."""
        rows = []
        for sc in range(1 << self.nl):
            s_bits = [(sc >> (self.nl - 1 - i)) & 1 for i in range(self.nl)]
            for ac in range(1 << self.na):
                a_bits = [(ac >> (self.na - 1 - i)) & 1 for i in range(self.na)]
                rows.append(self.row(s_bits, a_bits))
        return np.array(rows, dtype=np.int64)

    def targets(self, sign):
        return np.array(
            [sign * (1 if sc == (1 << self.nl) - 1 else 0) for sc in range(1 << self.nl)],
            dtype=np.int64,
        )

    def gadget_from_coeffs(self, coeffs, sign) -> Gadget:
        terms = {}
        for i, e in enumerate(self.edges):
            if coeffs[i]:
                terms[e] = int(coeffs[i])
        for i, v in enumerate(self.vertices):
            c = coeffs[self.lin_offset + i]
            if c:
                terms[(v,)] = int(c)
        if coeffs[self.const_index]:
            terms[()] = int(coeffs[self.const_index])
        return Gadget(sign, self.nl, Polynomial(terms), self.aux, provenance="synthesized")


def _color_automorphisms(template: GadgetGraph, fix_aux: bool):
    """Color-preserving automorphisms as vertex maps (dicts)."""
    out = []
    aux_perms = [template.aux] if fix_aux else list(itertools.permutations(template.aux))
    for pl in itertools.permutations(template.logical):
        for pa in aux_perms:
            mapping = dict(zip(template.logical, pl))
            mapping.update(zip(template.aux, pa))
            if all(
                (min(mapping[a], mapping[b]), max(mapping[a], mapping[b])) in template.edges
                for a, b in template.edges
            ):
                out.append(mapping)
    return out


def _unknown_orbits(layout: _Layout, autos):
    """Orbits of unknown indices under the automorphism action."""
    edge_index = {e: i for i, e in enumerate(layout.edges)}
    vert_index = {v: layout.lin_offset + i for i, v in enumerate(layout.vertices)}
    parent = list(range(layout.k))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for g in autos:
        for e, i in edge_index.items():
            img = tuple(sorted((g[e[0]], g[e[1]])))
            union(i, edge_index[img])
        for v, i in vert_index.items():
            union(i, vert_index[g[v]])
    orbits = {}
    for i in range(layout.k):
        orbits.setdefault(find(i), []).append(i)
    return sorted(orbits.values())


def _grid_search(layout, sign, bound, require_all_edges, orbits, stats):
    """Integer grid over orbit-constant coefficient vectors; None if no hit.

    Deterministic: candidates are enumerated in lexicographic order of the
    orbit coefficient tuple over -C..C and the first hit wins.
    """
    n_orb = len(orbits)
    width = 2 * bound + 1
    total = width**n_orb
    if total > _GRID_CAP:
        return None, False
    rows = layout.all_rows()  # (R, k)
    orbit_rows = np.stack([rows[:, orb].sum(axis=1) for orb in orbits], axis=1)  # (R, n_orb)
    tvec = layout.targets(sign)
    edge_orbits = np.array(
        [any(i < layout.lin_offset for i in orb) for orb in orbits], dtype=bool
    )
    n_aux_states = 1 << layout.na
    chunk = 1 << 14
    radix = width ** np.arange(n_orb - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        coeffs = (idx[:, None] // radix[None, :]) % width - bound  # lex order
        stats["nodes"] += len(idx)
        q = coeffs @ orbit_rows.T  # (chunk, R)
        mins = q.reshape(len(idx), -1, n_aux_states).min(axis=2)
        ok = (mins == tvec[None, :]).all(axis=1)
        if require_all_edges:
            ok &= (coeffs[:, edge_orbits] != 0).all(axis=1)
        hits = np.flatnonzero(ok)
        if hits.size:
            best = coeffs[hits[0]]
            full = np.zeros(layout.k, dtype=np.int64)
            for o, orb in enumerate(orbits):
                full[orb] = best[o]
            return full, True
    return None, True  # completed without a hit


# ---------------------------------------------------------------------------
# exact rational machinery


class _Elim:
    """Incremental Gaussian elimination over Q with substitution support."""

    def __init__(self, k):
        self.k = k
        self.pivots = {}  # col -> reduced row (list of Fractions, length k+1; last = rhs)

    def copy(self):
        e = _Elim(self.k)
        e.pivots = {c: row[:] for c, row in self.pivots.items()}
        return e

    def reduce_row(self, row):
        row = row[:]
        for col, prow in self.pivots.items():
            f = row[col]
            if f:
                for i in range(self.k + 1):
                    row[i] -= f * prow[i]
        return row

    def add_equality(self, coeffs, rhs):
        """Returns False on inconsistency."""
        row = [Fraction(c) for c in coeffs] + [Fraction(rhs)]
        row = self.reduce_row(row)
        pivot = next((i for i in range(self.k) if row[i]), None)
        if pivot is None:
            return row[self.k] == 0
        inv = 1 / row[pivot]
        row = [x * inv for x in row]
        for col, prow in self.pivots.items():
            f = prow[pivot]
            if f:
                for i in range(self.k + 1):
                    prow[i] -= f * row[i]
        self.pivots[pivot] = row
        return True

    def substitute(self, coeffs, rhs):
        """Rewrite an inequality sum coeffs.x >= rhs over the free variables.

        Returns (free_coeffs dict, constant) meaning sum c_i x_i + constant >= rhs
        becomes sum c_i x_i >= rhs - constant with eliminated vars removed.
        """
        row = [Fraction(c) for c in coeffs] + [Fraction(0)]
        for col, prow in self.pivots.items():
            f = row[col]
            if f:
                for i in range(self.k + 1):
                    row[i] -= f * prow[i]
        # eliminated variables now have zero coefficient; constant moved to row[k]
        return row[: self.k], Fraction(rhs) + row[self.k]

    def free_columns(self):
        return [i for i in range(self.k) if i not in self.pivots]

    def value_of(self, col, free_values):
        """Value of an eliminated variable given values for free columns."""
        row = self.pivots[col]
        total = row[self.k]
        for c in self.free_columns():
            if row[c]:
                total -= row[c] * free_values[c]
        return total


def _box_feasible(coeffs, rhs, bound):
    """Can sum coeffs.x >= rhs hold with every x in [-C, C]?"""
    hi = Fraction(0)
    for c in coeffs:
        if c > 0:
            hi += c * bound
        elif c < 0:
            hi -= c * bound
    return hi >= rhs


def _fourier_motzkin(rows, nvars):
    """Exact feasibility of {A x >= b}; rows are (coeff list, rhs).

    Eliminates variables one at a time with pairwise combination and
    redundancy pruning (normalized-row dedup).
    """

    def normalize(row):
        coeffs, rhs = row
        nz = [abs(c) for c in coeffs if c] or [abs(rhs) or Fraction(1)]
        scale = min(nz)
        if scale:
            coeffs = tuple(c / scale for c in coeffs)
            rhs = rhs / scale
        return coeffs, rhs

    system = {normalize((tuple(c), r)) for c, r in rows}
    for v in range(nvars):
        lowers, uppers, rest = [], [], []
        for coeffs, rhs in system:
            cv = coeffs[v]
            if cv > 0:
                lowers.append((coeffs, rhs))  # x_v >= (rhs - rest)/cv
            elif cv < 0:
                uppers.append((coeffs, rhs))
            else:
                rest.append((coeffs, rhs))
        new = set()
        for lc, lr in lowers:
            for uc, ur in uppers:
                a, b = lc[v], -uc[v]
                coeffs = tuple(b * lc[i] + a * uc[i] for i in range(nvars))
                new.add(normalize((coeffs, b * lr + a * ur)))
        system = set(rest) | new
        for coeffs, rhs in system:
            if not any(coeffs) and rhs > 0:
                return False
    for coeffs, rhs in system:
        if not any(coeffs) and rhs > 0:
            return False
    return True


def _value_order(bound):
    """0, 1, -1, 2, -2, ... smallest-magnitude-first deterministic order."""
    out = [0]
    for v in range(1, bound + 1):
        out.extend((v, -v))
    return out


class _CertificateDFS:
    def __init__(self, problem: SynthesisProblem, layout: _Layout, stats):
        self.problem = problem
        self.layout = layout
        self.stats = stats
        self.bound = problem.coeff_bound
        nl, na = layout.nl, layout.na
        self.rows = layout.all_rows().tolist()  # (s*2^na + a) -> row
        self.tvals = layout.targets(problem.target_sign).tolist()
        # logical assignments: weight-descending, then ascending code
        self.order = sorted(range(1 << nl), key=lambda s: (-bin(s).count("1"), s))
        self.na_states = 1 << na

    def run(self):
        elim = _Elim(self.layout.k)
        return self._rec(0, elim, [])

    def _check_inequalities(self, elim, ineqs):
        self.stats["feasibility_calls"] += 1
        for coeffs, rhs in ineqs:
            fc, frhs = elim.substitute(coeffs, rhs)
            if not _box_feasible(fc, frhs, self.bound):
                return False
        # eliminated variables must stay inside the box: x >= -C and -x >= -C
        for col in elim.pivots:
            unit = [0] * self.layout.k
            unit[col] = 1
            fc, frhs = elim.substitute(unit, -self.bound)
            if not _box_feasible(fc, frhs, self.bound):
                return False
            unit[col] = -1
            fc, frhs = elim.substitute(unit, -self.bound)
            if not _box_feasible(fc, frhs, self.bound):
                return False
        return True

    def _rec(self, depth, elim, ineqs):
        if depth == len(self.order):
            return self._finish(elim, ineqs)
        s = self.order[depth]
        t = self.tvals[s]
        base = s * self.na_states
        for a in range(self.na_states):
            self.stats["nodes"] += 1
            child = elim.copy()
            if not child.add_equality(self.rows[base + a], t):
                continue
            new_ineqs = list(ineqs)
            ok = True
            for b in range(self.na_states):
                if b == a:
                    continue
                rhs = t + 1 if b < a else t
                new_ineqs.append((self.rows[base + b], rhs))
            if not self._check_inequalities(child, new_ineqs):
                continue
            got = self._rec(depth + 1, child, new_ineqs)
            if got is not None:
                return got
        return None

    def _finish(self, elim, ineqs):
        layout = self.layout
        free = elim.free_columns()
        # exact rational feasibility over the free variables first
        fm_rows = []
        for coeffs, rhs in ineqs:
            fc, frhs = elim.substitute(coeffs, rhs)
            fm_rows.append(([fc[c] for c in free], frhs))
        for i, c in enumerate(free):
            unit = [Fraction(0)] * len(free)
            unit[i] = Fraction(1)
            fm_rows.append((list(unit), Fraction(-self.bound)))
            fm_rows.append(([-x for x in unit], Fraction(-self.bound)))
        for col in elim.pivots:
            unitk = [0] * layout.k
            unitk[col] = 1
            fc, frhs = elim.substitute(unitk, -self.bound)
            fm_rows.append(([fc[c] for c in free], frhs))
            fc2, frhs2 = elim.substitute([-x for x in unitk], -self.bound)
            fm_rows.append(([fc2[c] for c in free], frhs2))
        self.stats["feasibility_calls"] += 1
        if not _fourier_motzkin(fm_rows, len(free)):
            return None
        # bounded integer enumeration over the free variables
        values = _value_order(self.bound)
        coeffs = [Fraction(0)] * layout.k

        def assign(i):
            if i == len(free):
                for col in elim.pivots:
                    v = elim.value_of(col, {c: coeffs[c] for c in free})
                    if v.denominator != 1 or abs(v) > self.bound:
                        return False
                    coeffs[col] = v
                for row, rhs in ineqs:
                    total = sum(r * c for r, c in zip(row, coeffs))
                    if total < rhs:
                        return False
                if self.problem.require_all_edges:
                    for e in range(len(layout.edges)):
                        if coeffs[e] == 0:
                            return False
                return True
            for v in values:
                coeffs[free[i]] = Fraction(v)
                if assign(i + 1):
                    return True
            return False

        if assign(0):
            return [int(c) for c in coeffs]
        return None


def _certificate_of(gadget: Gadget, layout: _Layout):
    """Lex-min minimizing aux assignment per logical assignment."""
    cert = {}
    nl, na = layout.nl, layout.na
    for sc in range(1 << nl):
        s_bits = tuple((sc >> (nl - 1 - i)) & 1 for i in range(nl))
        best = None
        best_a = None
        for ac in range(1 << na):
            a_bits = tuple((ac >> (na - 1 - i)) & 1 for i in range(na))
            assignment = dict(zip(layout.logical, s_bits))
            assignment.update(zip(layout.aux, a_bits))
            val = gadget.quadratic.evaluate(assignment)
            if best is None or val < best:
                best = val
                best_a = a_bits
        cert[s_bits] = best_a
    return cert


def synthesize(problem: SynthesisProblem) -> SynthesisResult:
    """Find an exact integer gadget on the template, or prove none exists.

    Sound and complete within the coefficient bound: grid stages accelerate
    the common (feasible, symmetric) cases, and the certificate DFS is the
    complete decision procedure.
    """
    layout = _Layout(problem.template)
    stats = {"nodes": 0, "feasibility_calls": 0}
    sign = problem.target_sign

    decided_no = False
    for fix_aux in (False, True):
        autos = _color_automorphisms(problem.template, fix_aux)
        orbits = _unknown_orbits(layout, autos)
        if len(orbits) == layout.k and fix_aux:
            continue  # no extra symmetry to exploit
        coeffs, _ = _grid_search(
            layout, sign, problem.coeff_bound, problem.require_all_edges, orbits, stats
        )
        if coeffs is not None:
            gadget = layout.gadget_from_coeffs(coeffs, sign)
            assert verify_gadget(gadget)
            return SynthesisResult(gadget, _certificate_of(gadget, layout), **stats)
    # decision stage: certificate DFS when the certificate space is small,
    # otherwise the raw integer grid (both are complete within the bound)
    cert_count = (1 << layout.na) ** (1 << layout.nl)
    if cert_count > 100_000:
        trivial_orbits = [[i] for i in range(layout.k)]
        coeffs, complete = _grid_search(
            layout, sign, problem.coeff_bound, problem.require_all_edges, trivial_orbits, stats
        )
        if coeffs is not None:
            gadget = layout.gadget_from_coeffs(coeffs, sign)
            assert verify_gadget(gadget)
            return SynthesisResult(gadget, _certificate_of(gadget, layout), **stats)
        if complete:
            decided_no = True
    if not decided_no:
        dfs = _CertificateDFS(problem, layout, stats)
        got = dfs.run()
        if got is not None:
            gadget = layout.gadget_from_coeffs(got, sign)
            assert verify_gadget(gadget)
            return SynthesisResult(gadget, _certificate_of(gadget, layout), **stats)
    return SynthesisResult(None, None, **stats)


# ---------------------------------------------------------------------------
# catalog pattern resolution (K6 - k edges)


def _removal_classes(base: GadgetGraph, count: int):
    """Non-isomorphic (color-respecting) edge-removal patterns.

    Canonical order: descending sorted degree sequence of the remaining
    graph, then descending color-automorphism count, then the canonical
    removed-edge list.  Balanced, symmetric candidates come first, which
    keeps the resolved catalog patterns stable run to run.
    """
    edges = sorted(tuple(sorted(e)) for e in base.edges)
    autos = _color_automorphisms(base, fix_aux=False)

    def canon(subset):
        best = None
        for g in autos:
            img = tuple(sorted(tuple(sorted((g[a], g[b]))) for a, b in subset))
            if best is None or img < best:
                best = img
        return best

    seen = {}
    for subset in itertools.combinations(edges, count):
        c = canon(subset)
        if c not in seen:
            seen[c] = subset

    def sort_key(item):
        c, subset = item
        remaining = frozenset(edges) - set(subset)
        graph = GadgetGraph("candidate", base.logical, base.aux, remaining)
        degseq = tuple(sorted(graph.degree(v) for v in graph.vertices))
        aut_count = len(_color_automorphisms(graph, fix_aux=False))
        return (tuple(-d for d in degseq), -aut_count, c)

    ordered = sorted(seen.items(), key=sort_key)
    return [subset for _, subset in ordered]


@dataclass
class PatternResolution:
    graph: GadgetGraph
    gadget: Gadget
    removed_edges: tuple
    stats: dict


def resolve_catalog_pattern(base: GadgetGraph, removed_edges: int, target_sign: int = 1,
                            coeff_bound: int = 4) -> PatternResolution:
    """Concretize a K6-minus-k-edges catalog graph by synthesis.

    Enumerates non-isomorphic removal patterns in canonical order and
    returns the first that admits an exact all-edges gadget within the
    coefficient bound.
    """
    expected = {(a, b) for a, b in itertools.combinations(sorted(base.vertices), 2)}
    if set(tuple(sorted(e)) for e in base.edges) != expected:
        raise ValueError("base template must be the complete graph on its vertices")
    if len(base.logical) != 4 or len(base.aux) != 2:
        raise ValueError("base template must be complete on 4 logical + 2 aux vertices")
    if removed_edges not in (1, 2, 3, 4):
        raise ValueError(f"unsupported removal count {removed_edges} (degenerate template)")
    name = f"K6-{removed_edges}e" if removed_edges != 1 else "K6-e"
    tried = 0
    for subset in _removal_classes(base, removed_edges):
        remaining = frozenset(tuple(sorted(e)) for e in base.edges) - set(subset)
        template = GadgetGraph(name, base.logical, base.aux, remaining)
        problem = SynthesisProblem(target_sign, template, coeff_bound, require_all_edges=True)
        result = synthesize(problem)
        tried += 1
        if result.gadget is not None:
            return PatternResolution(
                template,
                result.gadget,
                tuple(subset),
                {"patterns_tried": tried, "nodes": result.nodes},
            )
    raise PatternResolutionError(
        f"no {name} pattern admits an exact gadget within coefficient bound {coeff_bound}; "
        "retry with a larger bound"
    )


def persist_patterns(path: Path | None = None, coeff_bound: int = 4) -> dict:
    """Resolve K6-4e and K6-e and write the fixture consumed by the catalog."""
    from .gadgets import catalog

    base = catalog(include_patterns=False)["K6"]
    fixture = {}
    for count, name in ((4, "K6-4e"), (1, "K6-e")):
        res = resolve_catalog_pattern(base, count)
        fixture[name] = {
            "logical": list(res.graph.logical),
            "aux": list(res.graph.aux),
            "edges": sorted(list(e) for e in res.graph.edges),
            "removed": sorted(list(e) for e in res.removed_edges),
            "gadget": {
                "terms": [[list(m), c] for m, c in sorted(res.gadget.quadratic.terms.items())],
            },
            "provenance": "synthesized; pattern chosen by canonical search order, "
            "not recovered from any published drawing",
        }
    if path is None:
        path = Path(__file__).parent / "data" / "catalog_patterns.json"
    path.write_text(json.dumps(fixture, indent=2) + "\n")
    return fixture
