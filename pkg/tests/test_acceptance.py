"""Acceptance suite: one criterion per section, pass/fail line per criterion.

Run with `pytest tests/test_acceptance.py -v -s` to see the summary lines.
"""
import itertools
import random
import time

import pytest

from quadbed.embed import EmbedLimits, embed_search, min_aux, polynomial_graph
from quadbed.errors import SearchBudgetExceededError
from quadbed.gadgets import (
    REGISTRY,
    QuadratizePolicy,
    catalog,
    quadratize,
    verify_gadget,
)
from quadbed.hardware import chimera, find_native_k4, is_bipartite, pegasus
from quadbed.pbf import Polynomial
from quadbed.solve import assemble_qubo, solve_exact, unembed
from quadbed.synth import SynthesisProblem, resolve_catalog_pattern, synthesize
from quadbed.tables import REFERENCE_TOTALS, run_tables_report

_RESULTS = {}


def _record(num, ok, detail=""):
    prev_ok, details = _RESULTS.get(num, (True, []))
    if detail:
        details = details + [detail]
    _RESULTS[num] = (prev_ok and ok, details)


@pytest.fixture(scope="module", autouse=True)
def _summary():
    yield
    print("\n" + "=" * 72)
    for num in sorted(_RESULTS):
        ok, details = _RESULTS[num]
        line = f"ACCEPTANCE {num}: {'PASS' if ok else 'FAIL'}"
        if details:
            line += "  [" + "; ".join(details) + "]"
        print(line)
    print("=" * 72)


@pytest.fixture(scope="module")
def cat():
    return catalog()


@pytest.fixture(scope="module")
def table_report():
    t0 = time.monotonic()
    report = run_tables_report()
    return report, time.monotonic() - t0


# -- criterion 1: gadget exactness suite ------------------------------------


def test_criterion_1_gadget_exactness():
    t0 = time.monotonic()
    ok = all(verify_gadget(g) for g in REGISTRY.values())
    elapsed = time.monotonic() - t0
    _record(1, ok and elapsed < 1.0, f"{len(REGISTRY)} gadgets in {elapsed:.3f}s")
    assert ok
    assert elapsed < 1.0


# -- criterion 2: table reproduction -----------------------------------------


def test_criterion_2_runtime(table_report):
    report, elapsed = table_report
    _record(2, elapsed < 600, f"report in {elapsed:.1f}s")
    assert elapsed < 600


@pytest.mark.parametrize(
    "graph,hardware",
    [(g, hw) for g in REFERENCE_TOTALS for hw in ("chimera", "pegasus")],
)
def test_criterion_2_row(table_report, graph, hardware):
    report, _ = table_report
    row = report.row(graph, hardware)
    detail = ""
    if row.exceeded:
        detail = (
            f"{graph}/{hardware}: computed {row.computed_total} > reference {row.ref_total}"
        )
    elif row.improved:
        detail = f"{graph}/{hardware}: improved {row.computed_total} < {row.ref_total}"
    _record(2, not row.exceeded, detail)
    assert not row.exceeded, (
        f"{graph}/{hardware}: computed total {row.computed_total} exceeds "
        f"reference {row.ref_total}"
    )


# -- criterion 3: structural checks ------------------------------------------


def test_criterion_3_pegasus_and_chimera_structure():
    p2 = pegasus(2)
    ok = p2.n == 40
    ok &= find_native_k4(p2) is not None
    ok &= max(p2.degree(v) for v in range(p2.n)) <= 15
    for m, n, t in ((1, 1, 4), (2, 2, 4), (3, 3, 4)):
        g = chimera(m, n, t)
        ok &= is_bipartite(g) is not None
        ok &= g.n == 2 * t * m * n
        ok &= g.edge_count() == t * t * m * n + t * n * (m - 1) + t * m * (n - 1)
    _record(3, ok)
    assert ok


# -- criterion 4: chain-length claims ----------------------------------------


def test_criterion_4_pegasus_chains_of_two(cat):
    p2 = pegasus(2)
    failures = []
    for name, guest in cat.items():
        e = embed_search(guest, p2, EmbedLimits(4, 2))
        if e is None or e.max_chain_len() > 2:
            failures.append(name)
    _record(4, not failures, f"pegasus chains<=2 for all 11: {'ok' if not failures else failures}")
    assert not failures


@pytest.mark.parametrize("graph,budget", [("K6-e", 5), ("K6", 8)])
def test_criterion_4_chimera_needs_chains_of_three(cat, graph, budget):
    grid = chimera(2, 2, 4)
    short = embed_search(cat[graph], grid, EmbedLimits(budget, 2))
    longer = embed_search(cat[graph], grid, EmbedLimits(budget, 3))
    ok = short is None and longer is not None
    _record(4, ok, f"{graph}: chains<=2 infeasible, <=3 feasible at aux {budget}")
    assert short is None
    assert longer is not None


# -- criterion 5: K4 single-cell lower bound ---------------------------------


def test_criterion_5_k4_cell_lower_bound(cat):
    cell = chimera(1, 1, 4)
    result = min_aux(cat["K4"], cell, EmbedLimits(4, 2))
    ok = result.aux == 2
    # iterative deepening means budgets 0 and 1 were exhausted first
    none0 = embed_search(cat["K4"], cell, EmbedLimits(0, 2))
    none1 = embed_search(cat["K4"], cell, EmbedLimits(1, 2))
    ok &= none0 is None and none1 is None
    _record(5, ok, "K4 cell minimum is exactly 2")
    assert ok


# -- criterion 6: synthesis recovery ------------------------------------------


def test_criterion_6_synthesis():
    t0 = time.monotonic()
    base = catalog(include_patterns=False)
    checks = []
    res = synthesize(SynthesisProblem(-1, base["Propeller"], 4))
    checks.append(res.gadget is not None and verify_gadget(res.gadget))
    res = synthesize(SynthesisProblem(+1, base["K5-1aux"], 4))
    checks.append(res.gadget is not None and verify_gadget(res.gadget))
    res = synthesize(SynthesisProblem(+1, base["K4"], 4))
    checks.append(res.gadget is not None and verify_gadget(res.gadget))
    res = synthesize(SynthesisProblem(+1, base["Propeller"], 4))
    checks.append(res.gadget is None)
    res4 = resolve_catalog_pattern(base["K6"], 4)
    res1 = resolve_catalog_pattern(base["K6"], 1)
    checks.append(verify_gadget(res4.gadget))
    checks.append(verify_gadget(res1.gadget))
    elapsed = time.monotonic() - t0
    ok = all(checks) and elapsed < 300
    _record(6, ok, f"6 synthesis tasks in {elapsed:.1f}s")
    assert all(checks)
    assert elapsed < 300


# -- criterion 7: end-to-end exactness ----------------------------------------


def _random_polynomial(rng):
    names = ["v1", "v2", "v3", "v4", "v5"]
    n_vars = rng.randint(2, 5)
    chosen = names[:n_vars]
    terms = {}
    for _ in range(rng.randint(1, 5)):
        degree = rng.randint(1, min(4, n_vars))
        mono = tuple(sorted(rng.sample(chosen, degree)))
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        terms[mono] = terms.get(mono, 0) + coeff
    return Polynomial(terms)


def _brute_force_min(p):
    names = sorted(p.variables)
    return min(
        p.evaluate(dict(zip(names, bits)))
        for bits in itertools.product((0, 1), repeat=len(names))
    )


def test_criterion_7_end_to_end_exactness():
    rng = random.Random(20240802)
    p2 = pegasus(2)
    grid = chimera(2, 2, 4)
    count = 0
    t0 = time.monotonic()
    while count < 100:
        p = _random_polynomial(rng)
        if p.is_zero() or not p.variables:
            continue
        hardware = "chimera" if count % 5 == 4 else "pegasus"
        host = grid if hardware == "chimera" else p2
        q2, _ = quadratize(p, QuadratizePolicy(hardware))
        guest = polynomial_graph(q2)
        emb = None
        for chain_len in (2, 3):
            for budget in range(0, 24 - len(guest.vertices) + 1):
                try:
                    emb = embed_search(
                        guest, host, EmbedLimits(budget, chain_len, node_budget=5_000_000)
                    )
                except SearchBudgetExceededError:
                    continue
                if emb is not None:
                    break
            if emb is not None:
                break
        assert emb is not None, f"no embedding for instance {count}"
        qubo = assemble_qubo(q2, emb, host)
        host_assignment, energy = solve_exact(qubo)
        logical, broken = unembed(host_assignment, emb)
        assert broken == 0, f"broken chains on instance {count}"
        value = p.evaluate({v: logical[v] for v in p.variables})
        expected = _brute_force_min(p)
        assert value == energy == expected, f"instance {count}: {value} vs {expected}"
        count += 1
    elapsed = time.monotonic() - t0
    _record(7, True, f"100 instances in {elapsed:.1f}s")


# -- criterion 8: factoring demo ----------------------------------------------


def test_criterion_8_factor_demo():
    from quadbed.factoring import run_factor_demo

    r15 = run_factor_demo(15)
    r21 = run_factor_demo(21)
    ok = r15.factors == (3, 5) and r21.factors == (3, 7)
    ok &= r15.broken_chains == 0 and r21.broken_chains == 0
    _record(8, ok, f"15 -> {r15.factors}, 21 -> {r21.factors}")
    assert ok
