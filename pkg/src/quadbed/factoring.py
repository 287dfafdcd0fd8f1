"""Desk-scale factoring demo through the full compile-and-solve pipeline.

Encodes n = p*q over the bits of two odd 3-bit factors via the partial
product (multiplication-table) columns, squares the residual
(sum_j 2^j col_j - n), and multilinearly expands to a degree-4 polynomial in
the four free factor bits.  The pipeline is then quadratize -> minor-embed
-> exact solve -> unembed; the ground state has residual zero, i.e. a
factorization.
"""
from __future__ import annotations

from dataclasses import dataclass

from .embed import EmbedLimits, embed_search, polynomial_graph
from .errors import SearchBudgetExceededError
from .gadgets import QuadratizePolicy, quadratize
from .hardware import chimera, pegasus
from .pbf import Polynomial
from .solve import assemble_qubo, solve_exact, unembed

SUPPORTED = (15, 21, 35)

P_BITS = ("p1", "p2")  # p = 1 + 2*p1 + 4*p2 (odd factors up to 7)
Q_BITS = ("q1", "q2")


def _multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    out = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            key = tuple(sorted(set(ma) | set(mb)))
            out[key] = out.get(key, 0) + ca * cb
    return Polynomial(out)


def factoring_polynomial(n: int) -> Polynomial:
    """(p*q - n)^2 as a multilinear degree-4 polynomial in the factor bits."""
    if n not in SUPPORTED:
        raise ValueError(
            f"unsupported n={n}: expected an odd semiprime in {SUPPORTED}"
        )
    p_terms = {(): 1}
    q_terms = {(): 1}
    for i, v in enumerate(P_BITS, start=1):
        p_terms[(v,)] = 1 << i
    for i, v in enumerate(Q_BITS, start=1):
        q_terms[(v,)] = 1 << i
    # partial-product columns: weight of p-bit i times q-bit j is 2^(i+j)
    product = _multiply(Polynomial(p_terms), Polynomial(q_terms))
    residual = product + Polynomial({(): -n})
    return _multiply(residual, residual)


@dataclass
class FactorDemoResult:
    n: int
    factors: tuple
    energy: int
    broken_chains: int
    quadratization_aux: int
    embedding_aux: int
    host: str


def run_factor_demo(n: int, hardware: str = "pegasus") -> FactorDemoResult:
    """Factor a supported odd semiprime end to end; returns both factors."""
    p = factoring_polynomial(n)
    policy = QuadratizePolicy(hardware)
    q2, ledger = quadratize(p, policy)
    guest = polynomial_graph(q2)
    if hardware == "pegasus":
        host, host_name = pegasus(2), "pegasus(2)"
        chain_lens = (2, 3)
    else:
        host, host_name = chimera(3, 3, 4), "chimera(3,3,4)"
        chain_lens = (2, 3, 4)
    # deepen the aux budget so the exact solver sees the smallest instance
    emb = None
    aux_cap = 24 - len(guest.vertices)
    for chain_len in chain_lens:
        for budget in range(aux_cap + 1):
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
    if emb is None:
        raise RuntimeError(f"no embedding of the demo instance into {host_name}")
    qubo = assemble_qubo(q2, emb, host)
    host_assignment, energy = solve_exact(qubo)
    logical, broken = unembed(host_assignment, emb)
    p_val = 1 + sum((1 << i) * logical[v] for i, v in enumerate(P_BITS, start=1))
    q_val = 1 + sum((1 << i) * logical[v] for i, v in enumerate(Q_BITS, start=1))
    if p_val * q_val != n or p_val == 1 or q_val == 1:
        raise RuntimeError(f"pipeline returned a non-factorization: {p_val} * {q_val} != {n}")
    return FactorDemoResult(
        n,
        tuple(sorted((p_val, q_val))),
        energy,
        broken,
        ledger.total_aux,
        emb.aux_count,
        host_name,
    )
