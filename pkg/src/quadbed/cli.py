"""Command-line surface for the quadratize/embed/solve toolchain."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .errors import QuadbedError
from .pbf import parse_pbf


def _read_poly(args):
    text = sys.stdin.read() if args.input == "-" else Path(args.input).read_text()
    return parse_pbf(text)


def _cmd_quadratize(args):
    from .gadgets import QuadratizePolicy, quadratize

    p = _read_poly(args)
    q2, ledger = quadratize(p, QuadratizePolicy(args.hardware))
    if args.format == "json":
        print(json.dumps({"quadratic": q2.to_text(), "ledger": json.loads(ledger.to_json())}, indent=2))
    else:
        print(q2.to_text())
        print(f"# aux introduced: {ledger.total_aux}", file=sys.stderr)
    return 0


def _cmd_gadgets(args):
    from .gadgets import REGISTRY, classify_graph, extract_graph, verify_gadget

    rows = []
    for (name, sign, degree), gadget in sorted(REGISTRY.items()):
        graph = classify_graph(extract_graph(gadget))
        rows.append(
            {
                "id": name,
                "sign": "+" if sign > 0 else "-",
                "degree": degree,
                "aux": len(gadget.aux),
                "graph": graph or "uncatalogued",
                "verified": verify_gadget(gadget) if args.verify else None,
                "quadratic": gadget.quadratic.to_text(),
            }
        )
    if args.format == "json":
        print(json.dumps(rows, indent=2))
    else:
        for r in rows:
            flag = "" if r["verified"] is None else ("  OK" if r["verified"] else "  FAIL")
            print(f"{r['id']:<16}{r['sign']}{r['degree']}  aux={r['aux']}  graph={r['graph']}{flag}")
    return 0


def _cmd_synth(args):
    from .gadgets import catalog
    from .synth import SynthesisProblem, persist_patterns, synthesize

    if args.resolve_patterns:
        fixture = persist_patterns(coeff_bound=args.bound)
        for name, rec in fixture.items():
            print(f"{name}: removed {rec['removed']}")
        return 0
    entries = catalog(include_patterns=False)
    if args.template not in entries:
        print(f"unknown template {args.template!r}; options: {', '.join(sorted(entries))}", file=sys.stderr)
        return 1
    sign = 1 if args.sign == "+" else -1
    problem = SynthesisProblem(sign, entries[args.template], args.bound, not args.allow_missing_edges)
    result = synthesize(problem)
    if result.gadget is None:
        print(f"infeasible within coefficient bound {args.bound} ({result.nodes} nodes)")
        return 1
    print(result.gadget.quadratic.to_text())
    return 0


def _cmd_hardware(args):
    from .hardware import chimera, export_dot, export_edge_list, pegasus

    if args.family == "chimera":
        g = chimera(args.m, args.n if args.n else args.m, args.t)
    else:
        g = pegasus(args.m)
    if args.format == "dot":
        print(export_dot(g))
    elif args.format == "json":
        print(
            json.dumps(
                {
                    "family": g.family,
                    "params": g.params,
                    "vertices": g.n,
                    "edges": g.edge_count(),
                    "labels": [g.label_text(v) for v in range(g.n)],
                },
                indent=2,
            )
        )
    else:
        print(export_edge_list(g), end="")
    return 0


def _build_host(args):
    from .hardware import chimera, pegasus

    if args.family == "chimera":
        return chimera(args.m, args.n if args.n else args.m, args.t)
    return pegasus(args.m)


def _cmd_embed(args):
    from .embed import EmbedLimits, embed_search, min_aux
    from .gadgets import catalog

    entries = catalog()
    if args.guest not in entries:
        print(f"unknown guest {args.guest!r}; options: {', '.join(sorted(entries))}", file=sys.stderr)
        return 1
    guest = entries[args.guest]
    host = _build_host(args)
    limits = EmbedLimits(args.max_aux, args.max_chain, args.node_budget)
    if args.minimize:
        result = min_aux(guest, host, limits)
        if result.aux is None:
            print(f"no embedding with aux <= {args.max_aux} and chains <= {args.max_chain}")
            return 1
        e = result.embedding
        print(f"# minimum aux: {result.aux}")
    else:
        e = embed_search(guest, host, limits)
        if e is None:
            print(f"no embedding with aux <= {args.max_aux} and chains <= {args.max_chain}")
            return 1
    if args.format == "json":
        print(json.dumps(e.to_labels(host), indent=2))
    else:
        for g, chain in sorted(e.to_labels(host).items()):
            print(f"{g}: {' | '.join(chain)}")
    return 0


def _cmd_solve(args):
    from .embed import EmbedLimits, embed_search, polynomial_graph
    from .errors import SearchBudgetExceededError
    from .gadgets import QuadratizePolicy, quadratize
    from .solve import Schedule, assemble_qubo, solve_exact, solve_sa, unembed

    p = _read_poly(args)
    hardware = args.family if args.family != "chimera" else "chimera"
    q2, ledger = quadratize(p, QuadratizePolicy(hardware))
    guest = polynomial_graph(q2)
    host = _build_host(args)
    emb = None
    for budget in range(0, max(1, 24 - len(guest.vertices)) + 1):
        try:
            emb = embed_search(guest, host, EmbedLimits(budget, args.max_chain, 5_000_000))
        except SearchBudgetExceededError:
            continue
        if emb is not None:
            break
    if emb is None:
        print("no embedding found on the requested host", file=sys.stderr)
        return 1
    qubo = assemble_qubo(q2, emb, host, args.chain_strength)
    if args.sa:
        sch = Schedule(sweeps=args.sweeps, seed=args.seed, restarts=args.restarts)
        assignment, energy = solve_sa(qubo, sch)
    else:
        assignment, energy = solve_exact(qubo)
    logical, broken = unembed(assignment, emb)
    original = {v: logical[v] for v in sorted(p.variables)}
    if args.format == "json":
        print(
            json.dumps(
                {
                    "energy": energy,
                    "assignment": original,
                    "broken_chains": broken,
                    "aux_quadratization": ledger.total_aux,
                    "aux_embedding": emb.aux_count,
                },
                indent=2,
            )
        )
    else:
        bits = " ".join(f"{v}={b}" for v, b in original.items())
        print(f"energy {energy}  broken-chains {broken}  {bits}")
    return 0


def _cmd_tables(args):
    from .tables import RSA230_CONTEXT, run_tables_report

    report = run_tables_report()
    if args.format == "json":
        print(report.to_json())
    else:
        print(report.to_text())
    if args.context:
        print()
        print(RSA230_CONTEXT)
    return 0 if report.ok else 1


def _cmd_factor_demo(args):
    from .factoring import run_factor_demo

    result = run_factor_demo(args.n, args.hardware)
    if args.format == "json":
        print(
            json.dumps(
                {
                    "n": result.n,
                    "factors": list(result.factors),
                    "energy": result.energy,
                    "broken_chains": result.broken_chains,
                    "host": result.host,
                }
            )
        )
    else:
        a, b = result.factors
        print(f"{result.n} = {a} * {b}  (host {result.host}, broken chains {result.broken_chains})")
    return 0


def _add_host_args(sp, default_family="chimera"):
    sp.add_argument("--family", choices=("chimera", "pegasus"), default=default_family)
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=0, help="chimera columns (defaults to --m)")
    sp.add_argument("--t", type=int, default=4, help="chimera shore size")


def build_parser():
    ap = argparse.ArgumentParser(prog="quadbed", description=__doc__)
    ap.add_argument("--version", action="version", version=f"quadbed {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("quadratize", help="rewrite a degree-<=4 polynomial as quadratic")
    sp.add_argument("--input", default="-", help="polynomial file ('-' = stdin)")
    sp.add_argument("--hardware", choices=("chimera", "pegasus"), default="pegasus")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_quadratize)

    sp = sub.add_parser("gadgets", help="dump the closed-form gadget registry")
    sp.add_argument("--verify", action="store_true", help="run the enumeration oracle")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_gadgets)

    sp = sub.add_parser("synth", help="synthesize a gadget on a catalog template")
    sp.add_argument("--target", dest="sign", choices=("+", "-"), default="+")
    sp.add_argument("--template", default="Propeller")
    sp.add_argument("--bound", type=int, default=4)
    sp.add_argument("--allow-missing-edges", action="store_true")
    sp.add_argument("--resolve-patterns", action="store_true",
                    help="resolve and persist the K6-4e / K6-e catalog patterns")
    sp.set_defaults(func=_cmd_synth)

    sp = sub.add_parser("hardware", help="generate a hardware graph")
    _add_host_args(sp)
    sp.add_argument("--format", choices=("edges", "dot", "json"), default="edges")
    sp.set_defaults(func=_cmd_hardware)

    sp = sub.add_parser("embed", help="minor-embed a catalog graph into a host")
    sp.add_argument("--guest", required=True)
    _add_host_args(sp)
    sp.add_argument("--max-aux", type=int, default=4)
    sp.add_argument("--max-chain", type=int, default=2)
    sp.add_argument("--node-budget", type=int, default=0)
    sp.add_argument("--minimize", action="store_true", help="iterative-deepening minimum aux")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_embed)

    sp = sub.add_parser("solve", help="quadratize, embed and solve a polynomial")
    sp.add_argument("--input", default="-")
    _add_host_args(sp, default_family="pegasus")
    sp.add_argument("--max-chain", type=int, default=3)
    sp.add_argument("--exact", action="store_true", default=True)
    sp.add_argument("--sa", action="store_true", help="simulated annealing instead of exact")
    sp.add_argument("--sweeps", type=int, default=2000)
    sp.add_argument("--restarts", type=int, default=4)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--chain-strength", type=int, default=None)
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_solve)

    sp = sub.add_parser("tables", help="reproduce the aux-count accounting tables")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("--context", action="store_true", help="print the large-scale context figures")
    sp.set_defaults(func=_cmd_tables)

    sp = sub.add_parser("factor-demo", help="factor a small odd semiprime end to end")
    sp.add_argument("n", type=int)
    sp.add_argument("--hardware", choices=("chimera", "pegasus"), default="pegasus")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.set_defaults(func=_cmd_factor_demo)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    # pegasus CLI default m=1 is invalid; nudge to the smallest size
    if getattr(args, "family", None) == "pegasus" and getattr(args, "m", 2) < 2:
        args.m = 2
    try:
        return args.func(args)
    except QuadbedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
