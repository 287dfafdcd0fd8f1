import dataclasses
import itertools
import json

import pytest

from quadbed.errors import DegreeCapError, UnknownGadgetError
from quadbed.gadgets import (
    REGISTRY,
    GadgetGraph,
    QuadratizePolicy,
    builtin_gadget,
    catalog,
    classify_graph,
    color_isomorphic,
    extract_graph,
    min_over_aux_profile,
    quadratize,
    recommend,
    synthesized_gadget,
    verify_gadget,
)
from quadbed.pbf import Polynomial, parse_pbf

EXPECTED_GRAPHS = {
    ("NTR-KZFD", -1, 3): "Propeller",
    ("NTR-KZFD", -1, 4): "X",
    ("PTR-Ishikawa", 1, 3): "K4",
    ("PTR-CoatHanger", 1, 3): "Coat-Hanger",
    ("PTR-K5", 1, 4): "K5-1aux",
    ("PTR-PAIR", 1, 4): None,
}


@pytest.mark.parametrize("key", sorted(REGISTRY))
def test_registry_gadget_exact(key):
    assert verify_gadget(REGISTRY[key])


@pytest.mark.parametrize("key,expected", sorted(EXPECTED_GRAPHS.items(), key=str))
def test_registry_graph_classification(key, expected):
    assert classify_graph(extract_graph(REGISTRY[key])) == expected


def test_builtin_gadget_examples():
    kzfd = builtin_gadget("NTR-KZFD", -1, 3)
    assert kzfd.quadratic == parse_pbf("2 : a1\n-1 : a1 x1\n-1 : a1 x2\n-1 : a1 x3")
    ish = builtin_gadget("PTR-Ishikawa", +1, 3)
    assert ish.quadratic.coefficient(("w",)) == 1
    assert ish.quadratic.coefficient(("w", "x1")) == -1
    assert ish.quadratic.coefficient(("x1", "x2")) == 1
    k5 = builtin_gadget("PTR-K5", +1, 4)
    assert k5.quadratic.coefficient(("w",)) == 3
    assert k5.quadratic.coefficient(("w", "x2")) == -2


def test_builtin_gadget_unknown_lists_entries():
    with pytest.raises(UnknownGadgetError) as exc:
        builtin_gadget("NTR-KZFD", +1, 3)
    assert any("PTR-Ishikawa" in entry for entry in exc.value.available)


def test_wrong_sign_fails_verification():
    wrong = dataclasses.replace(builtin_gadget("NTR-KZFD", -1, 3), sign=+1)
    assert not verify_gadget(wrong)
    # the defect is at the all-ones assignment: min is -1, target +1
    profile = min_over_aux_profile(wrong.quadratic, list(wrong.logical), list(wrong.aux))
    assert profile[0b111] == -1


@pytest.mark.parametrize("lam", [1, 2, 5])
@pytest.mark.parametrize("key", sorted(REGISTRY))
def test_scaling_invariance(key, lam):
    assert verify_gadget(REGISTRY[key], scale=lam)


def test_classify_isomorphism_invariance():
    k4 = catalog()["K4"]
    relabeled = k4.relabel({"x1": "zz", "x2": "q", "x3": "m", "a1": "w"})
    assert classify_graph(relabeled) == "K4"


def test_classify_star_and_path():
    star = GadgetGraph("g", ("u", "v", "w"), ("mid",), {("mid", "u"), ("mid", "v"), ("mid", "w")})
    assert classify_graph(star) == "Propeller"
    path = GadgetGraph("g", ("u", "v"), ("mid",), {("u", "mid"), ("mid", "v")})
    assert classify_graph(path) is None


def test_classify_congruence_under_relabeling():
    for name, graph in catalog().items():
        perm = dict(zip(graph.logical, reversed(graph.logical)))
        perm.update(zip(graph.aux, reversed(graph.aux)))
        assert classify_graph(graph.relabel(perm)) == name


def test_color_isomorphism_respects_colors():
    # star centered on a logical vertex: same shape as Propeller, wrong colors
    swapped = GadgetGraph(
        "g", ("c", "l1", "l2"), ("a",),
        {("c", "l1"), ("c", "l2"), ("c", "a")},
    )
    propeller = catalog()["Propeller"]
    assert not color_isomorphic(swapped, propeller)
    assert classify_graph(swapped) is None


def test_synthesized_gadgets_pass_oracle():
    for name in ("K6-4e", "K6-e"):
        g = synthesized_gadget(name)
        assert verify_gadget(g)
        assert classify_graph(extract_graph(g)) == name


def test_catalog_has_eleven_graphs():
    assert len(catalog()) == 11


def test_recommend_table():
    assert recommend(-1, 3, "chimera") == ("NTR-KZFD", 1)
    assert recommend(-1, 4, "pegasus") == ("NTR-KZFD", 1)
    assert recommend(+1, 3, "chimera")[1] == 2
    assert recommend(+1, 3, "pegasus") == ("PTR-Ishikawa", 1)
    assert recommend(+1, 4, "pegasus")[1] == 2
    assert recommend(+1, 4, "chimera")[1] == 3
    with pytest.raises(ValueError):
        recommend(+1, 5, "chimera")


def test_quadratize_examples():
    p = parse_pbf("-1 : x1 x2 x3\n1 : x1 x2")
    q2, ledger = quadratize(p, QuadratizePolicy("chimera"))
    assert ledger.total_aux == 1
    assert q2.degree() <= 2

    already = parse_pbf("1 : a b\n-2 : c")
    q2, ledger = quadratize(already)
    assert q2 == already and ledger.total_aux == 0

    p4 = parse_pbf("1 : x1 x2 x3 x4")
    q2, ledger = quadratize(p4, QuadratizePolicy("pegasus"))
    assert ledger.total_aux == 1
    assert ledger.records[0].gadget_id == "PTR-K5"


def test_quadratize_degree_cap():
    with pytest.raises(DegreeCapError):
        quadratize(parse_pbf("1 : a b c d e"))


def test_quadratize_ledger_totals_and_json():
    p = parse_pbf("-1 : a b c\n2 : b c d\n1 : a b c d\n3 : a b\n-1 : d")
    q2, ledger = quadratize(p, QuadratizePolicy("chimera"))
    assert ledger.total_aux == sum(r.n_aux for r in ledger.records)
    payload = json.loads(ledger.to_json())
    assert payload["total_aux"] == ledger.total_aux
    assert len(payload["terms"]) == 3


def test_quadratize_fresh_aux_avoid_collisions():
    p = parse_pbf("-1 : aux0 aux1 b")
    q2, ledger = quadratize(p)
    assert set(ledger.records[0].aux_ids).isdisjoint(p.variables)


def _global_min_profile(poly, logical, aux):
    return min_over_aux_profile(poly, logical, aux)


@pytest.mark.parametrize("hardware", ["chimera", "pegasus"])
def test_quadratize_global_validity(hardware):
    # min over all introduced aux must reproduce the original on every input
    p = parse_pbf("-2 : a b c\n1 : b c d\n1 : a b c d\n-3 : a d\n2 : c\n-1")
    q2, ledger = quadratize(p, QuadratizePolicy(hardware))
    logical = sorted(p.variables)
    profile = _global_min_profile(q2, logical, sorted(q2.variables - p.variables))
    n = len(logical)
    for code in range(1 << n):
        s = {v: (code >> (n - 1 - i)) & 1 for i, v in enumerate(logical)}
        assert profile[code] == p.evaluate(s)
