import pytest
from hypothesis import given, strategies as st

from quadbed.errors import MissingVariableError, PbfParseError
from quadbed.pbf import Polynomial, parse_pbf


def test_parse_single_term():
    p = parse_pbf("-1 : x1 x2 x3")
    assert p.terms == {("x1", "x2", "x3"): -1}


def test_parse_empty_is_zero():
    assert parse_pbf("").is_zero()
    assert parse_pbf("# only a comment\n\n").is_zero()


def test_parse_idempotence_and_cancellation():
    assert parse_pbf("2 : a a b\n-2 : a b").is_zero()


def test_parse_constant_and_comments():
    p = parse_pbf("5  # constant\n-2 : x  # linear\n")
    assert p.terms == {(): 5, ("x",): -2}


def test_parse_merges_like_monomials():
    p = parse_pbf("1 : b a\n2 : a b\n3")
    assert p.terms == {("a", "b"): 3, (): 3}


def test_parse_rejects_noninteger_coefficient():
    with pytest.raises(PbfParseError) as exc:
        parse_pbf("1 : x\n1.5 : y")
    assert exc.value.lineno == 2


def test_parse_rejects_dangling_colon():
    with pytest.raises(PbfParseError):
        parse_pbf("3 :")


def test_evaluate_examples():
    p = parse_pbf("-1 : x1 x2 x3")
    assert p.evaluate({"x1": 1, "x2": 1, "x3": 1}) == -1
    assert p.evaluate({"x1": 1, "x2": 0, "x3": 1}) == 0
    q = parse_pbf("2 : a\n-1 : a x\n-1 : a y\n-1 : a z")
    assert q.evaluate({"a": 1, "x": 1, "y": 1, "z": 0}) == 0


def test_evaluate_missing_variable():
    p = parse_pbf("1 : x y")
    with pytest.raises(MissingVariableError):
        p.evaluate({"x": 1})


def test_restrict_examples():
    p = parse_pbf("1 : x1 x2 x3")
    assert p.restrict({"x1": 0}).is_zero()
    assert p.restrict({"x1": 1}).terms == {("x2", "x3"): 1}
    q = parse_pbf("2 : a\n-1 : a x\n-1 : a y\n-1 : a z")
    assert q.restrict({"a": 1}) == parse_pbf("2\n-1 : x\n-1 : y\n-1 : z")


def test_serialize_round_trip_canonical():
    text = "3\n-2 : a\n1 : a b\n4 : a b z"
    p = parse_pbf(text)
    assert parse_pbf(p.to_text()) == p
    assert p.to_text() == text
    assert Polynomial().to_text() == "0"
    assert parse_pbf("0").is_zero()


_vars = st.sampled_from(["a", "b", "c", "d"])
_monos = st.lists(_vars, max_size=3).map(lambda vs: tuple(sorted(set(vs))))
_polys = st.dictionaries(_monos, st.integers(-9, 9), max_size=6).map(Polynomial)
_assignments = st.fixed_dictionaries({v: st.integers(0, 1) for v in ["a", "b", "c", "d"]})


@given(_polys, _polys, _assignments)
def test_evaluate_additive(p, q, s):
    assert (p + q).evaluate(s) == p.evaluate(s) + q.evaluate(s)


@given(_polys)
def test_serializer_fixed_point(p):
    text = p.to_text()
    assert parse_pbf(text).to_text() == text


@given(_polys, st.fixed_dictionaries({"a": st.integers(0, 1)}),
       st.fixed_dictionaries({"b": st.integers(0, 1)}))
def test_restrict_composes_on_disjoint_domains(p, pi1, pi2):
    both = dict(pi1, **pi2)
    assert p.restrict(pi1).restrict(pi2) == p.restrict(both)


@given(_polys, st.fixed_dictionaries({"a": st.integers(0, 1), "b": st.integers(0, 1)}),
       st.fixed_dictionaries({"c": st.integers(0, 1), "d": st.integers(0, 1)}))
def test_restrict_consistent_with_evaluate(p, pi, sigma):
    assert p.restrict(pi).evaluate(sigma) == p.evaluate(dict(pi, **sigma))
