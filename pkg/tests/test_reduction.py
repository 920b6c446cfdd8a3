from __future__ import annotations

import itertools
import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from erric.codes import distinguishing_count, domination_count, is_errcode
from erric.graph import Graph
from erric.reduction import (
    CLAUSE_EDGES,
    VAR_EDGES,
    VAR_LABELS,
    Formula,
    ReductionError,
    build_reduction,
    decode_assignment,
    encode_assignment,
    format_dimacs,
    full_unsat_formula,
    parse_dimacs,
    random_formula,
    roundtrip_check,
    sat_bruteforce,
    split_unsat_formula,
)
from erric.solver import forced_detectors, min_errcode

from .conftest import checked

FOUR_VARS = Formula(4, ((1, -2, 3), (-1, 2, 4), (-3, -4, 2), (1, 3, -4)))


@st.composite
def formulas(draw, max_vars=6, max_clauses=8):
    n = draw(st.integers(3, max_vars))
    m = draw(st.integers(0, max_clauses))
    clauses = []
    for _ in range(m):
        vs = draw(st.lists(st.integers(1, n), min_size=3, max_size=3, unique=True))
        signs = draw(st.lists(st.booleans(), min_size=3, max_size=3))
        clauses.append(tuple(v if s else -v for v, s in zip(vs, signs)))
    return Formula(n, tuple(clauses))


def test_parse_dimacs_basic():
    text = "c example\np cnf 3 2\n1 -2 3 0\n-1\n2 -3 0\n"
    f = parse_dimacs(text)
    assert f == Formula(3, ((1, -2, 3), (-1, 2, -3)))
    assert parse_dimacs(format_dimacs(f)) == f


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("1 2 3 0\n", "before 'p cnf'"),
        ("p cnf 3 2\n1 2 3 0\n", "declares 2"),
        ("p cnf 3 1\n1 2 0\n", "2 literals"),
        ("p cnf 3 1\n1 1 2 0\n", "repeats a variable"),
        ("p cnf 3 1\n1 2 4 0\n", "outside"),
        ("p cnf 3 1\n1 2 3\n", "not terminated"),
        ("p cnf x 1\n", "malformed header"),
        ("", "missing"),
    ],
)
def test_parse_dimacs_errors(text, fragment):
    with pytest.raises(ReductionError, match=fragment):
        parse_dimacs(text)


@settings(max_examples=60)
@given(formulas(max_vars=8, max_clauses=12))
def test_counts(f):
    inst = build_reduction(f)
    N, M = f.num_vars, f.num_clauses
    assert inst.graph.n == 10 * N + 8 * M
    assert inst.graph.m == 15 * N + 13 * M
    assert inst.K == 9 * N + 8 * M
    assert len(inst.forced_detectors) == 8 * N + 8 * M
    degs = inst.graph.degrees()
    assert min(degs) >= 2


def test_gadget_shapes():
    assert len(VAR_EDGES) == 15 and len(CLAUSE_EDGES) == 10
    f = Graph(10, VAR_EDGES)
    x, xbar = VAR_LABELS.index("x"), VAR_LABELS.index("xbar")
    # 3-domination alone pins exactly the eight non-literal vertices
    pinned = set()
    for v in range(10):
        if f.degree(v) == 2:
            pinned |= set(f.neighbors(v)) | {v}
    assert pinned == set(range(10)) - {x, xbar}


def test_variable_fragment_y_z_property():
    g = Graph(10, VAR_EDGES)
    y, z = VAR_LABELS.index("y"), VAR_LABELS.index("z")
    x, xbar = VAR_LABELS.index("x"), VAR_LABELS.index("xbar")
    forced = set(range(10)) - {x, xbar}
    assert distinguishing_count(g, forced | {x}, y, z) >= 3
    assert distinguishing_count(g, forced | {xbar}, y, z) >= 3
    assert distinguishing_count(g, forced, y, z) < 3
    # brute force over every detector subset of the fragment
    for k in range(11):
        for S in itertools.combinations(range(10), k):
            S = set(S)
            if forced <= S:
                ok = distinguishing_count(g, S, y, z) >= 3
                assert ok == bool(S & {x, xbar})


def test_clause_gadget_needs_an_external_literal():
    f = Formula(3, ((1, 2, 3),))
    inst = build_reduction(f)
    c, d = inst.labels["c1"], inst.labels["d1"]
    base = set(inst.forced_detectors)
    assert distinguishing_count(inst.graph, base, c, d) < 3
    assert distinguishing_count(inst.graph, base | {inst.literal_vertex(2)}, c, d) >= 3


def test_encode_decode_roundtrip():
    inst = build_reduction(FOUR_VARS)
    for assignment in itertools.product((False, True), repeat=4):
        code = encode_assignment(inst, assignment)
        assert len(code) == inst.K
        valid = is_errcode(inst.graph, code)
        assert valid == FOUR_VARS.satisfied_by(assignment)
        if valid:
            assert decode_assignment(inst, code) == assignment
        else:
            with pytest.raises(ReductionError):
                decode_assignment(inst, code)


def test_decode_rejects_wrong_size():
    inst = build_reduction(FOUR_VARS)
    with pytest.raises(ReductionError, match="size"):
        decode_assignment(inst, range(inst.graph.n))


def test_sat_bruteforce_order():
    assert sat_bruteforce(Formula(3, ())) == (False, False, False)
    assert sat_bruteforce(Formula(3, ((1, 2, 3),))) == (False, False, True)
    assert sat_bruteforce(full_unsat_formula()) is None
    with pytest.raises(ReductionError):
        sat_bruteforce(Formula(25, ()))


def test_unsat_constructions():
    assert full_unsat_formula().covers_all_literals()
    for perm in ((1, 2, 3, 4), (2, 3, 4, 1), (4, 1, 2, 3)):
        for split in ((False, False, True, True), (False, True, False, True)):
            f = split_unsat_formula(perm, split)
            assert f.covers_all_literals()
            assert sat_bruteforce(f) is None


def test_four_variable_formula_roundtrip():
    rep = roundtrip_check(FOUR_VARS)
    assert rep["sat"] and rep["agrees"] and rep["min_size"] == 9 * 4 + 8 * 4
    assert FOUR_VARS.satisfied_by(rep["decoded"])


def test_covering_formula_with_one_true_literal_per_clause():
    f = Formula(3, ((1, 2, 3), (-1, -2, -3)))
    inst = build_reduction(f)
    code = checked(inst.graph, min_errcode(inst.graph))
    assert code.size == 9 * 3 + 8 * 2
    assert f.satisfied_by(decode_assignment(inst, code.detectors))


def test_uncovered_literal_is_pinned():
    # A literal in no clause is pinned by a distinguishing requirement, so the
    # size-K equivalence needs every literal to occur somewhere.
    f = Formula(3, ((1, 2, 3),))
    inst = build_reduction(f)
    forced = set(forced_detectors(inst.graph))
    assert {inst.literal_vertex(-v) for v in (1, 2, 3)} <= forced
    assert min_errcode(inst.graph).size == inst.K + 1


def test_random_covering_roundtrips():
    rng = random.Random(2)
    for i in range(12):
        n = rng.randint(3, 4)
        f = random_formula(n, rng.randint(3, 7), seed=i)
        assert f.covers_all_literals()
        rep = roundtrip_check(f)
        assert rep["agrees"]
        inst = build_reduction(f)
        assert forced_detectors(inst.graph) == list(inst.forced_detectors)


def test_side_file_json():
    inst = build_reduction(FOUR_VARS)
    doc = json.loads(inst.to_json())
    assert doc["K"] == inst.K
    assert doc["literal_map"]["1"] == list(inst.literal_map[1])
    assert len(doc["gadget_map"]) == 8


def test_domination_of_literals_in_code():
    inst = build_reduction(FOUR_VARS)
    code = encode_assignment(inst, sat_bruteforce(FOUR_VARS))
    assert all(domination_count(inst.graph, code, v) >= 3 for v in range(inst.graph.n))
