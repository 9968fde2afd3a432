from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph

from coxspec.cartan import cartan_matrix
from coxspec.coxeter import random_tree
from coxspec.diagram import (
    DiagramError,
    NotBipartiteError,
    bicolor,
    bicolored_orientation,
    build_catalog,
    central_orientation,
    classify_tpqr,
    components_without_edge,
    dual_graph,
    format_graph,
    make_graph,
    parse_graph,
    parse_orientation,
)
from coxspec.mckay import match_cartan

MULTIPLY_LACED = ["B3", "C3", "F4", "G2", "B3~", "B4~", "C2~", "C3~", "BC2~", "BC3~", "CD3~", "CD4~", "DD3~",
                  "DD4~", "F41~", "F42~", "G21~", "G22~", "A11~", "A12~"]
DUAL_PAIRS = [("G21~", "G22~"), ("F41~", "F42~"), ("B3~", "C3~"), ("B4~", "C4~"), ("CD4~", "DD4~"),
              ("CD5~", "DD5~"), ("B4", "C4"), ("F4", "F4"), ("G2", "G2")]


@pytest.mark.parametrize("name", MULTIPLY_LACED + ["E8~", "D6~", "T[2,3,7]", "*[5]", "A4~"])
def test_valued_graph_condition(name):
    g = graph(name)
    for e in g.edges:
        assert e.d_uv * g.weights[e.v] == e.d_vu * g.weights[e.u]


@pytest.mark.parametrize("a,b", DUAL_PAIRS)
def test_dual_pairs(a, b):
    dual = dual_graph(graph(a))
    assert match_cartan(cartan_matrix(dual), graph(b)) is not None


def test_dual_is_an_involution():
    for name in MULTIPLY_LACED:
        g = graph(name)
        back = dual_graph(dual_graph(g))
        assert [(e.u, e.v, e.d_uv, e.d_vu) for e in back.edges] == [(e.u, e.v, e.d_uv, e.d_vu) for e in g.edges]


@given(st.integers(1, 12), st.integers(0, 10**6))
@settings(max_examples=50)
def test_bicolor_cuts_every_edge(n, seed):
    g = random_tree(n, random.Random(seed), valued=True)
    part = bicolor(g)
    s1, s2 = set(part.part1), set(part.part2)
    assert s1 | s2 == set(g.vertices) and not s1 & s2
    # either part may serve as S1: the cut is the same edge set
    assert all((e.u in s1) != (e.v in s1) for e in g.edges)
    assert all((e.u in s2) != (e.v in s2) for e in g.edges)
    assert min(g.vertices) in s1
    assert g.vertices == part.part1 + part.part2


def test_catalog_names_and_sizes():
    assert graph("E6").vertices == ("x0", "x1", "x2", "y1", "y2", "y3")
    assert graph("T[2,3,3]").n == 6
    assert graph("D4~").extension_vertex == "y1"
    assert graph("E8~").n == 9
    assert graph("A5~").cyclic and graph("A5~").n == 6
    assert graph("*[5]").n == 6


def test_catalog_errors():
    for bad in ("X9", "A0", "D3", "E9", "T[1,2]", ""):
        with pytest.raises(DiagramError):
            build_catalog(bad)


def test_tpqr_classification():
    assert classify_tpqr(2, 3, 5).kind == "positive"
    assert classify_tpqr(3, 3, 3).kind == "affine"
    assert classify_tpqr(2, 3, 7).hyperbolic
    assert classify_tpqr(2, 3, 8).kind == "indefinite"


def test_dsl_round_trip():
    for name in ("G2", "F42~", "D5", "T[2,4,5]"):
        g = graph(name)
        back = parse_graph(format_graph(g), name=name)
        assert back.vertices == g.vertices
        assert back.edges == g.edges
        assert dict(back.weights) == dict(g.weights)


def test_dsl_errors():
    with pytest.raises(DiagramError):
        parse_graph("vertex a\nedge a b x y\n")
    with pytest.raises(DiagramError):
        parse_graph("vertex a\nnode b\n")
    with pytest.raises(DiagramError):
        parse_graph("edge a b 1 2\nweight a 1\nweight b 1\n")  # violates d_ab·f_b = d_ba·f_a
    with pytest.raises(DiagramError):
        parse_graph("edge a a\n")


def test_dsl_comments_and_defaults():
    g = parse_graph("# a path\nedge a b\nedge b c  # simple\n")
    assert g.n == 3 and g.is_simply_laced() and g.is_tree()


def test_odd_cycle_is_not_bipartite():
    g = make_graph(["a", "b", "c"], [("a", "b"), ("b", "c"), ("c", "a")])
    with pytest.raises(NotBipartiteError):
        bicolor(g)


def test_orientations():
    g = graph("D4~")
    o = bicolored_orientation(g)
    part = bicolor(g)
    for e in g.edges:
        s, t = o.source_target(e.u, e.v)
        assert s in part.part1 and t in part.part2
    c = central_orientation(g)
    assert all(c.is_source(v, g) or c.is_sink(v, g) or g.degree(v) > 1 for v in g.vertices)
    flipped = parse_orientation(g, "flip:x0-y2")
    assert flipped.source_target("x0", "y2") == ("y2", "x0")
    assert parse_orientation(g, "reversed").source_target("x0", "y1") == ("y1", "x0")
    with pytest.raises(DiagramError):
        parse_orientation(g, "sideways")
    with pytest.raises(DiagramError):
        parse_orientation(g, "flip:y1-y2")


def test_components_without_edge():
    g1, g2 = components_without_edge(graph("E6"), "x0", "y3")
    assert set(g1.vertices) | set(g2.vertices) == set(graph("E6").vertices)
    assert not set(g1.vertices) & set(g2.vertices)
    assert ("x0" in g1.vertices) != ("y3" in g1.vertices)
