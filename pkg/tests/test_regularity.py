from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph

from coxspec.coxeter import coxeter_matrix, random_orientation
from coxspec.diagram import (
    DiagramError,
    bicolored_orientation,
    central_orientation,
    parse_orientation,
)
from coxspec.exactmath import RationalMatrix
from coxspec.regularity import (
    conjugation_holds,
    defect_form,
    dlab_ringel_defect,
    dlab_ringel_identity,
    indefinite_defects,
    is_regular,
    render_linear_form,
    root_kind,
    star_inequality,
    transforming_element,
    transforming_words,
)
from coxspec.spectral import coxeter_numbers

EXTENDED_TREES = ["D4~", "D6~", "E6~", "E7~", "E8~", "B3~", "C3~", "BC3~", "CD4~", "DD4~", "F41~", "F42~",
                  "G21~", "G22~", "A11~", "A12~"]
vectors = st.lists(st.integers(-5, 5), min_size=9, max_size=9)


@pytest.mark.parametrize("name", EXTENDED_TREES)
def test_defect_is_coxeter_invariant(name):
    g = graph(name)
    rng = random.Random(name)
    o = random_orientation(g, rng)
    rho = defect_form(g, o)
    C = coxeter_matrix(g, o).matrix
    for _ in range(10):
        z = [rng.randrange(-5, 6) for _ in range(g.n)]
        assert rho(C.apply(z)) == rho(z)


@pytest.mark.parametrize("name", ["D4~", "E6~", "E8~", "F42~", "G21~"])
def test_defect_does_not_depend_on_the_transforming_element(name):
    g = graph(name)
    frm, to = bicolored_orientation(g), parse_orientation(g, "reversed")
    zt = defect_form(g, frm).raw
    forms = set()
    for j in range(1, len(transforming_words(g, frm, to)) + 1):
        T = transforming_element(g, frm, to, index=j)
        assert conjugation_holds(g, frm, to, T)
        forms.add(T.matrix.transpose().apply(zt))
    assert forms == {defect_form(g, to).raw}


@pytest.mark.parametrize("name", EXTENDED_TREES)
def test_reversal_keeps_the_defect(name):
    g = graph(name)
    assert defect_form(g, parse_orientation(g, "reversed")).vector == defect_form(g).vector


def test_short_transforming_elements():
    e6 = graph("E6~")
    rev, cen = parse_orientation(e6, "reversed"), central_orientation(e6)
    T = transforming_element(e6, rev, cen, avoid="x0", reduced=True)
    assert T.word == ("x3", "x2", "x1")
    assert conjugation_holds(e6, rev, cen, T)
    assert transforming_element(e6, bicolored_orientation(e6), cen, avoid="y1", reduced=True).word == ("x0",)
    d4 = graph("D4~")
    flip = parse_orientation(d4, "flip:x0-y2")
    T = transforming_element(d4, bicolored_orientation(d4), flip, avoid="y1", reduced=True)
    assert T.word == ("y2",)
    assert conjugation_holds(d4, bicolored_orientation(d4), flip, T)


@given(st.sampled_from(["D5~", "E7~", "F41~", "CD4~"]), st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=20, deadline=None)
def test_conjugation_between_random_orientations(name, s1, s2):
    g = graph(name)
    a, b = random_orientation(g, random.Random(s1)), random_orientation(g, random.Random(s2))
    for avoid in (None, g.vertices[0]):
        assert conjugation_holds(g, a, b, transforming_element(g, a, b, avoid=avoid))


@pytest.mark.parametrize("name", ["D4~", "E6~", "E7~", "E8~", "B3~", "G21~", "F41~", "DD4~"])
def test_dlab_ringel_ratio(name):
    g = graph(name)
    ratios = set()
    for o in (bicolored_orientation(g), central_orientation(g), parse_orientation(g, "reversed")):
        dr = dlab_ringel_identity(g, o)
        assert dr.exponent == coxeter_numbers(g).h_a
        assert dr.ratio_to_defect > 0
        ratios.add(dr.ratio_to_defect)
        C = coxeter_matrix(g, o).matrix
        # C^{h_a} z = z + h_a·α(z)·z¹ on the unit vectors
        M = C ** dr.exponent
        for j in range(g.n):
            expected = tuple(int(i == j) + dr.exponent * dr.form[j] * x for i, x in enumerate(dr.nilroot))
            assert M.col(j) == expected
        _, ratio = dlab_ringel_defect(g, o)
        assert ratio != 0
    assert len(ratios) == 1
    if g.is_simply_laced():
        assert ratios == {Fraction(1, coxeter_numbers(g).h_a)}


def test_root_kinds():
    g = graph("D4~")
    assert root_kind(g, (1, 0, 0, 0, 0)).kind == "real"
    assert root_kind(g, (1, 1, 1, 0, 0)).kind == "real"
    assert root_kind(g, (2, 1, 1, 1, 1)).kind == "imaginary"
    assert root_kind(g, (4, 2, 2, 2, 2)).kind == "imaginary"
    assert root_kind(g, (0, 1, 1, 0, 0)).kind == "not-a-root"
    assert root_kind(g, (1, -1, 0, 0, 0)).kind == "not-a-root"
    assert root_kind(graph("E6"), (1, 1, 1, 1, 1, 1)).kind == "real"


def test_regularity_verdicts():
    g = graph("D4~")
    nil = is_regular(g, None, (2, 1, 1, 1, 1))
    assert nil.status == "regular" and nil.defect == 0
    simple = is_regular(g, None, (0, 1, 0, 0, 0))
    assert simple.status == "not-regular" and simple.witness is not None
    assert is_regular(g, None, (0, 1, 1, 0, 0)).status == "not-a-root"


@pytest.mark.parametrize("name", ["D4~", "E6~", "G21~"])
def test_zero_defect_roots_stay_positive(name):
    g = graph(name)
    o = bicolored_orientation(g)
    rho = defect_form(g, o)
    C = coxeter_matrix(g, o).matrix
    h_a = coxeter_numbers(g).h_a
    nil = dlab_ringel_identity(g, o).nilroot
    checked = 0
    for z in [tuple(int(i == j) for i in range(g.n)) for j in range(g.n)] + [nil]:
        for shift in range(0, 3):
            w = tuple(x + shift * y for x, y in zip(z, nil))
            if rho(w) != 0 or root_kind(g, w).kind == "not-a-root":
                continue
            cur = w
            for _ in range(3 * h_a):
                cur = C.apply(cur)
                assert all(x >= 0 for x in cur) and any(cur)
            checked += 1
    assert checked >= 1


def test_star_indefinite_defects():
    star = graph("*[5]")
    d = indefinite_defects(star, None, (2, 1, 1, 1, 1, 1))
    assert d.rho1 == pytest.approx(-1.6180339887, abs=1e-9)
    assert d.rho2 == pytest.approx(0.6180339887, abs=1e-9)
    assert d.holds
    assert d.lambda1 * d.lambda2 == pytest.approx(1.0)
    assert not indefinite_defects(star, None, (0, 1, 0, 0, 0, 0)).holds
    assert star_inequality((2, 1, 1, 1, 1, 1)) == (-1, 0)
    with pytest.raises(DiagramError):
        indefinite_defects(graph("E6~"), None, (1,) * 7)


@given(st.lists(st.integers(0, 6), min_size=6, max_size=6))
def test_star_form_identity(z):
    # B(z) is the Tits form of the star; the right side is a sum of squares
    B, rhs = star_inequality(z)
    x0, ys = z[0], z[1:]
    assert B == x0 * x0 + sum(y * y for y in ys) - x0 * sum(ys)
    assert rhs >= 0


def test_render_linear_form():
    assert render_linear_form({"x0": -2, "y1": 1, "y2": 3}) == "y1 + 3·y2 − 2·x0"
    assert render_linear_form({"a": -1}, ascii_only=True) == "-a"
    assert render_linear_form({}) == "0"


def test_defect_needs_extended_tree():
    with pytest.raises(DiagramError):
        defect_form(graph("E6"))
    with pytest.raises(DiagramError):
        defect_form(graph("A3~"))


def test_identity_orientation_change():
    g = graph("E8~")
    o = bicolored_orientation(g)
    T = transforming_element(g, o, o)
    assert T.matrix == RationalMatrix.identity(g.n) and T.k == 0
