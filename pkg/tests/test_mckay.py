from __future__ import annotations

import pytest

from conftest import graph, group, table

from coxspec.exactmath import CyclotomicNumber, DomainError, IntPolynomial, RationalMatrix, sqrt2
from coxspec.mckay import (
    build_group,
    cell_text,
    column_orthogonality,
    ebeling_poincare,
    kkgv_series,
    kostant_multiplicities,
    kostant_numbers_from_series,
    mckay_matrix,
    mckay_target,
    molien_series,
    rational_series,
    slodowy_matrices,
)

ORDERS = {"Z/1": 1, "Z/2": 2, "Z/5": 5, "Z/8": 8, "BD2": 8, "BD3": 12, "BD5": 20, "T": 24, "O": 48, "J": 120}
CLASS_COUNTS = {"Z/5": 5, "BD2": 5, "BD3": 6, "BD5": 8, "T": 7, "O": 8, "J": 9}
# (a, b, h) with Poincaré series (1 + t^h)/((1 − t^a)(1 − t^b)) for the invariants of each group
KKGV = {"Z/3": (2, 3, 3), "Z/6": (2, 6, 6), "BD2": (4, 4, 6), "BD3": (4, 6, 8), "T": (6, 8, 12), "O": (8, 12, 18),
        "J": (12, 20, 30)}


@pytest.mark.parametrize("name,order", ORDERS.items())
def test_group_orders(name, order):
    G = group(name)
    assert G.order == order
    assert sum(G.class_sizes) == order


@pytest.mark.parametrize("name,count", CLASS_COUNTS.items())
def test_character_tables(name, count):
    t = table(name)
    assert len(t.characters) == len(t.class_sizes) == count
    assert sum(d * d for d in t.degrees()) == group(name).order
    for i, u in enumerate(t.characters):
        for j, v in enumerate(t.characters):
            assert t.inner(u, v) == (1 if i == j else 0)
    assert column_orthogonality(t)


@pytest.mark.parametrize("name", ["Z/2", "Z/3", "Z/7", "BD2", "BD4", "BD6", "T", "O", "J"])
def test_mckay_graphs(name):
    res = mckay_matrix(table(name))
    assert res.diagram == mckay_target(group(name))
    assert res.matrix == res.matrix.transpose()
    n = res.matrix.shape[0]
    assert sorted(res.correspondence.values()) == sorted(graph(res.diagram).vertices)
    assert n == graph(res.diagram).n


def test_mckay_targets():
    assert mckay_target(group("Z/5")) == "A4~"
    assert mckay_target(group("BD3")) == "D5~"
    assert mckay_target(group("J")) == "E8~"
    with pytest.raises(DomainError):
        mckay_matrix(table("Z/1"))


def test_group_errors():
    for bad in ("Z/x", "BDq", "Z/0", "BD1", "I"):
        with pytest.raises(DomainError):
            build_group(bad)


def test_words_and_membership():
    O = group("O")
    assert O.contains(O.evaluate("a b"))
    assert O.class_of_word("a") != O.class_of_word("a^3")
    assert O.element_order(O.index(O.evaluate("-1"))) == 2
    with pytest.raises(DomainError):
        O.evaluate("q")


def test_slodowy_pair():
    res = slodowy_matrices()
    assert res.A_dual == res.A.transpose()
    assert (res.diagram, res.diagram_dual) == ("F42~", "F41~")
    assert res.reciprocity
    with pytest.raises(DomainError):
        slodowy_matrices("Z/2", "O")


@pytest.mark.parametrize("name", KKGV)
def test_molien_matches_kkgv(name):
    a, b, h = KKGV[name]
    N = 60
    assert molien_series(group(name), N) == kkgv_series(a, b, h, N)
    assert kostant_numbers_from_series(molien_series(group(name), N)) == (a, b, h)
    # a·b = 2|G| and a + b = h + 2
    assert a * b == 2 * group(name).order and a + b == h + 2


@pytest.mark.parametrize("name", ["D4~", "D6~", "E6~", "E7~", "E8~", "A5~", "F41~", "G21~"])
def test_kostant_vectors_stay_nonnegative(name):
    rep = kostant_multiplicities(graph(name), 200)
    assert all(x >= 0 for s in rep.series.values() for x in s)
    assert rep.numerators[rep.extension] == IntPolynomial.monomial(rep.h) + 1


@pytest.mark.parametrize("dynkin,grp", [("D4", "BD2"), ("E8", "J"), ("E6", "T"), ("D5", "BD3"), ("A3", "Z/4"), ("A5", "Z/6")])
def test_ebeling_quotient(dynkin, grp):
    eb = ebeling_poincare(graph(dynkin))
    N = 80
    molien = molien_series(group(grp), N)
    # cross-multiplied: Molien·den(t²) = num(t²) up to order N
    den = eb.denominator.substitute_power(2)
    num = eb.numerator.substitute_power(2)
    prod = [sum(den[i] * molien[k - i] for i in range(min(k, den.degree) + 1)) for k in range(N + 1)]
    assert prod == [num[k] for k in range(N + 1)]
    assert eb.series(N) == molien


@pytest.mark.parametrize("name,a,b,h", [("E8", 10, 6, 15), ("F4", 4, 3, 6), ("E6", 4, 3, 6), ("D4", 2, 2, 3)])
def test_quotient_has_kkgv_form(name, a, b, h):
    # χ/χ̃ = (λ^h + 1)/((λ^a − 1)(λ^b − 1)), compared by cross-multiplication
    eb = ebeling_poincare(graph(name))
    lam = IntPolynomial.monomial
    assert eb.numerator * (lam(a) - 1) * (lam(b) - 1) == eb.denominator * (lam(h) + 1)


@pytest.mark.parametrize("pair", [("D4", "G2"), ("E6", "F4"), ("D6", "B5"), ("A5", "C3")])
def test_folded_quotients_coincide(pair):
    a, b = (ebeling_poincare(graph(x)) for x in pair)
    assert (a.numerator, a.denominator) == (b.numerator, b.denominator)


def test_rational_series():
    t = IntPolynomial.monomial
    assert rational_series(IntPolynomial.const(1), 1 - t(1), 5) == (1,) * 6
    with pytest.raises(DomainError):
        rational_series(IntPolynomial.const(1), IntPolynomial([2, 1]), 3)


def test_cell_text():
    assert cell_text(sqrt2(8)) == "√2"
    assert cell_text(-sqrt2(8), ascii_only=True) == "-sqrt2"
    assert cell_text(CyclotomicNumber.zeta(24, 8)) == "ω"
    assert cell_text(CyclotomicNumber.zeta(24, 16), ascii_only=True) == "w^2"
    assert cell_text(CyclotomicNumber.rational(8, -1)) == "-1"
    with pytest.raises(DomainError):
        cell_text(CyclotomicNumber.zeta(8, 1))


def test_faithful_choice():
    t = table("BD3")
    two_dim = [i for i, d in enumerate(t.degrees()) if d == 2]
    results = []
    for i in two_dim:
        try:
            results.append(mckay_matrix(t, faithful=i).diagram)
        except DomainError:
            pass
    assert results and set(results) == {"D5~"}
    assert isinstance(mckay_matrix(t).matrix, RationalMatrix)
