from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import graph

from coxspec.cartan import cartan_data
from coxspec.coxeter import coxeter_charpoly, random_tree, series_graph
from coxspec.diagram import DiagramError
from coxspec.exactmath import DomainError, charpoly_exact, factor_cyclotomic
from coxspec.spectral import (
    affine_partner,
    bicolored_coxeter,
    chebyshev_fixed_points,
    coxeter_numbers,
    eigenvector_basis,
    golden_pair,
    jordan_structure,
    lambda_from_phi,
    lambda_quadratic,
    phi_to_lambda_charpoly,
    positive_roots,
    rlh_check,
    root_system_count,
    steinberg_orders,
)

# |W| = Π(m_i + 1) over the exponents
WEYL_ORDERS = {"A2": 6, "A4": 120, "B3": 48, "C4": 384, "G2": 12, "D4": 192, "F4": 1152, "E6": 51840,
               "E7": 2903040}
COXETER_H = {"A5": 6, "B4": 8, "C3": 6, "D6": 10, "E6": 12, "E7": 18, "E8": 30, "F4": 12, "G2": 6}


@pytest.mark.parametrize("name,order", WEYL_ORDERS.items())
def test_weyl_group_orders_from_exponents(name, order):
    exps = coxeter_numbers(graph(name)).exponents
    assert math.prod(m + 1 for m in exps) == order
    assert len(exps) == graph(name).n


@pytest.mark.parametrize("name,h", COXETER_H.items())
def test_coxeter_numbers_of_dynkin(name, h):
    cn = coxeter_numbers(graph(name))
    assert cn.h == h
    # exponents are symmetric about h/2
    assert sorted(h - m for m in cn.exponents) == list(cn.exponents)
    assert sum(cn.exponents) == root_system_count(graph(name)).positive


def test_dual_coxeter_numbers():
    assert coxeter_numbers(graph("G2")).h_dual == 4
    assert coxeter_numbers(graph("F4")).h_dual == 9
    assert coxeter_numbers(graph("E8")).h_dual == 30
    assert coxeter_numbers(graph("B4")).h_dual == 7


def test_affine_orders():
    assert coxeter_numbers(graph("E8~")).orders == (5, 3, 2)
    assert coxeter_numbers(graph("E6~")).orders == (3, 3, 2)
    assert coxeter_numbers(graph("D4~")).h_a == 2
    assert steinberg_orders(coxeter_charpoly(graph("E7~"))) == (4, 3, 2)
    with pytest.raises(DomainError):
        steinberg_orders(coxeter_charpoly(graph("E8")))


def test_affine_partner():
    assert affine_partner(graph("E7")).name == "E7~"
    assert affine_partner(graph("A1")).name == "A12~"
    assert affine_partner(graph("A4")).name == "A4~"


@given(st.integers(2, 9), st.integers(0, 10**6))
@settings(max_examples=30, deadline=None)
def test_phi_spectrum_determines_lambda_spectrum(n, seed):
    g = random_tree(n, random.Random(seed), valued=True)
    cd = cartan_data(g)
    p_phi = charpoly_exact(cd.D @ cd.F) if cd.m and cd.k else None
    if p_phi is None:
        return
    assert phi_to_lambda_charpoly(p_phi, cd.m, cd.k) == coxeter_charpoly(g)


def test_lambda_from_phi():
    l1, l2 = lambda_from_phi(Fraction(9, 8))
    assert l1 * l2 == pytest.approx(1.0)
    assert l1 + l2 == pytest.approx(4 * 9 / 8 - 2)
    a, b = lambda_from_phi(Fraction(1, 2))
    assert abs(a) == pytest.approx(1.0) and abs(b) == pytest.approx(1.0)
    assert lambda_quadratic(Fraction(1, 2)).coeffs == (2, 0, 2)
    with pytest.raises(DomainError):
        lambda_from_phi(-1)


@pytest.mark.parametrize("name", ["D4~", "E6~", "E8~", "G21~", "F42~", "E6", "T[2,3,7]", "*[5]", "D7"])
def test_eigenvector_basis_is_verified(name):
    cd = cartan_data(graph(name))
    eb = eigenvector_basis(cd)
    assert eb.verified
    assert eb.rank == cd.n
    assert eb.C == bicolored_coxeter(cd)


@pytest.mark.parametrize("name", ["D4~", "E7~", "B3~", "DD4~"])
def test_extended_has_one_adjoint_vector(name):
    assert eigenvector_basis(cartan_data(graph(name))).adjoint_count == 1
    assert jordan_structure(graph(name)).two_by_two == 1


def test_golden_pair_values():
    assert golden_pair(cartan_data(graph("E8~"))).dominant.exact == 1
    e6 = golden_pair(cartan_data(graph("E6"))).dominant
    assert e6.value == pytest.approx((2 + 3 ** 0.5) / 4)
    t = golden_pair(cartan_data(graph("T[2,3,7]"))).dominant
    # λ is recovered from a floating φ near 1, where dλ/dφ is large
    assert t.lambda1 == pytest.approx(1.176280818, abs=1e-7)
    assert t.lambda1 * t.lambda2 == pytest.approx(1.0)


def test_dominant_phi_increases_along_T23():
    values = [golden_pair(cartan_data(series_graph("T23", r))).dominant.value for r in range(2, 14)]
    assert all(a < b for a, b in zip(values, values[1:]))
    assert values[4] == pytest.approx(1.0)


def test_dynkin_spectra_are_cyclotomic():
    for name in ("A7", "B5", "D6", "E8", "F4", "G2"):
        report = jordan_structure(graph(name))
        assert report.kind == "diagonal" and report.remainder.degree == 0
        assert factor_cyclotomic(report.charpoly)[0] == report.cyclotomic


def test_root_counts():
    assert root_system_count(graph("E8")).total == 240
    assert root_system_count(graph("G2")).total == 12
    assert root_system_count(graph("F4")).total == 48
    assert len(positive_roots(graph("D5"))) == 20
    assert root_system_count(graph("E7")).highest_root is not None


@pytest.mark.parametrize("name", ["B3~", "BC3~", "F41~", "G21~", "DD4~"])
def test_rlh(name):
    check = rlh_check(graph(name))
    assert check.holds
    assert check.roots == check.r * check.rank * check.h


def test_rlh_needs_twisted_metadata():
    with pytest.raises(DiagramError):
        rlh_check(graph("C3~"))


@pytest.mark.parametrize("name", ["E6~", "D5~", "A3", "T[2,3,7]"])
def test_chebyshev_fixed_points(name):
    cd = cartan_data(graph(name))
    for p in range(0, 8):
        assert chebyshev_fixed_points(cd, p).agrees
    with pytest.raises(DomainError):
        chebyshev_fixed_points(cd, -1)
