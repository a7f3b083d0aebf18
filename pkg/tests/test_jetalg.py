"""Exact arithmetic of truncated univariate and bivariate jets."""

import pytest
from gmpy2 import mpq

from resjet import (
    Jet1,
    Jet2,
    MapJet2,
    NotInvertibleError,
    OrderMismatchError,
    compose,
    compose_map,
    det_jacobian,
    diag_part,
    invert_map,
    rat,
    substitute_xy,
)
from resjet.randomjets import jet2, rng, unit_jet1


def test_rat_parses_rational_strings():
    assert rat("3/2") == mpq(3, 2)
    assert rat("-7") == -7
    assert rat(mpq(1, 3)) == mpq(1, 3)
    assert rat(4) == 4


def test_jet1_constructor_normalizes_and_checks():
    a = Jet1([1, "1/2", mpq(2, 3)])
    assert a.order == 2
    assert a.coeffs == (1, mpq(1, 2), mpq(2, 3))
    with pytest.raises(ValueError):
        Jet1([1, 2], order=3)  # declared order must match the coefficient count


def test_jet1_ring_operations():
    one_plus = Jet1([1, 1, 0], 2)
    one_minus = Jet1([1, -1, 0], 2)
    assert one_plus * one_minus == Jet1([1, 0, -1], 2)
    assert one_plus + one_minus == Jet1([2, 0, 0], 2)
    assert (one_plus - one_plus).is_zero()
    assert one_plus**3 == Jet1([1, 3, 3], 2)
    assert 2 * one_plus == Jet1([2, 2, 0], 2)


def test_jet1_reciprocal_frozen_value():
    a = Jet1([2, 3, 0, 0], 3)
    assert a.reciprocal() == Jet1([mpq(1, 2), mpq(-3, 4), mpq(9, 8), mpq(-27, 16)], 3)
    assert (a * a.reciprocal()) == Jet1.constant(1, 3)
    with pytest.raises(NotInvertibleError):
        Jet1([0, 1], 1).reciprocal()


def test_jet1_exp_log_frozen_values():
    e = Jet1([0, 1, 1, 0], 3).exp()
    assert e == Jet1([1, 1, mpq(3, 2), mpq(7, 6)], 3)
    assert e.log() == Jet1([0, 1, 1, 0], 3)
    with pytest.raises(ValueError):
        Jet1([1, 1], 1).exp()  # exp needs a zero constant term
    with pytest.raises(ValueError):
        Jet1([0, 1], 1).log()  # log needs constant term 1


def test_jet1_calculus_changes_order():
    a = Jet1([5, 4, 3, 2], 3)
    d = a.derivative()
    assert d == Jet1([4, 6, 6], 2)
    assert d.antiderivative(5) == a
    assert a.antiderivative().order == 4


def test_jet1_order_mismatch_raises():
    with pytest.raises(OrderMismatchError):
        Jet1([1, 2], 1) + Jet1([1, 2, 3], 2)


def test_jet2_constructor_drops_zeros_and_validates():
    a = Jet2({(0, 0): 1, (1, 1): 0, (2, 0): mpq(1, 2)}, 2)
    assert (1, 1) not in a.coeffs
    assert a.coeff(2, 0) == mpq(1, 2)
    with pytest.raises(ValueError):
        Jet2({(3, 0): 1}, 2)  # monomial above the truncation order
    with pytest.raises(ValueError):
        Jet2({(-1, 0): 1}, 2)


def test_jet2_product_truncates():
    x = Jet2.variable_x(2)
    y = Jet2.variable_y(2)
    assert x * y == Jet2({(1, 1): 1}, 2)
    assert (x * y) * x == Jet2.zero(2)  # degree 3 at order 2
    assert (1 + x) * (1 - x) == Jet2({(0, 0): 1, (2, 0): -1}, 2)


def test_jet2_reciprocal_and_derivatives():
    a = Jet2({(0, 0): 2, (1, 1): 1}, 4)
    assert (a * a.reciprocal()) == Jet2.constant(1, 4)
    assert a.dx() == Jet2({(0, 1): 1}, 3)
    assert a.dy() == Jet2({(1, 0): 1}, 3)
    assert a.dx().order == 3  # differentiating drops the honest order by one


def test_jet2_integrate_x_raises_order():
    a = Jet2({(0, 0): 3, (1, 1): 2}, 2)
    prim = a.integrate_x()
    assert prim == Jet2({(1, 0): 3, (2, 1): 1}, 3)
    assert prim.dx().truncated(2) == a


def test_substitute_and_diagonal_roundtrip():
    r = rng(11)
    a = unit_jet1(r, 4)
    lifted = substitute_xy(a)
    assert lifted.order == 8
    assert diag_part(lifted) == a
    # off-diagonal part of a lifted jet is empty
    assert all(i == j for (i, j) in lifted.coeffs)


def test_substitute_explicit_order_truncates():
    a = Jet1([1, 2, 3], 2)
    assert substitute_xy(a, 3) == Jet2({(0, 0): 1, (1, 1): 2}, 3)


def test_diag_part_halves_order():
    assert diag_part(Jet2.zero(9)).order == 4


def test_compose_map_identity_and_inverse():
    r = rng(23)
    m = MapJet2(
        Jet2.variable_x(6) + jet2(r, 6, fill=0.4) * Jet2.variable_x(6) * Jet2.variable_x(6),
        Jet2.variable_y(6) + jet2(r, 6, fill=0.4) * Jet2.variable_x(6) * Jet2.variable_y(6),
    )
    ident = MapJet2.identity(6)
    assert compose_map(m, ident) == m
    assert compose_map(ident, m) == m
    inv = invert_map(m)
    assert compose_map(m, inv) == ident
    assert compose_map(inv, m) == ident


def test_compose_associativity():
    r = rng(5)
    a = jet2(r, 5)
    m1 = MapJet2(
        Jet2.variable_x(5) + Jet2({(2, 0): mpq(1, 2)}, 5),
        Jet2.variable_y(5) + Jet2({(0, 2): mpq(-1, 3)}, 5),
    )
    m2 = MapJet2.from_linear(((2, 1), (1, 1)), 5)
    assert compose(compose(a, m1), m2) == compose(a, compose_map(m1, m2))


def test_det_jacobian_frozen_value():
    # (x + x^2, y - 2xy): jacobian det (1+2x)(1-2x) - 0*(-2y) = 1 - 4x^2,
    # honest at order 2.
    m = MapJet2(
        Jet2({(1, 0): 1, (2, 0): 1}, 3),
        Jet2({(0, 1): 1, (1, 1): -2}, 3),
    )
    det = det_jacobian(m)
    assert det.order == 2
    assert det == Jet2({(0, 0): 1, (2, 0): -4}, 2)


def test_mapjet_constructor_validates():
    with pytest.raises(ValueError):
        MapJet2(Jet2.constant(1, 3), Jet2.variable_y(3))  # nonzero constant term
    with pytest.raises(NotInvertibleError):
        MapJet2(Jet2.variable_x(3), Jet2.variable_x(3) * 2)  # singular linear part
    with pytest.raises(OrderMismatchError):
        MapJet2(Jet2.variable_x(3), Jet2.variable_y(4))
