"""Degree-by-degree normalization of area-preserving hyperbolic map jets."""

import pytest
from gmpy2 import mpq

from resjet import (
    Jet1,
    Jet2,
    MapJet2,
    ResMap,
    anosov_class,
    birkhoff_normalize,
    centralizer_solve,
    compose_map,
    det_jacobian,
    diagonalize_linear,
    hamiltonian_time_one,
    invert_map,
)
from resjet.randomjets import area_preserving_tangent_id, resmap, rng


def test_diagonalize_linear_frozen_example():
    rows = ((mpq(17, 8), mpq(15, 8)), (mpq(15, 8), mpq(17, 8)))
    m = MapJet2.from_linear(rows, 4)
    lin, lam = diagonalize_linear(m)
    assert lam == 4
    conj = compose_map(compose_map(lin, m), invert_map(lin))
    assert conj.linear_part() == ((4, 0), (0, mpq(1, 4)))
    # the conjugacy itself is area preserving
    assert det_jacobian(lin) == Jet2.constant(1, 3)


def test_diagonalize_linear_rejects_bad_inputs():
    with pytest.raises(ValueError):
        diagonalize_linear(MapJet2.from_linear(((2, 0), (0, 2)), 3))  # det 4
    with pytest.raises(ValueError):
        diagonalize_linear(MapJet2.from_linear(((2, 1), (1, 1)), 3))  # trace 3, irrational
    with pytest.raises(ValueError):
        diagonalize_linear(MapJet2.from_linear(((1, 1), (-1, 0)), 3))  # elliptic


def test_hamiltonian_time_one_shear():
    m = hamiltonian_time_one({(3, 0): 1}, 5)
    # field of x^3 is (0, -3x^2): an exact shear
    assert m.x == Jet2.variable_x(5)
    assert m.y == Jet2({(0, 1): 1, (2, 0): -3}, 5)


def test_hamiltonian_time_one_is_area_preserving():
    r = rng(41)
    for _ in range(5):
        m = area_preserving_tangent_id(r, 7)
        assert det_jacobian(m) == Jet2.constant(1, 6)
        # tangent to the identity
        assert m.linear_part() == ((1, 0), (0, 1))


def test_hamiltonian_time_one_rejects_low_valuation():
    with pytest.raises(ValueError):
        hamiltonian_time_one({(1, 0): 1}, 4)


def test_birkhoff_normalize_fixes_normal_forms():
    f = ResMap(2, Jet1([1, 1, 0, 0], 3))
    result = birkhoff_normalize(f.map_jet(7))
    assert result.res_form.multiplier == 2
    assert result.birkhoff_coefficients == Jet1([1, 1, 0, 0], 3)
    assert result.conjugacy == MapJet2.identity(7)
    assert result.conjugacy_inverse == MapJet2.identity(7)


def test_birkhoff_coefficients_are_conjugation_invariants():
    r = rng(42)
    order = 9
    f = resmap(r, order)
    h = area_preserving_tangent_id(r, order)
    conjugated = compose_map(compose_map(invert_map(h), f.map_jet(order)), h)
    result = birkhoff_normalize(conjugated)
    depth = (order - 1) // 2
    assert result.res_form.multiplier == f.multiplier
    assert result.birkhoff_coefficients == f.omega.truncated(depth)
    # the conjugacy actually achieves the normal form
    res_map = result.res_form.map_jet(order)
    achieved = compose_map(
        compose_map(result.conjugacy, conjugated), result.conjugacy_inverse
    )
    assert achieved == res_map


def test_birkhoff_normalize_requires_unit_determinant():
    bad = MapJet2(
        Jet2({(1, 0): 2, (2, 0): 1}, 5),
        Jet2({(0, 1): mpq(1, 2)}, 5),
    )
    with pytest.raises(ValueError):
        birkhoff_normalize(bad)


def test_anosov_class_reads_first_omega_coefficient():
    assert anosov_class(ResMap(2, Jet1([1, mpq(1, 2), 0], 2))) == mpq(-1, 2)
    assert anosov_class(ResMap(3, Jet1([1, 0, 5], 2))) == 0


def test_centralizer_nonlinear_map_obstruction_at_degree_three():
    f = ResMap(2, Jet1([1, mpq(1, 2), 0, 0], 3)).map_jet(8)
    result = centralizer_solve(f, mpq(1, 2))
    assert not result.feasible
    assert result.witness is None
    assert result.obstruction_degree == 3


def test_centralizer_unit_determinant_is_feasible():
    f = ResMap(2, Jet1([1, mpq(1, 2), 0, 0], 3)).map_jet(8)
    result = centralizer_solve(f, 1)
    assert result.feasible
    h = result.witness
    assert compose_map(h, f) == compose_map(f, h)
    (a, _), (_, d) = h.linear_part()
    assert a * d == 1


def test_centralizer_linear_map_admits_any_determinant():
    f = ResMap(2, Jet1([1, 0, 0, 0], 3)).map_jet(8)
    result = centralizer_solve(f, mpq(1, 2))
    assert result.feasible
    h = result.witness
    assert compose_map(h, f) == compose_map(f, h)
    assert h.linear_part() == ((mpq(1, 2), 0), (0, 1))


def test_centralizer_rejects_nondiagonal_linear_part():
    m = MapJet2.from_linear(((mpq(17, 8), mpq(15, 8)), (mpq(15, 8), mpq(17, 8))), 4)
    with pytest.raises(ValueError):
        centralizer_solve(m, 1)
