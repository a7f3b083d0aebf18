"""Cocycle splitting over resonance maps and retiming of return-time jets."""

import pytest
from gmpy2 import mpq

from resjet import (
    Jet1,
    Jet2,
    OrderMismatchError,
    ResMap,
    best_achievable_tangency,
    compose,
    diag_part,
    is_cohomologous,
    normalize_cocycle,
    resonance_split,
    retime_roof,
    solve_coboundary,
    substitute_xy,
    tangency_order,
)
from resjet.randomjets import jet2, resmap, rng

UNIT_OMEGA = Jet1([1, 0, 0, 0], 3)


def test_resmap_validates_inputs():
    with pytest.raises(ValueError):
        ResMap(mpq(1, 2), UNIT_OMEGA)  # multiplier must exceed 1
    with pytest.raises(ValueError):
        ResMap(2, Jet1([2, 0], 1))  # unit jet needs constant term 1


def test_resmap_map_jet_frozen():
    f = ResMap(2, Jet1([1, 1, 0], 2))
    m = f.map_jet(5)
    # x-component 2x*(1 + xy) = 2x + 2x^2 y, y-component y/(2(1 + xy)).
    assert m.x == Jet2({(1, 0): 2, (2, 1): 2}, 5)
    assert m.y == Jet2({(0, 1): mpq(1, 2), (1, 2): mpq(-1, 2), (2, 3): mpq(1, 2)}, 5)


def test_resmap_preserves_diagonal_exactly():
    r = rng(31)
    for _ in range(5):
        f = resmap(r, 8)
        m = f.map_jet(8)
        z = Jet2({(1, 1): 1}, 8)
        assert compose(z, m) == z


def test_resmap_order_requirement():
    f = ResMap(2, Jet1([1, 1], 1))
    with pytest.raises(OrderMismatchError):
        f.map_jet(8)  # omega order 1 < (8-1)//2
    assert f.required_omega_order(8) == 3


def test_resonance_split_separates_diagonal():
    phi = Jet2({(0, 0): 5, (1, 1): 2, (2, 2): -1, (1, 0): 7}, 4)
    res, rest = resonance_split(phi)
    assert res == Jet1([5, 2, -1], 2)
    assert rest == Jet2({(1, 0): 7}, 4)
    assert substitute_xy(res, 4) + rest == phi


def test_solve_coboundary_hand_checked_cases():
    f = ResMap(2, UNIT_OMEGA)
    # u = x solves u(F) - u = x for the doubling map.
    phi = Jet2({(1, 0): 1}, 6)
    assert solve_coboundary(phi, f) == Jet2({(1, 0): 1}, 6)
    # u = x^2 y solves u(F) - u = x^2 y: multiplier 2^2 * (1/2) - 1 = 1.
    phi2 = Jet2({(2, 1): 1}, 6)
    assert solve_coboundary(phi2, f) == Jet2({(2, 1): 1}, 6)
    # y-line: multiplier 1/2 - 1 = -1/2 so u = -2y.
    phi3 = Jet2({(0, 1): 1}, 6)
    assert solve_coboundary(phi3, f) == Jet2({(0, 1): -2}, 6)


def test_solve_coboundary_rejects_diagonal_terms():
    f = ResMap(2, UNIT_OMEGA)
    with pytest.raises(ValueError):
        solve_coboundary(Jet2({(1, 1): 1}, 4), f)


def test_normalize_cocycle_splits_exactly():
    r = rng(32)
    for _ in range(10):
        order = 8
        f = resmap(r, order)
        phi = jet2(r, order)
        split = normalize_cocycle(phi, f)
        fmap = f.map_jet(order)
        rebuilt = substitute_xy(split.resonance_part, order) + (
            compose(split.transfer, fmap) - split.transfer
        )
        assert rebuilt == phi
        assert split.resonance_part == diag_part(phi)
        assert diag_part(split.transfer).is_zero()  # canonical zero-diagonal transfer
        assert split.coboundary_part == compose(split.transfer, fmap) - split.transfer


def test_is_cohomologous_detects_diagonal_difference():
    r = rng(33)
    order = 6
    f = resmap(r, order)
    phi = jet2(r, order)
    u = jet2(r, order)
    shifted = phi + (compose(u, f.map_jet(order)) - u)
    assert is_cohomologous(phi, shifted, f)
    assert not is_cohomologous(phi, phi + Jet2({(1, 1): 1}, order), f)


def test_retime_roof_subtracts_coboundary():
    r = rng(34)
    order = 8
    f = resmap(r, order)
    roof = jet2(r, order) + Jet2.constant(3, order)
    u = jet2(r, order)
    retimed = retime_roof(roof, u, f)
    assert retimed == roof - (compose(u, f.map_jet(order)) - u)
    assert diag_part(retimed) == diag_part(roof)  # diagonal is retiming-invariant


def test_retime_with_solved_transfer_flattens_off_diagonal():
    r = rng(35)
    order = 8
    f = resmap(r, order)
    roof = jet2(r, order) + Jet2.constant(3, order)
    split = normalize_cocycle(roof, f)
    retimed = retime_roof(roof, split.transfer, f)
    assert retimed == substitute_xy(split.resonance_part, order)


def test_tangency_order_values():
    assert tangency_order(Jet2({(0, 0): 4, (2, 1): 1}, 5)) == 2
    assert tangency_order(Jet2({(1, 0): 1}, 5)) == 0
    assert tangency_order(Jet2.constant(7, 5)) is None
    assert tangency_order(Jet2.zero(5)) is None


def test_best_achievable_tangency_reads_first_diagonal_term():
    f = ResMap(2, UNIT_OMEGA)
    # r = c + x y^2 + (xy)^2: retiming kills xy^2, the diagonal (xy)^2 caps
    # the tangency at 2*2 - 1 = 3.
    r = Jet2({(0, 0): 3, (1, 2): 1, (2, 2): 1}, 6)
    assert best_achievable_tangency(r, f) == 3
    # no nonconstant diagonal: unbounded at this truncation order
    assert best_achievable_tangency(Jet2({(0, 0): 3, (1, 0): 2}, 6), f) is None


def test_best_achievable_is_attained_by_retiming():
    r = rng(36)
    order = 8
    f = resmap(r, order)
    roof = jet2(r, order) + Jet2.constant(2, order)
    best = best_achievable_tangency(roof, f)
    split = normalize_cocycle(roof, f)
    flattened = retime_roof(roof, split.transfer, f)
    centered = flattened - Jet2.constant(flattened.constant_term, order)
    achieved = tangency_order(centered)
    if best is None:
        assert achieved is None
    else:
        assert achieved == best
