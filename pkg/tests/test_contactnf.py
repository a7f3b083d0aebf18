"""Contact normal forms, their Reeb data, and the roof/eta dictionary."""

import math

import pytest
from gmpy2 import mpq

from resjet import (
    ContactNF,
    Jet1,
    ResVF,
    base_roof_reconstruct,
    contact_invariants,
    eta_from_roof,
    flow_eval,
    linearizability_decide,
    reeb_field,
    roof_from_eta,
    roof_jet,
    section_flow_eval,
    section_map,
    vf_invariants,
)
from resjet.randomjets import contact, positive_jet1, resvf, rng

THETA = Jet1([3, 2, 5], 2)  # period 3, exponent 2/3, one nonlinear term


def test_constructor_validation():
    with pytest.raises(ValueError):
        ContactNF(Jet1([0, 1], 1))  # period must be positive
    with pytest.raises(ValueError):
        ContactNF(Jet1([1, -2], 1))  # positive exponent needs theta'(0) > 0
    with pytest.raises(ValueError):
        ContactNF(Jet1([1], 0))  # order too low to carry the exponent
    with pytest.raises(ValueError):
        ResVF(Jet1([0, 1], 1), Jet1([1, 0], 1))  # f(0) must be positive


def test_vf_invariants_frozen():
    v = ResVF(Jet1([2, 1, 0], 2), Jet1([1, 3, 0], 2))
    inv = vf_invariants(v)
    assert inv.period == mpq(1, 2)
    assert inv.lyapunov == (2, -2)
    assert inv.roof == Jet1([mpq(1, 2), mpq(-1, 4), mpq(1, 8)], 2)
    assert inv.anosov_class == -3
    assert inv.fh_class == mpq(1, 2)


def test_contact_invariants_frozen():
    inv = contact_invariants(ContactNF(THETA))
    assert inv.period == 3
    assert inv.lyapunov == (mpq(2, 3), mpq(-2, 3))
    assert inv.roof == Jet1([3, 0, -5], 2)
    assert inv.anosov_class == -10
    assert inv.fh_class == 0


def test_roof_jet_coefficientwise_formula():
    r = rng(50)
    c = contact(r, 8)
    roof = roof_jet(c)
    # theta - z theta' scales the k-th coefficient by (1 - k)
    assert roof.coeffs == tuple((1 - k) * t for k, t in enumerate(c.theta.coeffs))
    assert roof.order == c.theta.order


def test_reeb_field_frozen():
    v = reeb_field(ContactNF(THETA))
    assert v.g == Jet1([2, 10], 1)
    assert v.f == Jet1([mpq(1, 3), 0, mpq(5, 9)], 2)
    # f is the reciprocal of the roof jet
    assert v.f * Jet1([3, 0, -5], 2) == Jet1.constant(1, 2)


def test_contact_and_field_invariants_agree():
    r = rng(51)
    for _ in range(5):
        c = contact(r, 8)
        ci = contact_invariants(c)
        vi = vf_invariants(reeb_field(c))
        assert ci.period == vi.period
        assert ci.lyapunov == vi.lyapunov
        assert ci.roof == vi.roof
        assert ci.anosov_class == vi.anosov_class
        assert vi.fh_class == 0  # roof jets of contact forms have no linear term
        assert ci.roof.coeff(1) == 0


def test_section_map_splits_multiplier_and_cofactor():
    v = ResVF(Jet1([1, 0], 1), Jet1([2, 10], 1))
    sm = section_map(v)
    assert sm.log_multiplier == 2
    assert sm.omega == Jet1([1, 10], 1)  # exp(10 z) at order 1
    v2 = ResVF(Jet1([1, 0, 0], 2), Jet1([2, 10, 3], 2))
    assert section_map(v2).omega == Jet1([1, 10, 53], 2)  # 3 + 10^2/2


def test_roof_eta_roundtrip_frozen():
    eta = Jet1([2, 10], 1)
    roof = roof_from_eta(eta, 3)
    assert roof == Jet1([3, 0, -5], 2)
    assert eta_from_roof(roof, 2) == eta


def test_roof_eta_roundtrip_random():
    r = rng(52)
    for _ in range(10):
        eta = positive_jet1(r, 7)
        c0 = positive_jet1(r, 0).constant_term
        roof = roof_from_eta(eta, c0)
        assert roof.order == 8
        assert roof.coeff(1) == 0
        assert eta_from_roof(roof, eta.constant_term) == eta


def test_eta_from_roof_rejects_linear_term():
    with pytest.raises(ValueError):
        eta_from_roof(Jet1([3, 1, 0], 2), 1)


def test_base_roof_reconstruct_frozen():
    rebuilt = base_roof_reconstruct(Jet1([3, 0, -5], 2), 3, mpq(2, 3))
    assert rebuilt.theta == THETA


def test_base_roof_reconstruct_roundtrip_and_rigidity():
    r = rng(53)
    c = contact(r, 8)
    inv = contact_invariants(c)
    assert base_roof_reconstruct(inv.roof, inv.period, inv.lyapunov[0]).theta == c.theta
    # perturbing any datum changes the rebuilt jet
    other = base_roof_reconstruct(inv.roof, inv.period, inv.lyapunov[0] + 1)
    assert other.theta != c.theta


def test_base_roof_reconstruct_validates():
    with pytest.raises(ValueError):
        base_roof_reconstruct(Jet1([3, 0], 1), -1, 1)
    with pytest.raises(ValueError):
        base_roof_reconstruct(Jet1([3, 0], 1), 3, 0)
    with pytest.raises(ValueError):
        base_roof_reconstruct(Jet1([4, 0], 1), 3, 1)  # roof(0) must equal the period


def test_linearizability_decide_lists_offenders():
    verdict = linearizability_decide(ContactNF(THETA))
    assert not verdict.linearizable
    assert verdict.offending == ((2, 5),)
    linear = linearizability_decide(ContactNF(Jet1([3, 2, 0, 0], 3)))
    assert linear.linearizable
    assert linear.offending == ()


def test_flow_eval_conserves_product_and_advances_time():
    r = rng(54)
    v = resvf(r, 6)
    s, x, y = flow_eval(v, 0.7, (0.1, 0.2, -0.3))
    assert math.isclose(x * y, 0.2 * -0.3, rel_tol=1e-12)
    assert s > 0.1  # time coordinate advances with positive f


def test_flow_eval_is_a_one_parameter_group():
    r = rng(55)
    v = resvf(r, 6)
    p = (0.0, 0.15, -0.2)
    one = flow_eval(v, 0.3, flow_eval(v, 0.4, p))
    direct = flow_eval(v, 0.7, p)
    assert all(math.isclose(a, b, rel_tol=1e-12) for a, b in zip(one, direct))


def test_flow_eval_rejects_points_outside_radius():
    v = ResVF(Jet1([1, 0], 1), Jet1([1, 0], 1))
    with pytest.raises(ValueError):
        flow_eval(v, 1.0, (0.0, 1.0, 1.0))  # |xy| = 1 > 0.25


def test_section_flow_eval_matches_exponential_scaling():
    g = Jet1([2, 0], 1)  # constant g: exact flow is e^{2t} x, e^{-2t} y
    x, y = section_flow_eval(g, 0.5, (0.1, 0.2))
    assert math.isclose(x, 0.1 * math.e, rel_tol=1e-12)
    assert math.isclose(y, 0.2 / math.e, rel_tol=1e-12)
