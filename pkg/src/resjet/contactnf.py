"""Invariants of suspension-type flows near a hyperbolic closed orbit.

Two exact models on a solid-torus chart ``(t, x, y)`` with ``z = x*y``:

* ``ResVF``: vector field ``f(z) * (d/dt + g(z) * (x d/dx - y d/dy))``
  with ``f(0) > 0``, ``g(0) > 0``; its flow is explicit,

      (t, x, y) |-> (t + f(z) s,  e^(s f(z) g(z)) x,  e^(-s f(z) g(z)) y).

* ``ContactNF``: contact form ``theta(z) dt + (x dy - y dx) / 2`` with
  ``theta(0) > 0``, ``theta'(0) > 0``.  Its Reeb field is the ``ResVF`` with
  ``f = 1 / (theta - z theta')`` and ``g = theta'``.

Shared invariants are collected in ``InvariantReport``: the period of the
core orbit, the Lyapunov exponent pair, the roof jet (return time to the
transverse disc as a function of ``z``), the obstruction to smoothly flat
invariant foliations (``anosov_class``), and the infinitesimal obstruction
to constant return time (``fh_class``).  For a contact form the roof is
``theta - z theta'``, whose linear coefficient always vanishes: the
``fh_class`` of a Reeb flow is identically zero, and that very vanishing is
what makes ``eta_from_roof`` solvable.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .jetalg import Jet1, rat

__all__ = [
    "ContactNF",
    "InvariantReport",
    "LinearizabilityReport",
    "ResVF",
    "SectionMap",
    "base_roof_reconstruct",
    "contact_invariants",
    "eta_from_roof",
    "flow_eval",
    "linearizability_decide",
    "reeb_field",
    "roof_from_eta",
    "roof_jet",
    "section_flow_eval",
    "section_map",
    "vf_invariants",
]


@dataclass(frozen=True)
class ResVF:
    """Resonance vector field ``f(z)(d/dt + g(z)(x d/dx - y d/dy))``."""

    f: Jet1
    g: Jet1

    def __post_init__(self):
        if not isinstance(self.f, Jet1) or not isinstance(self.g, Jet1):
            raise TypeError("f and g must be Jet1")
        if self.f.constant_term <= 0:
            raise ValueError(f"f(0) must be positive, got {self.f.constant_term}")
        if self.g.constant_term <= 0:
            raise ValueError(f"g(0) must be positive, got {self.g.constant_term}")


@dataclass(frozen=True)
class ContactNF:
    """Contact normal form ``theta(xy) dt + (x dy - y dx)/2``."""

    theta: Jet1

    def __post_init__(self):
        if not isinstance(self.theta, Jet1):
            raise TypeError("theta must be a Jet1")
        if self.theta.order < 1:
            raise ValueError("theta needs order >= 1")
        if self.theta.constant_term <= 0:
            raise ValueError(f"theta(0) must be positive, got {self.theta.constant_term}")
        if self.theta.coeffs[1] <= 0:
            raise ValueError(
                f"theta'(0) must be positive (hyperbolic orbit), got {self.theta.coeffs[1]}"
            )


@dataclass(frozen=True)
class InvariantReport:
    """Invariants of the closed orbit and its transverse return dynamics."""

    period: mpq
    lyapunov: tuple[mpq, mpq]
    roof: Jet1
    anosov_class: mpq
    fh_class: mpq


@dataclass(frozen=True)
class SectionMap:
    """First-return map ``(x, y) -> (L w(z) x, y / (L w(z)))`` of a section.

    The multiplier ``L = exp(log_multiplier)`` is transcendental for rational
    data, so it is kept as the exact logarithm ``g(0)``; the cofactor
    ``omega = exp(g - g(0))`` is an exact unit jet.
    """

    log_multiplier: mpq
    omega: Jet1


@dataclass(frozen=True)
class LinearizabilityReport:
    """Verdict plus the offending coefficients when not linearizable."""

    linearizable: bool
    offending: tuple[tuple[int, mpq], ...]


def vf_invariants(v: ResVF) -> InvariantReport:
    """Invariants of the flow of a resonance vector field."""
    if not isinstance(v, ResVF):
        raise TypeError("vf_invariants expects a ResVF")
    f0 = v.f.constant_term
    g0 = v.g.constant_term
    period = 1 / f0
    lyap = f0 * g0
    roof = v.f.reciprocal()
    anosov = -v.g.coeffs[1] if v.g.order >= 1 else mpq(0)
    fh = v.f.coeffs[1] / f0 if v.f.order >= 1 else mpq(0)
    return InvariantReport(
        period=period,
        lyapunov=(lyap, -lyap),
        roof=roof,
        anosov_class=anosov,
        fh_class=fh,
    )


def roof_jet(c: ContactNF) -> Jet1:
    """Return-time jet ``theta - z theta'``: coefficientwise ``(1 - k) theta_k``."""
    if not isinstance(c, ContactNF):
        raise TypeError("roof_jet expects a ContactNF")
    cs = [(1 - k) * ck for k, ck in enumerate(c.theta.coeffs)]
    return Jet1(cs, c.theta.order)


def contact_invariants(c: ContactNF) -> InvariantReport:
    """Invariants of the Reeb flow of a contact normal form.

    The roof's linear coefficient vanishes identically, so ``fh_class`` is
    exactly zero for every Reeb flow in this normal form.
    """
    if not isinstance(c, ContactNF):
        raise TypeError("contact_invariants expects a ContactNF")
    theta = c.theta
    period = theta.constant_term
    lyap = theta.coeffs[1] / period
    anosov = -2 * theta.coeffs[2] if theta.order >= 2 else mpq(0)
    return InvariantReport(
        period=period,
        lyapunov=(lyap, -lyap),
        roof=roof_jet(c),
        anosov_class=anosov,
        fh_class=mpq(0),
    )


def reeb_field(c: ContactNF) -> ResVF:
    """The Reeb field of ``theta(z) dt + (x dy - y dx)/2``.

    ``f = 1 / (theta - z theta')`` normalizes the form to 1 on the field and
    ``g = theta'`` makes the contraction of ``d alpha`` vanish.
    """
    roof = roof_jet(c)
    if roof.constant_term <= 0:
        raise ValueError("roof jet must have a positive constant term")
    return ResVF(f=roof.reciprocal(), g=c.theta.derivative())


def flow_eval(v: ResVF, t, point, radius: float = 0.25):
    """Closed-form flow of a resonance vector field, evaluated numerically.

    ``point`` is ``(s, x, y)`` with ``|x*y| <= radius``; the first coordinate
    is returned unreduced (it lives on a circle).  ``x*y`` is a conserved
    quantity of the flow, so the radius check at the start covers the whole
    trajectory.
    """
    from .oracle import jet1_eval

    s, x, y = (float(w) for w in point)
    import math

    t = float(t)
    z = x * y
    if abs(z) > radius:
        raise ValueError(f"|x*y| = {abs(z)} exceeds the evaluation radius {radius}")
    fz = jet1_eval(v.f, z)
    gz = jet1_eval(v.g, z)
    e = math.exp(t * fz * gz)
    return (s + fz * t, x * e, y / e)


def section_map(v: ResVF) -> SectionMap:
    """First-return map of the transverse disc, with exact data.

    The return map is the time-1 map of ``g(z)(x d/dx - y d/dy)``, i.e.
    ``x -> exp(g(z)) x``; split ``exp(g) = exp(g(0)) * exp(g - g(0))`` to keep
    the multiplier logarithm and the unit cofactor exact.
    """
    if not isinstance(v, ResVF):
        raise TypeError("section_map expects a ResVF")
    g0 = v.g.constant_term
    return SectionMap(log_multiplier=g0, omega=(v.g - g0).exp())


def section_flow_eval(g: Jet1, t, point, radius: float = 0.25):
    """Time-t map of ``g(z)(x d/dx - y d/dy)`` evaluated numerically."""
    from .oracle import jet1_eval

    import math

    x, y = (float(w) for w in point)
    z = x * y
    if abs(z) > radius:
        raise ValueError(f"|x*y| = {abs(z)} exceeds the evaluation radius {radius}")
    e = math.exp(float(t) * jet1_eval(g, z))
    return (x * e, y / e)


def roof_from_eta(eta: Jet1, c) -> Jet1:
    """Roof jet with constant term ``c`` induced by the angular speed ``eta``.

    Integrating the differential relation for the return time gives
    ``roof(z) = c + int_0^z eta(s) ds - z eta(z)``; the linear coefficient of
    the result is always zero.
    """
    if not isinstance(eta, Jet1):
        raise TypeError("roof_from_eta expects a Jet1")
    cs = [rat(c)]
    for k in range(eta.order + 1):
        cs.append(-eta.coeffs[k] * mpq(k, k + 1))
    return Jet1(cs, eta.order + 1)


def eta_from_roof(roof: Jet1, eta0) -> Jet1:
    """Invert ``roof_from_eta``; the roof's linear coefficient must vanish.

    ``eta_k = -(k + 1) roof_{k+1} / k`` for ``k >= 1`` and ``eta(0) = eta0``.
    A nonzero linear roof coefficient is the (always-vanishing for Reeb
    flows) infinitesimal obstruction, so it is rejected.
    """
    if not isinstance(roof, Jet1):
        raise TypeError("eta_from_roof expects a Jet1")
    if roof.order < 1:
        raise ValueError("roof jet needs order >= 1")
    if roof.coeffs[1] != 0:
        raise ValueError(
            f"roof has nonzero linear coefficient {roof.coeffs[1]}; "
            "no angular speed jet induces it"
        )
    cs = [rat(eta0)]
    for k in range(1, roof.order):
        cs.append(-mpq(k + 1, k) * roof.coeffs[k + 1])
    return Jet1(cs, roof.order - 1)


def linearizability_decide(c: ContactNF) -> LinearizabilityReport:
    """Whether ``theta`` is linear at its truncation order.

    ``theta_k = 0`` for all ``k >= 2`` holds exactly when the roof jet is
    constant, and exactly when the section return map has unit cofactor.
    """
    if not isinstance(c, ContactNF):
        raise TypeError("linearizability_decide expects a ContactNF")
    offending = tuple(
        (k, ck) for k, ck in enumerate(c.theta.coeffs) if k >= 2 and ck
    )
    return LinearizabilityReport(linearizable=not offending, offending=offending)


def base_roof_reconstruct(roof: Jet1, period, lyapunov_plus) -> ContactNF:
    """Rebuild ``theta`` from the roof jet, period and positive Lyapunov exponent.

    These data determine the contact normal form uniquely:
    ``eta = eta_from_roof(roof, lyapunov_plus * period)`` and ``theta`` is the
    antiderivative of ``eta`` with ``theta(0) = period``.
    """
    period = rat(period)
    lyapunov_plus = rat(lyapunov_plus)
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    if lyapunov_plus <= 0:
        raise ValueError(f"positive Lyapunov exponent required, got {lyapunov_plus}")
    if roof.constant_term != period:
        raise ValueError(
            f"roof constant term {roof.constant_term} disagrees with the period {period}"
        )
    eta = eta_from_roof(roof, lyapunov_plus * period)
    return ContactNF(eta.antiderivative(period))
