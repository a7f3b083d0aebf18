"""Exterior calculus on the solid torus with t-independent jet coefficients.

Forms live on ``(t, x, y)`` with all coefficients bivariate jets in
``(x, y)`` — nothing here depends on ``t``, which is what makes the
calculus closed under the handful of operations the normal-form
computations need.  Component conventions:

* degree 0: ``(h,)`` — a function.
* degree 1: ``(P, Q, R)`` — ``P dt + Q dx + R dy``.
* degree 2: ``(A, B, C)`` — ``A dx^dy + B dt^dx + C dt^dy``.
* degree 3: ``(V,)`` — ``V dt^dx^dy``.

Vector fields ``u d/dt + v d/dx + w d/dy`` are ``VF3Jet``.  The exterior
derivative lowers the jet order by one; all binary operations insist on
equal orders (truncate explicitly rather than silently).

The headline identities — the Reeb conditions and the volume identity
``alpha ^ d(alpha) = roof(xy) dt^dx^dy`` — cancel syntactically, so they
hold exactly at every consistent truncation; ``reeb_check`` and
``volume_identity`` verify them coefficient by coefficient.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .contactnf import ContactNF, ResVF, reeb_field, roof_jet
from .jetalg import (
    Jet2,
    MapJet2,
    OrderMismatchError,
    compose,
    compose_map,
    det_jacobian,
    invert_map,
    rat,
    substitute_xy,
)

__all__ = [
    "FormJet",
    "MoserObstructionError",
    "ReebReport",
    "TransferResult",
    "VF3Jet",
    "VolumeReport",
    "canonical_retime",
    "contact_form_jet",
    "contact_transfer",
    "d",
    "interior",
    "moser_normalize",
    "poincare_primitive",
    "reeb_check",
    "reeb_vf_jet",
    "volume_identity",
    "wedge",
]

_COMPONENT_COUNT = {0: 1, 1: 3, 2: 3, 3: 1}


class MoserObstructionError(ValueError):
    """No map in the centralizer can normalize the given area density."""

    def __init__(self, message: str, residual=None):
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class FormJet:
    """Differential form of degree 0..3 with shared-order Jet2 coefficients."""

    degree: int
    comps: tuple[Jet2, ...]

    def __post_init__(self):
        if self.degree not in _COMPONENT_COUNT:
            raise ValueError(f"degree must be 0..3, got {self.degree}")
        comps = tuple(self.comps)
        if len(comps) != _COMPONENT_COUNT[self.degree]:
            raise ValueError(
                f"degree {self.degree} needs {_COMPONENT_COUNT[self.degree]} "
                f"components, got {len(comps)}"
            )
        if not all(isinstance(c, Jet2) for c in comps):
            raise TypeError("components must be Jet2")
        if len({c.order for c in comps}) != 1:
            raise OrderMismatchError(
                f"component orders differ: {[c.order for c in comps]}"
            )
        object.__setattr__(self, "comps", comps)

    @classmethod
    def zero(cls, degree: int, order: int) -> "FormJet":
        return cls(degree, tuple(Jet2.zero(order) for _ in range(_COMPONENT_COUNT[degree])))

    @property
    def order(self) -> int:
        return self.comps[0].order

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.comps)

    def truncated(self, order: int) -> "FormJet":
        return FormJet(self.degree, tuple(c.truncated(order) for c in self.comps))

    def _same_shape(self, other: "FormJet", what: str) -> None:
        if not isinstance(other, FormJet):
            raise TypeError(f"cannot {what} FormJet and {type(other).__name__}")
        if self.degree != other.degree:
            raise ValueError(f"cannot {what} forms of degree {self.degree} and {other.degree}")

    def __add__(self, other: "FormJet") -> "FormJet":
        self._same_shape(other, "add")
        return FormJet(self.degree, tuple(a + b for a, b in zip(self.comps, other.comps)))

    def __sub__(self, other: "FormJet") -> "FormJet":
        self._same_shape(other, "subtract")
        return FormJet(self.degree, tuple(a - b for a, b in zip(self.comps, other.comps)))

    def __neg__(self) -> "FormJet":
        return FormJet(self.degree, tuple(-c for c in self.comps))

    def __repr__(self) -> str:
        return f"FormJet(degree={self.degree}, order={self.order})"


@dataclass(frozen=True)
class VF3Jet:
    """Vector field ``u d/dt + v d/dx + w d/dy`` with Jet2 coefficients."""

    u: Jet2
    v: Jet2
    w: Jet2

    def __post_init__(self):
        comps = (self.u, self.v, self.w)
        if not all(isinstance(c, Jet2) for c in comps):
            raise TypeError("components must be Jet2")
        if len({c.order for c in comps}) != 1:
            raise OrderMismatchError(
                f"component orders differ: {[c.order for c in comps]}"
            )

    @property
    def order(self) -> int:
        return self.u.order

    def truncated(self, order: int) -> "VF3Jet":
        return VF3Jet(self.u.truncated(order), self.v.truncated(order), self.w.truncated(order))


def d(f: FormJet) -> FormJet:
    """Exterior derivative; output order drops by one.

    With t-independent coefficients no ``d/dt`` terms appear, so a 3-form
    has no derivative here and degree 3 input is rejected.
    """
    n = f.order
    if n < 1:
        raise ValueError("cannot differentiate an order-0 jet form")
    if f.degree == 0:
        (h,) = f.comps
        return FormJet(1, (Jet2.zero(n - 1), h.dx(), h.dy()))
    if f.degree == 1:
        p, q, r = f.comps
        return FormJet(2, (r.dx() - q.dy(), -p.dx(), -p.dy()))
    if f.degree == 2:
        _, b, c = f.comps
        return FormJet(3, (b.dy() - c.dx(),))
    raise ValueError("exterior derivative of a degree-3 form is not defined here")


def wedge(a: FormJet, b: FormJet) -> FormJet:
    """Graded product; total degree must stay within 3."""
    if a.degree + b.degree > 3:
        raise ValueError(f"wedge degree {a.degree} + {b.degree} exceeds 3")
    if a.order != b.order:
        raise OrderMismatchError(f"form orders differ: {a.order} vs {b.order}")
    if a.degree == 0:
        (h,) = a.comps
        return FormJet(b.degree, tuple(h * c for c in b.comps))
    if b.degree == 0:
        return wedge(b, a)
    if a.degree == 1 and b.degree == 1:
        p1, q1, r1 = a.comps
        p2, q2, r2 = b.comps
        return FormJet(2, (q1 * r2 - r1 * q2, p1 * q2 - q1 * p2, p1 * r2 - r1 * p2))
    if a.degree == 1 and b.degree == 2:
        p, q, r = a.comps
        aa, bb, cc = b.comps
        return FormJet(3, (p * aa - q * cc + r * bb,))
    # degree 2 wedge degree 1 commutes (even-degree factor)
    return wedge(b, a)


def interior(v: VF3Jet, f: FormJet) -> FormJet:
    """Contraction of a form with a vector field (degree drops by one)."""
    if f.degree == 0:
        raise ValueError("cannot contract a 0-form")
    if v.order != f.order:
        raise OrderMismatchError(f"orders differ: field {v.order} vs form {f.order}")
    if f.degree == 1:
        p, q, r = f.comps
        return FormJet(0, (p * v.u + q * v.v + r * v.w,))
    if f.degree == 2:
        aa, bb, cc = f.comps
        return FormJet(
            1,
            (
                -bb * v.v - cc * v.w,
                -aa * v.w + bb * v.u,
                aa * v.v + cc * v.u,
            ),
        )
    (vol,) = f.comps
    return FormJet(2, (vol * v.u, vol * v.w, -(vol * v.v)))


def contact_form_jet(c: ContactNF, order: int | None = None) -> FormJet:
    """``theta(xy) dt + (x dy - y dx)/2`` as a degree-1 form jet.

    Default Jet2 order ``2 * theta.order`` keeps every theta coefficient.
    """
    if order is None:
        order = 2 * c.theta.order
    half = mpq(1, 2)
    return FormJet(
        1,
        (
            substitute_xy(c.theta, order),
            Jet2.monomial(-half, 0, 1, order),
            Jet2.monomial(half, 1, 0, order),
        ),
    )


def reeb_vf_jet(v: ResVF, order: int) -> VF3Jet:
    """``f(xy) d/dt + f g x d/dx - f g y d/dy`` as a vector-field jet."""
    k = min(v.f.order, v.g.order)
    fg = v.f.truncated(k) * v.g.truncated(k)
    fg2 = substitute_xy(fg, order)
    return VF3Jet(
        substitute_xy(v.f, order),
        fg2 * Jet2.variable_x(order),
        -(fg2 * Jet2.variable_y(order)),
    )


@dataclass(frozen=True)
class ReebReport:
    """Residuals of the two Reeb conditions; both vanish exactly on a pass."""

    ok: bool
    pairing_residual: Jet2
    contraction_residual: FormJet


@dataclass(frozen=True)
class VolumeReport:
    """``alpha ^ d(alpha)`` against the roof-jet volume coefficient."""

    ok: bool
    volume: Jet2
    expected: Jet2
    residual: Jet2


def reeb_check(c: ContactNF, v: ResVF | None = None) -> ReebReport:
    """Exact check that ``v`` is the Reeb field of the contact form.

    Verifies ``alpha(v) = 1`` at order ``2 * theta.order`` and the vanishing
    of the contraction of ``d(alpha)`` with ``v`` one order lower.
    """
    if v is None:
        v = reeb_field(c)
    n2 = 2 * c.theta.order
    alpha = contact_form_jet(c, n2)
    field = reeb_vf_jet(v, n2)
    pairing = interior(field, alpha).comps[0] - Jet2.constant(1, n2)
    contraction = interior(field.truncated(n2 - 1), d(alpha))
    return ReebReport(
        ok=pairing.is_zero() and contraction.is_zero(),
        pairing_residual=pairing,
        contraction_residual=contraction,
    )


def volume_identity(c: ContactNF) -> VolumeReport:
    """Exact check of ``alpha ^ d(alpha) = roof(xy) dt^dx^dy``."""
    n2 = 2 * c.theta.order
    alpha = contact_form_jet(c, n2)
    (volume,) = wedge(alpha.truncated(n2 - 1), d(alpha)).comps
    expected = substitute_xy(roof_jet(c), n2 - 1)
    residual = volume - expected
    return VolumeReport(
        ok=residual.is_zero(), volume=volume, expected=expected, residual=residual
    )


def poincare_primitive(f: FormJet) -> Jet2:
    """Primitive of a closed 1-form on the disc, vanishing at the origin.

    Radial integration ``tau(x, y) = int_0^1 (Q(sx, sy) x + R(sx, sy) y) ds``
    turns each monomial coefficient into itself divided by one plus its total
    degree; the output gains one jet order.  Closedness is what makes
    ``d(tau) = f``, so a non-closed input is rejected.
    """
    if f.degree != 1:
        raise ValueError(f"primitive needs a degree-1 form, got degree {f.degree}")
    p, q, r = f.comps
    if not p.is_zero():
        raise ValueError("primitive needs a vanishing dt component")
    if not (r.dx() - q.dy()).is_zero():
        raise ValueError("input one-form is not closed")
    n = f.order
    cs: dict[tuple[int, int], mpq] = {}
    for (i, j), value in q.coeffs.items():
        key = (i + 1, j)
        cs[key] = cs.get(key, mpq(0)) + value / (i + j + 1)
    for (i, j), value in r.coeffs.items():
        key = (i, j + 1)
        cs[key] = cs.get(key, mpq(0)) + value / (i + j + 1)
    return Jet2(cs, n + 1)


def canonical_retime(pullback: FormJet) -> Jet2:
    """Time shift flattening a section pullback to the rotational form.

    The input must be ``(a - y/2) dx + (b + x/2) dy`` with ``a dx + b dy``
    closed; the returned ``tau`` satisfies ``pullback + d(tau) =
    (x dy - y dx)/2`` exactly, and vanishes at the origin.
    """
    if pullback.degree != 1:
        raise ValueError(f"retiming needs a degree-1 form, got degree {pullback.degree}")
    p, q, r = pullback.comps
    if not p.is_zero():
        raise ValueError("section pullback must have no dt component")
    n = pullback.order
    half = mpq(1, 2)
    a = q + Jet2.monomial(half, 0, 1, n)
    b = r - Jet2.monomial(half, 1, 0, n)
    return poincare_primitive(FormJet(1, (Jet2.zero(n), -a, -b)))


def moser_normalize(g_density: Jet2, f) -> MapJet2:
    """Map commuting with the resonance map that flattens an invariant density.

    The time-1 map of the interpolating transport field is, in closed form,
    the cumulative-mass map ``psi(x, y) = (int_0^x g(s, y) ds, y)``; the
    normalizer is its inverse ``H``, which pulls ``g dx^dy`` back to
    ``dx^dy`` exactly (one order lower, where the Jacobian lives).

    Existence of a *commuting* normalizer is a genuine obstruction: for a
    nonlinear resonance map every commuting jet preserves the density form,
    so only the unit density is normalizable, and this raises
    ``MoserObstructionError``.  For linear maps the construction always
    commutes.
    """
    n = g_density.order
    if g_density.constant_term <= 0:
        raise ValueError(f"density must be positive at the origin, got {g_density.constant_term}")
    fmap = f.map_jet(n) if hasattr(f, "map_jet") else f
    invariance = compose(g_density, fmap) - g_density
    if not invariance.is_zero():
        raise ValueError("density is not invariant under the map")
    transport = MapJet2(g_density.integrate_x().truncated(n), Jet2.variable_y(n))
    h = invert_map(transport)
    residual_x = compose_map(h, fmap).x - compose_map(fmap, h).x
    residual_y = compose_map(h, fmap).y - compose_map(fmap, h).y
    if not (residual_x.is_zero() and residual_y.is_zero()):
        raise MoserObstructionError(
            "no commuting normalizer exists: a nonlinear resonance map's "
            "centralizer preserves the density form, so only the unit "
            "density can be flattened",
            residual=(residual_x, residual_y),
        )
    pullback = (compose(g_density, h).truncated(n - 1)) * det_jacobian(h)
    assert (pullback - Jet2.constant(1, n - 1)).is_zero()
    return h


@dataclass(frozen=True)
class TransferResult:
    """Primitive realizing the difference of two contact forms, if exact.

    ``obstruction`` is the dt coefficient of the difference on the core
    orbit — the period integral over the nontrivial loop.  When it is
    nonzero the difference is closed but not exact and ``primitive`` is
    ``None``.
    """

    primitive: Jet2 | None
    obstruction: mpq


def contact_transfer(alpha0: FormJet, alpha1: FormJet) -> TransferResult:
    """Solve ``d(tau) = alpha1 - alpha0`` on the solid torus.

    The difference must be closed; closedness forces its dt coefficient to
    be constant, and that constant is the only cohomological obstruction.
    """
    if alpha0.degree != 1 or alpha1.degree != 1:
        raise ValueError("contact transfer needs degree-1 forms")
    beta = alpha1 - alpha0
    if not d(beta).is_zero():
        raise ValueError("difference of the forms is not closed")
    p, q, r = beta.comps
    obstruction = p.constant_term
    if obstruction != 0:
        return TransferResult(primitive=None, obstruction=obstruction)
    primitive = poincare_primitive(FormJet(1, (Jet2.zero(beta.order), q, r)))
    return TransferResult(primitive=primitive, obstruction=rat(0))
