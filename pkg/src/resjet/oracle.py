"""Floating-point cross-validation of the exact kernels.

This is the only module that evaluates jets numerically.  Everything here
answers one question: do the exact truncated identities describe the same
dynamics a naive numeric method sees?

* ``rk4_flow`` integrates a resonance field with classical RK4 and is
  compared against the closed-form flow.
* ``fd_reeb_check`` rebuilds the Reeb conditions with central differences
  instead of jet derivatives.
* ``sl2_check`` verifies the homogeneous-geometry matrix identity
  ``g_T p(x, y) = p(e^T x, e^{-T} y) gamma`` that realizes the constant-roof
  example, and reports the induced contact data.

Every numeric report carries a truncation tail bound so tolerances stay
honest: jets are local objects and the bound states how much the dropped
tail could contribute at the evaluated radius.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .contactnf import ContactNF, ResVF, flow_eval, reeb_field
from .jetalg import Jet1

__all__ = [
    "DEFAULT_RADIUS",
    "FDReebReport",
    "Mat2",
    "Sl2Report",
    "fd_reeb_check",
    "flow_discrepancy",
    "jet1_eval",
    "jet1_tail_bound",
    "jet2_eval",
    "resmap_eval",
    "rk4_flow",
    "sample_points",
    "section_map_apply",
    "sl2_check",
]

# Trusted evaluation radius for |x*y|; beyond it the truncation tail of an
# order-8 jet with unit-size coefficients is no longer negligible.
DEFAULT_RADIUS = 0.25

# 2x2 double-precision matrix (the SL(2, R) sample representation).
Mat2 = np.ndarray


def jet1_eval(a: Jet1, z: float) -> float:
    """Horner evaluation of a univariate jet at a float argument."""
    acc = 0.0
    z = float(z)
    for c in reversed(a.coeffs):
        acc = acc * z + float(c)
    return acc


def jet1_tail_bound(a: Jet1, z: float) -> float:
    """Crude bound on the dropped tail of ``a`` at ``|z|``.

    Models the tail as a geometric series with ratio ``|z|`` and height the
    largest retained coefficient: ``M |z|^(N+1) / (1 - |z|)``.  Infinite for
    ``|z| >= 1`` — the jet says nothing out there.
    """
    z = abs(float(z))
    if z >= 1.0:
        return math.inf
    m = max((abs(float(c)) for c in a.coeffs), default=0.0)
    return m * z ** (a.order + 1) / (1.0 - z)


def jet2_eval(a, x: float, y: float) -> float:
    """Evaluate a bivariate jet at float coordinates."""
    x = float(x)
    y = float(y)
    return sum(float(c) * x**i * y**j for (i, j), c in a.coeffs.items())


def sample_points(n: int, seed: int, bound: float) -> list[tuple[float, float]]:
    """Deterministic batch of planar sample points with |x|, |y| <= bound."""
    r = random.Random(seed)
    return [(r.uniform(-bound, bound), r.uniform(-bound, bound)) for _ in range(n)]


def rk4_flow(v: ResVF, t, point, step, radius: float = DEFAULT_RADIUS):
    """Classical fourth-order integration of a resonance field.

    The state is ``(s, x, y)``; the derivative is read off the jets ``f, g``
    at ``z = x*y``.  The product ``x*y`` is conserved by the exact flow, so a
    drifting trajectory leaving ``|x*y| <= radius`` aborts the run.
    """
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    t = float(t)
    s, x, y = (float(w) for w in point)
    fc = tuple(float(c) for c in reversed(v.f.coeffs))
    gc = tuple(float(c) for c in reversed(v.g.coeffs))

    def horner(coeffs, z):
        acc = 0.0
        for c in coeffs:
            acc = acc * z + c
        return acc

    def deriv(state):
        _, px, py = state
        z = px * py
        fz = horner(fc, z)
        a = fz * horner(gc, z)
        return (fz, a * px, -a * py)

    n = max(1, math.ceil(abs(t) / step))
    h = t / n
    state = (s, x, y)
    for _ in range(n):
        if abs(state[1] * state[2]) > radius:
            raise ValueError(
                f"trajectory left the trusted radius: |x*y| = {abs(state[1] * state[2])}"
            )
        k1 = deriv(state)
        k2 = deriv(tuple(state[i] + 0.5 * h * k1[i] for i in range(3)))
        k3 = deriv(tuple(state[i] + 0.5 * h * k2[i] for i in range(3)))
        k4 = deriv(tuple(state[i] + h * k3[i] for i in range(3)))
        state = tuple(
            state[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
            for i in range(3)
        )
    return state


def flow_discrepancy(v: ResVF, t, point, step, radius: float = DEFAULT_RADIUS) -> float:
    """Sup over the RK4 trajectory of its distance to the closed-form flow."""
    if step <= 0:
        raise ValueError(f"step must be positive, got {step}")
    t = float(t)
    n = max(1, math.ceil(abs(t) / step))
    h = t / n
    worst = 0.0
    state = tuple(float(w) for w in point)
    for k in range(1, n + 1):
        state = rk4_flow(v, h, state, step=abs(h), radius=radius)
        exact = flow_eval(v, k * h, point, radius=radius)
        worst = max(worst, max(abs(a - b) for a, b in zip(state, exact)))
    return worst


def resmap_eval(f, point) -> tuple[float, float]:
    """Apply a resonance map numerically: ``(L x w(xy), y / (L w(xy)))``."""
    x, y = (float(w) for w in point)
    lam = float(f.multiplier)
    wz = jet1_eval(f.omega, x * y)
    return (lam * x * wz, y / (lam * wz))


def section_map_apply(sm, point) -> tuple[float, float]:
    """Apply a section first-return map numerically.

    The multiplier ``exp(log_multiplier)`` is transcendental and only exists
    here, in floating point; the cofactor jet stays exact upstream.
    """
    x, y = (float(w) for w in point)
    scale = math.exp(float(sm.log_multiplier)) * jet1_eval(sm.omega, x * y)
    return (x * scale, y / scale)


@dataclass(frozen=True)
class FDReebReport:
    """Worst finite-difference Reeb residual over a sample batch."""

    max_residual: float
    tail_bound: float
    samples: int


def fd_reeb_check(
    c: ContactNF,
    samples,
    h: float = 1e-5,
    radius: float = DEFAULT_RADIUS,
) -> FDReebReport:
    """Numeric shadow of the Reeb conditions via central differences.

    The contact-form components are evaluated as plain functions and their
    derivatives taken by central differences — independently of the jet
    calculus — then contracted with the Reeb field.  Reports the worst of
    ``|alpha(X) - 1|`` and the contraction components over the samples.
    """
    v = reeb_field(c)
    theta = c.theta

    def alpha(_t, x, y):
        z = x * y
        return (jet1_eval(theta, z), -0.5 * y, 0.5 * x)

    def field(x, y):
        z = x * y
        fz = jet1_eval(v.f, z)
        a = fz * jet1_eval(v.g, z)
        return (fz, a * x, -a * y)

    worst = 0.0
    tail = 0.0
    count = 0
    for x, y in samples:
        x = float(x)
        y = float(y)
        if abs(x * y) > radius:
            raise ValueError(f"sample outside the trusted radius: |x*y| = {abs(x * y)}")
        count += 1
        tail = max(tail, jet1_tail_bound(theta, x * y))
        vec = field(x, y)
        a_here = alpha(0.0, x, y)
        pairing = sum(ai * vi for ai, vi in zip(a_here, vec)) - 1.0
        worst = max(worst, abs(pairing))
        # K[i][j] = d_i alpha_j - d_j alpha_i over coordinates (t, x, y);
        # nothing depends on t, so the t-derivatives are zero.
        point = (0.0, x, y)
        grad = [[0.0] * 3 for _ in range(3)]
        for i in (1, 2):
            plus = list(point)
            minus = list(point)
            plus[i] += h
            minus[i] -= h
            ap = alpha(*plus)
            am = alpha(*minus)
            for j in range(3):
                grad[i][j] = (ap[j] - am[j]) / (2.0 * h)
        for j in range(3):
            contraction = sum(vec[i] * (grad[i][j] - grad[j][i]) for i in range(3))
            worst = max(worst, abs(contraction))
    return FDReebReport(max_residual=worst, tail_bound=tail, samples=count)


@dataclass(frozen=True)
class Sl2Report:
    """Outcome of the homogeneous-geometry example check."""

    t_value: float
    max_error: float
    samples: int
    theta_shape: Jet1
    linearizable: bool
    roof_is_constant: bool


def sl2_check(t_value: float, samples) -> Sl2Report:
    """Verify ``g_T p(x, y) = p(e^T x, e^{-T} y) g_T`` entrywise.

    ``p(x, y)`` has determinant 1 on ``1 + xy > 0``; the compensating matrix
    is ``g_T`` itself.  The induced contact form is the constant-roof
    ``T (1 + xy) dt + (x dy - y dx)/2``: the period ``T`` is transcendental,
    so the report carries the exact shape jet ``1 + z`` (to be scaled by
    ``T``) and runs the linearizability verdicts on the shape.
    """
    from .contactnf import contact_invariants, linearizability_decide

    t_value = float(t_value)
    et = math.exp(t_value)
    g_t = np.array([[math.exp(t_value / 2.0), 0.0], [0.0, math.exp(-t_value / 2.0)]])

    def p(x, y):
        if 1.0 + x * y <= 0.0:
            raise ValueError(f"point outside the chart: 1 + xy = {1.0 + x * y}")
        s = math.sqrt(1.0 + x * y)
        return np.array([[s, x], [y, s]])

    worst = 0.0
    count = 0
    for x, y in samples:
        x = float(x)
        y = float(y)
        count += 1
        left = g_t @ p(x, y)
        right = p(et * x, y / et) @ g_t
        worst = max(worst, float(np.max(np.abs(left - right))))
    shape = ContactNF(Jet1([1, 1, 0, 0, 0], 4))
    verdict = linearizability_decide(shape)
    roof = contact_invariants(shape).roof
    return Sl2Report(
        t_value=t_value,
        max_error=worst,
        samples=count,
        theta_shape=shape.theta,
        linearizable=verdict.linearizable,
        roof_is_constant=all(c == 0 for c in roof.coeffs[1:]),
    )
