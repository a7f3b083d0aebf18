"""Cohomological equations over hyperbolic resonance maps.

A resonance map is the planar jet

    F(x, y) = (lam * x * omega(x*y),  lam^-1 * y * omega(x*y)^-1)

with rational multiplier ``lam > 1`` and unit jet ``omega`` (``omega(0) = 1``).
Such maps preserve ``x*y`` exactly, so any bivariate jet ``phi`` splits into a
resonant part depending on ``x*y`` alone and an off-diagonal remainder that is
a coboundary ``w o F - w``.  The diagonal coefficients ``phi[k, k]`` are the
complete obstruction: coboundaries have vanishing diagonal, and the
off-diagonal part is always solvable with a unique zero-diagonal transfer.

The solver works line by line.  A monomial ``x^i y^j`` composed with ``F``
stays on the line ``m = i - j``; writing the line coefficients as a series in
``z = x*y`` the equation becomes a triangular recursion whose pivot at each
step is ``lam^m - 1 != 0``.  Coefficients are filled in increasing total
degree along each line, which reproduces the graded-lexicographic sweep.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .jetalg import (
    Jet1,
    Jet2,
    MapJet2,
    OrderMismatchError,
    compose,
    diag_part,
    rat,
    substitute_xy,
)

__all__ = [
    "CocycleSplit",
    "ResMap",
    "best_achievable_tangency",
    "is_cohomologous",
    "normalize_cocycle",
    "resonance_split",
    "retime_roof",
    "solve_coboundary",
    "tangency_order",
]


@dataclass(frozen=True)
class ResMap:
    """Hyperbolic resonance map ``(lam*x*omega(xy), y/(lam*omega(xy)))``."""

    multiplier: mpq
    omega: Jet1

    def __post_init__(self):
        object.__setattr__(self, "multiplier", rat(self.multiplier))
        if self.multiplier <= 1:
            raise ValueError(f"multiplier must exceed 1, got {self.multiplier}")
        if not isinstance(self.omega, Jet1):
            raise TypeError("omega must be a Jet1")
        if self.omega.constant_term != 1:
            raise ValueError("omega must be a unit jet with omega(0) = 1")

    def required_omega_order(self, order: int) -> int:
        return (order - 1) // 2

    def map_jet(self, order: int) -> MapJet2:
        """Expand to a planar map jet of the given order.

        Needs ``omega`` up to ``(order - 1) // 2``; spare coefficients beyond
        that never reach degree ``order`` and are dropped.
        """
        need = self.required_omega_order(order)
        if self.omega.order < need:
            raise OrderMismatchError(
                f"omega order {self.omega.order} too low for map order {order}"
            )
        lam = self.multiplier
        omega_inv = self.omega.reciprocal()
        fx = {}
        fy = {}
        for k in range(need + 1):
            c = self.omega.coeffs[k]
            if c:
                fx[(k + 1, k)] = lam * c
            c = omega_inv.coeffs[k]
            if c:
                fy[(k, k + 1)] = c / lam
        return MapJet2(Jet2(fx, order), Jet2(fy, order))

    def omega_power(self, m: int, order: int) -> Jet1:
        """``omega^m`` as a jet of the given order, any integer ``m``."""
        base = self.omega.truncated(order) if self.omega.order > order else self.omega
        if base.order < order:
            raise OrderMismatchError(
                f"omega order {self.omega.order} too low for power order {order}"
            )
        if m < 0:
            return base.reciprocal() ** (-m)
        return base ** m


@dataclass(frozen=True)
class CocycleSplit:
    """Splitting ``phi = resonance_part(xy) + (transfer o F - transfer)``."""

    resonance_part: Jet1
    transfer: Jet2
    coboundary_part: Jet2


def resonance_split(phi: Jet2) -> tuple[Jet1, Jet2]:
    """Split off the diagonal: ``phi = phibar(xy) + phi0`` with zero-diagonal phi0."""
    if not isinstance(phi, Jet2):
        raise TypeError("resonance_split expects a Jet2")
    phibar = diag_part(phi)
    phi0 = phi - substitute_xy(phibar, phi.order)
    return phibar, phi0


def solve_coboundary(phi0: Jet2, f: ResMap) -> Jet2:
    """Solve ``w o F - w = phi0`` for the unique zero-diagonal ``w``.

    ``phi0`` must have zero diagonal part (those coefficients are invariants,
    not coboundaries).  Exact at order ``phi0.order``.
    """
    if not isinstance(phi0, Jet2):
        raise TypeError("solve_coboundary expects a Jet2")
    if not isinstance(f, ResMap):
        raise TypeError("solve_coboundary expects a ResMap")
    order = phi0.order
    lines: dict = {}
    for (i, j), c in phi0.coeffs.items():
        if i == j:
            raise ValueError(
                f"right-hand side has a diagonal term at (x*y)^{i}; "
                "split it off first (diagonal coefficients are invariants)"
            )
        lines.setdefault(i - j, {})[min(i, j)] = c
    lam = f.multiplier
    out = {}
    for m, line in lines.items():
        pmax = (order - abs(m)) // 2
        epow = f.omega_power(m, pmax).coeffs
        lam_m = lam ** m
        pivot = lam_m - 1
        cs = [mpq(0)] * (pmax + 1)
        for p in range(pmax + 1):
            acc = line.get(p, mpq(0))
            for q in range(1, p + 1):
                e = epow[q]
                if e:
                    acc -= lam_m * e * cs[p - q]
            cs[p] = acc / pivot
        for p, c in enumerate(cs):
            if c:
                key = (p + m, p) if m > 0 else (p, p - m)
                out[key] = c
    return Jet2(out, order)


def normalize_cocycle(phi: Jet2, f: ResMap) -> CocycleSplit:
    """Full splitting of ``phi`` over ``f``: resonant part plus coboundary."""
    phibar, phi0 = resonance_split(phi)
    w = solve_coboundary(phi0, f)
    return CocycleSplit(resonance_part=phibar, transfer=w, coboundary_part=phi0)


def is_cohomologous(phi1: Jet2, phi2: Jet2, f: ResMap) -> bool:
    """Whether ``phi1 - phi2`` is a coboundary over ``f``.

    Equivalent to equality of the diagonal coefficient jets, which are the
    complete cohomology invariants over a hyperbolic resonance map.
    """
    if phi1.order != phi2.order:
        raise OrderMismatchError(f"jet orders differ: {phi1.order} vs {phi2.order}")
    if not isinstance(f, ResMap):
        raise TypeError("is_cohomologous expects a ResMap")
    return diag_part(phi1) == diag_part(phi2)


def retime_roof(r: Jet2, u: Jet2, f: ResMap) -> Jet2:
    """Replace the roof cocycle ``r`` by ``r - (u o F - u)``.

    Subtracting the coboundary of the transfer ``u`` models changing the
    cross-section; the diagonal part is untouched.
    """
    if r.order != u.order:
        raise OrderMismatchError(f"jet orders differ: {r.order} vs {u.order}")
    fj = f.map_jet(r.order)
    return r - (compose(u, fj) - u)


def tangency_order(phi: Jet2) -> int | None:
    """Largest ``k`` with no nonconstant terms of total degree <= k.

    Returns ``None`` when every nonconstant coefficient up to the truncation
    order vanishes (read: at least the truncation order).
    """
    if not isinstance(phi, Jet2):
        raise TypeError("tangency_order expects a Jet2")
    degrees = [i + j for (i, j) in phi.coeffs if i + j > 0]
    if not degrees:
        return None
    return min(degrees) - 1


def best_achievable_tangency(r: Jet2, f: ResMap) -> int | None:
    """Best tangency order reachable by retiming ``r`` over ``f``.

    Retiming can cancel everything except the diagonal coefficients, so the
    first nonzero ``r[k, k]`` with ``k >= 1`` caps the tangency at ``2k - 1``.
    Returns ``None`` when no such coefficient exists up to the truncation
    order (read: at least the truncation order).
    """
    if not isinstance(f, ResMap):
        raise TypeError("best_achievable_tangency expects a ResMap")
    rbar = diag_part(r)
    for k in range(1, rbar.order + 1):
        if rbar.coeffs[k]:
            return 2 * k - 1
    return None
