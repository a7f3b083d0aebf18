"""Normal forms of area-preserving hyperbolic planar map jets.

``birkhoff_normalize`` conjugates a volume-preserving jet with linear part
``diag(lam, 1/lam)`` into resonance form, one homogeneous degree at a time.
Every elimination step conjugates by the time-1 map of a polynomial
Hamiltonian vector field, so all intermediate conjugacies are exactly
area-preserving at the truncation order and the normalized map pairs its two
unit cofactors conservatively (``omega_y = omega_x^-1``).

For monomials, conjugating by ``id + X`` shifts the degree-d part of the map
by ``X o L - L o X`` where ``L = diag(lam, 1/lam)``; on the first component
``x^i y^j`` picks up the factor ``lam^(i-j) - lam`` and on the second
``lam^(i-j) - 1/lam``.  The factors vanish exactly on the resonant monomials
``x (xy)^k`` and ``y (xy)^k``, which therefore survive into the normal form
and carry its invariants ``a_k`` (the coefficients of ``omega``).

``centralizer_solve`` decides degree by degree whether a jet commuting with a
given hyperbolic map can realize a prescribed linear-part determinant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from gmpy2 import mpq

from .cocycle import ResMap
from .jetalg import (
    Jet1,
    Jet2,
    MapJet2,
    NotInvertibleError,
    _compose_dicts,
    _dict_add,
    _dict_dx,
    _dict_dy,
    _dict_mul,
    _dict_neg,
    _dict_scale,
    compose_map,
    det_jacobian,
    rat,
)

__all__ = [
    "CentralizerResult",
    "NormalizationResult",
    "anosov_class",
    "birkhoff_normalize",
    "centralizer_solve",
    "diagonalize_linear",
    "hamiltonian_time_one",
]


@dataclass(frozen=True)
class NormalizationResult:
    """Resonance form, the conjugacy reaching it, and the invariants."""

    res_form: ResMap
    conjugacy: MapJet2
    conjugacy_inverse: MapJet2
    birkhoff_coefficients: Jet1


@dataclass(frozen=True)
class CentralizerResult:
    """Outcome of a commuting-jet search at a fixed linear determinant."""

    feasible: bool
    witness: MapJet2 | None
    obstruction_degree: int | None
    detail: str


def _sqrt_rational(q: mpq) -> mpq | None:
    """Exact square root of a nonnegative rational, or None."""
    if q < 0:
        return None
    num, den = int(q.numerator), int(q.denominator)
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn != num or rd * rd != den:
        return None
    return mpq(rn, rd)


def diagonalize_linear(m: MapJet2) -> tuple[MapJet2, mpq]:
    """Linear conjugacy ``L`` with ``L o m o L^-1`` having diagonal linear part.

    The linear part must have determinant 1 and rational eigenvalues
    ``lam > 1 > 1/lam > 0``.  The returned ``L`` has determinant 1, so it
    preserves area exactly.
    """
    (a, b), (c, d) = m.linear_part()
    det = a * d - b * c
    if det != 1:
        raise ValueError(f"linear part must have determinant 1, got {det}")
    tr = a + d
    disc = tr * tr - 4
    if disc <= 0:
        raise ValueError(f"linear part is not hyperbolic (trace {tr})")
    root = _sqrt_rational(disc)
    if root is None:
        raise ValueError(f"eigenvalues are irrational (trace {tr}); cannot diagonalize exactly")
    lam = (tr + root) / 2
    if lam <= 1:
        raise ValueError(f"expected a positive eigenvalue above 1, got {lam}")
    mu = 1 / lam

    def eigenvector(ev):
        if b != 0:
            return (b, ev - a)
        if c != 0:
            return (ev - d, c)
        # already diagonal
        return (mpq(1), mpq(0)) if a == ev else (mpq(0), mpq(1))

    v1 = eigenvector(lam)
    v2 = eigenvector(mu)
    p_det = v1[0] * v2[1] - v1[1] * v2[0]
    if p_det == 0:
        raise ValueError("eigenvectors are degenerate")
    v2 = (v2[0] / p_det, v2[1] / p_det)  # scale so the eigenbasis has det 1
    # L is the inverse of the eigenbasis matrix [v1 v2] (which now has det 1)
    rows = ((v2[1], -v2[0]), (-v1[1], v1[0]))
    return MapJet2.from_linear(rows, m.order), lam


def hamiltonian_time_one(hamiltonian: dict, order: int) -> MapJet2:
    """Time-1 map of the Hamiltonian field of a polynomial, as an exact jet.

    ``hamiltonian`` maps monomials ``(a, b)`` to coefficients; the field is
    ``(dH/dy, -dH/dx)``.  The Lie series ``sum (X . grad)^k (id) / k!``
    terminates at the truncation order because the field has valuation >= 2,
    and the resulting jet is exactly area-preserving at that order.
    """
    vx = _dict_dy(hamiltonian)
    vy = _dict_neg(_dict_dx(hamiltonian))
    val = min((i + j for i, j in list(vx) + list(vy)), default=order + 1)
    if val < 2:
        raise ValueError("generator field must vanish to second order at the origin")
    cx = {(1, 0): mpq(1)}
    cy = {(0, 1): mpq(1)}
    term_x, term_y = cx, cy
    k = 1
    while True:
        term_x, term_y = (
            _dict_add(_dict_mul(vx, _dict_dx(term_x), order), _dict_mul(vy, _dict_dy(term_x), order)),
            _dict_add(_dict_mul(vx, _dict_dx(term_y), order), _dict_mul(vy, _dict_dy(term_y), order)),
        )
        if not term_x and not term_y:
            break
        s = mpq(1, math.factorial(k))
        cx = _dict_add(cx, _dict_scale(term_x, s))
        cy = _dict_add(cy, _dict_scale(term_y, s))
        k += 1
    return MapJet2(Jet2(cx, order), Jet2(cy, order))


def _require_diagonal_hyperbolic(m: MapJet2) -> mpq:
    (a, b), (c, d) = m.linear_part()
    if b != 0 or c != 0:
        raise ValueError(
            "linear part must be diagonal; apply diagonalize_linear first"
        )
    if a <= 1:
        raise ValueError(f"expected diagonal linear part diag(lam, 1/lam) with lam > 1, got lam = {a}")
    if a * d != 1:
        raise ValueError(f"linear part must be diag(lam, 1/lam); got diag({a}, {d})")
    return a


def birkhoff_normalize(m: MapJet2) -> NormalizationResult:
    """Conjugate an area-preserving hyperbolic jet into resonance form.

    Preconditions: linear part ``diag(lam, 1/lam)`` with rational ``lam > 1``
    and Jacobian determinant exactly 1 at order ``m.order - 1``.  Resonant
    generator components are fixed to zero, which makes the output canonical;
    the coefficients ``a_k`` of the resulting ``omega`` are the invariants.
    """
    lam = _require_diagonal_hyperbolic(m)
    n = m.order
    if det_jacobian(m) != Jet2.constant(1, n - 1):
        raise ValueError("map is not area preserving: det DF != 1 at order order-1")
    lam_inv = 1 / lam
    current = m
    conj = MapJet2.identity(n)
    conj_inv = MapJet2.identity(n)
    for d in range(2, n + 1):
        g1 = current.x.homogeneous_part(d)
        g2 = current.y.homogeneous_part(d)
        ham: dict = {}
        for a_exp in range(d + 2):
            b_exp = d + 1 - a_exp
            if a_exp == b_exp:
                continue  # resonant generator direction: fixed to zero
            mdiff = a_exp - b_exp
            h = None
            if b_exp >= 1:
                p = g1.get((a_exp, b_exp - 1))
                if p:
                    h = -p / (b_exp * (lam ** (mdiff + 1) - lam))
            if h is None and a_exp >= 1:
                q = g2.get((a_exp - 1, b_exp))
                if q:
                    h = q / (a_exp * (lam ** (mdiff - 1) - lam_inv))
            if h:
                ham[(a_exp, b_exp)] = h
        if not ham:
            # check there was nothing non-resonant to kill at this degree
            _assert_resonant_only(g1, g2, d)
            continue
        phi = hamiltonian_time_one(ham, n)
        phi_inv = hamiltonian_time_one(_dict_neg(ham), n)
        current = compose_map(phi, compose_map(current, phi_inv))
        _assert_resonant_only(
            current.x.homogeneous_part(d), current.y.homogeneous_part(d), d
        )
        conj = compose_map(phi, conj)
        conj_inv = compose_map(conj_inv, phi_inv)
    omega = _extract_omega(current, lam)
    res = ResMap(lam, omega)
    return NormalizationResult(
        res_form=res,
        conjugacy=conj,
        conjugacy_inverse=conj_inv,
        birkhoff_coefficients=omega,
    )


def _assert_resonant_only(g1: dict, g2: dict, degree: int):
    bad1 = {k: v for k, v in g1.items() if k[0] - k[1] != 1}
    bad2 = {k: v for k, v in g2.items() if k[0] - k[1] != -1}
    if bad1 or bad2:
        raise RuntimeError(
            f"internal error: non-resonant degree-{degree} terms survived elimination; "
            f"x: {bad1}, y: {bad2}"
        )


def _extract_omega(current: MapJet2, lam) -> Jet1:
    n = current.order
    mord = (n - 1) // 2
    omega = [mpq(0)] * (mord + 1)
    for (i, j), c in current.x.coeffs.items():
        if i - j != 1:
            raise RuntimeError(f"internal error: non-resonant term x^{i}y^{j} in normal form")
        omega[j] = c / lam
    if omega[0] != 1:
        raise RuntimeError("internal error: normal form lost its linear multiplier")
    omega_jet = Jet1(omega, mord)
    # conservative pairing: the y-cofactor must be the reciprocal unit
    expect = omega_jet.reciprocal()
    for (i, j), c in current.y.coeffs.items():
        if j - i != 1:
            raise RuntimeError(f"internal error: non-resonant term x^{i}y^{j} in normal form")
        if c * lam != expect.coeffs[i]:
            raise RuntimeError(
                "internal error: conservative pairing failed (omega_y != omega_x^-1)"
            )
    return omega_jet


def anosov_class(res) -> mpq:
    """Obstruction to flattening the invariant foliations: ``-a_1``.

    Accepts anything exposing a unit cofactor jet ``omega``.
    """
    omega = res.omega
    if omega.order < 1:
        raise ValueError("omega jet must have order >= 1")
    return -omega.coeffs[1]


def centralizer_solve(f: MapJet2, det_target) -> CentralizerResult:
    """Search for ``H`` with ``H o F = F o H`` and ``det DH(0) = det_target``.

    ``f`` must have a diagonal hyperbolic linear part with distinct positive
    eigenvalues.  Works degree by degree: the linear part is forced diagonal,
    the canonical split ``diag(det_target, 1)`` is chosen, and at each degree
    the commutator equation determines the non-resonant coefficients of ``H``
    uniquely while the resonant right-hand sides must vanish.  A nonzero
    resonant residual reports the lowest inconsistent degree; the obstruction
    does not depend on the canonical choices because rescaling either axis
    commutes with the whole construction.
    """
    det_target = rat(det_target)
    if det_target == 0:
        raise NotInvertibleError("target determinant must be nonzero")
    (a, b), (c, d) = f.linear_part()
    if b != 0 or c != 0:
        raise ValueError("linear part of F must be diagonal")
    if a == d or a <= 0 or d <= 0:
        raise ValueError(f"need distinct positive eigenvalues, got ({a}, {d})")
    if not (d < 1 < a):
        raise ValueError(f"need a hyperbolic pair mu_1 > 1 > mu_2 > 0, got ({a}, {d})")
    n = f.order
    mu1, mu2 = a, d
    hx = {(1, 0): det_target}
    hy = {(0, 1): mpq(1)}
    for degree in range(2, n + 1):
        # residual of the commutator with H filled in below this degree
        ex, ey = _commutator(hx, hy, f)
        rx = {k: v for k, v in ex.items() if k[0] + k[1] == degree}
        ry = {k: v for k, v in ey.items() if k[0] + k[1] == degree}
        for (i, j), v in rx.items():
            pivot = mu1 ** i * mu2 ** j - mu1
            if pivot == 0:
                return CentralizerResult(
                    feasible=False,
                    witness=None,
                    obstruction_degree=degree,
                    detail=(
                        f"resonant monomial x^{i}y^{j} in the first component has "
                        f"residual {v}; no commuting jet attains determinant {det_target}"
                    ),
                )
            hx[(i, j)] = -v / pivot
        for (i, j), v in ry.items():
            pivot = mu1 ** i * mu2 ** j - mu2
            if pivot == 0:
                return CentralizerResult(
                    feasible=False,
                    witness=None,
                    obstruction_degree=degree,
                    detail=(
                        f"resonant monomial x^{i}y^{j} in the second component has "
                        f"residual {v}; no commuting jet attains determinant {det_target}"
                    ),
                )
            hy[(i, j)] = -v / pivot
    witness = MapJet2(Jet2(hx, n), Jet2(hy, n))
    ex, ey = _commutator(hx, hy, f)
    if ex or ey:
        raise RuntimeError("internal error: commutator residual survived the sweep")
    return CentralizerResult(
        feasible=True,
        witness=witness,
        obstruction_degree=None,
        detail=f"witness found with det DH(0) = {det_target}",
    )


def _commutator(hx: dict, hy: dict, f: MapJet2) -> tuple[dict, dict]:
    """Coefficient dicts of ``H o F - F o H`` at order ``f.order``."""
    n = f.order
    fx, fy = f.x.coeffs, f.y.coeffs
    hof_x = _compose_dicts(hx, fx, fy, n)
    hof_y = _compose_dicts(hy, fx, fy, n)
    foh_x = _compose_dicts(fx, hx, hy, n)
    foh_y = _compose_dicts(fy, hx, hy, n)
    return (
        _dict_add(hof_x, _dict_neg(foh_x)),
        _dict_add(hof_y, _dict_neg(foh_y)),
    )
