"""The package's promise list, bundled as runnable checks.

Each ``check_*`` function exercises one headline property with its
documented default workload and returns a plain dict::

    {"criterion": k, "name": ..., "kind": "exact"|"numeric"|"mixed",
     "ok": bool, "detail": {...}}

Exact checks assert identities coefficient-by-coefficient over seeded
random inputs; numeric checks compare against the floating-point oracle
at stated tolerances.  ``run_checks`` aggregates them and is what both
the command-line ``verify`` verb and the acceptance test suite call, so
there is exactly one definition of "passing".
"""

from __future__ import annotations

import math

from gmpy2 import mpq

from . import randomjets as rj
from .birkhoff import birkhoff_normalize, centralizer_solve
from .cocycle import ResMap, best_achievable_tangency, normalize_cocycle
from .contactnf import (
    ContactNF,
    base_roof_reconstruct,
    contact_invariants,
    eta_from_roof,
    linearizability_decide,
    reeb_field,
    roof_from_eta,
    section_map,
)
from .forms import moser_normalize, reeb_check, volume_identity
from .jetalg import (
    Jet1,
    Jet2,
    compose,
    compose_map,
    det_jacobian,
    diag_part,
    invert_map,
    substitute_xy,
)
from .oracle import fd_reeb_check, flow_discrepancy, sample_points, sl2_check

__all__ = [
    "CHECKS",
    "check_base_roof_rigidity",
    "check_birkhoff_roundtrip",
    "check_centralizer",
    "check_cocycle_solver",
    "check_diagonal_invariance",
    "check_flow_oracle",
    "check_linearizability_agreement",
    "check_moser",
    "check_reeb_identities",
    "check_roof_eta_roundtrip",
    "check_sl2_example",
    "check_tangency_obstruction",
    "run_checks",
]


def _report(criterion, name, kind, failures, detail):
    detail = dict(detail)
    if failures:
        detail["failures"] = failures[:5]
        detail["failure_count"] = len(failures)
    return {
        "criterion": criterion,
        "name": name,
        "kind": kind,
        "ok": not failures,
        "detail": detail,
    }


def check_cocycle_solver(trials: int = 100, order: int = 8, seed: int = 101) -> dict:
    """Split + solve leaves a residual of exactly zero, with zero-diagonal transfer."""
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        f = rj.resmap(r, order)
        phi = rj.jet2(r, order)
        fmap = f.map_jet(order)
        split = normalize_cocycle(phi, f)
        residual = (
            substitute_xy(split.resonance_part, order)
            + (compose(split.transfer, fmap) - split.transfer)
            - phi
        )
        if not residual.is_zero() or not diag_part(split.transfer).is_zero():
            failures.append({"trial": k, "residual": repr(residual)})
    return _report(
        1,
        "cocycle solver exactness",
        "exact",
        failures,
        {"trials": trials, "order": order, "multipliers": [str(m) for m in rj.MULTIPLIERS]},
    )


def check_diagonal_invariance(trials: int = 100, order: int = 8, seed: int = 102) -> dict:
    """Coboundaries have identically vanishing diagonal coefficients."""
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        f = rj.resmap(r, order)
        u = rj.jet2(r, order)
        diag = diag_part(compose(u, f.map_jet(order)) - u)
        if not diag.is_zero():
            failures.append({"trial": k, "diagonal": repr(diag)})
    return _report(
        2,
        "coboundary diagonal invariance",
        "exact",
        failures,
        {"trials": trials, "order": order},
    )


def check_birkhoff_roundtrip(trials: int = 50, order: int = 9, seed: int = 103) -> dict:
    """Normalization recovers the cofactor through degree ``order`` exactly.

    Runs one order above the headline order 8 so that every cofactor
    coefficient with ``2k <= 8`` sits strictly inside the truncation.
    """
    r = rj.rng(seed)
    failures = []
    depth = (order - 1) // 2
    for k in range(trials):
        res = rj.resmap(r, order)
        s = rj.area_preserving_tangent_id(r, order)
        m = compose_map(invert_map(s), compose_map(res.map_jet(order), s))
        result = birkhoff_normalize(m)
        recovered = result.birkhoff_coefficients
        residual_x = compose(result.res_form.map_jet(order).x, result.conjugacy) - compose(
            result.conjugacy.x, m
        )
        residual_y = compose(result.res_form.map_jet(order).y, result.conjugacy) - compose(
            result.conjugacy.y, m
        )
        ok = (
            result.res_form.multiplier == res.multiplier
            and recovered == res.omega.truncated(depth)
            and residual_x.is_zero()
            and residual_y.is_zero()
        )
        if not ok:
            failures.append(
                {
                    "trial": k,
                    "expected_omega": repr(res.omega),
                    "recovered": repr(recovered),
                }
            )
    return _report(
        3,
        "birkhoff round-trip under area-preserving conjugation",
        "exact",
        failures,
        {"trials": trials, "order": order, "coefficients_compared": depth + 1},
    )


def check_reeb_identities(
    trials: int = 20,
    order: int = 8,
    points: int = 10,
    tolerance: float = 1e-6,
    seed: int = 104,
    numeric: bool = True,
) -> dict:
    """Reeb conditions and the volume identity, exact plus finite-difference."""
    r = rj.rng(seed)
    failures = []
    worst = 0.0
    for k in range(trials):
        c = rj.contact(r, order)
        rr = reeb_check(c)
        vr = volume_identity(c)
        entry = {"trial": k, "theta": repr(c.theta)}
        if not rr.ok:
            failures.append({**entry, "pairing_residual": repr(rr.pairing_residual)})
            continue
        if not vr.ok:
            failures.append({**entry, "volume_residual": repr(vr.residual)})
            continue
        if numeric:
            fd = fd_reeb_check(c, sample_points(points, seed + 7 * k + 1, 0.4))
            worst = max(worst, fd.max_residual)
            if fd.max_residual >= tolerance:
                failures.append({**entry, "fd_residual": fd.max_residual})
    detail = {"trials": trials, "order": order, "numeric": numeric}
    if numeric:
        detail.update({"points": points, "tolerance": tolerance, "worst_fd_residual": worst})
    return _report(4, "reeb and volume identities", "mixed", failures, detail)


def check_roof_eta_roundtrip(trials: int = 20, order: int = 8, seed: int = 105) -> dict:
    """Roof/angular-speed transforms invert each other; roof slope always zero."""
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        eta = rj.jet1(r, order - 1)
        c = rj.rational(r, 5, 3, nonzero=True)
        roof = roof_from_eta(eta, c)
        back = eta_from_roof(roof, eta.constant_term)
        if roof.coeffs[1] != 0 or back != eta or roof.constant_term != c:
            failures.append({"trial": k, "eta": repr(eta), "roof": repr(roof)})
    return _report(
        5,
        "return-time / angular-speed round-trip",
        "exact",
        failures,
        {"trials": trials, "order": order},
    )


def check_flow_oracle(
    fields: int = 10,
    starts: int = 50,
    step: float = 1e-3,
    tolerance: float = 1e-8,
    seed: int = 106,
) -> dict:
    """Closed-form flow against RK4 along whole unit-time trajectories."""
    r = rj.rng(seed)
    failures = []
    worst = 0.0
    for k in range(fields):
        v = rj.resvf(r, 8)
        for n, (x, y) in enumerate(sample_points(starts, seed + 13 * k + 1, 0.4)):
            disc = flow_discrepancy(v, 1.0, (0.0, x, y), step)
            worst = max(worst, disc)
            if disc >= tolerance:
                failures.append({"field": k, "start": n, "discrepancy": disc})
    return _report(
        6,
        "closed-form flow vs fourth-order integration",
        "numeric",
        failures,
        {
            "fields": fields,
            "starts": starts,
            "step": step,
            "tolerance": tolerance,
            "worst_discrepancy": worst,
        },
    )


def check_sl2_example(points: int = 100, tolerance: float = 1e-12, seed: int = 107) -> dict:
    """Homogeneous-geometry matrix identity and its contact verdicts."""
    report = sl2_check(math.log(3.0), sample_points(points, seed, 0.9))
    failures = []
    if report.max_error >= tolerance:
        failures.append({"max_error": report.max_error})
    if not report.linearizable or not report.roof_is_constant:
        failures.append(
            {
                "linearizable": report.linearizable,
                "roof_is_constant": report.roof_is_constant,
            }
        )
    return _report(
        7,
        "homogeneous example: matrix identity and constant roof",
        "numeric",
        failures,
        {
            "points": points,
            "tolerance": tolerance,
            "t_value": report.t_value,
            "max_error": report.max_error,
        },
    )


def check_moser(trials: int = 20, order: int = 8, seed: int = 108) -> dict:
    """Area normalizer commutes with the map and flattens the density.

    Densities invariant under a resonance map are exactly the jets in
    ``x*y``; a commuting normalizer for a nonunit density exists only over
    linear maps, so those are the maps drawn here.
    """
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        f = rj.resmap(r, order, linear=True)
        g = rj.invariant_density(r, order)
        fmap = f.map_jet(order)
        h = moser_normalize(g, f)
        commute_x = compose(h.x, fmap) - compose(fmap.x, h)
        commute_y = compose(h.y, fmap) - compose(fmap.y, h)
        pullback = compose(g, h).truncated(order - 1) * det_jacobian(h)
        ok = (
            commute_x.is_zero()
            and commute_y.is_zero()
            and pullback == Jet2.constant(1, order - 1)
        )
        if not ok:
            failures.append({"trial": k, "density": repr(g)})
    return _report(
        8,
        "area normalization: commutation and pullback",
        "exact",
        failures,
        {"trials": trials, "order": order, "pullback_order": order - 1},
    )


def check_centralizer(order: int = 8) -> dict:
    """The worked centralizer example: determinant 1/2 obstructed, 1 not."""
    failures = []
    nonlinear = ResMap(mpq(2), Jet1([1, mpq(1, 2)] + [0] * ((order + 1) // 2 - 1), (order + 1) // 2))
    fmap = nonlinear.map_jet(order)
    half = centralizer_solve(fmap, mpq(1, 2))
    if half.feasible or half.obstruction_degree is None or half.obstruction_degree > 3:
        failures.append({"case": "nonlinear det 1/2", "got": repr(half)})
    unit = centralizer_solve(fmap, mpq(1))
    if not unit.feasible:
        failures.append({"case": "nonlinear det 1", "got": repr(unit)})
    elif unit.witness is not None:
        w = unit.witness
        if compose_map(w, fmap) != compose_map(fmap, w):
            failures.append({"case": "nonlinear det 1 witness", "got": repr(w)})
    linear = ResMap(mpq(2), Jet1.constant(1, (order + 1) // 2)).map_jet(order)
    lin_half = centralizer_solve(linear, mpq(1, 2))
    expected = {"x": {(1, 0): mpq(1, 2)}, "y": {(0, 1): mpq(1)}}
    w = lin_half.witness
    if (
        not lin_half.feasible
        or w is None
        or dict(w.x.coeffs) != expected["x"]
        or dict(w.y.coeffs) != expected["y"]
    ):
        failures.append({"case": "linear det 1/2", "got": repr(lin_half)})
    return _report(
        9,
        "centralizer determinant obstruction",
        "exact",
        failures,
        {"order": order, "obstruction_degree": half.obstruction_degree},
    )


def check_base_roof_rigidity(trials: int = 50, order: int = 8, seed: int = 110) -> dict:
    """Roof + period + Lyapunov datum pin the contact jet; changing either datum changes it."""
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        c = rj.contact(r, order)
        inv = contact_invariants(c)
        rebuilt = base_roof_reconstruct(inv.roof, inv.period, inv.lyapunov[0])
        same = rebuilt.theta == c.theta
        other_lyap = base_roof_reconstruct(inv.roof, inv.period, inv.lyapunov[0] + 1)
        bumped = Jet1(
            [
                v + (1 if i == 2 else 0)
                for i, v in enumerate(inv.roof.coeffs)
            ],
            inv.roof.order,
        )
        other_roof = base_roof_reconstruct(bumped, inv.period, inv.lyapunov[0])
        distinct = other_lyap.theta != c.theta and other_roof.theta != c.theta
        if not (same and distinct):
            failures.append({"trial": k, "theta": repr(c.theta)})
    return _report(
        10,
        "base-roof rigidity",
        "exact",
        failures,
        {"trials": trials, "order": order},
    )


def check_linearizability_agreement(trials: int = 50, order: int = 8, seed: int = 111) -> dict:
    """Three linearity criteria — jet, roof, section cofactor — agree."""
    r = rj.rng(seed)
    failures = []
    for k in range(trials):
        c = rj.contact(r, order, linear=(k % 3 == 0), flat2=(k % 3 == 1))
        by_jet = linearizability_decide(c).linearizable
        roof = contact_invariants(c).roof
        by_roof = all(v == 0 for v in roof.coeffs[1:])
        omega = section_map(reeb_field(c)).omega
        by_section = omega == Jet1.constant(1, omega.order)
        if not (by_jet == by_roof == by_section):
            failures.append(
                {
                    "trial": k,
                    "theta": repr(c.theta),
                    "verdicts": [by_jet, by_roof, by_section],
                }
            )
    return _report(
        11,
        "linearizability criteria agreement",
        "exact",
        failures,
        {"trials": trials, "order": order},
    )


def check_tangency_obstruction(trials: int = 50, order: int = 8, seed: int = 112) -> dict:
    """Fourth-order tangency is achievable exactly when the Anosov class vanishes."""
    r = rj.rng(seed)
    failures = []
    f = ResMap(mpq(2), Jet1.constant(1, (order + 1) // 2))
    for k in range(trials):
        c = rj.contact(r, order, flat2=(k % 2 == 0))
        inv = contact_invariants(c)
        best = best_achievable_tangency(substitute_xy(inv.roof), f)
        achieves_four = best is None or best >= 4
        if achieves_four != (inv.anosov_class == 0):
            failures.append(
                {
                    "trial": k,
                    "theta": repr(c.theta),
                    "best": best,
                    "anosov_class": str(inv.anosov_class),
                }
            )
    return _report(
        12,
        "tangency obstruction matches the second roof derivative",
        "exact",
        failures,
        {"trials": trials, "order": order},
    )


CHECKS = (
    ("cocycle-solver", check_cocycle_solver, "exact"),
    ("diagonal-invariance", check_diagonal_invariance, "exact"),
    ("birkhoff-roundtrip", check_birkhoff_roundtrip, "exact"),
    ("reeb-identities", check_reeb_identities, "mixed"),
    ("roof-eta-roundtrip", check_roof_eta_roundtrip, "exact"),
    ("flow-oracle", check_flow_oracle, "numeric"),
    ("sl2-example", check_sl2_example, "numeric"),
    ("moser-normalization", check_moser, "exact"),
    ("centralizer-obstruction", check_centralizer, "exact"),
    ("base-roof-rigidity", check_base_roof_rigidity, "exact"),
    ("linearizability-agreement", check_linearizability_agreement, "exact"),
    ("tangency-obstruction", check_tangency_obstruction, "exact"),
)


def run_checks(names=None, mode: str = "both", seed: int | None = None) -> dict:
    """Run the verification suite and aggregate the per-check reports.

    ``mode`` filters by kind: "exact" skips the numeric checks and the
    finite-difference half of the mixed one; "numeric" runs only the
    oracle-backed checks.  ``seed`` offsets every check's default seed so
    independent runs can draw fresh randomness while staying reproducible.
    """
    if mode not in ("exact", "numeric", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    selected = []
    for index, (name, fn, kind) in enumerate(CHECKS):
        if names is not None and name not in names:
            continue
        if mode == "exact" and kind == "numeric":
            continue
        if mode == "numeric" and kind == "exact":
            continue
        selected.append((index, name, fn, kind))
    if names is not None:
        known = {name for name, _, _ in CHECKS}
        unknown = [n for n in names if n not in known]
        if unknown:
            raise ValueError(f"unknown check names: {unknown}")
    reports = []
    for index, name, fn, kind in selected:
        kwargs = {}
        if seed is not None and "seed" in fn.__code__.co_varnames[: fn.__code__.co_argcount]:
            kwargs["seed"] = 101 + index + seed
        if kind == "mixed" and mode == "exact":
            kwargs["numeric"] = False
        report = fn(**kwargs)
        report["check"] = name
        reports.append(report)
    return {"ok": all(r["ok"] for r in reports), "mode": mode, "checks": reports}
