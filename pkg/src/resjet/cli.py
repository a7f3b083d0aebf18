"""Command-line front door: JSON jets in, JSON reports out.

Every verb reads exact-rational JSON documents (see ``jsonio``), runs the
corresponding library routine, and prints a single JSON report to standard
output.  Exit codes are a contract: 0 on success/pass, 1 on a verification
failure or infeasibility, 2 on malformed input (reported with a JSON
pointer when the offending node is known).

``RESJET_ORDER`` sets the default truncation order; ``--order``,
``--seed``, ``--tolerance`` and ``--mode exact|numeric|both`` tune the
individual runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

from gmpy2 import mpq

from . import jsonio
from .birkhoff import birkhoff_normalize, centralizer_solve, diagonalize_linear
from .cocycle import best_achievable_tangency, normalize_cocycle, retime_roof, tangency_order
from .contactnf import (
    base_roof_reconstruct,
    contact_invariants,
    linearizability_decide,
    reeb_field,
    section_map,
    vf_invariants,
)
from .forms import (
    FormJet,
    MoserObstructionError,
    canonical_retime,
    d,
    moser_normalize,
    reeb_check,
    volume_identity,
)
from .jetalg import Jet1, Jet2, compose, compose_map, diag_part, invert_map, substitute_xy
from .oracle import fd_reeb_check, sample_points, sl2_check
from .verify import CHECKS, run_checks

__all__ = ["RunConfig", "main"]

ORDER_ENV_VAR = "RESJET_ORDER"


@dataclass(frozen=True)
class RunConfig:
    """Shared knobs for a single command invocation."""

    order: int = 8
    tolerance: float = 1e-9
    mode: str = "both"

    def __post_init__(self):
        if self.order < 2:
            raise ValueError(f"order must be at least 2, got {self.order}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")
        if self.mode not in ("exact", "numeric", "both"):
            raise ValueError(f"mode must be exact, numeric or both, got {self.mode!r}")


def _default_order() -> int:
    raw = os.environ.get(ORDER_ENV_VAR)
    if raw is None:
        return 8
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{ORDER_ENV_VAR} must be an integer, got {raw!r}") from None


def _load(path: str):
    if path == "-":
        return json.load(sys.stdin)
    with open(path) as fh:
        return json.load(fh)


def _bound(value, order: int):
    return value if value is not None else f">={order}"


# ---------------------------------------------------------------------------
# verb handlers: each returns (exit_code, report)


def cmd_normalize_map(args, cfg: RunConfig):
    m = jsonio.map_from_json(_load(args.map))
    (a, b), (c, dd) = m.linear_part()
    if b or c or not (a > 1):
        lin, _ = diagonalize_linear(m)
        work = compose_map(compose_map(lin, m), invert_map(lin))
        diagonalized = True
    else:
        lin = None
        work = m
        diagonalized = False
    result = birkhoff_normalize(work)
    conj = result.conjugacy if lin is None else compose_map(result.conjugacy, lin)
    conj_inv = (
        result.conjugacy_inverse
        if lin is None
        else compose_map(invert_map(lin), result.conjugacy_inverse)
    )
    res_map = result.res_form.map_jet(m.order)
    residual_x = compose(res_map.x, conj) - compose(conj.x, m)
    residual_y = compose(res_map.y, conj) - compose(conj.y, m)
    residual_zero = residual_x.is_zero() and residual_y.is_zero()
    report = {
        "lambda": str(result.res_form.multiplier),
        "birkhoff_coefficients": jsonio.jet1_to_json(result.birkhoff_coefficients),
        "anosov_class": str(-result.birkhoff_coefficients.coeff(1)),
        "diagonalized": diagonalized,
        "conjugacy": jsonio.map_to_json(conj),
        "conjugacy_inverse": jsonio.map_to_json(conj_inv),
        "residual_zero": residual_zero,
    }
    if not residual_zero:
        report["residual"] = {
            "x": jsonio.jet2_to_json(residual_x),
            "y": jsonio.jet2_to_json(residual_y),
        }
    return (0 if residual_zero else 1), report


def cmd_solve_cocycle(args, cfg: RunConfig):
    phi = jsonio.jet2_from_json(_load(args.phi))
    f = jsonio.resmap_from_json(_load(args.map))
    split = normalize_cocycle(phi, f)
    fmap = f.map_jet(phi.order)
    residual = (
        substitute_xy(split.resonance_part, phi.order)
        + (compose(split.transfer, fmap) - split.transfer)
        - phi
    )
    report = {
        "resonance_part": jsonio.jet1_to_json(split.resonance_part),
        "transfer": jsonio.jet2_to_json(split.transfer),
        "coboundary_part": jsonio.jet2_to_json(split.coboundary_part),
        "residual_zero": residual.is_zero(),
    }
    if not residual.is_zero():
        report["residual"] = jsonio.jet2_to_json(residual)
    return (0 if residual.is_zero() else 1), report


def cmd_retime(args, cfg: RunConfig):
    roof = jsonio.jet2_from_json(_load(args.roof))
    f = jsonio.resmap_from_json(_load(args.map))
    if args.transfer is not None:
        transfer = jsonio.jet2_from_json(_load(args.transfer))
    else:
        transfer = normalize_cocycle(roof, f).transfer
    retimed = retime_roof(roof, transfer, f)
    return 0, {
        "transfer": jsonio.jet2_to_json(transfer),
        "retimed": jsonio.jet2_to_json(retimed),
        "retimed_diagonal": jsonio.jet1_to_json(diag_part(retimed)),
    }


def cmd_retime_canonical(args, cfg: RunConfig):
    pullback = jsonio.formjet_from_json(_load(args.form))
    tau = canonical_retime(pullback)
    n = pullback.order
    half = mpq(1, 2)
    rotational = FormJet(
        1,
        (
            Jet2.zero(n),
            Jet2.monomial(-half, 0, 1, n),
            Jet2.monomial(half, 1, 0, n),
        ),
    )
    achieved = pullback + d(FormJet(0, (tau,))).truncated(n)
    ok = achieved == rotational
    return (0 if ok else 1), {
        "tau": jsonio.jet2_to_json(tau),
        "postcondition_ok": ok,
    }


def cmd_tangency(args, cfg: RunConfig):
    phi = jsonio.jet2_from_json(_load(args.phi))
    report = {
        "order": phi.order,
        "tangency_order": _bound(tangency_order(phi), phi.order),
    }
    if args.map is not None:
        f = jsonio.resmap_from_json(_load(args.map))
        report["best_achievable_tangency"] = _bound(
            best_achievable_tangency(phi, f), phi.order
        )
    return 0, report


def cmd_invariants(args, cfg: RunConfig):
    if args.contact is not None:
        inv = contact_invariants(jsonio.contact_from_json(_load(args.contact)))
        source = "contact"
    else:
        inv = vf_invariants(jsonio.resvf_from_json(_load(args.vf)))
        source = "vf"
    return 0, {
        "source": source,
        "period": str(inv.period),
        "lyapunov": [str(inv.lyapunov[0]), str(inv.lyapunov[1])],
        "roof": jsonio.jet1_to_json(inv.roof),
        "anosov_class": str(inv.anosov_class),
        "fh_class": str(inv.fh_class),
    }


def cmd_reeb(args, cfg: RunConfig):
    c = jsonio.contact_from_json(_load(args.contact))
    field = reeb_field(c)
    ok = True
    report = {"reeb_field": jsonio.resvf_to_json(field)}
    if cfg.mode in ("exact", "both"):
        rr = reeb_check(c, field)
        vr = volume_identity(c)
        report["pairing_residual_zero"] = rr.ok and rr.pairing_residual.is_zero()
        report["contraction_residual_zero"] = rr.contraction_residual.is_zero()
        report["volume_identity_ok"] = vr.ok
        if not rr.ok:
            report["pairing_residual"] = jsonio.jet2_to_json(rr.pairing_residual)
        if not vr.ok:
            report["volume_residual"] = jsonio.jet2_to_json(vr.residual)
        ok = ok and rr.ok and vr.ok
    if cfg.mode in ("numeric", "both"):
        # central differences at h = 1e-5 are honest to ~1e-6, not to the
        # generic exact-vs-numeric default
        fd_tolerance = args.tolerance if args.tolerance is not None else 1e-6
        fd = fd_reeb_check(c, sample_points(args.points, args.seed, 0.4))
        report["fd_max_residual"] = fd.max_residual
        report["fd_tail_bound"] = fd.tail_bound
        report["fd_points"] = fd.samples
        report["tolerance"] = fd_tolerance
        ok = ok and fd.max_residual < fd_tolerance
    return (0 if ok else 1), report


def cmd_linearizable(args, cfg: RunConfig):
    c = jsonio.contact_from_json(_load(args.contact))
    verdict = linearizability_decide(c)
    roof = contact_invariants(c).roof
    roof_constant = all(v == 0 for v in roof.coeffs[1:])
    omega = section_map(reeb_field(c)).omega
    cofactor_unit = omega == Jet1.constant(1, omega.order)
    return (0 if verdict.linearizable else 1), {
        "linearizable": verdict.linearizable,
        "offending": [[k, str(v)] for k, v in verdict.offending],
        "roof_constant": roof_constant,
        "section_cofactor_unit": cofactor_unit,
        "criteria_agree": verdict.linearizable == roof_constant == cofactor_unit,
    }


def cmd_base_roof_compare(args, cfg: RunConfig):
    roof = jsonio.jet1_from_json(_load(args.roof))
    period = jsonio.rational_from_json(args.period, "/period")
    lyap = jsonio.rational_from_json(args.lyapunov, "/lyapunov")
    first = base_roof_reconstruct(roof, period, lyap)
    report = {"theta": jsonio.jet1_to_json(first.theta)}
    has_second = any(v is not None for v in (args.roof2, args.period2, args.lyapunov2))
    if not has_second:
        return 0, report
    roof2 = jsonio.jet1_from_json(_load(args.roof2)) if args.roof2 else roof
    period2 = (
        jsonio.rational_from_json(args.period2, "/period2") if args.period2 else period
    )
    lyap2 = (
        jsonio.rational_from_json(args.lyapunov2, "/lyapunov2") if args.lyapunov2 else lyap
    )
    second = base_roof_reconstruct(roof2, period2, lyap2)
    equal = first.theta == second.theta
    report["theta2"] = jsonio.jet1_to_json(second.theta)
    report["equal"] = equal
    return (0 if equal else 1), report


def cmd_moser(args, cfg: RunConfig):
    density = jsonio.jet2_from_json(_load(args.density))
    f = jsonio.resmap_from_json(_load(args.map))
    try:
        h = moser_normalize(density, f)
    except MoserObstructionError as exc:
        return 1, {"feasible": False, "error": str(exc)}
    return 0, {
        "feasible": True,
        "normalizer": jsonio.map_to_json(h),
        "commutes": True,
        "pullback_unit": True,
        "pullback_order": density.order - 1,
    }


def cmd_centralizer(args, cfg: RunConfig):
    doc = _load(args.map)
    if isinstance(doc, dict) and "lambda" in doc:
        fmap = jsonio.resmap_from_json(doc).map_jet(cfg.order)
    else:
        fmap = jsonio.map_from_json(doc)
    det = jsonio.rational_from_json(args.det, "/det")
    result = centralizer_solve(fmap, det)
    report = {
        "feasible": result.feasible,
        "det_target": str(det),
        "order": fmap.order,
        "obstruction_degree": result.obstruction_degree,
        "detail": result.detail,
        "witness": jsonio.map_to_json(result.witness) if result.witness else None,
    }
    return (0 if result.feasible else 1), report


def cmd_verify(args, cfg: RunConfig):
    if args.list:
        return 0, {"checks": [name for name, _, _ in CHECKS]}
    names = args.checks.split(",") if args.checks else None
    out = run_checks(names=names, mode=cfg.mode, seed=args.seed if args.seed else None)
    return (0 if out["ok"] else 1), out


def cmd_demo(args, cfg: RunConfig):
    if args.example != "sl2":
        raise ValueError(f"unknown demo {args.example!r}; available: sl2")
    raw = args.T
    t_value = math.log(3.0) if raw in (None, "ln3") else float(raw)
    tolerance = cfg.tolerance if args.tolerance is not None else 1e-12
    report = sl2_check(t_value, sample_points(args.samples, args.seed, 0.9))
    ok = report.max_error < tolerance and report.linearizable and report.roof_is_constant
    return (0 if ok else 1), {
        "example": "sl2",
        "t_value": report.t_value,
        "samples": report.samples,
        "max_error": report.max_error,
        "tolerance": tolerance,
        "theta_shape": jsonio.jet1_to_json(report.theta_shape),
        "period_value": report.t_value,
        "linearizable": report.linearizable,
        "roof_is_constant": report.roof_is_constant,
        "ok": ok,
    }


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=None, help="truncation order (default 8 or $RESJET_ORDER)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized suites and sample batches")
    common.add_argument("--tolerance", type=float, default=None, help="numeric tolerance (default 1e-9)")
    common.add_argument("--mode", choices=["exact", "numeric", "both"], default="both", help="which identity layers to run")

    p = argparse.ArgumentParser(prog="resjet", description=__doc__.split("\n\n")[0])
    sub = p.add_subparsers(dest="verb", required=True)

    sp = sub.add_parser("normalize-map", parents=[common], help="Birkhoff-normalize an area-preserving map jet")
    sp.add_argument("--map", required=True, help="map jet JSON file ('-' for stdin)")
    sp.set_defaults(handler=cmd_normalize_map)

    sp = sub.add_parser("solve-cocycle", parents=[common], help="split a jet into resonance part plus coboundary")
    sp.add_argument("--phi", required=True, help="bivariate jet JSON file")
    sp.add_argument("--map", required=True, help="resonance map JSON file")
    sp.set_defaults(handler=cmd_solve_cocycle)

    sp = sub.add_parser("retime", parents=[common], help="subtract a coboundary from a return-time jet")
    sp.add_argument("--roof", required=True, help="return-time jet JSON file")
    sp.add_argument("--map", required=True, help="resonance map JSON file")
    sp.add_argument("--transfer", default=None, help="transfer jet JSON file (default: solve for it)")
    sp.set_defaults(handler=cmd_retime)

    sp = sub.add_parser("retime-canonical", parents=[common], help="flatten a section pullback to the rotational form")
    sp.add_argument("--form", required=True, help="degree-1 form jet JSON file")
    sp.set_defaults(handler=cmd_retime_canonical)

    sp = sub.add_parser("tangency", parents=[common], help="tangency order of a jet, and the best over retimings")
    sp.add_argument("--phi", required=True, help="bivariate jet JSON file")
    sp.add_argument("--map", default=None, help="resonance map JSON file (enables best-achievable)")
    sp.set_defaults(handler=cmd_tangency)

    sp = sub.add_parser("invariants", parents=[common], help="period, Lyapunov, roof and obstruction classes")
    group = sp.add_mutually_exclusive_group(required=True)
    group.add_argument("--contact", help="contact normal form JSON file")
    group.add_argument("--vf", help="resonance vector field JSON file")
    sp.set_defaults(handler=cmd_invariants)

    sp = sub.add_parser("reeb", parents=[common], help="Reeb field of a contact form plus identity checks")
    sp.add_argument("--contact", required=True, help="contact normal form JSON file")
    sp.add_argument("--points", type=int, default=10, help="finite-difference sample count")
    sp.set_defaults(handler=cmd_reeb)

    sp = sub.add_parser("linearizable", parents=[common], help="jet-level linearizability verdict")
    sp.add_argument("--contact", required=True, help="contact normal form JSON file")
    sp.set_defaults(handler=cmd_linearizable)

    sp = sub.add_parser("base-roof-compare", parents=[common], help="rebuild contact jets from roof data and compare")
    sp.add_argument("--roof", required=True, help="roof jet JSON file (univariate)")
    sp.add_argument("--period", required=True, help="period as a rational string")
    sp.add_argument("--lyapunov", required=True, help="positive Lyapunov exponent as a rational string")
    sp.add_argument("--roof2", default=None, help="second roof jet JSON file (defaults to the first)")
    sp.add_argument("--period2", default=None, help="second period (defaults to the first)")
    sp.add_argument("--lyapunov2", default=None, help="second exponent (defaults to the first)")
    sp.set_defaults(handler=cmd_base_roof_compare)

    sp = sub.add_parser("moser", parents=[common], help="flatten an invariant area density by a commuting map")
    sp.add_argument("--density", required=True, help="positive invariant density JSON file (bivariate jet)")
    sp.add_argument("--map", required=True, help="resonance map JSON file")
    sp.set_defaults(handler=cmd_moser)

    sp = sub.add_parser("centralizer", parents=[common], help="solve for a commuting jet with prescribed determinant")
    sp.add_argument("--map", required=True, help="map jet or resonance map JSON file")
    sp.add_argument("--det", required=True, help="determinant target as a rational string")
    sp.set_defaults(handler=cmd_centralizer)

    sp = sub.add_parser("verify", parents=[common], help="run the verification suite")
    sp.add_argument("--all", action="store_true", help="run every check (the default)")
    sp.add_argument("--checks", default=None, help="comma-separated check names (see --list)")
    sp.add_argument("--list", action="store_true", help="list check names and exit")
    sp.set_defaults(handler=cmd_verify)

    sp = sub.add_parser("demo", parents=[common], help="worked examples")
    sp.add_argument("example", choices=["sl2"], help="which demo to run")
    sp.add_argument("--T", default=None, help="flow time (float, or 'ln3' for the default)")
    sp.add_argument("--samples", type=int, default=100, help="sample point count")
    sp.set_defaults(handler=cmd_demo)

    return p


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = RunConfig(
            order=args.order if args.order is not None else _default_order(),
            tolerance=args.tolerance if args.tolerance is not None else 1e-9,
            mode=args.mode,
        )
        code, report = args.handler(args, cfg)
    except jsonio.InputFormatError as exc:
        code, report = 2, {"error": str(exc), "pointer": exc.path}
    except (ValueError, ArithmeticError, OSError) as exc:
        code, report = 2, {"error": str(exc)}
    print(json.dumps(report, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
