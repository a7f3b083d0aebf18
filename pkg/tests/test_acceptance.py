"""Acceptance gate: the twelve headline properties at full workload.

Each test runs one registered verification check with its documented
default trial counts, seeds and tolerances — the same code path as
``resjet verify`` — and prints a single PASS/FAIL line.  Run with
``pytest -v tests/test_acceptance.py`` (add ``-s`` to see the lines even
on success).
"""

from resjet.verify import CHECKS

_BY_NAME = {name: fn for name, fn, _ in CHECKS}


def _run(check_name: str) -> None:
    report = _BY_NAME[check_name]()
    status = "PASS" if report["ok"] else "FAIL"
    print(f"{status} criterion {report['criterion']:2d}: {report['name']} — {report['detail']}")
    assert report["ok"], report


def test_criterion_01_cocycle_split_is_exact():
    """100 random order-8 jets split into diagonal part plus coboundary, residual zero."""
    _run("cocycle-solver")


def test_criterion_02_diagonal_is_invariant_under_resonance_maps():
    """100 random jets: the diagonal of u(F) - u vanishes for every resonance map."""
    _run("diagonal-invariance")


def test_criterion_03_normalization_recovers_invariants():
    """50 conjugated maps: normalization recovers every invariant coefficient exactly."""
    _run("birkhoff-roundtrip")


def test_criterion_04_reeb_and_volume_identities():
    """20 random contact jets: exact Reeb/volume identities plus fd residual < 1e-6."""
    _run("reeb-identities")


def test_criterion_05_roof_eta_roundtrip():
    """20 random angular-speed jets: roof transform round-trips exactly, slope zero."""
    _run("roof-eta-roundtrip")


def test_criterion_06_rk4_matches_closed_form_flow():
    """50 starts x 10 fields: RK4 at step 1e-3 within 1e-8 of the closed-form flow."""
    _run("flow-oracle")


def test_criterion_07_sl2_example():
    """Matrix identity at T = ln 3 within 1e-12 at 100 points; constant roof."""
    _run("sl2-example")


def test_criterion_08_moser_normalization():
    """20 invariant densities: commuting normalizer flattens them exactly."""
    _run("moser-normalization")


def test_criterion_09_centralizer_obstruction():
    """Determinant 1/2 infeasible at degree 3 for the nonlinear map; det 1 feasible."""
    _run("centralizer-obstruction")


def test_criterion_10_base_roof_rigidity():
    """50 contact jets: (roof, period, exponent) rebuild theta; perturbed data do not."""
    _run("base-roof-rigidity")


def test_criterion_11_linearizability_criteria_agree():
    """50 contact jets: theta-coefficient, constant-roof and cofactor tests agree."""
    _run("linearizability-agreement")


def test_criterion_12_tangency_obstruction():
    """50 roof jets: unbounded tangency over retimings iff the first invariant vanishes."""
    _run("tangency-obstruction")
