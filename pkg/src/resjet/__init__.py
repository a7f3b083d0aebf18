"""Exact jet calculus for resonance dynamics near a hyperbolic orbit.

The package computes with truncated Taylor expansions over exact rationals:
planar map and cocycle normal forms around a hyperbolic fixed point
(``jetalg``, ``cocycle``, ``birkhoff``), contact normal forms and their Reeb
flows on a solid torus (``contactnf``, ``forms``), floating-point
cross-checks of the exact identities (``oracle``), a strict JSON wire format
(``jsonio``), and a verification suite plus command line driver (``verify``,
``cli``).
"""

from .jetalg import (
    DEFAULT_ORDER,
    Jet1,
    Jet2,
    MapJet2,
    NotInvertibleError,
    OrderMismatchError,
    compose,
    compose_map,
    det_jacobian,
    diag_part,
    invert_map,
    rat,
    substitute_xy,
)
from .cocycle import (
    CocycleSplit,
    ResMap,
    best_achievable_tangency,
    is_cohomologous,
    normalize_cocycle,
    resonance_split,
    retime_roof,
    solve_coboundary,
    tangency_order,
)
from .birkhoff import (
    CentralizerResult,
    NormalizationResult,
    anosov_class,
    birkhoff_normalize,
    centralizer_solve,
    diagonalize_linear,
    hamiltonian_time_one,
)
from .contactnf import (
    ContactNF,
    InvariantReport,
    LinearizabilityReport,
    ResVF,
    SectionMap,
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
from .forms import (
    FormJet,
    MoserObstructionError,
    ReebReport,
    TransferResult,
    VF3Jet,
    VolumeReport,
    canonical_retime,
    contact_form_jet,
    contact_transfer,
    d,
    interior,
    moser_normalize,
    poincare_primitive,
    reeb_check,
    reeb_vf_jet,
    volume_identity,
    wedge,
)
from .oracle import (
    DEFAULT_RADIUS,
    FDReebReport,
    Sl2Report,
    fd_reeb_check,
    flow_discrepancy,
    jet1_eval,
    jet1_tail_bound,
    jet2_eval,
    resmap_eval,
    rk4_flow,
    sample_points,
    section_map_apply,
    sl2_check,
)
from .jsonio import InputFormatError
from .verify import run_checks

__version__ = "1.0.0"

__all__ = [
    "DEFAULT_ORDER",
    "DEFAULT_RADIUS",
    "CentralizerResult",
    "CocycleSplit",
    "ContactNF",
    "FDReebReport",
    "FormJet",
    "InputFormatError",
    "InvariantReport",
    "Jet1",
    "Jet2",
    "LinearizabilityReport",
    "MapJet2",
    "MoserObstructionError",
    "NormalizationResult",
    "NotInvertibleError",
    "OrderMismatchError",
    "ReebReport",
    "ResMap",
    "ResVF",
    "SectionMap",
    "Sl2Report",
    "TransferResult",
    "VF3Jet",
    "VolumeReport",
    "anosov_class",
    "base_roof_reconstruct",
    "best_achievable_tangency",
    "birkhoff_normalize",
    "canonical_retime",
    "centralizer_solve",
    "compose",
    "compose_map",
    "contact_form_jet",
    "contact_invariants",
    "contact_transfer",
    "d",
    "det_jacobian",
    "diag_part",
    "diagonalize_linear",
    "eta_from_roof",
    "fd_reeb_check",
    "flow_discrepancy",
    "flow_eval",
    "hamiltonian_time_one",
    "interior",
    "invert_map",
    "is_cohomologous",
    "jet1_eval",
    "jet1_tail_bound",
    "jet2_eval",
    "linearizability_decide",
    "moser_normalize",
    "normalize_cocycle",
    "poincare_primitive",
    "rat",
    "reeb_check",
    "reeb_field",
    "reeb_vf_jet",
    "resmap_eval",
    "resonance_split",
    "retime_roof",
    "rk4_flow",
    "roof_from_eta",
    "roof_jet",
    "run_checks",
    "sample_points",
    "section_flow_eval",
    "section_map",
    "section_map_apply",
    "sl2_check",
    "solve_coboundary",
    "substitute_xy",
    "tangency_order",
    "vf_invariants",
    "volume_identity",
    "wedge",
]
