"""Truncated Fock-space states, ladder operators, deformed-oscillator
generators, and a verification harness for their algebraic identities."""

from .core import (
    DimensionMismatchError,
    FockState,
    OperatorExpr,
    OperatorEvaluationError,
    add,
    adjoint,
    annihilation,
    apply,
    basis_state,
    commutator,
    compose,
    creation,
    diag_op,
    fidelity,
    identity_op,
    ladder_factor,
    make_state,
    number_op,
    operator,
    overlap,
    scale,
    sub,
    to_matrix,
)
from .ladder import (
    GdoTriple,
    ZeroCoefficientError,
    added_coherent_lowering,
    added_coherent_pair,
    added_lowered_pair,
    added_raising_ladder,
    bs_ladder,
    finite_gdo,
    general_gdo,
    ggs_ladder,
    gs_lowering,
    gs_pair,
    harmonic_gdo,
    hgs_ladder,
    kerr_lowering,
    ladder_general,
    ladder_lowering_finite,
    ladder_raising_shifted,
    nbs_lowering,
    nnbs_lowering,
    pbps_ladder,
    ps_ladder,
    rbs_ladder,
    shifted_gdo,
    shifted_lowered_pair,
    step_down_f,
    step_down_g,
    step_up_f,
    step_up_g,
    structure_function,
    verify_eigen_relation,
    verify_gdo_axioms,
    verify_relation,
)
from .reporting import CheckResult, Tolerances, VerificationReport, report_from_json
from .twophoton import (
    Su11Rep,
    ecs_sector_coeffs,
    even_odd_coherent,
    ocs_sector_coeffs,
    pair_lowering,
    sector_dim,
    sector_embed,
    sector_unembed,
    sfes_lowering,
    sfes_sector_coeffs,
    squeezed_first_excited,
    squeezed_vacuum,
    su11,
    svs_lowering,
    svs_sector_coeffs,
    two_photon_gdo,
    two_photon_ladder,
    verify_disentangling,
    verify_su11,
)
from .states import (
    IntermediateParams,
    ParameterError,
    PhaseGrid,
    StateParams,
    TailMassError,
    binomial,
    coherent,
    coherent_coeffs,
    format_complex,
    generalized_binomial,
    generalized_geometric,
    geometric,
    geometric_coeffs,
    hypergeometric,
    intermediate_nlcs,
    kerr,
    kerr_coeffs,
    negative_binomial,
    negative_binomial_coeffs,
    new_negative_binomial,
    new_negative_binomial_coeffs,
    pegg_barnett_phase,
    photon_add,
    polya,
    reciprocal_binomial,
)
from .verify import (
    ACCEPTANCE_GRID,
    CORE_FAMILIES,
    EQUATION_CATALOG,
    EXTENDED_GRID,
    FAMILIES,
    build_gdo,
    build_state,
    closed_form_coeffs,
    derived_vs_printed_rows,
    errata_table,
    grid_manifest,
    run_family_suite,
    run_grid,
)

__all__ = [
    "DimensionMismatchError",
    "FockState",
    "OperatorExpr",
    "OperatorEvaluationError",
    "add",
    "adjoint",
    "annihilation",
    "apply",
    "basis_state",
    "commutator",
    "compose",
    "creation",
    "diag_op",
    "fidelity",
    "identity_op",
    "ladder_factor",
    "make_state",
    "number_op",
    "operator",
    "overlap",
    "scale",
    "sub",
    "to_matrix",
    "GdoTriple",
    "ZeroCoefficientError",
    "added_coherent_lowering",
    "added_coherent_pair",
    "added_lowered_pair",
    "added_raising_ladder",
    "bs_ladder",
    "finite_gdo",
    "general_gdo",
    "ggs_ladder",
    "gs_lowering",
    "gs_pair",
    "harmonic_gdo",
    "hgs_ladder",
    "kerr_lowering",
    "ladder_general",
    "ladder_lowering_finite",
    "ladder_raising_shifted",
    "nbs_lowering",
    "nnbs_lowering",
    "pbps_ladder",
    "ps_ladder",
    "rbs_ladder",
    "shifted_gdo",
    "shifted_lowered_pair",
    "step_down_f",
    "step_down_g",
    "step_up_f",
    "step_up_g",
    "structure_function",
    "verify_eigen_relation",
    "verify_gdo_axioms",
    "verify_relation",
    "CheckResult",
    "Tolerances",
    "VerificationReport",
    "report_from_json",
    "IntermediateParams",
    "ParameterError",
    "PhaseGrid",
    "StateParams",
    "TailMassError",
    "binomial",
    "coherent",
    "coherent_coeffs",
    "format_complex",
    "generalized_binomial",
    "generalized_geometric",
    "geometric",
    "geometric_coeffs",
    "hypergeometric",
    "intermediate_nlcs",
    "kerr",
    "kerr_coeffs",
    "negative_binomial",
    "negative_binomial_coeffs",
    "new_negative_binomial",
    "new_negative_binomial_coeffs",
    "pegg_barnett_phase",
    "photon_add",
    "polya",
    "reciprocal_binomial",
    "Su11Rep",
    "ecs_sector_coeffs",
    "even_odd_coherent",
    "ocs_sector_coeffs",
    "pair_lowering",
    "sector_dim",
    "sector_embed",
    "sector_unembed",
    "sfes_lowering",
    "sfes_sector_coeffs",
    "squeezed_first_excited",
    "squeezed_vacuum",
    "su11",
    "svs_lowering",
    "svs_sector_coeffs",
    "two_photon_gdo",
    "two_photon_ladder",
    "verify_disentangling",
    "verify_su11",
    "ACCEPTANCE_GRID",
    "CORE_FAMILIES",
    "EQUATION_CATALOG",
    "EXTENDED_GRID",
    "FAMILIES",
    "build_gdo",
    "build_state",
    "closed_form_coeffs",
    "derived_vs_printed_rows",
    "errata_table",
    "grid_manifest",
    "run_family_suite",
    "run_grid",
]

__version__ = "0.1.0"
