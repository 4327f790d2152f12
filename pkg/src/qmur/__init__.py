"""Numerics toolkit for uncertainty relations in the presence of quantum
memory: states, measurements, one-shot entropies, and executable
certificates for the underlying inequalities."""

from .distances import (
    BallSpec,
    fidelity,
    gen_fidelity,
    in_ball,
    purified_distance,
    trace_distance,
)
from .entropies import (
    h_max_uncond,
    h_measured_cond,
    h_min_cond,
    h_min_cond_bloch_oracle,
    h_min_cond_fixed,
    h_min_uncond,
    h_neg_inf,
    h_vn,
    h_vn_cond,
    smooth_budget_operator_hmax,
    smooth_budget_operator_hneginf,
    smooth_hmax_oracle,
    smooth_hmin_operator,
)
from .errors import QmurError
from .game import GameReport, GameScenario, iid_trend, qkd_bound, run_game, werner_sweep
from .measurements import (
    MeasurementBasis,
    MeasurementChannel,
    computational_basis,
    fourier_basis,
    load_basis,
    overlap_c,
    random_basis,
    save_basis,
)
from .relations import (
    RelationCertificate,
    build_omega,
    check_br_corollary,
    check_chain_rules,
    check_maassen_uffink,
    check_main_theorem,
    check_nonsmooth_theorem,
    check_omega_identities,
    check_renyi_endpoint,
    check_robertson,
    check_smooth_proof_trace,
    check_subadditivity,
)
from .states import (
    DensityOperator,
    load_state,
    max_entangled,
    purify,
    random_state,
    save_state,
    validate,
    werner,
)
from .suites import SuiteConfig, SuiteResult, run_suites

__all__ = [
    "BallSpec",
    "DensityOperator",
    "GameReport",
    "GameScenario",
    "MeasurementBasis",
    "MeasurementChannel",
    "QmurError",
    "RelationCertificate",
    "SuiteConfig",
    "SuiteResult",
    "build_omega",
    "check_br_corollary",
    "check_chain_rules",
    "check_maassen_uffink",
    "check_main_theorem",
    "check_nonsmooth_theorem",
    "check_omega_identities",
    "check_renyi_endpoint",
    "check_robertson",
    "check_smooth_proof_trace",
    "check_subadditivity",
    "computational_basis",
    "fidelity",
    "fourier_basis",
    "gen_fidelity",
    "h_max_uncond",
    "h_measured_cond",
    "h_min_cond",
    "h_min_cond_bloch_oracle",
    "h_min_cond_fixed",
    "h_min_uncond",
    "h_neg_inf",
    "h_vn",
    "h_vn_cond",
    "iid_trend",
    "in_ball",
    "load_basis",
    "load_state",
    "max_entangled",
    "overlap_c",
    "purified_distance",
    "purify",
    "qkd_bound",
    "random_basis",
    "random_state",
    "run_game",
    "run_suites",
    "save_basis",
    "save_state",
    "smooth_budget_operator_hmax",
    "smooth_budget_operator_hneginf",
    "smooth_hmax_oracle",
    "smooth_hmin_operator",
    "trace_distance",
    "validate",
    "werner",
    "werner_sweep",
]

__version__ = "0.1.0"
