"""Entropic uncertainty bounds for binary observables from anti-commutators.

The package takes a set of +/-1-valued quantum observables, summarises how
far they are from pairwise anti-commuting, and turns that single matrix of
overlaps into certified lower bounds on the conditional Renyi entropy of a
measurement of a state picked uniformly among them.  It also contains the
converse direction (explicit states and observables realising any feasible
overlap pattern), a device-independent certification route through CHSH
tests, and numerical oracles used to stress the analytic results.
"""

from .bounds import (
    UncertaintyBound,
    UnsupportedOrderError,
    bound,
    bound_from_radius,
    epsilon_from_overlap,
    overlap_from_epsilon,
    parse_bound_order,
    q_ac,
    q_mu,
)
from .certify import (
    CertificationReport,
    DevicePair,
    certify_pipeline,
    chsh_expectation,
    devices_from_realization,
    epsilon_bound_from_beta,
    ideal_devices,
    sample_chsh,
    tprime,
)
from .ellipsoid import (
    InfeasibleError,
    Realization,
    RealizationError,
    check_ellipsoid,
    construct_realization,
    effective_anticommutators,
    ellipse_boundary,
    expectation_vector,
    min_dimension,
)
from .entropy import (
    MIN_ENTROPY,
    SHANNON,
    JointDistribution,
    RenyiOrder,
    binary_entropy,
    cond_entropy_of_g,
    convexity_witness,
    renyi_cond_entropy,
    taylor_coefficient,
    w_alpha,
)
from .gamma import (
    GammaSet,
    QuantumState,
    build_gamma_set,
    random_projective_observable,
    state_from_bloch,
)
from .oracle import (
    OracleResult,
    SoundnessReport,
    compare_curve,
    min_entropy_over_ellipsoid,
    q_opt,
    verify_soundness,
)

__version__ = "0.1.0"

__all__ = [
    "CertificationReport",
    "DevicePair",
    "GammaSet",
    "InfeasibleError",
    "JointDistribution",
    "MIN_ENTROPY",
    "OracleResult",
    "QuantumState",
    "Realization",
    "RealizationError",
    "RenyiOrder",
    "SHANNON",
    "SoundnessReport",
    "UncertaintyBound",
    "UnsupportedOrderError",
    "binary_entropy",
    "bound",
    "bound_from_radius",
    "build_gamma_set",
    "certify_pipeline",
    "check_ellipsoid",
    "chsh_expectation",
    "compare_curve",
    "cond_entropy_of_g",
    "construct_realization",
    "convexity_witness",
    "devices_from_realization",
    "effective_anticommutators",
    "ellipse_boundary",
    "epsilon_bound_from_beta",
    "epsilon_from_overlap",
    "expectation_vector",
    "ideal_devices",
    "min_dimension",
    "min_entropy_over_ellipsoid",
    "overlap_from_epsilon",
    "parse_bound_order",
    "q_ac",
    "q_mu",
    "q_opt",
    "random_projective_observable",
    "renyi_cond_entropy",
    "sample_chsh",
    "state_from_bloch",
    "taylor_coefficient",
    "tprime",
    "verify_soundness",
    "w_alpha",
]
