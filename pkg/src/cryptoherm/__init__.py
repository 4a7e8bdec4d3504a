"""Quasi-Hermitian spectral machinery for toy-universe matrix models.

The library covers the full pipeline: model construction (:mod:`.models`),
dense eigen/metric linear algebra (:mod:`.matrixkit`, :mod:`.metric`),
operator and state evolution (:mod:`.dynamics`), spectral flows with
exceptional-point and Jordan diagnostics (:mod:`.flow`), and the shared
file formats (:mod:`.serialize`). ``cryptoherm.cli`` binds it all into a
command-line tool.
"""

__version__ = "0.1.0"

from .dynamics import (
    EvolutionGenerator,
    StatePair,
    coriolis,
    expectation,
    heisenberg_evolve,
    metric_rate,
    omega_cauchy_evolve,
    state_pair_evolve,
)
from .flow import (
    FlowTrace,
    JordanProfile,
    classify_reality,
    jordan_profile,
    locate_ep,
    locate_ep_provider,
    sweep_provider,
    sweep_spectrum,
)
from .matrixkit import (
    DEFAULT_TOL,
    BrokenPhaseError,
    EigSystem,
    eig_full,
    herm_sqrt,
    intertwiner_nullspace,
    numerical_rank,
)
from .metric import (
    DysonMap,
    MetricResult,
    diagonal_metric,
    dyson_from_metric,
    hermitize,
    matrix_metric,
    metric_family,
    quasi_residual,
)
from .models import ModelSpec, build_q, build_q_time_derivative, oracle_spectrum

__all__ = [
    "BrokenPhaseError",
    "DEFAULT_TOL",
    "DysonMap",
    "EigSystem",
    "EvolutionGenerator",
    "FlowTrace",
    "JordanProfile",
    "MetricResult",
    "ModelSpec",
    "StatePair",
    "build_q",
    "build_q_time_derivative",
    "classify_reality",
    "coriolis",
    "diagonal_metric",
    "dyson_from_metric",
    "eig_full",
    "expectation",
    "heisenberg_evolve",
    "herm_sqrt",
    "hermitize",
    "intertwiner_nullspace",
    "jordan_profile",
    "locate_ep",
    "locate_ep_provider",
    "matrix_metric",
    "metric_family",
    "metric_rate",
    "numerical_rank",
    "omega_cauchy_evolve",
    "oracle_spectrum",
    "quasi_residual",
    "state_pair_evolve",
    "sweep_provider",
    "sweep_spectrum",
    "__version__",
]
