"""Population-mean estimation from systematic samples under non-response.

The package covers the full pipeline: ingesting a finite population,
enumerating systematic samples, simulating Hansen-Hurwitz follow-up of
non-respondents, evaluating the general auxiliary-information estimator
family, and checking its closed-form first-order bias/MSE theory by
design-based Monte Carlo.
"""

__version__ = "0.1.0"

from .design import (
    NonResponseModel,
    SampleRealization,
    StratumMode,
    SystematicDesign,
    apply_nonresponse,
    draw_sample,
    enumerate_samples,
    enumerated_design_variance,
)
from .errors import (
    ConfigurationError,
    DegenerateInputError,
    DesignError,
    DomainError,
    EstimationError,
    ParseError,
    SingularityError,
)
from .estimators import (
    FamilyParams,
    aux_mean,
    family_estimate,
    hh_mean,
    lambda_coefficient,
    product_estimate,
    ratio_estimate,
)
from .montecarlo import (
    EstimatorSpec,
    SimulationConfig,
    SimulationReport,
    compare_to_theory,
    run_simulation,
)
from .population import (
    FinitePopulation,
    PopulationMoments,
    compute_moments,
    intraclass_correlation,
    load_population,
    population_fingerprint,
    sorted_by_auxiliary,
    stratum_mean_square,
)
from .theory import (
    DerivedConstants,
    ErrorMoments,
    classical_bias,
    classical_mse,
    derived_constants,
    error_moments,
    family_bias,
    family_mse,
    family_mse_min,
    fpc,
    intraclass_from_pre,
    nonresponse_term,
    optimum_alpha,
    pre_optimum,
    var_mean_x,
    var_mean_y,
)

__all__ = [
    "__version__",
    "ConfigurationError",
    "DegenerateInputError",
    "DesignError",
    "DomainError",
    "EstimationError",
    "ParseError",
    "SingularityError",
    "FinitePopulation",
    "PopulationMoments",
    "SystematicDesign",
    "NonResponseModel",
    "StratumMode",
    "SampleRealization",
    "FamilyParams",
    "DerivedConstants",
    "ErrorMoments",
    "EstimatorSpec",
    "SimulationConfig",
    "SimulationReport",
    "load_population",
    "sorted_by_auxiliary",
    "intraclass_correlation",
    "compute_moments",
    "stratum_mean_square",
    "population_fingerprint",
    "enumerate_samples",
    "enumerated_design_variance",
    "draw_sample",
    "apply_nonresponse",
    "hh_mean",
    "aux_mean",
    "family_estimate",
    "ratio_estimate",
    "product_estimate",
    "lambda_coefficient",
    "fpc",
    "derived_constants",
    "error_moments",
    "nonresponse_term",
    "var_mean_y",
    "var_mean_x",
    "classical_bias",
    "classical_mse",
    "family_bias",
    "family_mse",
    "optimum_alpha",
    "family_mse_min",
    "pre_optimum",
    "intraclass_from_pre",
    "run_simulation",
    "compare_to_theory",
]
