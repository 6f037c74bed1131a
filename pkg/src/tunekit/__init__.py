"""tunekit: a hyperparameter-optimization toolkit.

Implements and benchmarks four suggestion strategies (random search, grid
search, a genetic algorithm, and tree-structured Parzen estimation) over
typed search spaces, with a cross-validation harness, evaluation metrics,
and a manifest-driven CLI for comparing samplers under identical budgets.
"""

from .harness import (
    BiasVarianceReport,
    Dataset,
    Folds,
    LinearModel,
    auc,
    bias_variance_decompose,
    branin,
    cohen_kappa,
    cv_objective,
    kfold_split,
    load_csv_dataset,
    logistic_fit,
    metric_direction,
    rastrigin,
    ridge_fit,
    rmse,
    sphere,
    synthetic_objective,
)
from .samplers import (
    GaConfig,
    GaSampler,
    GridSampler,
    History,
    ParzenEstimator,
    RandomSampler,
    Sampler,
    SamplerSpec,
    TpeConfig,
    TpeSampler,
    TrialRecord,
    build_sampler,
    ei_ratio_score,
    ga_crossover,
    ga_init,
    ga_mutate,
    ga_select,
    ga_step,
    grid_cursor,
    grid_next,
    parzen_fit,
    parzen_pdf,
    parzen_sample,
    random_suggest,
    tpe_split,
    tpe_suggest,
)
from .space import (
    Categorical,
    ContinuousUniform,
    Distribution,
    IntegerUniform,
    ParamPoint,
    ParamValue,
    SearchSpace,
    contains,
    grid_points,
    preset_names,
    preset_space,
    sample_param,
    space_from_dict,
    space_from_json,
    space_to_dict,
    space_to_json,
)
from .study import (
    BudgetExhaustedError,
    SamplerExhaustedError,
    Study,
    StudyConfig,
    StudyResult,
    TraceFormatError,
    load_study,
    run_study,
    save_study,
)
from .worker import ExternalWorker, WorkerProtocolError

__version__ = "0.1.0"

__all__ = [
    "BiasVarianceReport",
    "BudgetExhaustedError",
    "Categorical",
    "ContinuousUniform",
    "Dataset",
    "Distribution",
    "ExternalWorker",
    "Folds",
    "GaConfig",
    "GaSampler",
    "GridSampler",
    "History",
    "IntegerUniform",
    "LinearModel",
    "ParamPoint",
    "ParamValue",
    "ParzenEstimator",
    "RandomSampler",
    "Sampler",
    "SamplerExhaustedError",
    "SamplerSpec",
    "SearchSpace",
    "Study",
    "StudyConfig",
    "StudyResult",
    "TpeConfig",
    "TpeSampler",
    "TraceFormatError",
    "TrialRecord",
    "WorkerProtocolError",
    "auc",
    "bias_variance_decompose",
    "branin",
    "build_sampler",
    "cohen_kappa",
    "contains",
    "cv_objective",
    "ei_ratio_score",
    "ga_crossover",
    "ga_init",
    "ga_mutate",
    "ga_select",
    "ga_step",
    "grid_cursor",
    "grid_next",
    "grid_points",
    "kfold_split",
    "load_csv_dataset",
    "load_study",
    "logistic_fit",
    "metric_direction",
    "parzen_fit",
    "parzen_pdf",
    "parzen_sample",
    "preset_names",
    "preset_space",
    "random_suggest",
    "rastrigin",
    "ridge_fit",
    "rmse",
    "run_study",
    "sample_param",
    "save_study",
    "space_from_dict",
    "space_from_json",
    "space_to_dict",
    "space_to_json",
    "sphere",
    "synthetic_objective",
    "tpe_split",
    "tpe_suggest",
]
