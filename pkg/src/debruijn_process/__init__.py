"""Binary de Bruijn processes: exact distributions, simulation and inference."""
__version__ = "0.1.0"

from .distributions import LetterMarginals, StationaryDistribution, acf, joint_probability, letter_marginals, stationary
from .errors import BudgetError, DataError, DeBruijnError, DomainError, ModelError, VerificationError
from .graph import TransitionSpec, build_matrix, string_to_word, successor, word_to_string
from .inference import (
    ModelSelectionReport,
    PosteriorModel,
    TransitionCounts,
    count_transitions,
    fisher_information,
    log_evidence,
    log_likelihood,
    mle,
    posterior,
    predict_next,
    profile_aic,
    select_order,
)
from .runlength import RunLengthModel, kurtosis_and_sample_sds, run_length_model, run_length_pdf
from .sampler import BitSequence, SimulationConfig, simulate

__all__ = [
    "BitSequence",
    "BudgetError",
    "DataError",
    "DeBruijnError",
    "DomainError",
    "LetterMarginals",
    "ModelError",
    "ModelSelectionReport",
    "PosteriorModel",
    "RunLengthModel",
    "SimulationConfig",
    "StationaryDistribution",
    "TransitionCounts",
    "TransitionSpec",
    "VerificationError",
    "acf",
    "build_matrix",
    "count_transitions",
    "fisher_information",
    "joint_probability",
    "kurtosis_and_sample_sds",
    "letter_marginals",
    "log_evidence",
    "log_likelihood",
    "mle",
    "posterior",
    "predict_next",
    "profile_aic",
    "run_length_model",
    "run_length_pdf",
    "select_order",
    "simulate",
    "stationary",
    "string_to_word",
    "successor",
    "word_to_string",
]
