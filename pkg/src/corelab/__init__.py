"""Code-switching analysis of multilingual reasoning traces and SFT data curation."""

from .corpus import ReasoningTrace, read_corpus
from .errors import ConfigurationError, CorelabError, InputError
from .lid import LidConfig, detect_instance_languages, tag_words, validate_lid
from .metrics import (
    MatrixClass,
    SwitchMetrics,
    SwitchMetricsTransformer,
    burstiness,
    cmi,
    compute_all,
    i_index,
    m_index,
    matrix_language,
    memory,
    metrics_from_tags,
)
from .stats import DesignEncoder, LogisticIRLS, encode, fit_logistic
from .tags import INDEPENDENT, UNKNOWN, LanguageTag
from .tokenize import Token, TokenizedText, tokenize

__version__ = "0.1.0"

__all__ = [
    "ConfigurationError",
    "CorelabError",
    "DesignEncoder",
    "INDEPENDENT",
    "InputError",
    "LanguageTag",
    "LidConfig",
    "LogisticIRLS",
    "MatrixClass",
    "ReasoningTrace",
    "SwitchMetrics",
    "SwitchMetricsTransformer",
    "Token",
    "TokenizedText",
    "UNKNOWN",
    "burstiness",
    "cmi",
    "compute_all",
    "detect_instance_languages",
    "encode",
    "fit_logistic",
    "i_index",
    "m_index",
    "matrix_language",
    "memory",
    "metrics_from_tags",
    "read_corpus",
    "tag_words",
    "tokenize",
    "validate_lid",
]
