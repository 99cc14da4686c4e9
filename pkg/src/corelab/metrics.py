"""Code-switching metrics over a word-tagged trace.

Language-independent and unknown tokens are transparent everywhere except in
the raw token counts: spans, the integration index and the language shares are
all computed over the subsequence of language-tagged tokens. All sums go
through :func:`math.fsum`, so results do not depend on the order languages are
enumerated in.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin

from .errors import CorelabError, InputError
from .lid import LidConfig, tag_words
from .tags import INDEPENDENT_LABEL, UNKNOWN_LABEL, LanguageTag
from .tokenize import SegmenterRegistry, TokenizedText, tokenize

if TYPE_CHECKING:
    from .corpus import ReasoningTrace

__all__ = [
    "Span",
    "SpanSequence",
    "MatrixClass",
    "SwitchMetrics",
    "extract_spans",
    "cmi",
    "m_index",
    "i_index",
    "burstiness",
    "memory",
    "matrix_language",
    "metrics_from_tags",
    "compute_all",
    "min_max_normalize",
    "SwitchMetricsTransformer",
    "SCALAR_METRICS",
]

_NON_LANGUAGE = frozenset({INDEPENDENT_LABEL, UNKNOWN_LABEL})
SCALAR_METRICS = ("cmi", "m_index", "i_index", "burstiness", "memory")


@dataclass(frozen=True)
class Span:
    language: str
    start: int  # index into the full token list
    length: int


@dataclass(frozen=True)
class SpanSequence:
    spans: tuple[Span, ...] = ()

    def __len__(self) -> int:
        return len(self.spans)

    @property
    def lengths(self) -> list[int]:
        return [s.length for s in self.spans]


class MatrixClass(str, enum.Enum):
    SAME_AS_PROMPT = "SameAsPrompt"
    ENGLISH = "English"
    OTHER_LANGUAGE = "OtherLanguage"

    def __str__(self) -> str:
        return self.value


def _code(tag) -> str | None:
    if isinstance(tag, LanguageTag):
        return tag.code if tag.is_iso else None
    if tag is None or tag in _NON_LANGUAGE:
        return None
    return tag


def _labels(tags: Iterable) -> list[str]:
    """Language codes of the Iso-tagged tokens, in order."""
    return [c for c in map(_code, tags) if c is not None]


def extract_spans(text: TokenizedText | Sequence) -> SpanSequence:
    """Maximal same-language runs, skipping over non-language tokens.

    Accepts a tagged :class:`TokenizedText` or a plain sequence of tags
    (``LanguageTag`` or code strings; ``None``, ``"independent"`` and
    ``"unknown"`` mark non-language tokens).
    """
    tags = text.tags if isinstance(text, TokenizedText) else list(text)
    spans: list[list] = []
    for idx, tag in enumerate(tags):
        code = _code(tag)
        if code is None:
            continue
        if spans and spans[-1][0] == code:
            spans[-1][2] += 1
        else:
            spans.append([code, idx, 1])
    return SpanSequence(tuple(Span(*s) for s in spans))


def cmi(counts: Mapping[str, int], n: int, u: int) -> float:
    """Code-mixing index: share of language-tagged tokens outside the dominant language."""
    if n < 0 or u < 0 or any(v < 0 for v in counts.values()):
        raise InputError("token counts must be non-negative")
    tagged = sum(counts.values())
    if tagged != n - u:
        raise InputError(f"language counts sum to {tagged}, expected n - u = {n - u}")
    if n == u:
        return 0.0
    return 1.0 - max(counts.values()) / (n - u)


def m_index(counts: Mapping[str, int], n_tagged: int | None = None) -> float:
    """Multilingual index, (1 - sum p^2) / ((N - 1) sum p^2); 0 for fewer than two languages."""
    values = [v for v in counts.values() if v > 0]
    if n_tagged is None:
        n_tagged = sum(values)
    if len(values) <= 1 or n_tagged == 0:
        return 0.0
    sq = math.fsum((v / n_tagged) ** 2 for v in sorted(values))
    return (1.0 - sq) / ((len(values) - 1) * sq)


def i_index(text: TokenizedText | Sequence) -> float:
    """Fraction of adjacent language-tagged token pairs that switch language."""
    labels = _labels(text.tags if isinstance(text, TokenizedText) else text)
    if len(labels) < 2:
        return 0.0
    switches = sum(a != b for a, b in zip(labels, labels[1:]))
    return switches / (len(labels) - 1)


def _mean_std(xs: Sequence[float]) -> tuple[float, float]:
    mu = math.fsum(xs) / len(xs)
    return mu, math.sqrt(math.fsum((x - mu) ** 2 for x in xs) / len(xs))


def burstiness(spans: SpanSequence | Sequence[int]) -> float | None:
    """(sigma - mu) / (sigma + mu) over span lengths, population sigma; None without spans."""
    lengths = spans.lengths if isinstance(spans, SpanSequence) else list(spans)
    if not lengths:
        return None
    mu, sigma = _mean_std(lengths)
    return (sigma - mu) / (sigma + mu)


def memory(spans: SpanSequence | Sequence[int]) -> float | None:
    """Lag-1 correlation of consecutive span lengths.

    None when there are fewer than three spans or either shifted series is
    constant.
    """
    lengths = spans.lengths if isinstance(spans, SpanSequence) else list(spans)
    n_r = len(lengths)
    if n_r < 3:
        return None
    head, tail = lengths[:-1], lengths[1:]
    mu1, s1 = _mean_std(head)
    mu2, s2 = _mean_std(tail)
    if s1 == 0 or s2 == 0:
        return None
    total = math.fsum((a - mu1) * (b - mu2) for a, b in zip(head, tail))
    return total / (s1 * s2) / (n_r - 1)


def matrix_language(counts: Mapping[str, int], prompt_language: str) -> tuple[str, MatrixClass] | None:
    """Language with the most tokens, and how it relates to the prompt.

    Ties prefer the prompt language, then English, then the smallest code.
    Returns None when no token carries a language.
    """
    counts = {k: v for k, v in counts.items() if v > 0}
    if not counts:
        return None
    top = max(counts.values())
    tied = sorted(k for k, v in counts.items() if v == top)
    if prompt_language in tied:
        lang = prompt_language
    elif "en" in tied:
        lang = "en"
    else:
        lang = tied[0]
    if lang == prompt_language:
        cls = MatrixClass.SAME_AS_PROMPT
    elif lang == "en":
        cls = MatrixClass.ENGLISH
    else:
        cls = MatrixClass.OTHER_LANGUAGE
    return lang, cls


@dataclass
class SwitchMetrics:
    trace_id: str
    n_tokens: int
    n_independent: int
    language_counts: dict[str, int]
    cmi: float
    m_index: float
    i_index: float
    burstiness: float | None
    memory: float | None
    matrix_language: str | None
    matrix_class: MatrixClass | None
    fluency: int | None = None
    accuracy: int | None = None

    def to_dict(self) -> dict:
        d = asdict(self)
        d["language_counts"] = dict(sorted(self.language_counts.items()))
        d["matrix_class"] = None if self.matrix_class is None else self.matrix_class.value
        return d

    @classmethod
    def from_dict(cls, d: Mapping) -> "SwitchMetrics":
        d = dict(d)
        if d.get("matrix_class") is not None:
            d["matrix_class"] = MatrixClass(d["matrix_class"])
        return cls(**{k: d.get(k) for k in cls.__dataclass_fields__})


def metrics_from_tags(tags: Sequence, prompt_language: str, trace_id: str = "") -> SwitchMetrics:
    """Every metric from a tag sequence; non-language entries count towards ``u``."""
    labels = _labels(tags)
    counts = dict(Counter(labels))
    n = len(tags)
    u = n - len(labels)
    spans = extract_spans(tags)
    matrix = matrix_language(counts, prompt_language)
    return SwitchMetrics(
        trace_id=trace_id,
        n_tokens=n,
        n_independent=u,
        language_counts=counts,
        cmi=cmi(counts, n, u),
        m_index=m_index(counts, len(labels)),
        i_index=i_index(labels),
        burstiness=burstiness(spans),
        memory=memory(spans),
        matrix_language=matrix[0] if matrix else None,
        matrix_class=matrix[1] if matrix else None,
    )


def compute_all(
    trace: "ReasoningTrace",
    config: LidConfig,
    segmenters: SegmenterRegistry | None = None,
) -> SwitchMetrics:
    """Tokenize, tag and measure one trace's reasoning."""
    try:
        tagged = tag_words(tokenize(trace.reasoning, trace.prompt_language, segmenters), config)
    except CorelabError as exc:
        raise type(exc)(f"trace {trace.id}: {exc}") from exc
    m = metrics_from_tags(tagged.tags, trace.prompt_language, trace.id)
    m.fluency = trace.ratings.get("fluency")
    m.accuracy = trace.ratings.get("accuracy")
    return m


def min_max_normalize(table: Mapping[str, Sequence[float | None]]) -> dict[str, list[float | None]]:
    """Rescale each column to [0, 1]; constant columns become 0 and None stays None."""
    out = {}
    for name, column in table.items():
        present = [x for x in column if x is not None]
        if not present:
            out[name] = list(column)
            continue
        lo, hi = min(present), max(present)
        span = hi - lo
        out[name] = [None if x is None else ((x - lo) / span if span > 0 else 0.0) for x in column]
    return out


class SwitchMetricsTransformer(TransformerMixin, BaseEstimator):
    """Map reasoning traces to a numeric matrix of code-switching metrics.

    Parameters
    ----------
    config : LidConfig, default=None
        Language inventory; the bundled registry when None.
    segmenters : SegmenterRegistry, default=None
        Dictionaries for unspaced scripts; the bundled ones when None.
    columns : tuple of str
        Metric columns to emit. Absent values (memory, burstiness without
        spans) become NaN.

    Attributes
    ----------
    metrics_ : list of SwitchMetrics
        Full metric records from the last call to ``transform``.
    """

    def __init__(self, config=None, segmenters=None, columns=SCALAR_METRICS):
        self.config = config
        self.segmenters = segmenters
        self.columns = columns

    def fit(self, X, y=None):
        self.config_ = self.config if self.config is not None else LidConfig.default()
        self.n_features_in_ = 1
        return self

    def transform(self, X):
        from sklearn.utils.validation import check_is_fitted

        check_is_fitted(self, "config_")
        self.metrics_ = [compute_all(t, self.config_, self.segmenters) for t in X]
        return np.array(
            [[np.nan if getattr(m, c) is None else float(getattr(m, c)) for c in self.columns]
             for m in self.metrics_],
            dtype=float,
        ).reshape(len(self.metrics_), len(self.columns))

    def get_feature_names_out(self, input_features=None):
        return np.asarray(self.columns, dtype=object)
