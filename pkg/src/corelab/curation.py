"""Fine-tuning data curation: six (prompt, reasoning, answer) recipes plus MT clean-up filters."""

from __future__ import annotations

import enum
import hashlib
import math
import random
import re
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .corpus import ReasoningTrace, score_correctness
from .diagnostics import emit
from .errors import ConfigurationError, InputError
from .lid import DEFAULT_MIN_TOKENS, LidConfig, is_code_switched, tag_words
from .tokenize import SegmenterRegistry, segment_steps, tokenize

__all__ = [
    "Task",
    "CurationInstance",
    "BudgetPlan",
    "MTResult",
    "RepetitionResult",
    "whitespace_count",
    "length_cutoff",
    "filter_correct_and_short",
    "make_translation_instances",
    "make_english_reasoning_instances",
    "select_strategic",
    "splice_indices",
    "splice_synthetic",
    "instance_seed",
    "apply_token_budget",
    "mt_postprocess",
    "repetition_filter",
    "DEFAULT_BUDGET",
    "PRNG_ALGORITHM",
]

DEFAULT_BUDGET = 1_000_000
DEFAULT_PERCENTILE = 0.95
PLACEHOLDER = "{source}"
# random.Random(seed).sample(range(k), k // 2); CPython's MT19937 seeded from the integer.
PRNG_ALGORITHM = "cpython-mt19937-sample"

TokenCounter = Callable[[str], int]


class Task(str, enum.Enum):
    NATIVE = "native"
    MT_EN = "mt_en"
    PROMPT_MT_EN = "prompt_mt_en"
    ENGLISH_REASONING = "english_reasoning"
    STRATEGIC_CSW = "strategic_csw"
    SYNTHETIC_CSW = "synthetic_csw"

    def __str__(self) -> str:
        return self.value


def whitespace_count(text: str) -> int:
    return len(text.split())


@dataclass
class CurationInstance:
    id: str
    prompt: str
    reasoning: str
    answer: str
    task: Task
    language: str
    token_count: int = 0

    def to_dict(self) -> dict:
        d = asdict(self)
        d["task"] = self.task.value
        return d


def make_instance(id, prompt, reasoning, answer, task, language, counter: TokenCounter = whitespace_count):
    count = counter(prompt) + counter(reasoning) + counter(answer)
    return CurationInstance(str(id), prompt, reasoning, answer, Task(task), language, count)


@dataclass
class BudgetPlan:
    budget: int
    selected: list[str] = field(default_factory=list)
    total_tokens: int = 0

    def to_dict(self) -> dict:
        return {"budget": self.budget, "selected": list(self.selected), "total_tokens": self.total_tokens}


def length_cutoff(lengths: Sequence[int], percentile: float = DEFAULT_PERCENTILE) -> int:
    """Nearest-rank percentile: the value at 1-based rank ceil(p * n) of the sorted lengths."""
    if not lengths:
        raise InputError("length_cutoff needs at least one length")
    if not 0 < percentile <= 1:
        raise InputError(f"percentile must lie in (0, 1], got {percentile}")
    ordered = sorted(lengths)
    rank = math.ceil(Fraction(percentile).limit_denominator(10**9) * len(ordered))
    return ordered[max(rank, 1) - 1]


def filter_correct_and_short(
    traces: Iterable[ReasoningTrace], cutoff: int, counter: TokenCounter = whitespace_count
) -> list[ReasoningTrace]:
    kept = []
    for t in traces:
        if t.correct is None:
            emit("missing-correctness", trace_id=t.id)
            continue
        if t.correct and counter(t.reasoning) <= cutoff:
            kept.append(t)
    return kept


def _render(template: str, source: str) -> str:
    if PLACEHOLDER not in template:
        raise ConfigurationError(f"prompt template has no {PLACEHOLDER} placeholder")
    return template.replace(PLACEHOLDER, source)


def make_translation_instances(
    pairs: Iterable[tuple[str, str]],
    template: str,
    task: Task | str = Task.MT_EN,
    language: str = "",
    counter: TokenCounter = whitespace_count,
    ids: Iterable[str] | None = None,
) -> list[CurationInstance]:
    """(rendered prompt, empty reasoning, English target) for each (source, English) pair."""
    task = Task(task)
    if task not in (Task.MT_EN, Task.PROMPT_MT_EN):
        raise ValueError(f"translation instances are built for mt_en/prompt_mt_en, not {task}")
    if PLACEHOLDER not in template:
        raise ConfigurationError(f"prompt template has no {PLACEHOLDER} placeholder")
    pairs = list(pairs)
    ids = list(ids) if ids is not None else [f"{task.value}-{i:06d}" for i in range(len(pairs))]
    return [
        make_instance(i, _render(template, src), "", tgt, task, language, counter)
        for i, (src, tgt) in zip(ids, pairs)
    ]


def make_english_reasoning_instances(
    aligned: Iterable[Mapping | tuple],
    language: str = "",
    counter: TokenCounter = whitespace_count,
) -> list[CurationInstance]:
    """Native-language prompt and answer around English reasoning."""
    out = []
    for i, rec in enumerate(aligned):
        if isinstance(rec, Mapping):
            rid = str(rec.get("id", f"english_reasoning-{i:06d}"))
            p, r, a = rec.get("prompt", ""), rec.get("reasoning_en", ""), rec.get("answer", "")
        else:
            rid = f"english_reasoning-{i:06d}"
            p, r, a = rec
        if not (p and r and a):
            emit("record-skipped", id=rid, reason="empty prompt, reasoning or answer")
            continue
        out.append(make_instance(rid, p, r, a, Task.ENGLISH_REASONING, language, counter))
    return out


def select_strategic(
    traces: Iterable[ReasoningTrace],
    config: LidConfig,
    min_tokens: int = DEFAULT_MIN_TOKENS,
    segmenters: SegmenterRegistry | None = None,
) -> list[ReasoningTrace]:
    """Teacher traces whose reasoning mixes at least two languages."""
    return [
        t for t in traces
        if is_code_switched(tag_words(tokenize(t.reasoning, t.prompt_language, segmenters), config), min_tokens)
    ]


def splice_indices(k: int, seed: int) -> list[int]:
    """Sorted step indices in [0, k) that take the English step."""
    return sorted(random.Random(seed).sample(range(k), k // 2))


def splice_synthetic(r_e: str, r_l: str, seed: int) -> str:
    """Interleave English and target-language reasoning step by step.

    Half (rounded down) of the first ``k = min(#steps)`` positions, chosen by
    :func:`splice_indices`, take the English step; the rest keep the
    target-language step, and target-language steps past ``k`` are appended.
    """
    en, tgt = segment_steps(r_e).steps, segment_steps(r_l).steps
    if not en or not tgt:
        raise InputError("both reasoning texts need at least one non-blank step")
    k = min(len(en), len(tgt))
    english = set(splice_indices(k, seed))
    steps = [en[i] if i in english else tgt[i] for i in range(k)]
    steps.extend(tgt[k:])
    return "\n".join(steps)


def instance_seed(seed: int, instance_id: str) -> int:
    """Per-instance seed: first 8 bytes (big-endian) of sha256("<seed>:<id>")."""
    return int.from_bytes(hashlib.sha256(f"{seed}:{instance_id}".encode()).digest()[:8], "big")


def apply_token_budget(
    instances: Sequence[CurationInstance],
    budget: int = DEFAULT_BUDGET,
    counter: TokenCounter | None = None,
) -> BudgetPlan:
    """Take instances in order while the running total stays within ``budget``.

    Selection stops at the first instance that would overflow; nothing after it
    is considered.
    """
    plan = BudgetPlan(budget)
    for inst in instances:
        n = inst.token_count
        if counter is not None:
            n = counter(inst.prompt) + counter(inst.reasoning) + counter(inst.answer)
        if plan.total_tokens + n > budget:
            if n > budget:
                emit("instance-exceeds-budget", id=inst.id, tokens=n, budget=budget)
            break
        plan.selected.append(inst.id)
        plan.total_tokens += n
    return plan


@dataclass(frozen=True)
class MTResult:
    accepted: bool
    text: str


@dataclass(frozen=True)
class RepetitionResult:
    passed: bool
    reason: str | None = None


_BOILERPLATE = [
    re.compile(r"^\s+"),
    re.compile(r"^(?:here\s+is|here's)\s+(?:a|the|my)\s+(?:better|improved|corrected|revised)\s+(?:\w+\s+)?translation\s*:\s*", re.I),
    re.compile(r"^(?:better|improved|corrected|revised|refined)\s+(?:\w+\s+)?translation\s*:\s*", re.I),
    re.compile(r"^translation\s*:\s*", re.I),
    re.compile(r"\n\s*(?:explanation|note|notes)\s*:.*\Z", re.I | re.S),
    re.compile(r"^[\"'“”‘’«»]+"),
    re.compile(r"[\"'“”‘’«»]+\s*\Z"),
    re.compile(r"\s+\Z"),
]


def clean_candidate(candidate: str) -> str:
    for pattern in _BOILERPLATE:
        candidate = pattern.sub("", candidate)
    return candidate


def mt_postprocess(candidate: str, original_translation: str) -> MTResult:
    """Keep a refined translation only if it is under twice the original's length in words."""
    cleaned = clean_candidate(candidate)
    n = whitespace_count(cleaned)
    if n and n < 2 * whitespace_count(original_translation):
        return MTResult(True, cleaned)
    return MTResult(False, original_translation)


MAX_REPEATS = 10
_SYMBOL_RUN = re.compile(r"#{%d,}|\*{%d,}" % (MAX_REPEATS + 1, MAX_REPEATS + 1))


def _has_repeated_quadrigram(seq: Sequence) -> bool:
    # MAX_REPEATS + 1 back-to-back copies of a 4-gram means seq[j] == seq[j + 4]
    # holds for 4 * MAX_REPEATS consecutive positions.
    need = 4 * MAX_REPEATS
    run = 0
    for j in range(len(seq) - 4):
        run = run + 1 if seq[j] == seq[j + 4] else 0
        if run >= need:
            return True
    return False


def repetition_filter(text: str) -> RepetitionResult:
    """Reject 11+ back-to-back copies of a character or word 4-gram, or a run of 11+ '#' or '*'."""
    if _SYMBOL_RUN.search(text):
        return RepetitionResult(False, "symbol-run")
    if _has_repeated_quadrigram(text):
        return RepetitionResult(False, "char-quadrigram")
    if _has_repeated_quadrigram(text.split()):
        return RepetitionResult(False, "token-quadrigram")
    return RepetitionResult(True)


def build_native(
    traces: Sequence[ReasoningTrace],
    language: str = "",
    percentile: float = DEFAULT_PERCENTILE,
    cutoff: int | None = None,
    counter: TokenCounter = whitespace_count,
) -> tuple[list[CurationInstance], int | None]:
    """Correct, length-filtered native-language traces; returns (instances, cutoff used)."""
    pool = [t for t in traces if not language or t.prompt_language == language]
    for t in pool:
        if t.correct is None and t.gold is not None:
            t.correct = score_correctness(t)
    if cutoff is None:
        lengths = [counter(t.reasoning) for t in pool if t.correct]
        if not lengths:
            return [], None
        cutoff = length_cutoff(lengths, percentile)
    kept = filter_correct_and_short(pool, cutoff, counter)
    return [
        make_instance(t.id, t.prompt, t.reasoning, t.answer, Task.NATIVE, t.prompt_language, counter) for t in kept
    ], cutoff


def build_strategic(
    traces: Sequence[ReasoningTrace],
    config: LidConfig,
    language: str = "",
    min_tokens: int = DEFAULT_MIN_TOKENS,
    segmenters: SegmenterRegistry | None = None,
    counter: TokenCounter = whitespace_count,
) -> list[CurationInstance]:
    pool = [t for t in traces if not language or t.prompt_language == language]
    return [
        make_instance(t.id, t.prompt, t.reasoning, t.answer, Task.STRATEGIC_CSW, t.prompt_language, counter)
        for t in select_strategic(pool, config, min_tokens, segmenters)
    ]


def build_synthetic(
    records: Iterable[Mapping],
    seed: int,
    language: str = "",
    counter: TokenCounter = whitespace_count,
) -> list[CurationInstance]:
    """Records carry ``prompt``, ``reasoning_en``, ``reasoning_l`` and ``answer``."""
    out = []
    for i, rec in enumerate(records):
        rid = str(rec.get("id", f"synthetic_csw-{i:06d}"))
        try:
            r = splice_synthetic(rec.get("reasoning_en", ""), rec.get("reasoning_l", ""), instance_seed(seed, rid))
        except InputError as exc:
            emit("record-skipped", id=rid, reason=str(exc))
            continue
        out.append(make_instance(rid, rec["prompt"], r, rec["answer"], Task.SYNTHETIC_CSW,
                                 rec.get("language", language), counter))
    return out
