"""Reasoning-trace records: JSONL persistence, answer scoring and rating ingestion."""

from __future__ import annotations

import json
import os
import re
import tempfile
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator

from .diagnostics import emit
from .errors import InputError, SchemaError
from .tags import LanguageTag

__all__ = [
    "ReasoningTrace",
    "RatingRecord",
    "read_corpus",
    "write_corpus",
    "read_ratings",
    "score_correctness",
    "extract_choice",
    "attach_ratings",
    "atomic_write",
    "iter_jsonl",
]

REQUIRED = ("id", "model", "prompt_language", "dataset", "domain", "prompt", "reasoning", "answer")
OPTIONAL = ("gold", "correct")
DIMENSIONS = ("fluency", "accuracy")


@dataclass
class ReasoningTrace:
    id: str
    model: str
    prompt_language: str
    dataset: str
    domain: str
    prompt: str
    reasoning: str
    answer: str
    gold: str | None = None
    correct: bool | None = None
    extras: dict = field(default_factory=dict)
    ratings: dict[str, int] = field(default_factory=dict)
    line: int | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.correct is not None and self.gold is None:
            raise SchemaError(f"trace {self.id}: correct is set but gold is missing")

    @classmethod
    def from_dict(cls, rec: dict, line: int | None = None) -> "ReasoningTrace":
        where = f"line {line}: " if line is not None else ""
        if not isinstance(rec, dict):
            raise SchemaError(f"{where}expected a JSON object")
        for name in REQUIRED:
            if name not in rec:
                raise SchemaError(f"{where}missing field {name}")
            if not isinstance(rec[name], str):
                raise SchemaError(f"{where}field {name} must be a string")
        try:
            LanguageTag.iso(rec["prompt_language"])
        except ValueError as exc:
            raise SchemaError(f"{where}{exc}") from None
        gold, correct = rec.get("gold"), rec.get("correct")
        if gold is not None and not isinstance(gold, str):
            raise SchemaError(f"{where}field gold must be a string")
        if correct is not None and not isinstance(correct, bool):
            raise SchemaError(f"{where}field correct must be a boolean")
        if correct is not None and gold is None:
            raise SchemaError(f"{where}field correct requires gold")
        extras = {k: v for k, v in rec.items() if k not in REQUIRED and k not in OPTIONAL}
        return cls(**{k: rec[k] for k in REQUIRED}, gold=gold, correct=correct, extras=extras, line=line)

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in REQUIRED}
        for k in OPTIONAL:
            if getattr(self, k) is not None:
                d[k] = getattr(self, k)
        d.update(self.extras)
        return d


@dataclass(frozen=True)
class RatingRecord:
    trace_id: str
    dimension: str
    score: int
    rater: str = ""

    def to_dict(self) -> dict:
        return {"trace_id": self.trace_id, "dimension": self.dimension, "score": self.score, "rater": self.rater}


def iter_jsonl(path: str | Path) -> Iterator[tuple[int, object]]:
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                yield lineno, json.loads(line)
            except ValueError as exc:
                raise SchemaError(f"line {lineno}: malformed JSON ({exc.args[0]})") from None


def read_corpus(path: str | Path) -> list[ReasoningTrace]:
    traces, seen = [], {}
    for lineno, rec in iter_jsonl(path):
        trace = ReasoningTrace.from_dict(rec, lineno)
        if trace.id in seen:
            raise SchemaError(f"line {lineno}: duplicate id {trace.id!r} (first on line {seen[trace.id]})")
        seen[trace.id] = lineno
        traces.append(trace)
    return traces


def dumps(rec: dict) -> str:
    return json.dumps(rec, ensure_ascii=False)


def atomic_write(path: str | Path, text: str) -> None:
    """Write ``text`` to a temporary sibling file, then rename it over ``path``."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(prefix=f".{path.name}.", dir=path.parent or ".")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_jsonl(path: str | Path, records: Iterable[dict]) -> None:
    atomic_write(path, "".join(dumps(r) + "\n" for r in records))


def write_corpus(path: str | Path, traces: Iterable[ReasoningTrace]) -> None:
    write_jsonl(path, (t.to_dict() for t in traces))


# A choice letter standing alone: not glued to other letters or digits.
_CHOICE = re.compile(r"(?<![A-Za-z0-9])([A-Da-d])(?![A-Za-z0-9])")
_BRACKETED = re.compile(r"[\(\[\{]\s*([A-Da-d])\s*[\)\]\}]")


def extract_choice(answer: str) -> str | None:
    """Final multiple-choice letter in ``answer``, uppercased, or None.

    A bracketed letter such as ``(C)`` wins over bare ones; among bare letters
    an uppercase one wins over a lowercase one (so the article "a" does not
    shadow an earlier "B"); within a class the last occurrence is taken.
    """
    bracketed = _BRACKETED.findall(answer)
    if bracketed:
        return bracketed[-1].upper()
    bare = _CHOICE.findall(answer)
    upper = [c for c in bare if c.isupper()]
    if upper:
        return upper[-1]
    if bare:
        return bare[-1].upper()
    return None


def score_correctness(trace: ReasoningTrace) -> bool:
    if trace.gold is None:
        raise InputError(f"trace {trace.id}: no gold answer to score against")
    letter = extract_choice(trace.answer)
    if letter is None:
        emit("unparseable-answer", trace_id=trace.id)
        return False
    return letter == trace.gold.strip().upper()


def read_ratings(path: str | Path) -> list[RatingRecord]:
    out = []
    for lineno, rec in iter_jsonl(path):
        try:
            out.append(RatingRecord(str(rec["trace_id"]), rec["dimension"], rec["score"], rec.get("rater", "")))
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"line {lineno}: missing field {exc}") from None
    return out


def attach_ratings(corpus: list[ReasoningTrace], ratings: Iterable[RatingRecord]) -> list[ReasoningTrace]:
    """Fill ``trace.ratings`` in place; later records win for the same (trace, dimension).

    Records with an unknown dimension or a score outside 1..3 are skipped with
    a diagnostic. Unknown trace ids are fatal.
    """
    ratings = list(ratings)
    by_id = {t.id: t for t in corpus}
    missing = sorted({r.trace_id for r in ratings if r.trace_id not in by_id})
    if missing:
        raise InputError(f"ratings reference unknown traces: {', '.join(missing)}")
    for r in ratings:
        if r.dimension not in DIMENSIONS:
            emit("rating-rejected", trace_id=r.trace_id, reason=f"unknown dimension {r.dimension!r}")
            continue
        if isinstance(r.score, bool) or not isinstance(r.score, int) or not 1 <= r.score <= 3:
            emit("rating-rejected", trace_id=r.trace_id, reason=f"score {r.score!r} outside 1..3")
            continue
        by_id[r.trace_id].ratings[r.dimension] = r.score
    return corpus
