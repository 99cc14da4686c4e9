"""Word- and instance-level language identification.

The built-in backend needs no model files: a token's script decides the
candidate languages, Latin-script tokens are then resolved by wordlist
membership, characteristic letters, and finally a character-trigram
likelihood estimated from the wordlists themselves.
"""

from __future__ import annotations

import json
import logging
import math
import unicodedata
from collections import Counter
from dataclasses import dataclass, field, replace
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Mapping, Sequence

from .diagnostics import emit
from .errors import AlignmentError, ConfigurationError, SchemaError
from .scripts import NEUTRAL, Script, script_of
from .tags import INDEPENDENT, UNKNOWN, LanguageTag
from .tokenize import SegmenterRegistry, TokenizedText, tokenize

__all__ = [
    "LidConfig",
    "LidReport",
    "GoldInstance",
    "tag_words",
    "detect_instance_languages",
    "is_code_switched",
    "validate_lid",
    "read_gold",
    "DEFAULT_MIN_TOKENS",
]

DEFAULT_MIN_TOKENS = 3

# Backend hook: receives token texts, returns one tag (or None to defer to the
# built-in rules) per token.
Backend = Callable[[Sequence[str]], Sequence["LanguageTag | None"]]


class TrigramModel:
    """Add-one smoothed character-trigram log-likelihoods per language."""

    def __init__(self, wordlists: Mapping[str, Iterable[str]]):
        self.counts: dict[str, Counter] = {}
        self.totals: dict[str, int] = {}
        vocab: set[str] = set()
        for lang in sorted(wordlists):
            c = Counter()
            for w in sorted(wordlists[lang]):
                c.update(self.trigrams(w))
            self.counts[lang] = c
            self.totals[lang] = sum(c.values())
            vocab.update(c)
        self.vocab_size = len(vocab) + 1

    @staticmethod
    def trigrams(word: str) -> list[str]:
        padded = f"<{word}>"
        return [padded[i:i + 3] for i in range(len(padded) - 2)]

    def score(self, word: str, lang: str) -> float:
        c = self.counts.get(lang, Counter())
        denom = self.totals.get(lang, 0) + self.vocab_size
        return math.fsum(math.log((c[t] + 1) / denom) for t in self.trigrams(word))


@dataclass(frozen=True)
class LidConfig:
    """Candidate inventory and resources for :func:`tag_words`.

    ``languages`` is ordered; that order breaks trigram ties.
    """

    languages: tuple[str, ...]
    script_map: Mapping[Script, tuple[str, ...]]
    wordlists: Mapping[str, frozenset[str]] = field(default_factory=dict)
    diacritic_rules: Mapping[str, frozenset[str]] = field(default_factory=dict)
    trigrams: TrigramModel = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        for code in self.languages:
            LanguageTag.iso(code)
        reachable = {lang for langs in self.script_map.values() for lang in langs}
        if missing := [lang for lang in self.languages if lang not in reachable]:
            raise ConfigurationError(f"languages not reachable from any script: {', '.join(missing)}")
        if stray := sorted(reachable - set(self.languages)):
            raise ConfigurationError(f"script_map names unknown languages: {', '.join(stray)}")
        latin = self.script_map.get(Script.LATIN, ())
        if no_list := [lang for lang in latin if not self.wordlists.get(lang)]:
            raise ConfigurationError(f"Latin-script languages without a wordlist: {', '.join(no_list)}")
        if len(latin) > 1 and "en" not in latin:
            raise ConfigurationError("Latin-script configurations must include English (en)")
        object.__setattr__(self, "trigrams", TrigramModel(
            {lang: self.wordlists[lang] for lang in latin}))

    @classmethod
    def from_registry(cls, path: str | Path, wordlist_dir: str | Path | None = None) -> "LidConfig":
        """Load a language registry: ``{code: {scripts, wordlist?, diacritics?}}``.

        Wordlist paths resolve against ``wordlist_dir`` if given, else the
        registry's own directory.
        """
        path = Path(path)
        base = Path(wordlist_dir) if wordlist_dir is not None else path.parent
        try:
            registry = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot load language registry {path}: {exc}") from None
        script_map: dict[Script, list[str]] = {}
        wordlists, diacritics = {}, {}
        for code, entry in registry.items():
            try:
                scripts = [Script.parse(s) for s in entry["scripts"]]
            except (KeyError, TypeError, ValueError) as exc:
                raise ConfigurationError(f"{path}: bad scripts for {code!r}: {exc}") from None
            for s in scripts:
                script_map.setdefault(s, []).append(code)
            if entry.get("wordlist"):
                wordlists[code] = load_wordlist(base / entry["wordlist"])
            if entry.get("diacritics"):
                diacritics[code] = frozenset(unicodedata.normalize("NFC", entry["diacritics"]))
        return cls(
            languages=tuple(registry),
            script_map={s: tuple(v) for s, v in script_map.items()},
            wordlists=wordlists,
            diacritic_rules=diacritics,
        )

    @classmethod
    def default(cls) -> "LidConfig":
        with resources.as_file(resources.files("corelab") / "data" / "languages.json") as p:
            return cls.from_registry(p)

    def restrict(self, languages: Iterable[str]) -> "LidConfig":
        """Same resources, smaller candidate inventory (kept in this config's order)."""
        keep = set(languages)
        if unknown := sorted(keep - set(self.languages)):
            raise ConfigurationError(f"languages not in registry: {', '.join(unknown)}")
        script_map = {}
        for s, langs in self.script_map.items():
            sub = tuple(lang for lang in langs if lang in keep)
            if sub:
                script_map[s] = sub
        return LidConfig(
            languages=tuple(lang for lang in self.languages if lang in keep),
            script_map=script_map,
            wordlists={k: v for k, v in self.wordlists.items() if k in keep},
            diacritic_rules={k: v for k, v in self.diacritic_rules.items() if k in keep},
        )


def load_wordlist(path: Path) -> frozenset[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigurationError(f"cannot read wordlist {path}: {exc}") from None
    return frozenset(unicodedata.normalize("NFC", ln.strip()).lower() for ln in text.splitlines() if ln.strip())


def lookup_key(text: str) -> str:
    """Lowercased token with leading/trailing punctuation, digits and symbols removed."""
    i, j = 0, len(text)
    while i < j and script_of(text[i]) in NEUTRAL:
        i += 1
    while j > i and script_of(text[j - 1]) == Script.COMMON:
        j -= 1
    return text[i:j].lower()


def _resolve_latin(key: str, candidates: tuple[str, ...], config: LidConfig) -> str:
    matched = [lang for lang in candidates if key in config.wordlists.get(lang, ())]
    if len(matched) == 1:
        return matched[0]
    pool = matched or list(candidates)
    chars = set(key)
    marked = [lang for lang in pool if chars & config.diacritic_rules.get(lang, frozenset())]
    if marked:
        pool = marked
    if len(pool) == 1:
        return pool[0]
    best, best_score = pool[0], -math.inf
    for lang in pool:  # pool follows config order, so strict > keeps the earliest on ties
        s = config.trigrams.score(key, lang)
        if s > best_score:
            best, best_score = lang, s
    return best


def _tag_one(token_text: str, script: Script, config: LidConfig, unconfigured: Counter) -> LanguageTag:
    if script in NEUTRAL:
        return INDEPENDENT
    candidates = config.script_map.get(script, ())
    if not candidates:
        unconfigured[script.value] += 1
        return UNKNOWN
    if len(candidates) == 1:
        return LanguageTag.iso(candidates[0])
    key = lookup_key(token_text)
    if not key:
        return UNKNOWN
    return LanguageTag.iso(_resolve_latin(key, candidates, config))


def tag_words(text: TokenizedText, config: LidConfig, backend: Backend | None = None) -> TokenizedText:
    """Assign a language tag to every token of ``text``.

    Common-script tokens become language-independent. A script with a single
    candidate language decides the tag outright; otherwise the wordlists,
    characteristic letters and trigram scores decide, in that order.
    ``backend`` may pre-empt the built-in rules for non-Common tokens.
    """
    external = list(backend(text.texts)) if backend is not None else [None] * len(text)
    if len(external) != len(text):
        raise ValueError("backend returned a different number of tags than tokens")
    unconfigured: Counter = Counter()
    tokens = []
    for tok, ext in zip(text.tokens, external):
        if ext is not None and tok.script not in NEUTRAL:
            if ext.is_iso and ext.code not in config.languages:
                raise ValueError(f"backend emitted language {ext.code!r} outside the configured inventory")
            tag = ext
        else:
            tag = _tag_one(tok.text, tok.script, config, unconfigured)
        tokens.append(replace(tok, tag=tag))
    if unconfigured:
        emit("unconfigured-script", level=logging.INFO, counts=dict(sorted(unconfigured.items())))
    return TokenizedText(text.source, tuple(tokens))


def detect_instance_languages(text: TokenizedText, min_tokens: int = DEFAULT_MIN_TOKENS) -> frozenset[LanguageTag]:
    counts = Counter(t.tag for t in text.tokens if t.tag.is_iso)
    return frozenset(tag for tag, n in counts.items() if n >= min_tokens)


def is_code_switched(text: TokenizedText, min_tokens: int = DEFAULT_MIN_TOKENS) -> bool:
    return len(detect_instance_languages(text, min_tokens)) >= 2


@dataclass(frozen=True)
class GoldInstance:
    id: str
    text: str
    tokens: tuple[tuple[str, LanguageTag], ...]


def read_gold(path: str | Path) -> list[GoldInstance]:
    """Read gold annotations: JSONL of ``{text, tokens: [{text, lang}]}`` (``id`` optional)."""
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                toks = tuple((t["text"], LanguageTag.parse(t["lang"])) for t in rec["tokens"])
                out.append(GoldInstance(str(rec.get("id", f"line-{lineno}")), rec["text"], toks))
            except (ValueError, KeyError, TypeError) as exc:
                raise SchemaError(f"line {lineno}: {exc}") from None
    return out


@dataclass
class LidReport:
    rows: list[tuple[str, str, LanguageTag, LanguageTag]]  # (instance, token, gold, predicted)
    correct: int
    total: int
    confusion: dict[tuple[LanguageTag, LanguageTag], int]

    @property
    def accuracy(self) -> float:
        return self.correct / self.total if self.total else 1.0

    def to_dict(self) -> dict:
        confusion: dict[str, dict[str, int]] = {}
        for (g, p), n in sorted(self.confusion.items(), key=lambda kv: (str(kv[0][0]), str(kv[0][1]))):
            confusion.setdefault(str(g), {})[str(p)] = n
        return {
            "accuracy": self.accuracy,
            "correct": self.correct,
            "total": self.total,
            "confusion": confusion,
            "tokens": [
                {"instance": i, "text": t, "gold": str(g), "predicted": str(p)} for i, t, g, p in self.rows
            ],
        }


def validate_lid(
    gold: Iterable[GoldInstance],
    config: LidConfig,
    segmenters: SegmenterRegistry | None = None,
    backend: Backend | None = None,
) -> LidReport:
    """Score word-level tagging against gold annotations.

    Accuracy counts only tokens whose gold tag is a language or unknown, i.e.
    gold language-independent tokens are excluded.
    """
    rows, confusion = [], Counter()
    correct = total = 0
    for inst in gold:
        tagged = tag_words(tokenize(inst.text, segmenters=segmenters), config, backend)
        gold_texts = [unicodedata.normalize("NFC", t) for t, _ in inst.tokens]
        if tagged.texts != gold_texts:
            raise AlignmentError(f"instance {inst.id}: gold tokens {gold_texts} != system tokens {tagged.texts}")
        for tok, (_, g) in zip(tagged.tokens, inst.tokens):
            rows.append((inst.id, tok.text, g, tok.tag))
            confusion[(g, tok.tag)] += 1
            if g == INDEPENDENT:
                continue
            total += 1
            correct += tok.tag == g
    return LidReport(rows, correct, total, dict(confusion))
