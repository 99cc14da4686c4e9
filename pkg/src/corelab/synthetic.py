"""Deterministic synthetic corpora for tests, demos and the bundled data files.

Everything is drawn with :class:`random.Random` from an explicit seed, and
words are taken only from entries that appear in exactly one bundled wordlist,
so the intended language of every generated word is unambiguous.
"""

from __future__ import annotations

import json
import math
import random
from importlib import resources

from .corpus import ReasoningTrace
from .lid import LidConfig
from .scripts import Script

PROMPT_LANGUAGES = ("sw", "id", "yo", "hi", "am", "ig")
MODELS = ("model-a", "model-b", "model-c")
DOMAINS = ("math", "science", "law", "moral", "logic")
OTHER_LANGUAGES = ("zh", "hi", "sw")
LETTERS = "ABCD"

# Planted correctness model: logit = base + effect[matrix behaviour].
BASE_LOGIT = -0.6
MATRIX_EFFECT = {"same": 0.0, "english": 1.8, "other": 0.7}


def unique_vocabulary(config: LidConfig | None = None) -> dict[str, list[str]]:
    """Per language, the sorted wordlist entries found in no other language's list."""
    config = config or LidConfig.default()
    lists = {k: set(v) for k, v in config.wordlists.items()}
    out = {}
    for lang, words in lists.items():
        others = set().union(*(v for k, v in lists.items() if k != lang))
        uniq = sorted(w for w in words if w not in others and _clean(w, lang, config))
        out[lang] = uniq
    return out


def _clean(word: str, lang: str, config: LidConfig) -> bool:
    # Skip entries the tokenizer would split (apostrophes are fine, digits are not).
    from .scripts import classify_script, script_of

    script = classify_script(word)
    if script not in config.script_map or lang not in config.script_map[script]:
        return False
    return all(script_of(ch) in (script, Script.INHERITED) or ch in "'-" for ch in word)


def _sentence(rng: random.Random, vocab: dict[str, list[str]], matrix: str, embedded: list[str], switch_p: float):
    words = []
    lang = matrix
    for _ in range(rng.randint(6, 14)):
        if embedded and rng.random() < switch_p:
            lang = rng.choice(embedded) if lang == matrix else matrix
        if rng.random() < 0.08:
            words.append(str(rng.randint(0, 999)))
        else:
            words.append(rng.choice(vocab[lang]))
    return " ".join(words)


def make_trace(rng: random.Random, idx: int, vocab: dict[str, list[str]]) -> ReasoningTrace:
    prompt_lang = rng.choice(PROMPT_LANGUAGES)
    model = rng.choice(MODELS)
    behaviour = rng.choices(("same", "english", "other"), weights=(0.45, 0.35, 0.20))[0]
    if behaviour == "same":
        matrix = prompt_lang
    elif behaviour == "english":
        matrix = "en"
    else:
        matrix = rng.choice([lang for lang in OTHER_LANGUAGES if lang != prompt_lang])
    embedded = sorted({prompt_lang, "en"} - {matrix})
    switch_p = rng.choice((0.0, 0.05, 0.15, 0.3))
    steps = [_sentence(rng, vocab, matrix, embedded, switch_p) for _ in range(rng.randint(3, 8))]
    gold = rng.choice(LETTERS)
    p = 1.0 / (1.0 + math.exp(-(BASE_LOGIT + MATRIX_EFFECT[behaviour])))
    correct = rng.random() < p
    letter = gold if correct else rng.choice([c for c in LETTERS if c != gold])
    return ReasoningTrace(
        id=f"syn-{idx:04d}",
        model=model,
        prompt_language=prompt_lang,
        dataset="synthetic-mmlu",
        domain=rng.choice(DOMAINS),
        prompt=" ".join(rng.choice(vocab[prompt_lang]) for _ in range(rng.randint(8, 16))) + " ?",
        reasoning="\n".join(steps),
        answer=f"The answer is ({letter})",
        gold=gold,
        correct=correct,
    )


def make_corpus(n: int = 200, seed: int = 20240101, config: LidConfig | None = None) -> list[ReasoningTrace]:
    rng = random.Random(seed)
    vocab = unique_vocabulary(config)
    return [make_trace(rng, i, vocab) for i in range(n)]


GOLD_LANGUAGES = ("en", "sw", "id", "ms", "yo", "ig", "hi", "am", "zh")


def make_gold(n: int = 100, seed: int = 7, config: LidConfig | None = None) -> list[dict]:
    """Gold word-LID instances in the ``{id, text, tokens: [{text, lang}]}`` layout."""
    rng = random.Random(seed)
    vocab = unique_vocabulary(config)
    out = []
    for i in range(n):
        langs = rng.sample(GOLD_LANGUAGES, 2)
        toks = []
        for _ in range(rng.randint(10, 18)):
            if rng.random() < 0.1:
                toks.append({"text": str(rng.randint(0, 99)), "lang": "independent"})
            else:
                lang = rng.choice(langs)
                toks.append({"text": rng.choice(vocab[lang]), "lang": lang})
        out.append({"id": f"gold-{i:04d}", "text": " ".join(t["text"] for t in toks), "tokens": toks})
    return out


def bundled_path(name: str):
    return resources.files("corelab") / "data" / name


def render_jsonl(records) -> str:
    return "".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records)
