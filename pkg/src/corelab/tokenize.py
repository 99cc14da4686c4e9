"""Word tokenization for spaced and unspaced scripts, and reasoning-step splitting."""

from __future__ import annotations

import json
import unicodedata
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import ConfigurationError, InputError
from .scripts import NEUTRAL, UNSPACED, Script, classify_script, script_of
from .tags import UNKNOWN, LanguageTag

__all__ = [
    "Token",
    "TokenizedText",
    "StepSequence",
    "DictionarySegmenter",
    "SegmenterRegistry",
    "tokenize",
    "segment_steps",
    "normalize",
]


@dataclass(frozen=True)
class Token:
    text: str
    start: int  # byte offset into the UTF-8 encoded (NFC) source
    end: int
    script: Script
    tag: LanguageTag = UNKNOWN

    @property
    def byte_range(self) -> tuple[int, int]:
        return (self.start, self.end)


@dataclass(frozen=True)
class TokenizedText:
    source: str
    tokens: tuple[Token, ...] = ()

    def __len__(self) -> int:
        return len(self.tokens)

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    @property
    def texts(self) -> list[str]:
        return [t.text for t in self.tokens]

    @property
    def tags(self) -> list[LanguageTag]:
        return [t.tag for t in self.tokens]

    def separators(self) -> list[str]:
        """Source slices between tokens (len(tokens) + 1 entries)."""
        raw = self.source.encode("utf-8")
        out, pos = [], 0
        for tok in self.tokens:
            out.append(raw[pos:tok.start].decode("utf-8"))
            pos = tok.end
        out.append(raw[pos:].decode("utf-8"))
        return out


@dataclass(frozen=True)
class StepSequence:
    steps: tuple[str, ...]
    original: str

    def __len__(self) -> int:
        return len(self.steps)

    def join(self) -> str:
        return "\n".join(self.steps)


def normalize(text: str | bytes) -> str:
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InputError(f"input is not valid UTF-8: {exc}") from None
    try:
        text.encode("utf-8")
    except UnicodeEncodeError as exc:
        raise InputError(f"input is not valid UTF-8: {exc}") from None
    return unicodedata.normalize("NFC", text)


class DictionarySegmenter:
    """Greedy forward longest-match against a word set.

    Positions where no entry matches fall back to a single code point, with any
    following combining marks kept attached to it.
    """

    def __init__(self, words: Iterable[str], name: str = ""):
        self.words = frozenset(unicodedata.normalize("NFC", w) for w in words if w)
        self.max_len = max((len(w) for w in self.words), default=1)
        self.name = name

    @classmethod
    def from_file(cls, path: str | Path) -> "DictionarySegmenter":
        path = Path(path)
        try:
            lines = path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            raise ConfigurationError(f"cannot read dictionary {path}: {exc}") from None
        return cls((ln.strip() for ln in lines), name=str(path))

    def segment(self, run: str) -> list[str]:
        out = []
        i, n = 0, len(run)
        while i < n:
            for size in range(min(self.max_len, n - i), 0, -1):
                if run[i:i + size] in self.words:
                    out.append(run[i:i + size])
                    i += size
                    break
            else:
                j = i + 1
                while j < n and unicodedata.category(run[j])[0] == "M":
                    j += 1
                out.append(run[i:j])
                i = j
        return out


@dataclass
class SegmenterRegistry:
    """Read-only mapping from unspaced script (optionally per language) to segmenter."""

    segmenters: dict[Script, DictionarySegmenter] = field(default_factory=dict)
    overrides: dict[tuple[Script, str], DictionarySegmenter] = field(default_factory=dict)

    def get(self, script: Script, language_hint: str | None = None) -> DictionarySegmenter:
        if language_hint and (script, language_hint) in self.overrides:
            return self.overrides[(script, language_hint)]
        try:
            return self.segmenters[script]
        except KeyError:
            raise ConfigurationError(f"no dictionary registered for unspaced script {script.value}") from None

    @classmethod
    def from_config(cls, mapping: Mapping[str, str | Path], base: Path | None = None) -> "SegmenterRegistry":
        """Build from ``{script name: dictionary path}``; ``"Script:lang"`` keys register overrides."""
        reg = cls()
        for key, path in mapping.items():
            path = Path(path)
            if base is not None and not path.is_absolute():
                path = base / path
            name, _, lang = key.partition(":")
            try:
                script = Script.parse(name)
            except ValueError as exc:
                raise ConfigurationError(str(exc)) from None
            seg = DictionarySegmenter.from_file(path)
            if lang:
                reg.overrides[(script, lang)] = seg
            else:
                reg.segmenters[script] = seg
        return reg

    @classmethod
    def from_json(cls, path: str | Path) -> "SegmenterRegistry":
        path = Path(path)
        try:
            mapping = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            raise ConfigurationError(f"cannot load segmenter config {path}: {exc}") from None
        return cls.from_config(mapping, base=path.parent)

    @classmethod
    def default(cls) -> "SegmenterRegistry":
        root = resources.files("corelab") / "data" / "dictionaries"
        with resources.as_file(root) as d:
            return cls.from_json(Path(d) / "segmenters.json")


def _script_runs(chunk: str) -> list[tuple[str, Script]]:
    # Common/Inherited code points stick to the run they appear in (leading
    # ones join the first real run); only a change between two real scripts splits.
    runs: list[list] = []
    cur, cur_script = [], None
    for ch in chunk:
        s = script_of(ch)
        if s in NEUTRAL or cur_script is None or s == cur_script:
            cur.append(ch)
            if s not in NEUTRAL and cur_script is None:
                cur_script = s
            continue
        runs.append(["".join(cur), cur_script])
        cur, cur_script = [ch], s
    if cur:
        runs.append(["".join(cur), cur_script if cur_script is not None else Script.COMMON])
    return [(t, s) for t, s in runs]


def _split_neutral(run: str) -> list[tuple[str, bool]]:
    """Split an unspaced run into (piece, is_neutral) pieces."""
    pieces: list[tuple[str, bool]] = []
    for ch in run:
        neutral = script_of(ch) == Script.COMMON
        if pieces and pieces[-1][1] == neutral:
            pieces[-1] = (pieces[-1][0] + ch, neutral)
        elif pieces and script_of(ch) == Script.INHERITED:
            pieces[-1] = (pieces[-1][0] + ch, pieces[-1][1])
        else:
            pieces.append((ch, neutral))
    return pieces


def _words(chunk: str, segmenters: SegmenterRegistry, language_hint: str | None) -> Iterator[str]:
    for run, script in _script_runs(chunk):
        if script not in UNSPACED:
            yield run
            continue
        seg = segmenters.get(script, language_hint)
        for piece, neutral in _split_neutral(run):
            if neutral:
                yield piece
            else:
                yield from seg.segment(piece)


def tokenize(
    text: str | bytes,
    language_hint: str | None = None,
    segmenters: SegmenterRegistry | None = None,
) -> TokenizedText:
    """Split ``text`` into word tokens carrying byte offsets and a script.

    Whitespace delimits words; a chunk mixing scripts is cut at each script
    change, and runs in an unspaced script (Han, Kana, Thai, Myanmar) are
    segmented by the registered dictionary for that script.
    """
    source = normalize(text)
    if segmenters is None:
        segmenters = _default_registry()
    tokens = []
    pos = 0  # byte offset
    for chunk, is_space in _whitespace_chunks(source):
        if is_space:
            pos += len(chunk.encode("utf-8"))
            continue
        for word in _words(chunk, segmenters, language_hint):
            size = len(word.encode("utf-8"))
            tokens.append(Token(word, pos, pos + size, classify_script(word)))
            pos += size
    return TokenizedText(source, tuple(tokens))


def _whitespace_chunks(text: str) -> Iterator[tuple[str, bool]]:
    start = 0
    for i in range(1, len(text) + 1):
        if i == len(text) or text[i].isspace() != text[start].isspace():
            yield text[start:i], text[start].isspace()
            start = i


_DEFAULT: SegmenterRegistry | None = None


def _default_registry() -> SegmenterRegistry:
    global _DEFAULT
    if _DEFAULT is None:
        _DEFAULT = SegmenterRegistry.default()
    return _DEFAULT


def segment_steps(reasoning: str) -> StepSequence:
    """Split reasoning into newline-delimited steps, dropping blank lines."""
    text = reasoning.replace("\r\n", "\n").replace("\r", "\n")
    steps = tuple(line for line in text.split("\n") if line.strip())
    return StepSequence(steps, reasoning)
