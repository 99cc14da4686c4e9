"""Code-point to writing-system table.

The table below is the single source of script assignments. Letters and marks
are looked up by range; digits, punctuation, symbols, separators and control
characters are Common regardless of the block they sit in (so ASCII digits
and Devanagari digits alike are Common). Generic combining marks and joiners
are Inherited: they never start a new token and never vote in
:func:`classify_script`. Letters outside every listed range are Other.
"""

from __future__ import annotations

import bisect
import enum
import unicodedata
from collections import Counter

TABLE_VERSION = f"corelab-scripts-1/unicode-{unicodedata.unidata_version}"


class Script(str, enum.Enum):
    LATIN = "Latin"
    GREEK = "Greek"
    CYRILLIC = "Cyrillic"
    ARMENIAN = "Armenian"
    HEBREW = "Hebrew"
    ARABIC = "Arabic"
    DEVANAGARI = "Devanagari"
    BENGALI = "Bengali"
    GURMUKHI = "Gurmukhi"
    GUJARATI = "Gujarati"
    ORIYA = "Oriya"
    TAMIL = "Tamil"
    TELUGU = "Telugu"
    KANNADA = "Kannada"
    MALAYALAM = "Malayalam"
    SINHALA = "Sinhala"
    THAI = "Thai"
    LAO = "Lao"
    TIBETAN = "Tibetan"
    MYANMAR = "Myanmar"
    GEORGIAN = "Georgian"
    HANGUL = "Hangul"
    ETHIOPIC = "Ethiopic"
    KHMER = "Khmer"
    KANA = "Kana"
    HAN = "Han"
    COMMON = "Common"
    INHERITED = "Inherited"
    OTHER = "Other"

    def __str__(self) -> str:
        return self.value

    @classmethod
    def parse(cls, name: str) -> "Script":
        for member in cls:
            if member.value.lower() == name.lower() or member.name == name.upper():
                return member
        raise ValueError(f"unknown script name {name!r}")


# Scripts written without spaces between words; tokenize needs a dictionary.
UNSPACED = frozenset({Script.HAN, Script.KANA, Script.THAI, Script.MYANMAR})

# Scripts that carry no language signal.
NEUTRAL = frozenset({Script.COMMON, Script.INHERITED})

_INHERITED_RANGES = [
    (0x0300, 0x036F),
    (0x1AB0, 0x1AFF),
    (0x1DC0, 0x1DFF),
    (0x200C, 0x200D),
    (0x20D0, 0x20FF),
    (0xFE00, 0xFE0F),
    (0xFE20, 0xFE2F),
]

_RANGES = [
    (0x0041, 0x024F, Script.LATIN),
    (0x0250, 0x02AF, Script.LATIN),
    (0x02B0, 0x02FF, Script.COMMON),
    (0x0370, 0x03FF, Script.GREEK),
    (0x0400, 0x052F, Script.CYRILLIC),
    (0x0530, 0x058F, Script.ARMENIAN),
    (0x0590, 0x05FF, Script.HEBREW),
    (0x0600, 0x06FF, Script.ARABIC),
    (0x0750, 0x077F, Script.ARABIC),
    (0x08A0, 0x08FF, Script.ARABIC),
    (0x0900, 0x097F, Script.DEVANAGARI),
    (0x0980, 0x09FF, Script.BENGALI),
    (0x0A00, 0x0A7F, Script.GURMUKHI),
    (0x0A80, 0x0AFF, Script.GUJARATI),
    (0x0B00, 0x0B7F, Script.ORIYA),
    (0x0B80, 0x0BFF, Script.TAMIL),
    (0x0C00, 0x0C7F, Script.TELUGU),
    (0x0C80, 0x0CFF, Script.KANNADA),
    (0x0D00, 0x0D7F, Script.MALAYALAM),
    (0x0D80, 0x0DFF, Script.SINHALA),
    (0x0E00, 0x0E7F, Script.THAI),
    (0x0E80, 0x0EFF, Script.LAO),
    (0x0F00, 0x0FFF, Script.TIBETAN),
    (0x1000, 0x109F, Script.MYANMAR),
    (0x10A0, 0x10FF, Script.GEORGIAN),
    (0x1100, 0x11FF, Script.HANGUL),
    (0x1200, 0x139F, Script.ETHIOPIC),
    (0x1780, 0x17FF, Script.KHMER),
    (0x19E0, 0x19FF, Script.KHMER),
    (0x1C90, 0x1CBF, Script.GEORGIAN),
    (0x1D00, 0x1DBF, Script.LATIN),
    (0x1E00, 0x1EFF, Script.LATIN),
    (0x1F00, 0x1FFF, Script.GREEK),
    (0x2C60, 0x2C7F, Script.LATIN),
    (0x2D00, 0x2D2F, Script.GEORGIAN),
    (0x2D80, 0x2DDF, Script.ETHIOPIC),
    (0x2DE0, 0x2DFF, Script.CYRILLIC),
    (0x2E80, 0x2FDF, Script.HAN),
    (0x3005, 0x3005, Script.HAN),
    (0x3040, 0x309F, Script.KANA),
    (0x30A0, 0x30FF, Script.KANA),
    (0x3130, 0x318F, Script.HANGUL),
    (0x31F0, 0x31FF, Script.KANA),
    (0x3400, 0x4DBF, Script.HAN),
    (0x4E00, 0x9FFF, Script.HAN),
    (0xA640, 0xA69F, Script.CYRILLIC),
    (0xA720, 0xA7FF, Script.LATIN),
    (0xA8E0, 0xA8FF, Script.DEVANAGARI),
    (0xA960, 0xA97F, Script.HANGUL),
    (0xA9E0, 0xA9FF, Script.MYANMAR),
    (0xAA60, 0xAA7F, Script.MYANMAR),
    (0xAB00, 0xAB2F, Script.ETHIOPIC),
    (0xAB30, 0xAB6F, Script.LATIN),
    (0xAC00, 0xD7FF, Script.HANGUL),
    (0xF900, 0xFAFF, Script.HAN),
    (0xFB00, 0xFB06, Script.LATIN),
    (0xFB1D, 0xFB4F, Script.HEBREW),
    (0xFB50, 0xFDFF, Script.ARABIC),
    (0xFE70, 0xFEFF, Script.ARABIC),
    (0xFF21, 0xFF3A, Script.LATIN),
    (0xFF41, 0xFF5A, Script.LATIN),
    (0xFF66, 0xFF9F, Script.KANA),
    (0xFFA0, 0xFFDC, Script.HANGUL),
    (0x1E7E0, 0x1E7FF, Script.ETHIOPIC),
    (0x20000, 0x3134F, Script.HAN),
]
_STARTS = [r[0] for r in _RANGES]

_NEUTRAL_CATEGORIES = ("N", "P", "S", "Z", "C")


def script_of(ch: str) -> Script:
    """Script of a single code point. Total over all code points."""
    cp = ord(ch)
    for lo, hi in _INHERITED_RANGES:
        if lo <= cp <= hi:
            return Script.INHERITED
    if unicodedata.category(ch)[0] in _NEUTRAL_CATEGORIES:
        return Script.COMMON
    i = bisect.bisect_right(_STARTS, cp) - 1
    if i >= 0 and cp <= _RANGES[i][1]:
        return _RANGES[i][2]
    return Script.OTHER


def classify_script(word: str) -> Script:
    """Majority script over the non-Common code points of ``word``.

    Ties go to whichever tied script occurs first in the word; a word made only
    of Common/Inherited code points is Common.
    """
    if not word:
        raise ValueError("classify_script needs a non-empty word")
    scripts = [s for s in map(script_of, word) if s not in NEUTRAL]
    if not scripts:
        return Script.COMMON
    counts = Counter(scripts)
    best = max(counts.values())
    for s in scripts:
        if counts[s] == best:
            return s
    raise AssertionError("unreachable")
