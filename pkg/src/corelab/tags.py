"""Language tags attached to tokens."""

from __future__ import annotations

import re
from dataclasses import dataclass

_ISO = re.compile(r"^[a-z]{2,3}$")

INDEPENDENT_LABEL = "independent"
UNKNOWN_LABEL = "unknown"


@dataclass(frozen=True, order=True)
class LanguageTag:
    """``kind`` is ``"iso"``, ``"independent"`` or ``"unknown"``; ``code`` is set only for iso."""

    kind: str
    code: str = ""

    @classmethod
    def iso(cls, code: str) -> "LanguageTag":
        if not _ISO.match(code):
            raise ValueError(f"not a lowercase ISO 639-1/3 code: {code!r}")
        return cls("iso", code)

    @classmethod
    def parse(cls, label: str) -> "LanguageTag":
        if label == INDEPENDENT_LABEL:
            return INDEPENDENT
        if label == UNKNOWN_LABEL:
            return UNKNOWN
        return cls.iso(label)

    @property
    def is_iso(self) -> bool:
        return self.kind == "iso"

    def __str__(self) -> str:
        return self.code if self.is_iso else self.kind


INDEPENDENT = LanguageTag(INDEPENDENT_LABEL)
UNKNOWN = LanguageTag(UNKNOWN_LABEL)
