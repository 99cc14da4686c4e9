"""Structured diagnostics.

Library code reports recoverable problems through the ``corelab`` logger with
a short machine-readable ``code``; the CLI renders each record as one line of
JSON on stderr.
"""

from __future__ import annotations

import json
import logging

logger = logging.getLogger("corelab")


def emit(code: str, level: int = logging.WARNING, **fields) -> None:
    logger.log(level, code, extra={"diag": {"code": code, **fields}})


class JsonLineFormatter(logging.Formatter):
    def format(self, record: logging.LogRecord) -> str:
        payload = {"level": record.levelname.lower()}
        payload.update(getattr(record, "diag", None) or {"message": record.getMessage()})
        return json.dumps(payload, ensure_ascii=False, sort_keys=True, default=str)
