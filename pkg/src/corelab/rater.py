"""Optional client for an external code-switching rater.

The endpoint receives ``{"prompt": ...}`` as JSON and answers with the score
as plain text. Offline rating files (see :func:`corelab.corpus.read_ratings`)
remain the primary path; nothing here runs unless called.
"""

from __future__ import annotations

import os
import re
from concurrent.futures import ThreadPoolExecutor
from importlib import resources
from typing import Sequence

import httpx

from .corpus import DIMENSIONS, RatingRecord, ReasoningTrace
from .diagnostics import emit
from .errors import ConfigurationError, RatingUnavailableError, TransportError

ENV_VAR = "CORELAB_RATER_URL"
MAX_ATTEMPTS = 3
DEFAULT_CONCURRENCY = 4
DEFAULT_TIMEOUT = 60.0

_SCORE = re.compile(r"\s*([123])\s*")


def render_prompt(trace: ReasoningTrace, dimension: str, template: str | None = None) -> str:
    """Fill ``{reasoning}`` in ``template`` (the bundled rubric for ``dimension`` by default)."""
    if dimension not in DIMENSIONS:
        raise ValueError(f"unknown rating dimension {dimension!r}")
    if template is None:
        template = (resources.files("corelab") / "data" / "templates" / f"{dimension}.txt").read_text(encoding="utf-8")
    elif "{reasoning}" not in template:
        raise ConfigurationError("rating template has no {reasoning} placeholder")
    return template.replace("{reasoning}", trace.reasoning)


def parse_score(body: str) -> int | None:
    m = _SCORE.fullmatch(body)
    return int(m.group(1)) if m else None


def resolve_endpoint(endpoint: str | None = None) -> str:
    endpoint = endpoint or os.environ.get(ENV_VAR)
    if not endpoint:
        raise ConfigurationError(f"no rater endpoint configured (set {ENV_VAR})")
    return endpoint


def request_rating(
    trace: ReasoningTrace,
    dimension: str,
    endpoint: str | None = None,
    *,
    client: httpx.Client | None = None,
    timeout: float = DEFAULT_TIMEOUT,
    rater: str = "",
    template: str | None = None,
) -> RatingRecord:
    """Ask the rater for one score, retrying malformed replies up to three times in total."""
    url = resolve_endpoint(endpoint)
    payload = {"prompt": render_prompt(trace, dimension, template)}
    own = client is None
    client = client or httpx.Client(timeout=timeout)
    try:
        for attempt in range(1, MAX_ATTEMPTS + 1):
            try:
                resp = client.post(url, json=payload, timeout=timeout)
            except httpx.HTTPError as exc:
                raise TransportError(f"trace {trace.id}: {exc}") from exc
            if not resp.is_success:
                raise TransportError(f"trace {trace.id}: rater answered HTTP {resp.status_code}")
            score = parse_score(resp.text)
            if score is not None:
                return RatingRecord(trace.id, dimension, score, rater or url)
            emit("rating-malformed", trace_id=trace.id, attempt=attempt, body=resp.text[:80])
    finally:
        if own:
            client.close()
    raise RatingUnavailableError(f"trace {trace.id}: no valid {dimension} score after {MAX_ATTEMPTS} attempts")


def request_ratings(
    traces: Sequence[ReasoningTrace],
    dimension: str,
    endpoint: str | None = None,
    *,
    client: httpx.Client | None = None,
    concurrency: int = DEFAULT_CONCURRENCY,
    timeout: float = DEFAULT_TIMEOUT,
    template: str | None = None,
) -> list[RatingRecord]:
    """Rate many traces with at most ``concurrency`` requests in flight; results keep input order."""
    url = resolve_endpoint(endpoint)
    own = client is None
    client = client or httpx.Client(timeout=timeout)
    try:
        with ThreadPoolExecutor(max_workers=max(1, concurrency)) as pool:
            return list(pool.map(
                lambda t: request_rating(t, dimension, url, client=client, timeout=timeout, template=template), traces))
    finally:
        if own:
            client.close()
