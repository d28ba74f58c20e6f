"""Completion backends: OpenAI-compatible HTTP client and an offline consensus mock."""

from __future__ import annotations

import json
import logging
import os
import time
from dataclasses import dataclass
from typing import List, Optional

import httpx

from .errors import (
    ConfigError,
    MalformedLogList,
    MalformedResponse,
    TransportError,
    UnequalTokenLength,
)
from .preprocess import WILDCARD

logger = logging.getLogger(__name__)

API_KEY_ENV = "LIBRELOG_API_KEY"
BACKOFF_START_S = 0.5
LOG_LIST_PREFIX = "Log list:"


@dataclass(frozen=True)
class BackendConfig:
    kind: str = "mock"
    base_url: Optional[str] = None
    model_name: Optional[str] = None
    timeout_ms: int = 60_000
    max_retries: int = 3

    def __post_init__(self):
        if self.kind not in ("http", "mock"):
            raise ConfigError(f"unknown backend kind {self.kind!r}")
        if self.kind == "http" and not self.base_url:
            raise ConfigError("http backend needs base_url")
        if self.timeout_ms <= 0:
            raise ConfigError("timeout_ms must be positive")
        if self.max_retries < 0:
            raise ConfigError("max_retries must be non-negative")

    @property
    def temperature(self) -> float:
        # greedy decoding only; not configurable
        return 0.0


@dataclass(frozen=True)
class CompletionResult:
    text: str
    latency_ms: float


def mock_consensus(logs: List[str]) -> str:
    """Positionwise agreement of equally long token lists; disagreement -> ``<*>``."""
    if not logs:
        raise UnequalTokenLength("no logs to build a consensus from")
    rows = [log.split() for log in logs]
    width = len(rows[0])
    if width == 0 or any(len(r) != width for r in rows):
        raise UnequalTokenLength(f"token lengths differ: {sorted({len(r) for r in rows})}")
    out = []
    for col in zip(*rows):
        out.append(col[0] if all(t == col[0] for t in col) else WILDCARD)
    return " ".join(out)


def parse_log_list(prompt: str) -> List[str]:
    """Recover the list that follows the last ``Log list:`` line of a prompt."""
    for line in reversed(prompt.split("\n")):
        if line.startswith(LOG_LIST_PREFIX):
            try:
                logs = json.loads(line[len(LOG_LIST_PREFIX):])
            except ValueError as exc:
                raise MalformedLogList(f"log list is not parseable: {exc}") from exc
            if not isinstance(logs, list) or not logs or not all(isinstance(x, str) for x in logs):
                raise MalformedLogList("log list must be a non-empty list of strings")
            return logs
    raise MalformedLogList("prompt has no 'Log list:' line")


class MockBackend:
    """Deterministic stand-in for an LLM: answers with the column consensus."""

    def __init__(self, cfg: Optional[BackendConfig] = None):
        self.cfg = cfg or BackendConfig()

    def complete(self, prompt: str) -> CompletionResult:
        if not prompt:
            raise ValueError("empty prompt")
        t0 = time.perf_counter()
        logs = parse_log_list(prompt)
        try:
            template = mock_consensus(logs)
        except UnequalTokenLength as exc:
            raise MalformedLogList(str(exc)) from exc
        return CompletionResult(f"`{template}`", (time.perf_counter() - t0) * 1000)


class HttpBackend:
    """Client for ``POST {base_url}/v1/chat/completions``.

    Connection failures, timeouts, HTTP 429 and 5xx are retried up to
    ``max_retries`` times with exponential backoff starting at 0.5 s. The
    whole call, sleeps included, never runs past
    ``(max_retries + 1) * timeout_ms``.
    """

    def __init__(self, cfg: BackendConfig, client: Optional[httpx.Client] = None):
        if cfg.kind != "http":
            raise ConfigError("HttpBackend needs an http BackendConfig")
        self.cfg = cfg
        self.url = cfg.base_url.rstrip("/") + "/v1/chat/completions"
        headers = {"Content-Type": "application/json"}
        key = os.environ.get(API_KEY_ENV)
        if key:
            headers["Authorization"] = f"Bearer {key}"
        # httpx.Client is safe to share between threads
        self._client = client or httpx.Client(headers=headers)

    def _payload(self, prompt: str) -> dict:
        body = {
            "temperature": self.cfg.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        if self.cfg.model_name:
            body["model"] = self.cfg.model_name
        return body

    def complete(self, prompt: str) -> CompletionResult:
        if not prompt:
            raise ValueError("empty prompt")
        timeout = self.cfg.timeout_ms / 1000
        t0 = time.perf_counter()
        deadline = t0 + (self.cfg.max_retries + 1) * timeout
        body = self._payload(prompt)
        backoff = BACKOFF_START_S
        last_err = None

        for attempt in range(self.cfg.max_retries + 1):
            remaining = deadline - time.perf_counter()
            if remaining <= 0:
                break
            try:
                resp = self._client.post(self.url, json=body, timeout=min(timeout, remaining))
            except httpx.HTTPError as exc:
                last_err = exc
            else:
                if resp.status_code == 429 or resp.status_code >= 500:
                    last_err = f"HTTP {resp.status_code}"
                elif resp.status_code >= 400:
                    raise TransportError(f"HTTP {resp.status_code}: {resp.text[:200]}")
                else:
                    text = _first_choice_content(resp)
                    return CompletionResult(text, (time.perf_counter() - t0) * 1000)

            logger.debug("attempt %d/%d failed: %s", attempt + 1, self.cfg.max_retries + 1, last_err)
            if attempt < self.cfg.max_retries:
                pause = min(backoff, max(0.0, deadline - time.perf_counter()))
                time.sleep(pause)
                backoff *= 2

        raise TransportError(
            f"{self.url} failed after {self.cfg.max_retries + 1} attempts: {last_err}"
        )

    def probe(self) -> None:
        """Raise TransportError if the server cannot be reached at all."""
        url = self.cfg.base_url.rstrip("/") + "/v1/models"
        try:
            self._client.get(url, timeout=min(self.cfg.timeout_ms / 1000, 10.0))
        except httpx.HTTPError as exc:
            raise TransportError(f"cannot reach {self.cfg.base_url}: {exc}") from exc

    def close(self):
        self._client.close()


def _first_choice_content(resp: httpx.Response) -> str:
    try:
        data = resp.json()
        content = data["choices"][0]["message"]["content"]
    except (ValueError, KeyError, IndexError, TypeError) as exc:
        raise MalformedResponse(f"no choices[0].message.content in response: {exc!r}") from exc
    if not isinstance(content, str):
        raise MalformedResponse("choices[0].message.content is not a string")
    return content


def make_backend(cfg: BackendConfig):
    if cfg.kind == "mock":
        return MockBackend(cfg)
    return HttpBackend(cfg)


def complete(cfg: BackendConfig, prompt: str) -> CompletionResult:
    return make_backend(cfg).complete(prompt)
