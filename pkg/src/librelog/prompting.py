"""Prompt assembly and template extraction from model responses."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyLogList, UnparseableResponse
from .llm_backend import LOG_LIST_PREFIX
from .preprocess import WILDCARD

INSTRUCTION = (
    "I want you to act like an expert in log parsing. I will give you a list of logs "
    "that share one common template. You must identify and abstract all the dynamic "
    "variables in the logs with `<*>` and output ONE static log template that matches "
    "all the given logs. Print the template surrounded by backticks."
)
EXAMPLE_INPUT = [
    "try to connect to host: 172.16.254.1:5000, finished.",
    "try to connect to host: 173.16.254.2:6060, finished.",
]
EXAMPLE_OUTPUT = "`try to connect to host: <*>, finished.`"

_PREFIXES = ("log template:", "template:", "output:")
_FENCE_RE = re.compile(r"```[^\n`]*\n?(.*?)```", re.S)
_SPAN_RE = re.compile(r"`([^`]*)`")
_REGEX_HOLES = re.compile(r"\(\.[*+]\?\)")


@dataclass(frozen=True)
class PromptSpec:
    log_list: tuple
    instruction: str = INSTRUCTION
    example_input: tuple = tuple(EXAMPLE_INPUT)
    example_output: str = EXAMPLE_OUTPUT


def format_log_list(logs: Sequence[str]) -> str:
    return LOG_LIST_PREFIX + " [" + ", ".join(json.dumps(s, ensure_ascii=False) for s in logs) + "]"


def build_prompt(spec) -> str:
    """Render instruction, the fixed example and the ``Log list:`` line.

    Accepts a PromptSpec or a plain sequence of log contents.
    """
    if not isinstance(spec, PromptSpec):
        spec = PromptSpec(tuple(spec))
    if not spec.log_list:
        raise EmptyLogList("no logs to put in the prompt")
    example = (
        "Input: " + format_log_list(spec.example_input) + "\n"
        "Output: " + spec.example_output
    )
    return spec.instruction + "\n\n" + example + "\n\n" + format_log_list(spec.log_list)


def _strip_prefixes(text: str) -> str:
    changed = True
    while changed:
        changed = False
        text = text.strip()
        low = text.lower()
        for p in _PREFIXES:
            if low.startswith(p):
                text = text[len(p):]
                changed = True
                break
    return text


def extract_template(response: str) -> str:
    """Pull the template out of a raw model answer.

    Prefers the last backtick-quoted span (a fenced block counts), otherwise
    the last non-empty line. Known prefixes, quotes and stray backticks are
    removed, regex holes are turned back into ``<*>`` and whitespace is
    collapsed.
    """
    if not response or not response.strip():
        raise UnparseableResponse("empty response")

    candidate = None
    fences = _FENCE_RE.findall(response)
    if fences:
        lines = [ln for ln in fences[-1].splitlines() if ln.strip()]
        candidate = lines[-1] if lines else None
    if candidate is None:
        spans = [s for s in _SPAN_RE.findall(response) if s.strip()]
        if spans:
            candidate = spans[-1]
    if candidate is None:
        lines = [ln for ln in response.splitlines() if ln.strip()]
        candidate = lines[-1] if lines else ""

    text = _strip_prefixes(candidate).replace("`", "")
    text = _strip_prefixes(text)
    if len(text) >= 2 and text[0] == text[-1] and text[0] in "\"'":
        text = text[1:-1]
    text = _REGEX_HOLES.sub(WILDCARD, text)
    text = " ".join(text.split())
    if not text:
        raise UnparseableResponse(f"nothing left after post-processing {response!r}")
    return text
