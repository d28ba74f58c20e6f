"""Tokenization and numeric masking applied before grouping."""

from dataclasses import dataclass
from typing import List

from .errors import EmptyContent

WILDCARD = "<*>"


@dataclass(frozen=True)
class TokenizedLog:
    record_index: int
    tokens: tuple
    masked_tokens: tuple


def tokenize(content: str) -> List[str]:
    tokens = content.split()
    if not tokens:
        raise EmptyContent("log content is empty")
    return tokens


def canonical(content: str) -> str:
    """Whitespace-normalized form used for matching: tokens joined by one space."""
    return " ".join(content.split())


def has_digit(token: str) -> bool:
    return any(ch.isdecimal() for ch in token)


def mask_numerics(tokens) -> List[str]:
    return [WILDCARD if has_digit(t) else t for t in tokens]


def tokenize_log(record_index: int, content: str) -> TokenizedLog:
    tokens = tokenize(content)
    return TokenizedLog(record_index, tuple(tokens), tuple(mask_numerics(tokens)))
