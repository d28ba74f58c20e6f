"""Template memory: regex templates kept sorted by token count."""

from __future__ import annotations

import bisect
import csv
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional

from .preprocess import WILDCARD, canonical

_HOLE = "(.+?)"


def to_regex(placeholder_text: str) -> str:
    """Anchored regex for a ``<*>`` template; each hole captures one or more chars."""
    parts = canonical(placeholder_text).split(WILDCARD)
    return "^" + _HOLE.join(re.escape(p) for p in parts) + "$"


@dataclass
class Template:
    template_id: int
    placeholder_text: str
    token_count: int
    regex_text: str
    match_count: int = 0
    pattern: "re.Pattern" = field(repr=False, compare=False, default=None)

    @classmethod
    def create(cls, template_id: int, placeholder_text: str) -> "Template":
        text = canonical(placeholder_text)
        if not text:
            raise ValueError("template text is empty")
        regex = to_regex(text)
        return cls(template_id, text, len(text.split()), regex, 0, re.compile(regex, re.S))

    def matches(self, content: str) -> bool:
        return self.pattern.fullmatch(canonical(content)) is not None


class TemplateMemory:
    """Parsed templates sorted ascending by (token_count, template_id).

    Lookups bisect on token count to skip every template longer than the
    log, then try the remaining ones from the longest down. Writers take a
    lock and publish a fresh list, so concurrent readers always see a
    consistent snapshot.
    """

    def __init__(self):
        self._templates: List[Template] = []
        self._keys: List[tuple] = []
        self._by_text = {}
        self._by_id = {}
        self._next_id = 1
        self._lock = threading.Lock()
        self.candidates_scanned = 0

    def __len__(self):
        return len(self._templates)

    def __iter__(self):
        return iter(list(self._templates))

    @property
    def templates(self) -> List[Template]:
        return list(self._templates)

    def get(self, template_id: int) -> Template:
        return self._by_id[template_id]

    def find_text(self, placeholder_text: str) -> Optional[int]:
        return self._by_text.get(canonical(placeholder_text))

    def insert(self, placeholder_text: str, template_id: Optional[int] = None) -> int:
        text = canonical(placeholder_text)
        with self._lock:
            existing = self._by_text.get(text)
            if existing is not None:
                return existing
            if template_id is None:
                template_id = self._next_id
            elif template_id in self._by_id:
                raise ValueError(f"template id {template_id} already used")
            tpl = Template.create(template_id, text)
            key = (tpl.token_count, tpl.template_id)
            pos = bisect.bisect_left(self._keys, key)
            templates = self._templates[:pos] + [tpl] + self._templates[pos:]
            keys = self._keys[:pos] + [key] + self._keys[pos:]
            self._templates, self._keys = templates, keys
            self._by_text[text] = template_id
            self._by_id[template_id] = tpl
            self._next_id = max(self._next_id, template_id + 1)
            return template_id

    def candidates(self, token_count: int) -> Iterator[Template]:
        """Templates with at most ``token_count`` tokens, in scan order."""
        templates, keys = self._templates, self._keys
        i = bisect.bisect_right(keys, (token_count, float("inf")))
        # longest first; within one token count keep ascending id
        while i > 0:
            j = bisect.bisect_left(keys, (keys[i - 1][0], -1), 0, i)
            yield from templates[j:i]
            i = j

    def match(self, content: str, count: bool = True) -> Optional[int]:
        text = canonical(content)
        if not text:
            return None
        scanned = 0
        for tpl in self.candidates(len(text.split())):
            scanned += 1
            if tpl.pattern.fullmatch(text) is not None:
                if count:
                    with self._lock:
                        tpl.match_count += 1
                        self.candidates_scanned += scanned
                return tpl.template_id
        if count:
            with self._lock:
                self.candidates_scanned += scanned
        return None

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["TemplateId", "TokenCount", "PlaceholderText"])
            for tpl in self._templates:
                w.writerow([tpl.template_id, tpl.token_count, tpl.placeholder_text])

    @classmethod
    def from_csv(cls, path) -> "TemplateMemory":
        mem = cls()
        with Path(path).open(newline="", encoding="utf-8") as fh:
            for row in csv.DictReader(fh):
                mem.insert(row["PlaceholderText"], int(row["TemplateId"]))
        return mem


def memory_insert(memory: TemplateMemory, placeholder_text: str) -> int:
    return memory.insert(placeholder_text)


def memory_match(memory: TemplateMemory, content: str) -> Optional[int]:
    return memory.match(content)
