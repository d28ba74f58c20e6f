"""Reading raw log files and LogHub-style ground-truth CSVs."""

from __future__ import annotations

import csv
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Optional

from .errors import DuplicateLineId, EmptyInput, FileNotReadable, MissingColumn

logger = logging.getLogger(__name__)

_FIELD_RE = re.compile(r"<([^<>]+)>")


@dataclass(frozen=True)
class LogRecord:
    line_no: int
    raw: str
    content: str
    # False when the header could not be split off and content fell back to raw
    extracted: bool = True


@dataclass(frozen=True)
class GroundTruthEntry:
    line_no: int
    content: str
    event_template: str


@dataclass(frozen=True)
class LogFormat:
    """Header layout of a log line.

    ``field_names`` lists the whitespace-separated header fields in order;
    ``content_field`` names the one that carries the message body. Formats
    written LogHub-style (``"[<Time>] [<Level>] <Content>"``) are accepted via
    :meth:`from_string`; when the format contains literal text besides the
    ``<Field>`` markers and whitespace, lines are split with the equivalent
    regular expression instead of plain whitespace assignment.
    """

    field_names: tuple
    content_field: str = "Content"
    pattern: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        names = tuple(self.field_names)
        object.__setattr__(self, "field_names", names)
        if names.count(self.content_field) != 1:
            raise ValueError(
                f"content field {self.content_field!r} must appear exactly once in {names}"
            )

    @classmethod
    def from_string(cls, fmt: str, content_field: str = "Content") -> "LogFormat":
        names = _FIELD_RE.findall(fmt)
        if not names:
            raise ValueError(f"no <Field> markers in format {fmt!r}")
        literal = _FIELD_RE.sub("", fmt)
        pattern = None
        if literal.strip():
            pattern = _format_regex(fmt)
        return cls(tuple(names), content_field, pattern)

    def split(self, line: str) -> Optional[str]:
        """Return the content part of ``line`` or None when it does not fit."""
        if self.pattern is not None:
            m = re.match(self.pattern, line)
            if m is None:
                return None
            content = m.group(self.content_field).strip()
            return content or None

        parts = line.split()
        n_fields = len(self.field_names)
        if len(parts) < n_fields:
            return None
        pos = self.field_names.index(self.content_field)
        n_after = n_fields - pos - 1
        # peel `pos` leading and `n_after` trailing whitespace fields off the line
        rest = line.strip()
        for _ in range(pos):
            rest = rest.split(None, 1)[1]
        for _ in range(n_after):
            rest = rest.rsplit(None, 1)[0]
        return rest.strip() or None


def _format_regex(fmt: str) -> str:
    pieces = re.split(r"(<[^<>]+>)", fmt)
    out = []
    for piece in pieces:
        if not piece:
            continue
        m = _FIELD_RE.fullmatch(piece)
        if m:
            name = m.group(1)
            out.append(f"(?P<{name}>.*)" if name == "Content" else f"(?P<{name}>.*?)")
        else:
            out.append(re.sub(r"\s+", r"\\s+", re.escape(piece).replace("\\ ", " ")))
    return "^" + "".join(out) + "$"


def load_logs(path, fmt: Optional[LogFormat] = None) -> List[LogRecord]:
    """Read one LogRecord per non-empty line of ``path``.

    Lines whose header cannot be split keep their raw text as content and
    are marked ``extracted=False``; they are never dropped.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8", errors="replace")
    except OSError as exc:
        raise FileNotReadable(f"cannot read {path}: {exc}") from exc

    records = []
    failures = 0
    for raw in text.splitlines():
        if not raw.strip():
            continue
        content = raw.strip()
        ok = True
        if fmt is not None:
            split = fmt.split(raw)
            if split is None:
                ok = False
                failures += 1
            else:
                content = split
        records.append(LogRecord(len(records) + 1, raw, content, ok))

    if not records:
        raise EmptyInput(f"{path} contains no log lines")
    if failures:
        logger.warning("%d of %d lines did not match the log format", failures, len(records))
    return records


def extraction_failures(records) -> int:
    return sum(1 for r in records if not r.extracted)


def load_ground_truth(path) -> List[GroundTruthEntry]:
    path = Path(path)
    try:
        fh = path.open(newline="", encoding="utf-8")
    except OSError as exc:
        raise FileNotReadable(f"cannot read {path}: {exc}") from exc
    with fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in ("LineId", "Content", "EventTemplate"):
            if col not in header:
                raise MissingColumn(f"{path}: missing column {col!r}")
        entries = {}
        for row in reader:
            line_no = int(row["LineId"])
            if line_no in entries:
                raise DuplicateLineId(f"{path}: LineId {line_no} appears twice")
            entries[line_no] = GroundTruthEntry(line_no, row["Content"], row["EventTemplate"])
    return [entries[k] for k in sorted(entries)]
