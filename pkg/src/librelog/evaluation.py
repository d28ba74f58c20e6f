"""Grouping accuracy (GA) and parsing accuracy (PA) against ground truth."""

from __future__ import annotations

import csv
import logging
import re
from collections import defaultdict
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Mapping

from .errors import KeyMismatch
from .parser import ParseOutput, StageTimings
from .preprocess import WILDCARD

logger = logging.getLogger(__name__)

_PLACEHOLDER_RE = re.compile(r"<\*>|\(\.[*+]\??\)")

REPORT_HEADER = ["Dataset", "GA", "PA", "Messages", "PredTemplates", "TruthTemplates",
                 "TotalMs", "LLMMs", "GroupingMs", "MemoryMs"]


def canonicalize(template: str) -> str:
    """Spell every placeholder ``<*>`` and collapse whitespace; ``<*> <*>`` stays as is."""
    return " ".join(_PLACEHOLDER_RE.sub(WILDCARD, template).split())


def _align(pred: Mapping, truth: Mapping):
    missing = [k for k in truth if k not in pred]
    if missing:
        raise KeyMismatch(f"{len(missing)} ground-truth lines have no prediction, e.g. {missing[:5]}")
    extra = [k for k in pred if k not in truth]
    if extra:
        logger.warning("%d predicted lines are absent from ground truth and are ignored", len(extra))
    return list(truth), len(extra)


def grouping_accuracy(pred: Mapping, truth: Mapping) -> float:
    """Share of messages whose predicted co-group equals their true co-template set."""
    keys, _ = _align(pred, truth)
    if not keys:
        return 0.0
    pred_sets = defaultdict(set)
    truth_sets = defaultdict(set)
    for k in keys:
        pred_sets[pred[k]].add(k)
        truth_sets[truth[k]].add(k)
    correct = 0
    for members in pred_sets.values():
        some = next(iter(members))
        if truth_sets[truth[some]] == members:
            correct += len(members)
    return correct / len(keys)


def parsing_accuracy(pred: Mapping, truth: Mapping) -> float:
    keys, _ = _align(pred, truth)
    if not keys:
        return 0.0
    correct = sum(1 for k in keys if canonicalize(pred[k]) == canonicalize(truth[k]))
    return correct / len(keys)


@dataclass
class EvalReport:
    ga: float
    pa: float
    n_messages: int
    n_pred_templates: int
    n_truth_templates: int
    timings: StageTimings = field(default_factory=StageTimings)
    ignored_lines: int = 0
    dataset: str = ""

    def row(self) -> list:
        t = self.timings
        return [self.dataset, f"{self.ga:.4f}", f"{self.pa:.4f}", self.n_messages,
                self.n_pred_templates, self.n_truth_templates, f"{t.total_ms:.3f}",
                f"{t.llm_query_ms:.3f}", f"{t.grouping_ms:.3f}", f"{t.memory_search_ms:.3f}"]

    def to_csv(self, path) -> None:
        with Path(path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(REPORT_HEADER)
            w.writerow(self.row())

    def summary(self) -> str:
        t = self.timings
        return "\n".join([
            f"GA={self.ga:.4f} PA={self.pa:.4f}",
            f"messages={self.n_messages} predicted_templates={self.n_pred_templates} "
            f"truth_templates={self.n_truth_templates}",
            f"total_ms={t.total_ms:.1f} llm_ms={t.llm_query_ms:.1f} "
            f"grouping_ms={t.grouping_ms:.1f} memory_ms={t.memory_search_ms:.1f}",
            f"llm_calls={t.llm_calls} memory_hits={t.memory_hits} "
            f"reflection_rounds={t.reflection_rounds}",
        ])


def evaluate(output: ParseOutput, truth_by_line: Mapping[int, str],
             dataset: str = "") -> EvalReport:
    """Score a parse against ``{line_no: event_template}``."""
    pred_ids: Dict[int, int] = {}
    pred_text: Dict[int, str] = {}
    for idx, rec in enumerate(output.records):
        tid = output.assignments[idx]
        pred_ids[rec.line_no] = tid
        pred_text[rec.line_no] = output.memory.get(tid).placeholder_text
    ga = grouping_accuracy(pred_ids, truth_by_line)
    pa = parsing_accuracy(pred_text, truth_by_line)
    keys = [k for k in pred_ids if k in truth_by_line]
    return EvalReport(
        ga=ga,
        pa=pa,
        n_messages=len(keys),
        n_pred_templates=len({pred_ids[k] for k in keys}),
        n_truth_templates=len({truth_by_line[k] for k in keys}),
        timings=output.stats,
        ignored_lines=len(pred_ids) - len(keys),
        dataset=dataset,
    )


def truth_map(entries) -> Dict[int, str]:
    return {e.line_no: e.event_template for e in entries}
