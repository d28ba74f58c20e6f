"""End-to-end parsing: grouping, memory lookup, LLM query, self-reflection, fallback."""

from __future__ import annotations

import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from .errors import BackendError, EmptyInput, UnequalTokenLength, UnparseableResponse
from .grouping import GroupingTree, LogGroup
from .ingest import LogRecord
from .llm_backend import BackendConfig, make_backend
from .memory import Template, TemplateMemory
from .preprocess import WILDCARD, canonical, mask_numerics, tokenize_log
from .prompting import build_prompt, extract_template
from .selection import SelectionConfig, select_representatives

logger = logging.getLogger(__name__)

SOURCE_MEMORY = "memory"
SOURCE_LLM = "llm"
SOURCE_FALLBACK = "fallback"


@dataclass
class ParserConfig:
    selection: SelectionConfig = field(default_factory=SelectionConfig)
    backend: BackendConfig = field(default_factory=BackendConfig)
    k_prefix: int = 3
    sim_threshold: float = 0.5
    reflection_enabled: bool = True
    max_reflections: int = 3
    threads: int = 1

    @property
    def max_attempts(self) -> int:
        return 1 + self.max_reflections if self.reflection_enabled else 1


@dataclass
class StageTimings:
    total_ms: float = 0.0
    llm_query_ms: float = 0.0
    grouping_ms: float = 0.0
    memory_search_ms: float = 0.0
    wall_ms: float = 0.0
    llm_calls: int = 0
    llm_failures: int = 0
    memory_hits: int = 0
    reflection_rounds: int = 0


@dataclass
class GroupResult:
    group_id: int
    size: int
    hits: Dict[int, int] = field(default_factory=dict)
    # (placeholder text, record indices, source) in creation order
    new_templates: List[tuple] = field(default_factory=list)
    llm_calls: int = 0
    llm_failures: int = 0
    reflection_rounds: int = 0
    llm_ms: float = 0.0
    memory_ms: float = 0.0
    elapsed_ms: float = 0.0


@dataclass
class ParseOutput:
    records: List[LogRecord]
    assignments: Dict[int, int]
    sources: Dict[int, str]
    memory: TemplateMemory
    stats: StageTimings
    groups: List[LogGroup]
    group_results: List[GroupResult]

    def template_text(self, index: int) -> str:
        return self.memory.get(self.assignments[index]).placeholder_text

    def occurrences(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for tid in self.assignments.values():
            counts[tid] = counts.get(tid, 0) + 1
        return counts


def fallback_template(contents: Sequence[str]) -> str:
    """Column consensus of equally long logs with digit-bearing tokens masked."""
    rows = [c.split() for c in contents]
    if not rows or not rows[0] or any(len(r) != len(rows[0]) for r in rows):
        raise UnequalTokenLength("fallback needs non-empty logs of equal token length")
    cols = [col[0] if all(t == col[0] for t in col) else WILDCARD for col in zip(*rows)]
    return " ".join(mask_numerics(cols))


def _solve_group(group: LogGroup, contents: Sequence[str], memory: TemplateMemory,
                 backend, cfg: ParserConfig) -> GroupResult:
    t_group = time.perf_counter()
    res = GroupResult(group.group_id, len(group.member_indices))

    t0 = time.perf_counter()
    work = []
    for idx in group.member_indices:
        tid = memory.match(contents[idx])
        if tid is None:
            work.append(idx)
        else:
            res.hits[idx] = tid
    res.memory_ms += (time.perf_counter() - t0) * 1000

    attempts = 0
    while work and attempts < cfg.max_attempts:
        rng = random.Random(f"{cfg.selection.rng_seed}:{group.group_id}:{attempts}")
        reps = select_representatives([(i, contents[i]) for i in work], cfg.selection, rng)
        prompt = build_prompt(reps)
        attempts += 1
        res.llm_calls += 1
        t0 = time.perf_counter()
        try:
            reply = backend.complete(prompt)
        except BackendError as exc:
            logger.warning("group %d: backend failed: %s", group.group_id, exc)
            res.llm_failures += 1
            continue
        finally:
            res.llm_ms += (time.perf_counter() - t0) * 1000
        try:
            text = extract_template(reply.text)
        except UnparseableResponse as exc:
            logger.debug("group %d: %s", group.group_id, exc)
            continue

        tpl = Template.create(0, text)
        matched = [i for i in work if tpl.pattern.fullmatch(canonical(contents[i]))]
        if matched:
            res.new_templates.append((tpl.placeholder_text, matched, SOURCE_LLM))
            done = set(matched)
            work = [i for i in work if i not in done]
    res.reflection_rounds = max(0, attempts - 1)

    if work:
        text = fallback_template([contents[i] for i in work])
        tpl = Template.create(0, text)
        ok = [i for i in work if tpl.pattern.fullmatch(canonical(contents[i]))]
        if ok:
            res.new_templates.append((tpl.placeholder_text, ok, SOURCE_FALLBACK))
        for i in work:
            if tpl.pattern.fullmatch(canonical(contents[i])) is None:
                own = " ".join(mask_numerics(contents[i].split()))
                res.new_templates.append((own, [i], SOURCE_FALLBACK))

    res.elapsed_ms = (time.perf_counter() - t_group) * 1000
    return res


def _commit(res: GroupResult, memory: TemplateMemory, assignments, sources) -> None:
    for idx, tid in res.hits.items():
        assignments[idx] = tid
        sources[idx] = SOURCE_MEMORY
    for text, members, source in res.new_templates:
        tid = memory.insert(text)
        for idx in members:
            assignments[idx] = tid
            sources[idx] = source


def parse_group(group: LogGroup, records: Sequence, memory: TemplateMemory,
                cfg: ParserConfig, backend=None) -> Dict[int, int]:
    """Parse one group and insert its new templates into ``memory``.

    Returns record index -> template id for every member of the group.
    """
    if backend is None:
        backend = make_backend(cfg.backend)
    contents = _contents(records)
    res = _solve_group(group, contents, memory, backend, cfg)
    assignments: Dict[int, int] = {}
    _commit(res, memory, assignments, {})
    return assignments


def _contents(records) -> List[str]:
    return [r.content if isinstance(r, LogRecord) else r for r in records]


def parse_all(records: Sequence, cfg: Optional[ParserConfig] = None,
              memory: Optional[TemplateMemory] = None, backend=None) -> ParseOutput:
    """Parse every record; ``records`` may be LogRecords or plain content strings.

    With ``cfg.threads > 1`` groups are solved concurrently against the
    memory as it stood after grouping, and their templates are committed in
    group order, so the result does not depend on thread scheduling. Stage
    timings are then summed over workers and ``total_ms`` is worker time
    plus the serial parts; ``wall_ms`` is always elapsed wall-clock time.
    """
    if not records:
        raise EmptyInput("nothing to parse")
    cfg = cfg or ParserConfig()
    memory = memory if memory is not None else TemplateMemory()
    backend = backend if backend is not None else make_backend(cfg.backend)
    if not isinstance(records[0], LogRecord):
        records = [LogRecord(i + 1, c, c) for i, c in enumerate(records)]
    contents = _contents(records)

    t_start = time.perf_counter()
    tree = GroupingTree(cfg.k_prefix, cfg.sim_threshold)
    for i, content in enumerate(contents):
        tree.insert(tokenize_log(i, content))
    groups = tree.groups()
    grouping_ms = (time.perf_counter() - t_start) * 1000

    assignments: Dict[int, int] = {}
    sources: Dict[int, str] = {}
    results: List[GroupResult] = []
    serial_ms = 0.0
    if cfg.threads <= 1:
        for g in groups:
            res = _solve_group(g, contents, memory, backend, cfg)
            _commit(res, memory, assignments, sources)
            results.append(res)
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            results = list(pool.map(lambda g: _solve_group(g, contents, memory, backend, cfg), groups))
        t0 = time.perf_counter()
        for res in results:
            _commit(res, memory, assignments, sources)
        serial_ms = (time.perf_counter() - t0) * 1000
    wall_ms = (time.perf_counter() - t_start) * 1000

    stats = StageTimings(grouping_ms=grouping_ms, wall_ms=wall_ms)
    for res in results:
        stats.llm_query_ms += res.llm_ms
        stats.memory_search_ms += res.memory_ms
        stats.llm_calls += res.llm_calls
        stats.llm_failures += res.llm_failures
        stats.memory_hits += len(res.hits)
        stats.reflection_rounds += res.reflection_rounds
    if cfg.threads <= 1:
        stats.total_ms = wall_ms
    else:
        stats.total_ms = grouping_ms + sum(r.elapsed_ms for r in results) + serial_ms

    return ParseOutput(list(records), assignments, sources, memory, stats, groups, results)
