"""Command-line front end: ``librelog {parse,eval,bench}``."""

from __future__ import annotations

import argparse
import csv
import logging
import sys
from pathlib import Path

from .errors import (
    ConfigError,
    DuplicateLineId,
    EmptyInput,
    FileNotReadable,
    KeyMismatch,
    MissingColumn,
    TransportError,
)
from .evaluation import evaluate, truth_map
from .ingest import LogFormat, load_ground_truth, load_logs
from .llm_backend import BackendConfig, HttpBackend, make_backend
from .memory import TemplateMemory
from .parser import ParserConfig, parse_all
from .selection import STRATEGIES, SelectionConfig

logger = logging.getLogger("librelog")

EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_BACKEND, EXIT_KEYS = 0, 1, 2, 3, 4
INPUT_ERRORS = (FileNotReadable, EmptyInput, MissingColumn, DuplicateLineId)
BENCH_HEADER = ["Dataset", "Messages", "TotalMs", "LLMMs", "GroupingMs", "MemoryMs",
                "LLMCalls", "MemoryHits", "ReflectionRounds"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key=value file; keys mirror the long flag names")
    p.add_argument("--input", help="raw log file")
    p.add_argument("--format", dest="log_format", help='e.g. "<Date> <Time> <Level> <Content>"')
    p.add_argument("--ground-truth", help="CSV with LineId,Content,EventTemplate")
    p.add_argument("--backend", choices=["mock", "http"], default="mock")
    p.add_argument("--base-url")
    p.add_argument("--model")
    p.add_argument("--timeout-ms", type=int, default=60_000)
    p.add_argument("--max-retries", type=int, default=3)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--sample-cap", type=int, default=200)
    p.add_argument("--selection", choices=STRATEGIES, default="jaccard")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--no-reflection", action="store_true")
    p.add_argument("--max-reflections", type=int, default=3)
    p.add_argument("--k-prefix", type=int, default=3)
    p.add_argument("--sim-threshold", type=float, default=0.5)
    p.add_argument("--memory-in")
    p.add_argument("--memory-out")
    p.add_argument("--out-dir", default=".")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("-v", "--verbose", action="store_true")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="librelog", description="Unsupervised LLM-backed log parser")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_text in (("parse", "parse a log file"),
                            ("eval", "parse and score against ground truth"),
                            ("bench", "parse and report stage timings")):
        _add_common(sub.add_parser(name, help=help_text))
    return parser


def read_config_file(path) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment, dashes in keys map to underscores."""
    out = {}
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{n}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lstrip("-").replace("-", "_")
        if key == "format":
            key = "log_format"
        out[key] = value
    return out


def parse_args(argv):
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    if args.config:
        sub = parser._subparsers._group_actions[0].choices[args.command]
        known = {a.dest: a for a in sub._actions}
        defaults = {}
        for key, value in read_config_file(args.config).items():
            action = known.get(key)
            if action is None or key == "config":
                raise ConfigError(f"unknown config key {key!r}")
            if isinstance(action, argparse._StoreTrueAction):
                defaults[key] = value.lower() in ("1", "true", "yes", "on")
            elif action.type is not None:
                try:
                    defaults[key] = action.type(value)
                except ValueError as exc:
                    raise ConfigError(f"bad value for {key}: {value!r}") from exc
            else:
                defaults[key] = value
        sub.set_defaults(**defaults)
        args = parser.parse_args(argv)
    return args


def config_from_args(args) -> ParserConfig:
    if not args.input:
        raise ConfigError("--input is required")
    if args.threads < 1:
        raise ConfigError("--threads must be at least 1")
    if args.max_reflections < 0:
        raise ConfigError("--max-reflections must be non-negative")
    selection = SelectionConfig(args.k, args.sample_cap, args.selection, args.seed)
    backend = BackendConfig(args.backend, args.base_url, args.model, args.timeout_ms,
                            args.max_retries)
    return ParserConfig(selection, backend, args.k_prefix, args.sim_threshold,
                        not args.no_reflection, args.max_reflections, args.threads)


def write_structured(output, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["LineId", "Content", "EventId", "EventTemplate"])
        for idx, rec in enumerate(output.records):
            tid = output.assignments[idx]
            w.writerow([rec.line_no, rec.content, f"E{tid}", output.memory.get(tid).placeholder_text])


def write_templates(output, path) -> None:
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["EventId", "EventTemplate", "Occurrences"])
        for tid, n in sorted(output.occurrences().items()):
            w.writerow([f"E{tid}", output.memory.get(tid).placeholder_text, n])


def _run(args) -> int:
    cfg = config_from_args(args)
    if args.command == "eval" and not args.ground_truth:
        raise ConfigError("eval needs --ground-truth")
    fmt = LogFormat.from_string(args.log_format) if args.log_format else None
    try:
        records = load_logs(args.input, fmt)
        truth = truth_map(load_ground_truth(args.ground_truth)) if args.command == "eval" else None
        memory = TemplateMemory.from_csv(args.memory_in) if args.memory_in else TemplateMemory()
    except INPUT_ERRORS as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    backend = make_backend(cfg.backend)
    if isinstance(backend, HttpBackend):
        try:
            backend.probe()
        except TransportError as exc:
            print(f"backend unreachable: {exc}", file=sys.stderr)
            return EXIT_BACKEND

    output = parse_all(records, cfg, memory=memory, backend=backend)

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    write_structured(output, out_dir / "structured.csv")
    write_templates(output, out_dir / "templates.csv")
    if args.memory_out:
        output.memory.to_csv(args.memory_out)
    dataset = Path(args.input).stem

    if args.command == "eval":
        try:
            report = evaluate(output, truth, dataset)
        except KeyMismatch as exc:
            print(f"ground truth mismatch: {exc}", file=sys.stderr)
            return EXIT_KEYS
        report.to_csv(out_dir / "report.csv")
        print(report.summary())
    elif args.command == "bench":
        s = output.stats
        row = [dataset, len(records), f"{s.total_ms:.3f}", f"{s.llm_query_ms:.3f}",
               f"{s.grouping_ms:.3f}", f"{s.memory_search_ms:.3f}", s.llm_calls,
               s.memory_hits, s.reflection_rounds]
        with (out_dir / "bench.csv").open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(BENCH_HEADER)
            w.writerow(row)
        for name, value in zip(BENCH_HEADER, row):
            print(f"{name}={value}")
    else:
        print(f"parsed {len(records)} lines into {len(output.occurrences())} templates "
              f"({output.stats.llm_calls} LLM calls)")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = parse_args(sys.argv[1:] if argv is None else argv)
        logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                            format="%(levelname)s %(name)s: %(message)s")
        return _run(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
