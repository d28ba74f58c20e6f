"""librelog: unsupervised log parsing with grouping, an LLM backend and a template memory."""

from .evaluation import EvalReport, evaluate, grouping_accuracy, parsing_accuracy
from .grouping import GroupingTree, LogGroup, group_similarity
from .ingest import GroundTruthEntry, LogFormat, LogRecord, load_ground_truth, load_logs
from .llm_backend import BackendConfig, CompletionResult, HttpBackend, MockBackend, mock_consensus
from .memory import Template, TemplateMemory, to_regex
from .parser import ParseOutput, ParserConfig, StageTimings, fallback_template, parse_all, parse_group
from .preprocess import mask_numerics, tokenize
from .prompting import PromptSpec, build_prompt, extract_template
from .selection import SelectionConfig, cosine, jaccard, select_representatives

__version__ = "0.1.0"
