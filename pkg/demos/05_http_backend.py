#!/usr/bin/env python
"""05_http_backend.py

Parses a log file with a real model behind any OpenAI-compatible server
(vLLM, llama.cpp server, Ollama's /v1 endpoint, ...).

    LIBRELOG_BASE_URL=http://localhost:8000 LIBRELOG_MODEL=meta-llama/Meta-Llama-3-8B-Instruct \
        python demos/05_http_backend.py path/to/Apache_2k.log "[<Time>] [<Level>] <Content>"

Set LIBRELOG_API_KEY if the server wants a bearer token. Without
LIBRELOG_BASE_URL the script falls back to the mock backend.
"""

import os
import sys

from librelog.ingest import LogFormat, load_logs
from librelog.llm_backend import BackendConfig, HttpBackend
from librelog.parser import ParserConfig, parse_all
from librelog.synthetic import generate_corpus

url = os.environ.get("LIBRELOG_BASE_URL")
if url:
    backend_cfg = BackendConfig("http", url, os.environ.get("LIBRELOG_MODEL"), timeout_ms=120_000)
    HttpBackend(backend_cfg).probe()
else:
    print("LIBRELOG_BASE_URL not set; using the mock backend")
    backend_cfg = BackendConfig("mock")

if len(sys.argv) > 1:
    fmt = LogFormat.from_string(sys.argv[2]) if len(sys.argv) > 2 else None
    records = load_logs(sys.argv[1], fmt)
else:
    records = generate_corpus(5, 200, seed=1).contents

out = parse_all(records, ParserConfig(backend=backend_cfg))
s = out.stats
print(f"{len(out.assignments)} logs, {len(out.occurrences())} templates, {s.llm_calls} LLM calls, "
      f"{s.reflection_rounds} reflection rounds")
print(f"total {s.total_ms:.0f} ms = llm {s.llm_query_ms:.0f} + grouping {s.grouping_ms:.0f} "
      f"+ memory {s.memory_search_ms:.0f} + other")
for tid, n in sorted(out.occurrences().items(), key=lambda kv: -kv[1])[:15]:
    print(f"{n:6}  {out.memory.get(tid).placeholder_text}")
