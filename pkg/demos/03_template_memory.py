#!/usr/bin/env python
"""03_template_memory.py

Stores templates as anchored regexes sorted by token count and matches new
logs against them. A template can never have more tokens than a log it
matches, so a binary search on token count cuts the candidate list before
any regex runs.
"""

import random
import time

from librelog.memory import TemplateMemory, to_regex

mem = TemplateMemory()
for t in ["sent <*> data", "open file <*>", "Receiving block <*> src: <*>", "<*> done"]:
    mem.insert(t)

print("regex for 'sent <*> data':", to_regex("sent <*> data"))
for t in mem.templates:
    print(f"  id={t.template_id} tokens={t.token_count}  {t.placeholder_text}")

for log in ["sent 100 bytes data", "open file /tmp/x", "job 7 done", "nothing matches"]:
    tid = mem.match(log)
    shown = mem.get(tid).placeholder_text if tid else None
    print(f"{log!r:35} -> {shown}")

# scale: pruning keeps the scan short when most templates are longer than the log
rng = random.Random(0)
big = TemplateMemory()
for i in range(5000):
    n = rng.randint(2, 30)
    big.insert(f"evt{i} " + " ".join(rng.choice(["a", "b", "<*>"]) for _ in range(n - 1)))
logs = [f"evt{rng.randrange(5000)} x y" for _ in range(2000)]
t0 = time.perf_counter()
for log in logs:
    big.match(log)
dt = time.perf_counter() - t0
print(f"\n2000 lookups in a 5000-template memory: {dt * 1000:.0f} ms, "
      f"{big.candidates_scanned / len(logs):.0f} candidates per lookup on average")
