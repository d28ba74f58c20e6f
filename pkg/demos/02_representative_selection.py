#!/usr/bin/env python
"""02_representative_selection.py

Picks the logs that go into the prompt. The longest log seeds the choice,
then each next pick is the one least similar to everything chosen so far.
Compares the Jaccard, cosine and random strategies on one group and shows
the resulting prompt.
"""

from librelog.prompting import build_prompt
from librelog.selection import SelectionConfig, jaccard, select_representatives

group = [
    (0, "Connection from 10.0.0.1 closed after 12 ms"),
    (1, "Connection from 10.0.0.1 closed after 15 ms"),
    (2, "Connection from 192.168.1.77 closed after 12 ms"),
    (3, "Connection from 172.16.3.4 closed after 9001 ms"),
    (4, "Connection from 10.0.0.1 closed after 12 ms"),
]

a, b = group[0][1].split(), group[3][1].split()
print(f"jaccard(log0, log3) = {jaccard(a, b):.3f}")

for strategy in ("jaccard", "cosine", "random"):
    picked = select_representatives(group, SelectionConfig(k=3, strategy=strategy, rng_seed=1))
    print(f"\n{strategy}:")
    for line in picked:
        print("   ", line)

print("\n--- prompt ---")
print(build_prompt(select_representatives(group, SelectionConfig(k=3))))
