"""Picking diverse representative logs from a group for the prompt."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

from .errors import ConfigError, EmptyGroup, EmptyTokenSet

STRATEGIES = ("jaccard", "cosine", "random")


@dataclass(frozen=True)
class SelectionConfig:
    k: int = 3
    sample_cap: int = 200
    strategy: str = "jaccard"
    rng_seed: int = 0

    def __post_init__(self):
        if not 1 <= self.k <= 10:
            raise ConfigError(f"k must be within 1..10, got {self.k}")
        if self.sample_cap < 1:
            raise ConfigError(f"sample_cap must be positive, got {self.sample_cap}")
        if self.strategy not in STRATEGIES:
            raise ConfigError(f"unknown selection strategy {self.strategy!r}")


def jaccard(a, b) -> float:
    a, b = set(a), set(b)
    if not a or not b:
        raise EmptyTokenSet("jaccard of an empty token set")
    return len(a & b) / len(a | b)


def cosine(a, b) -> float:
    """Cosine of the token-count vectors of two token sequences."""
    ca = a if isinstance(a, Counter) else Counter(a)
    cb = b if isinstance(b, Counter) else Counter(b)
    if not ca or not cb:
        raise EmptyTokenSet("cosine of an empty token multiset")
    if len(ca) > len(cb):
        ca, cb = cb, ca
    dot = sum(n * cb[t] for t, n in ca.items() if t in cb)
    if dot == 0:
        return 0.0
    norm = math.sqrt(sum(n * n for n in ca.values())) * math.sqrt(sum(n * n for n in cb.values()))
    return min(1.0, dot / norm)


def _farthest_point(items, features, sim: Callable, k: int) -> List[int]:
    # items are sorted by record index, so "first minimum" == smallest index
    n = len(items)
    seed = max(range(n), key=lambda i: (len(items[i][1]), -items[i][0]))
    chosen = [seed]
    closest = [sim(features[seed], features[i]) for i in range(n)]
    taken = [False] * n
    taken[seed] = True
    while len(chosen) < min(k, n):
        pick = None
        for i in range(n):
            if not taken[i] and (pick is None or closest[i] < closest[pick]):
                pick = i
        chosen.append(pick)
        taken[pick] = True
        for i in range(n):
            if not taken[i]:
                s = sim(features[pick], features[i])
                if s > closest[i]:
                    closest[i] = s
    return chosen


def select_representatives(
    group_logs: Sequence[Tuple[int, str]],
    cfg: SelectionConfig,
    rng: Optional[random.Random] = None,
) -> List[str]:
    """Return up to ``cfg.k`` contents that together show the group's variability.

    The group is first down-sampled to ``cfg.sample_cap`` logs. For the
    similarity strategies the longest log seeds the selection and each next
    pick is the candidate whose highest similarity to anything already picked
    is lowest; ties go to the smaller record index.
    """
    if not group_logs:
        raise EmptyGroup("cannot select from an empty group")
    if rng is None:
        rng = random.Random(cfg.rng_seed)

    items = sorted(group_logs)
    if len(items) > cfg.sample_cap:
        items = sorted(rng.sample(items, cfg.sample_cap))

    if cfg.strategy == "random":
        return [c for _, c in rng.sample(items, min(cfg.k, len(items)))]

    if cfg.strategy == "jaccard":
        features = [frozenset(c.split()) for _, c in items]
        sim = jaccard
    else:
        features = [Counter(c.split()) for _, c in items]
        sim = cosine
    return [items[i][1] for i in _farthest_point(items, features, sim, cfg.k)]
