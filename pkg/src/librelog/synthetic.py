"""Synthetic log corpora with known templates, for offline checks."""

from __future__ import annotations

import csv
import random
from dataclasses import dataclass
from pathlib import Path
from typing import List

from .preprocess import WILDCARD

_WORDS = (
    "accept add allocate block bytes cache check close commit connect data delete done "
    "error event fail fetch file flush free got host init invalid job lease load lock "
    "mark merge node open packet peer read ready receive release remove replica reply "
    "request resume retry send served session shutdown slot socket start state status "
    "stop store sync task terminate thread timeout transfer update user verify wait "
    "worker write"
).split()
_PUNCT = ("", "", "", ":", ",", "=", ".")


@dataclass
class Corpus:
    contents: List[str]
    templates: List[str]  # per line, parallel to contents
    template_set: List[str]

    def write(self, log_path, truth_path, header: bool = False) -> None:
        """Write a raw log file and a LineId,Content,EventTemplate CSV.

        With ``header=True`` each line gets a fake ``<Date> <Time> <Level>`` prefix.
        """
        rng = random.Random(len(self.contents))
        with Path(log_path).open("w", encoding="utf-8") as fh:
            for c in self.contents:
                if header:
                    fh.write(f"{rng.randint(101, 1231):04d} {rng.randint(0, 23):02d}:"
                             f"{rng.randint(0, 59):02d} INFO {c}\n")
                else:
                    fh.write(c + "\n")
        with Path(truth_path).open("w", newline="", encoding="utf-8") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["LineId", "Content", "EventTemplate"])
            for i, (c, t) in enumerate(zip(self.contents, self.templates), 1):
                w.writerow([i, c, t])


def _variable(rng: random.Random, kind: int, used: set) -> str:
    while True:
        if kind == 0:
            v = str(rng.randint(10, 10**9))
        elif kind == 1:
            v = f"blk_{rng.randint(-(10**12), 10**12)}"
        elif kind == 2:
            v = ".".join(str(rng.randint(0, 255)) for _ in range(4)) + f":{rng.randint(1024, 65535)}"
        elif kind == 3:
            v = f"0x{rng.getrandbits(40):x}{rng.randint(0, 9)}"
        else:
            v = f"/data/part-{rng.randint(0, 10**8)}/f{rng.randint(0, 999)}"
        if v not in used:
            used.add(v)
            return v


def _template(rng: random.Random, first_word: str) -> List[str]:
    n = rng.randint(2, 9)
    tokens = [first_word]
    for _ in range(n - 1):
        if rng.random() < 0.35:
            tokens.append(WILDCARD)
        else:
            tokens.append(rng.choice(_WORDS) + rng.choice(_PUNCT))
    if WILDCARD not in tokens:
        tokens[rng.randrange(1, len(tokens))] = WILDCARD
    return tokens


def generate_corpus(n_templates: int, n_lines: int, seed: int = 0) -> Corpus:
    """Shuffled corpus of ``n_lines`` logs drawn from ``n_templates`` templates.

    Static tokens carry no digits and every template starts with its own
    static word; each variable is one digit-bearing token whose value never
    repeats within a template slot. Every template occurs at least twice.
    """
    if n_lines < 2 * n_templates:
        raise ValueError("need at least two lines per template")
    rng = random.Random(seed)
    firsts = rng.sample([w.capitalize() for w in _WORDS], n_templates)
    template_tokens = [_template(rng, f) for f in firsts]

    counts = [2] * n_templates
    for _ in range(n_lines - 2 * n_templates):
        counts[rng.randrange(n_templates)] += 1

    contents, truths = [], []
    for tokens, count in zip(template_tokens, counts):
        used = [set() for _ in tokens]
        kinds = [rng.randrange(5) for _ in tokens]
        text = " ".join(tokens)
        for _ in range(count):
            line = [_variable(rng, kinds[i], used[i]) if t == WILDCARD else t
                    for i, t in enumerate(tokens)]
            contents.append(" ".join(line))
            truths.append(text)

    order = list(range(len(contents)))
    rng.shuffle(order)
    return Corpus([contents[i] for i in order], [truths[i] for i in order],
                  [" ".join(t) for t in template_tokens])
