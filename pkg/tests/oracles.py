"""Reference implementations that share no code with the package."""

from functools import lru_cache

import numpy as np


def jaccard_oracle(a, b):
    # enumeration over the distinct union, no set algebra
    union = []
    for t in list(a) + list(b):
        if t not in union:
            union.append(t)
    inter = [t for t in union if t in a and t in b]
    return len(inter) / len(union)


def cosine_oracle(a, b):
    vocab = sorted(set(a) | set(b))
    va = np.array([list(a).count(t) for t in vocab], dtype=float)
    vb = np.array([list(b).count(t) for t in vocab], dtype=float)
    return float(va @ vb / (np.linalg.norm(va) * np.linalg.norm(vb)))


def wildcard_match(template: str, text: str) -> bool:
    """Backtracking matcher where every <*> consumes one or more characters."""
    parts = template.split("<*>")

    @lru_cache(maxsize=None)
    def go(pi, ti):
        part = parts[pi]
        if not text.startswith(part, ti):
            return False
        ti += len(part)
        if pi == len(parts) - 1:
            return ti == len(text)
        return any(go(pi + 1, tj) for tj in range(ti + 1, len(text) + 1))

    return go(0, 0)


def brute_force_match(templates, content):
    """Scan every (id, token_count, text) template, longest first, no pruning."""
    text = " ".join(content.split())
    for tid, _, ph in sorted(templates, key=lambda t: (-t[1], t[0])):
        if wildcard_match(ph, text):
            return tid
    return None


def ga_reference(pred, truth):
    keys = list(truth)
    correct = 0
    for k in keys:
        pred_set = {j for j in keys if pred[j] == pred[k]}
        truth_set = {j for j in keys if truth[j] == truth[k]}
        correct += pred_set == truth_set
    return correct / len(keys)


def pa_reference(pred, truth):
    def norm(s):
        return " ".join(s.replace("(.*?)", "<*>").replace("(.+?)", "<*>").split())

    return sum(norm(pred[k]) == norm(truth[k]) for k in truth) / len(truth)
