"""Fixed-depth grouping tree: length bucket -> K prefix tokens -> similarity leaves."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List

from .errors import LengthMismatch
from .preprocess import WILDCARD, TokenizedLog


@dataclass
class LogGroup:
    group_id: int
    token_length: int
    signature: List[str]
    member_indices: List[int] = field(default_factory=list)


class _Node:
    __slots__ = ("children", "groups")

    def __init__(self):
        self.children: Dict[str, _Node] = {}
        self.groups: List[LogGroup] = []


def group_similarity(signature, masked_tokens) -> float:
    """Fraction of positions where the signature is a wildcard or equals the token."""
    if len(signature) != len(masked_tokens):
        raise LengthMismatch(f"{len(signature)} != {len(masked_tokens)}")
    if not signature:
        raise LengthMismatch("empty token sequence")
    same = sum(1 for s, t in zip(signature, masked_tokens) if s == WILDCARD or s == t)
    return same / len(signature)


class GroupingTree:
    """Drain-style tree over masked token sequences.

    Prefix edges are keyed by the masked token; digit-bearing tokens have
    already been replaced with ``<*>`` and so share one wildcard edge per
    level. A lookup explores both the literal and the wildcard edge, scores
    every group in the reached leaves and keeps the best one above
    ``sim_threshold`` (strictly), ties going to the older group.
    """

    def __init__(self, k_prefix: int = 3, sim_threshold: float = 0.5):
        if k_prefix < 1:
            raise ValueError("k_prefix must be positive")
        if not 0 < sim_threshold <= 1:
            raise ValueError("sim_threshold must lie in (0, 1]")
        self.k_prefix = k_prefix
        self.sim_threshold = sim_threshold
        self.length_buckets: Dict[int, _Node] = {}
        self._groups: List[LogGroup] = []

    def _leaves(self, root: _Node, prefix) -> List[_Node]:
        frontier = [root]
        for token in prefix:
            nxt = []
            for node in frontier:
                child = node.children.get(token)
                if child is not None:
                    nxt.append(child)
                if token != WILDCARD:
                    wild = node.children.get(WILDCARD)
                    if wild is not None:
                        nxt.append(wild)
            frontier = nxt
            if not frontier:
                break
        return frontier

    def _leaf_for(self, root: _Node, prefix) -> _Node:
        node = root
        for token in prefix:
            node = node.children.setdefault(token, _Node())
        return node

    def insert(self, tlog: TokenizedLog) -> int:
        masked = tlog.masked_tokens
        length = len(masked)
        prefix = masked[: min(self.k_prefix, length)]
        root = self.length_buckets.setdefault(length, _Node())

        best, best_sim = None, -1.0
        for leaf in self._leaves(root, prefix):
            for group in leaf.groups:
                sim = group_similarity(group.signature, masked)
                if sim > best_sim or (sim == best_sim and group.group_id < best.group_id):
                    best, best_sim = group, sim

        if best is not None and best_sim > self.sim_threshold:
            for i, tok in enumerate(masked):
                if best.signature[i] != tok:
                    best.signature[i] = WILDCARD
            best.member_indices.append(tlog.record_index)
            return best.group_id

        group = LogGroup(len(self._groups) + 1, length, list(masked), [tlog.record_index])
        self._leaf_for(root, prefix).groups.append(group)
        self._groups.append(group)
        return group.group_id

    def groups(self) -> List[LogGroup]:
        return list(self._groups)

    def __len__(self):
        return len(self._groups)


def build_tree(tlogs, k_prefix: int = 3, sim_threshold: float = 0.5) -> GroupingTree:
    tree = GroupingTree(k_prefix, sim_threshold)
    for tlog in tlogs:
        tree.insert(tlog)
    return tree
