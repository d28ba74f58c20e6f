import pytest
from hypothesis import given, settings, strategies as st

from librelog.errors import LengthMismatch
from librelog.grouping import GroupingTree, group_similarity
from librelog.preprocess import TokenizedLog, tokenize_log


def tl(i, masked):
    return TokenizedLog(i, tuple(masked), tuple(masked))


def test_worked_example():
    tree = GroupingTree()
    assert tree.groups() == []
    g1 = tree.insert(tl(0, ["sent", "<*>", "bytes", "data"]))
    assert tree.groups()[0].signature == ["sent", "<*>", "bytes", "data"]
    assert len(tree.groups()) == 1
    assert tree.insert(tl(1, ["sent", "<*>", "bytes", "data"])) == g1
    # 2 of 4 positions agree: 0.5 is not above the threshold
    g3 = tree.insert(tl(2, ["recv", "<*>", "bytes", "file"]))
    assert g3 != g1
    assert len(tree.groups()) == 2


@pytest.mark.parametrize("sig, toks, expected", [
    (["a", "b"], ["a", "b"], 1.0),
    (["a", "<*>"], ["a", "zzz"], 1.0),
    (["a", "b", "c", "d"], ["a", "x", "y", "z"], 0.25),
])
def test_similarity(sig, toks, expected):
    assert group_similarity(sig, toks) == expected


def test_similarity_length_mismatch():
    with pytest.raises(LengthMismatch):
        group_similarity(["a"], ["a", "b"])


def test_signature_gains_wildcards():
    tree = GroupingTree(k_prefix=1)
    tree.insert(tl(0, ["open", "file", "now", "ok"]))
    tree.insert(tl(1, ["open", "file", "later", "ok"]))
    (g,) = tree.groups()
    assert g.signature == ["open", "file", "<*>", "ok"]
    assert g.member_indices == [0, 1]


def test_wildcard_branch_is_searched():
    tree = GroupingTree()
    a = tree.insert(tl(0, ["<*>", "start", "job", "x"]))
    b = tree.insert(tl(1, ["boot", "start", "job", "x"]))
    # literal first token reaches the wildcard leaf too
    assert a == b


def test_prefix_separates_groups():
    tree = GroupingTree(k_prefix=2)
    a = tree.insert(tl(0, ["a", "b", "c", "d", "e"]))
    b = tree.insert(tl(1, ["a", "x", "c", "d", "e"]))
    assert a != b


def test_short_logs_use_whole_prefix():
    tree = GroupingTree(k_prefix=3)
    a = tree.insert(tl(0, ["hello"]))
    b = tree.insert(tl(1, ["hello"]))
    c = tree.insert(tl(2, ["bye"]))
    assert a == b != c


def test_ties_go_to_oldest_group():
    tree = GroupingTree(k_prefix=1, sim_threshold=0.5)
    g1 = tree.insert(tl(0, ["a", "b", "c", "d", "e", "f"]))
    g2 = tree.insert(tl(1, ["a", "b", "c", "g", "h", "i"]))
    assert g1 != g2
    # 4/6 against both
    assert tree.insert(tl(2, ["a", "b", "c", "d", "h", "z"])) == g1


words = st.sampled_from(["get", "put", "node", "ok", "fail", "<*>"])


@settings(max_examples=200)
@given(st.lists(st.lists(words, min_size=1, max_size=6), min_size=1, max_size=40))
def test_partition_and_group_invariants(seqs):
    tree = GroupingTree()
    for i, s in enumerate(seqs):
        tree.insert(tl(i, s))
    seen = [idx for g in tree.groups() for idx in g.member_indices]
    assert sorted(seen) == list(range(len(seqs)))
    for g in tree.groups():
        assert len(g.signature) == g.token_length
        assert g.member_indices == sorted(set(g.member_indices))
        for idx in g.member_indices:
            toks = seqs[idx]
            assert len(toks) == g.token_length
            for s, t in zip(g.signature, toks):
                assert s == "<*>" or s == t


@settings(max_examples=100)
@given(
    st.lists(st.sampled_from(["open", "file", "done", "<*>"]), min_size=1, max_size=7),
    st.lists(st.lists(st.integers(0, 10**6), min_size=7, max_size=7), min_size=1, max_size=20),
)
def test_same_template_cohesion(template, values):
    tree = GroupingTree()
    for i, vals in enumerate(values):
        content = " ".join(f"v{vals[j]}" if t == "<*>" else t for j, t in enumerate(template))
        tree.insert(tokenize_log(i, content))
    assert len(tree.groups()) == 1
