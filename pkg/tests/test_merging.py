import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multidfa.automata import (
    Dfa,
    LabeledSample,
    accepts,
    build_pta,
    difference_witness,
)
from multidfa.merging import (
    MergeContext,
    choose,
    count_merges,
    merge_fold,
    promote,
    rpni_compatible,
    rpni_splitting,
    standard_rpni,
)

from conftest import consistent_samples
from fixtures import (
    AB,
    THREE_GROUPS,
    three_group_sample,
    rpni_target,
    split_targets,
)


def pta_index(positives):
    ordered = sorted({s[:i] for s in positives for i in range(len(s) + 1)},
                     key=lambda s: (len(s), s))
    return {p: i for i, p in enumerate(ordered)}


def test_merge_fold_single_loop():
    d = build_pta({"a"}, AB)
    merged, prov = merge_fold(d, 0, 1, {1: {"a"}})
    assert merged.state_count == 1
    assert merged.transitions == {(0, "a"): 0}
    assert merged.accepting == {0}
    assert prov == {0: frozenset({"a"})}


def test_merge_fold_a_chain():
    sample = three_group_sample()
    idx = pta_index(sample.positives)
    d = build_pta(sample.positives, AB)
    prov = {idx[s]: {s} for s in sample.positives}
    merged, new_prov = merge_fold(d, idx["aa"], idx["aaa"], prov)
    # aaa .. aaaaaaa are folded away
    assert merged.state_count == d.state_count - 5
    collapsed = [q for q, strings in new_prov.items()
                 if strings == {"aaaa", "aaaaaa", "aaaaaaa"}]
    assert len(collapsed) == 1
    assert accepts(merged, "aa") and accepts(merged, "a" * 11)
    assert not accepts(merged, "a")


def test_merge_fold_sibling_leaves():
    d = build_pta({"aa", "ab"}, AB)
    merged, prov = merge_fold(d, 2, 3, {2: {"aa"}, 3: {"ab"}})
    assert merged.state_count == 3
    assert merged.transitions == {(0, "a"): 1, (1, "a"): 2, (1, "b"): 2}
    assert prov == {2: frozenset({"aa", "ab"})}


def test_merge_fold_reject_mark_conflict():
    d = build_pta({"a", "b"}, AB)
    # states: eps=0, a=1, b=2; mark b as rejecting, then fold a (accepting) onto b
    assert merge_fold(d, 2, 1, rejecting={2}) is None
    assert merge_fold(d, 2, 1) is not None


def test_rpni_compatible():
    a_star = Dfa(AB, 1, 0, {(0, "a"): 0}, frozenset({0}))
    assert rpni_compatible(a_star, {"b", "bb"})
    assert not rpni_compatible(a_star, {"a"})
    assert rpni_compatible(rpni_target(), {"a", "b", "bb"})


def test_choose_alphabetical():
    access = {1: "ab", 2: "aa", 3: "b", 4: "aaa"}
    assert choose({1, 2}, access) == 2
    assert choose({3}, access) == 3
    # plain alphabetical order: "aaa" comes before "ab"
    assert choose({1, 4}, access) == 4
    assert choose({2, 3}, access) == 2
    with pytest.raises(ValueError):
        choose(set(), access)


def test_promote():
    ctx = MergeContext.initial(LabeledSample(frozenset({"ab", "b"}), frozenset(), AB))
    idx = pta_index({"ab", "b"})
    assert ctx.red == (0,)
    assert set(ctx.blue) == {idx["a"], idx["b"]}
    ctx = promote(idx["a"], ctx)
    assert ctx.red == (0, idx["a"])
    assert set(ctx.blue) == {idx["b"], idx["ab"]}
    ctx = promote(idx["ab"], ctx)
    ctx = promote(idx["b"], ctx)
    assert ctx.blue == ()
    with pytest.raises(ValueError):
        promote(idx["a"], ctx)


def test_standard_rpni_three_groups():
    d = standard_rpni(three_group_sample())
    assert difference_witness(d, rpni_target(), 12) is None


def test_standard_rpni_single_merge():
    d = standard_rpni(LabeledSample(frozenset({"a"}), frozenset(), AB))
    assert d.state_count == 1
    assert all(accepts(d, "a" * n) for n in range(6))


def test_standard_rpni_blocked_merge():
    d = standard_rpni(LabeledSample(frozenset({"a"}), frozenset({"aa"}), AB))
    assert d.state_count == 2
    assert [w for w in AB.strings(5) if accepts(d, w)] == ["a"]


def test_standard_rpni_needs_positives():
    with pytest.raises(ValueError):
        standard_rpni(LabeledSample(frozenset(), frozenset({"a"}), AB))


def test_splitting_three_groups():
    result = rpni_splitting(three_group_sample(), 5)
    assert result.assignments == THREE_GROUPS
    for got, want in zip(result.dfas, split_targets()):
        assert difference_witness(got, want, 12) is None


def test_splitting_k1_is_standard():
    sample = three_group_sample()
    result = rpni_splitting(sample, 1)
    assert len(result) == 1
    assert result.dfas[0] == standard_rpni(sample)
    assert result.assignments == [sample.positives]


def test_splitting_tiny_sample():
    result = rpni_splitting(LabeledSample(frozenset({"a"}), frozenset(), AB), 4)
    assert len(result) == 1
    assert result.assignments == [frozenset({"a"})]


@pytest.mark.parametrize("k", [0, -1, 2.5, "3"])
def test_splitting_bad_k(k):
    with pytest.raises(ValueError):
        rpni_splitting(three_group_sample(), k)


def test_split_not_included_in_standard():
    # learning on a sub-sample does not give a sub-language
    sample = three_group_sample()
    std = standard_rpni(sample)
    third = rpni_splitting(sample, 5).dfas[2]
    assert accepts(third, "aba") and not accepts(std, "aba")
    assert accepts(std, "") and not accepts(third, "")


@given(consistent_samples(), st.integers(1, 8), st.booleans())
@settings(max_examples=120, deadline=None)
def test_split_consistency(sample, k, marks):
    result = rpni_splitting(sample, k, reject_marks=marks)
    assert 1 <= len(result) <= k
    covered = frozenset()
    for dfa, assigned in result:
        assert assigned and not (assigned & covered)
        covered |= assigned
        assert all(accepts(dfa, s) for s in assigned)
        assert not any(accepts(dfa, s) for s in sample.negatives)
    assert covered == sample.positives


def test_split_count_vs_merge_count():
    sample = three_group_sample()
    assert count_merges(sample) == 4
    assert len(rpni_splitting(sample, 5)) == 3


def test_split_count_can_exceed_merge_count():
    # removing an extracted string can unblock merges plain RPNI never makes
    sample = LabeledSample(
        frozenset({"", "a", "aba"}),
        frozenset({"aaabab", "aab", "b", "ba", "baa", "bb", "bbbbb"}),
        AB,
    )
    assert count_merges(sample) == 1
    result = rpni_splitting(sample, 6)
    assert result.assignments == [frozenset({"aba"}), frozenset({"a"}), frozenset({""})]


@given(consistent_samples(), st.booleans())
@settings(max_examples=80, deadline=None)
def test_standard_rpni_consistent_and_small(sample, marks):
    d = standard_rpni(sample, reject_marks=marks)
    assert all(accepts(d, s) for s in sample.positives)
    assert not any(accepts(d, s) for s in sample.negatives)
    if not marks:
        assert d.state_count <= build_pta(sample.positives, sample.alphabet).state_count


@given(consistent_samples())
@settings(max_examples=60, deadline=None)
def test_split_k1_language_equal(sample):
    d = standard_rpni(sample)
    (only,) = rpni_splitting(sample, 1).dfas
    assert difference_witness(d, only, 2 * d.state_count) is None
