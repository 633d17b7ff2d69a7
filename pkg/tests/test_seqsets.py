from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recall_forge.model import MAX, GameError, InformationSet, RecallClass, classify_recall
from recall_forge.generators import FamilyParams, gen_pennies, gen_random
from recall_forge.seqsets import (
    SequenceSet,
    components,
    extract_histories,
    find_strongly_branching_subset,
    is_alr_set,
    is_strongly_branching,
    quotient_by_action,
    residual_without_infoset,
)
from recall_forge.generators import gen_lowerbound

from conftest import (
    SHUFFLE_DEMO_SET,
    SPAN_DEMO_SET,
    THREE_BINARY,
    build_shuffle_demo,
    random_realizable_set,
    seqs,
)

PAIR = (
    InformationSet("I1", MAX, ("a", "b")),
    InformationSet("I2", MAX, ("c", "d")),
    InformationSet("I3", MAX, ("e", "f")),
)


def test_extract_histories_perfect_recall(perfect_recall_demo):
    ss = extract_histories(perfect_recall_demo.structure)
    assert ss.sequences == seqs("a c", "a d", "b e", "b f")


def test_extract_histories_shuffle_demo(shuffle_demo):
    assert extract_histories(shuffle_demo.structure).sequences == SHUFFLE_DEMO_SET


def test_extract_histories_span_demo(span_demo):
    assert extract_histories(span_demo.structure).sequences == SPAN_DEMO_SET


def test_extract_histories_dedupes_pennies():
    # variant II at n=3: twelve leaves collapse onto eight histories
    game = gen_pennies("II", 3)
    ss = extract_histories(game.structure)
    assert len(game.structure.leaves()) == 12
    assert len(ss) == 8
    # variant I pools everything: four histories
    assert len(extract_histories(gen_pennies("I", 3).structure)) == 4


def test_extract_rejects_absentminded(absentminded_demo):
    with pytest.raises(GameError):
        extract_histories(absentminded_demo.structure)


def test_components_split():
    ss = SequenceSet(seqs("a", "b", "c", "d"), PAIR)
    comps = components(ss)
    assert [c.sequences for c in comps] == [seqs("a", "b"), seqs("c", "d")]


def test_components_bridging_sequence():
    # ac and eb share no actions, but eb is connected to both sides
    ss = SequenceSet(seqs("a c", "e b", "e"), PAIR)
    assert len(components(ss)) == 1


def test_components_empty_and_epsilon():
    assert components(SequenceSet(frozenset(), PAIR)) == []
    comps = components(SequenceSet(seqs("", "a"), PAIR))
    assert [c.sequences for c in comps] == [seqs(""), seqs("a")]


def test_is_alr_set_examples():
    assert is_alr_set(SequenceSet(seqs("a c", "a d", "b e", "b f"), PAIR))
    assert not is_alr_set(SequenceSet(SHUFFLE_DEMO_SET, build_shuffle_demo().structure.infosets))
    assert is_alr_set(SequenceSet(seqs(""), PAIR))


def test_quotient_by_action():
    infos = build_shuffle_demo().structure.infosets
    ss = SequenceSet(SHUFFLE_DEMO_SET, infos)
    assert quotient_by_action(ss, "a").sequences == seqs("b", "bbar", "c", "cbar")
    assert quotient_by_action(ss, "b").sequences == seqs("a", "abar")
    one = SequenceSet(seqs("a"), infos[2:])
    assert quotient_by_action(one, "a").sequences == seqs("")
    assert quotient_by_action(one, "abar").sequences == frozenset()


def test_residual_without_infoset():
    lb3 = gen_lowerbound(3)
    lb2 = gen_lowerbound(2)
    assert residual_without_infoset(lb3, "L3").sequences == lb2.sequences
    ss = SequenceSet(seqs("a c", "b d"), PAIR)
    assert residual_without_infoset(ss, "I1").sequences == frozenset()
    assert residual_without_infoset(SequenceSet(frozenset(), PAIR), "I1").sequences == frozenset()


def test_strongly_branching_basics():
    assert is_strongly_branching(SequenceSet(seqs(""), PAIR))
    assert is_strongly_branching(SequenceSet(seqs("a", "b"), PAIR))
    assert not is_strongly_branching(SequenceSet(seqs("a"), PAIR))
    assert not is_strongly_branching(SequenceSet(frozenset(), PAIR))
    assert not is_strongly_branching(SequenceSet(seqs("", "a"), PAIR))


def test_find_strongly_branching_subset():
    assert find_strongly_branching_subset(SequenceSet(seqs("", "b"), PAIR)).sequences == seqs("")
    whole = SequenceSet(seqs("a c", "a d", "b"), PAIR)
    assert find_strongly_branching_subset(whole).sequences == whole.sequences
    assert find_strongly_branching_subset(SequenceSet(seqs("a"), PAIR)) is None


def test_sequence_set_rejects_repeated_infoset():
    with pytest.raises(GameError):
        SequenceSet(seqs("a b"), PAIR)  # a and b are both I1 actions
    with pytest.raises(GameError):
        SequenceSet(seqs("a z"), PAIR)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_components_partition_property(seed):
    rng = random.Random(seed)
    ss = random_realizable_set(rng)
    comps = components(ss)
    union = frozenset().union(*(c.sequences for c in comps)) if comps else frozenset()
    assert union == ss.sequences
    assert sum(len(c) for c in comps) == len(ss)
    # quotients never retain the quotiented infoset
    for info in THREE_BINARY:
        for a in info.actions:
            q = quotient_by_action(ss, a)
            assert all(not set(info.actions) & set(s) for s in q.sequences)


@given(st.integers(min_value=0, max_value=10_000))
@settings(max_examples=60, deadline=None)
def test_structure_alr_iff_history_set_alr(seed):
    # recall classification agrees with the set-level test on histories
    game = gen_random(FamilyParams(family="random", seed=seed, depth=4, branching=2))
    recall = classify_recall(game.structure, MAX)
    assert recall is not RecallClass.ABSENTMINDED
    ss = extract_histories(game.structure)
    assert is_alr_set(ss) == recall.is_alr
