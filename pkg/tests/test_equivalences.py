"""Parameter-preserving equivalences between partition-type problems."""

from fractions import Fraction

import pytest

from reduction_forge import equivalences as eq, harness, solvers
from reduction_forge.problems import (
    Decided, GroupedInstance, InvalidInstance, Job, PartitionInstance, Reduced,
    SchedulingInstance,
)


def verdict(x):
    return harness.verdict_of(x)


def test_special_case_edges():
    W = 2 ** 20
    bounded = PartitionInstance((W, W), 2, bounded_W=W)
    out = eq.embed_special_case(bounded, "partition")
    assert out.instance.items == bounded.items and out.instance.bounded_W is None
    packing = PartitionInstance((2, 3, 1), 2, capacity=3)
    sched = eq.embed_special_case(packing, "pcmax").instance
    assert [j.p for j in sched.jobs] == [2, 3, 1] and sched.threshold == 3
    grouped = GroupedInstance(((W, W),), 2, 1, W)
    assert eq.embed_special_case(grouped, "pbtwo").instance.weak
    with pytest.raises(eq.NotASpecialCaseEdge):
        eq.embed_special_case(packing, "partition")


def test_partition_to_binpacking():
    out = eq.partition_to_binpacking(PartitionInstance((1, 2, 3), 2))
    assert out.instance.capacity == 3 and verdict(out)
    odd = eq.partition_to_binpacking(PartitionInstance((1, 2, 4), 2))
    assert isinstance(odd, Decided) and not odd.verdict


def test_binpacking_to_partition_examples():
    same = eq.binpacking_to_partition(PartitionInstance((3, 3), 2, capacity=3))
    assert same.instance.items == (3, 3) and verdict(same)
    filled = eq.binpacking_to_partition(PartitionInstance((2,), 2, capacity=2))
    assert filled.instance.items == (2, 1, 1) and verdict(filled)
    over = eq.binpacking_to_partition(PartitionInstance((3, 3, 3), 2, capacity=4))
    assert isinstance(over, Decided) and not over.verdict


def test_targets_to_plain_multiset_example():
    out = eq.targets_to_plain_multiset(PartitionInstance((1, 2), 2, targets=(1, 2)))
    assert out.instance.items == (1, 2, 5, 4)
    assert out.meta["T_out"] == 6
    assert verdict(out)
    empty = eq.targets_to_plain_multiset(PartitionInstance((), 2, targets=(0, 0)))
    assert isinstance(empty, Decided) and empty.verdict


def test_multiset_to_bounded_examples():
    W = 2 * 4 ** 10
    out = eq.multiset_to_bounded(PartitionInstance((2, 2), 2))
    assert out.meta["W"] == W
    assert sorted(out.instance.items) == [W, W, W + 2, W + 2]
    assert verdict(out)
    assert not verdict(eq.multiset_to_bounded(PartitionInstance((1, 3), 2)))


def test_bounded_multiset_to_set():
    W = 3 * 4 ** 10
    out = eq.bounded_multiset_to_set(PartitionInstance((W, W), 2, bounded_W=W))
    assert out.instance.set_flag and len(set(out.instance.items)) == 4
    assert verdict(out)
    small = eq.bounded_multiset_to_set(PartitionInstance((5, 5), 2, bounded_W=5))
    assert isinstance(small, Decided) and small.verdict


def test_qcmax_to_pcmax_example():
    inst = SchedulingInstance(2, (Job(2), Job(3)), "Cmax", 4, (Fraction(1), Fraction(1, 2)))
    out = eq.qcmax_to_pcmax(inst)
    assert out.instance.threshold == 12
    assert [j.p for j in out.instance.jobs] == [2, 3, 8, 10]
    assert verdict(out) and verdict(inst)


def test_bounded_to_weak_grouped_q1():
    W = 3 * 2 ** 20
    inst = PartitionInstance((W, W, W - 1, W - 1), 2, bounded_W=W)
    g = eq.bounded_to_weak_grouped_q1(inst)
    assert (g.q, g.s, g.weak) == (1, 2, True)
    with pytest.raises(eq.IndivisibleGroup):
        eq.bounded_to_weak_grouped_q1(PartitionInstance((W, W, W), 2, bounded_W=W))


def test_weak_targets_adds_a_group():
    inst = next(i for i in harness.CorpusSpec("weak_targets", 3, 50, {"k": 2, "s": 1, "q": 1}).instances()
                if i.k == 2 and i.s == 1 and i.q == 1)
    out = eq.weak_targets_to_weak_multiset(inst)
    if isinstance(out, Reduced):
        assert out.instance.q == 2
        assert len(out.instance.groups[-1]) == inst.k * inst.s


def test_passes_reject_wrong_variants():
    with pytest.raises(InvalidInstance):
        eq.bounded_multiset_to_set(PartitionInstance((1, 2), 2))
    with pytest.raises(InvalidInstance):
        eq.qcmax_to_pcmax(SchedulingInstance(1, (Job(1, d=1),), "SumUj", 0))


@pytest.mark.parametrize("pass_id", [
    "partition_to_binpacking", "binpacking_to_partition", "targets_to_plain_multiset",
    "multiset_to_bounded", "bounded_multiset_to_set", "qcmax_to_pcmax",
    "bounded_to_weak_grouped_q1", "weak_targets_to_weak_multiset", "weak_multiset_to_weak_set",
    "embed_special_case",
])
def test_round_trip_and_audit(pass_id):
    corpus = harness.corpus_for(pass_id, seed=3, count=40)
    report = harness.roundtrip_check(pass_id, corpus)
    assert report.ok, report.summary()
    assert report.checked > 0
    audit = harness.param_audit(pass_id, corpus)
    assert audit.ok, audit.violations[:1]
