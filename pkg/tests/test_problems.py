"""Instance invariants, witness checking and the size/parameter measures."""

from fractions import Fraction

import pytest

from reduction_forge.problems import (
    CnfFormula, GroupedInstance, GroupedWitness, InvalidInstance, Job, PartitionInstance,
    PartitionWitness, SchedulingInstance, ScheduleWitness, SubsetSumInstance, SubsetWitness,
    VssInstance, check_relaxed_grouped, check_witness, in_bounded_range, parameter_of,
    schedule_objective, size_of,
)


def test_binpacking_witness_check():
    inst = PartitionInstance((1, 2, 3), 2, capacity=3)
    assert check_witness(inst, PartitionWitness((1, 1, 0)))
    assert not check_witness(inst, PartitionWitness((0, 1, 1)))


def test_partition_variants_and_targets():
    plain = PartitionInstance((1, 2, 3), 2)
    assert plain.variant == "partition"
    assert plain.bin_targets() == (3, 3)
    assert PartitionInstance((1, 2), 2).bin_targets() is None
    with_targets = PartitionInstance((1, 1, 1), 2, targets=(2, 1))
    assert with_targets.variant == "targets"
    assert check_witness(with_targets, PartitionWitness((0, 0, 1)))


def test_invalid_instances_are_rejected():
    with pytest.raises(InvalidInstance):
        PartitionInstance((1, 2), 1)
    with pytest.raises(InvalidInstance):
        PartitionInstance((1, 1), 2, set_flag=True)
    with pytest.raises(InvalidInstance):
        PartitionInstance((1,), 2, targets=(1,))
    with pytest.raises(InvalidInstance):
        CnfFormula(1, ((2,),))
    with pytest.raises(InvalidInstance):
        CnfFormula(1, ((),))
    with pytest.raises(InvalidInstance):
        SchedulingInstance(1, (Job(1),), "SumUj", 0)
    with pytest.raises(InvalidInstance):
        Job(0)


def test_parameter_and_size():
    assert parameter_of(PartitionInstance((1, 2, 4, 3), 3, targets=(3, 7, 0))) == 7
    jobs = tuple(Job(p) for p in (2, 2, 3))
    assert parameter_of(SchedulingInstance(2, jobs, "Cmax", 5)) == 7
    assert parameter_of(VssInstance(((1, 1),), (2, 2))) == 4
    assert size_of(PartitionInstance((1, 2, 3), 2)) == 3


def test_bounded_range_is_exact():
    W, n = 2 ** 20, 2
    assert in_bounded_range(W, W, n)
    # the slack is W / n^10 = 1024
    assert in_bounded_range(W - 1024, W, n)
    assert not in_bounded_range(W - 1025, W, n)
    assert not in_bounded_range(W + 1, W, n)


def test_cnf_measures():
    phi = CnfFormula(3, ((1, -2), (2, 3, -1), (1,)))
    assert (phi.M, phi.K, phi.delta) == (3, 3, 3)
    assert phi.clause_vars(1) == (1, 2, 3)
    assert phi.satisfied_by((1, 1, 0))
    assert not phi.satisfied_by((0, 0, 0))


def test_grouped_witness_checks():
    W = 2 ** 10
    inst = GroupedInstance(((W, W - 0, W, W),), 2, 2, W)
    assert inst.mu == 2 * W
    assert check_witness(inst, GroupedWitness(((0, 1, 0, 1),)))
    assert not check_witness(inst, GroupedWitness(((0, 0, 0, 1),)))
    assert check_relaxed_grouped(inst, GroupedWitness(((0, 1, 0, 1),)))


def test_schedule_objectives():
    inst = SchedulingInstance(1, (Job(2, w=2), Job(3, w=3)), "SumWjCj", 19)
    assert schedule_objective(inst, ScheduleWitness(((0, 0), (0, 2)))) == 19
    assert check_witness(inst, ScheduleWitness(((0, 3), (0, 0))))
    late = SchedulingInstance(1, (Job(3, d=2),), "SumUj", 0)
    assert not check_witness(late, ScheduleWitness(((0, 0),)))
    overlap = SchedulingInstance(1, (Job(2), Job(2)), "Cmax", 10)
    assert not check_witness(overlap, ScheduleWitness(((0, 0), (0, 1))))
    slow = SchedulingInstance(1, (Job(2),), "Cmax", 4, (Fraction(1, 2),))
    assert schedule_objective(slow, ScheduleWitness(((0, 0),))) == 4


def test_subset_witnesses():
    assert check_witness(SubsetSumInstance((3, 5, 6), 8), SubsetWitness((1, 1, 0)))
    assert not check_witness(SubsetSumInstance((3, 5, 6), 8), SubsetWitness((1, 0, 1)))
    vss = VssInstance(((0, 1), (2, 1), (0, 2)), (2, 2))
    assert check_witness(vss, SubsetWitness((1, 1, 0)))
