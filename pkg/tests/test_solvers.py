"""Exact solvers, checked against each other and against small enumerations."""

import itertools
import random

import pytest

from reduction_forge import harness, solvers
from reduction_forge.problems import (
    CnfFormula, GroupedInstance, Job, PartitionInstance, SchedulingInstance,
    SubsetSumInstance, VssInstance, check_witness,
)


def dpll(clauses, assignment=None):
    """A tiny independent DPLL used only as a second opinion."""
    assignment = dict(assignment or {})
    clauses = [c for c in clauses if not any(assignment.get(abs(l)) == (l > 0) for l in c)]
    clauses = [tuple(l for l in c if abs(l) not in assignment) for c in clauses]
    if not clauses:
        return True
    if any(not c for c in clauses):
        return False
    v = abs(clauses[0][0])
    return dpll(clauses, {**assignment, v: True}) or dpll(clauses, {**assignment, v: False})


def test_sat_examples():
    assert solvers.sat_bruteforce(CnfFormula(2, ((1, 2),))).verdict
    assert not solvers.sat_bruteforce(CnfFormula(1, ((1,), (-1,)))).verdict


def test_sat_agrees_with_dpll():
    for phi in harness.CorpusSpec("cnf", 3, 100, {"N": 6, "M": 12}).instances():
        rep = solvers.sat_bruteforce(phi)
        assert rep.verdict == dpll(phi.clauses)
        if rep.verdict:
            assert phi.satisfied_by(rep.witness)


def test_partition_examples():
    assert solvers.partition_targets_bruteforce(PartitionInstance((1, 2, 3), 2, targets=(3, 3))).verdict
    assert solvers.partition_targets_bruteforce(PartitionInstance((1, 1, 1), 2, targets=(2, 1))).verdict


def test_pruned_search_matches_full_enumeration():
    rng = random.Random(5)
    for _ in range(2000):
        k = rng.randint(2, 3)
        items = tuple(rng.randint(0, 9) for _ in range(rng.randint(0, 7)))
        if rng.random() < 0.5:
            inst = PartitionInstance(items, k)
        else:
            sums = [0] * k
            for x in items:
                sums[rng.randrange(k)] += x
            if rng.random() < 0.3:
                sums[0] += 1
            inst = PartitionInstance(items, k, targets=tuple(sums))
        rep = solvers.partition_targets_bruteforce(inst)
        assert rep.verdict == solvers.partition_exhaustive(inst)
        if rep.verdict:
            assert check_witness(inst, rep.witness)


def test_binpacking_dp_examples_and_agreement():
    assert solvers.binpacking_dp(PartitionInstance((3, 3, 3, 3), 2, capacity=6)).verdict
    assert solvers.binpacking_dp(PartitionInstance((5, 4, 3, 2), 2, capacity=7)).verdict
    for inst in harness.CorpusSpec("binpacking", 4, 500, {"n": 7, "value": 20}).instances():
        rep = solvers.binpacking_dp(inst)
        assert rep.verdict == solvers.partition_exhaustive(inst)
        if rep.verdict:
            assert check_witness(inst, rep.witness)


def test_sum_uj_examples():
    jobs = (Job(2, d=2), Job(2, d=4), Job(3, d=3))
    assert solvers.sum_uj_dp(SchedulingInstance(2, jobs, "SumUj", 0)).verdict
    assert not solvers.sum_uj_dp(SchedulingInstance(1, (Job(5, d=4),), "SumUj", 0)).verdict


def test_sched_bruteforce_examples():
    rep = solvers.sched_bruteforce(SchedulingInstance(1, (Job(3, r=2),), "Cmax", 5))
    assert rep.verdict and rep.value == 5
    rep = solvers.sched_bruteforce(SchedulingInstance(1, (Job(2, w=2), Job(3, w=3)), "SumWjCj", 100))
    assert rep.value == 19
    rep = solvers.sched_bruteforce(SchedulingInstance(1, (Job(4, d=3), Job(3, d=3)), "SumPjUj", 10))
    assert rep.value == 4


def test_sched_bruteforce_matches_permutation_enumeration():
    """Against a plain enumeration of machine assignments and orders (one machine)."""
    rng = random.Random(9)
    for _ in range(150):
        n = rng.randint(1, 5)
        jobs = tuple(Job(rng.randint(1, 6), d=rng.randint(0, 15), w=rng.randint(1, 5)) for _ in range(n))
        objective = rng.choice(("SumWjCj", "SumUj", "Lmax", "SumPjUj"))
        if objective != "SumWjCj":
            jobs = tuple(Job(j.p, d=j.d) for j in jobs)
        best = None
        for order in itertools.permutations(range(n)):
            t, vals = 0, []
            for j in order:
                t += jobs[j].p
                vals.append((j, t))
            if objective == "SumWjCj":
                v = sum(jobs[j].w * c for j, c in vals)
            elif objective == "SumUj":
                v = sum(c > jobs[j].d for j, c in vals)
            elif objective == "SumPjUj":
                v = sum(jobs[j].p for j, c in vals if c > jobs[j].d)
            else:
                v = max(c - jobs[j].d for j, c in vals)
            best = v if best is None else min(best, v)
        rep = solvers.sched_bruteforce(SchedulingInstance(1, jobs, objective, 0))
        assert rep.value == best


def test_grouped_checks():
    W = 2 ** 20
    a, b = W, W - 1
    inst = GroupedInstance(((a, a, b, b),), 2, 2, W)
    rep = solvers.check_grouped_yes(inst)
    assert rep.verdict and check_witness(inst, rep.witness)
    assert solvers.check_grouped_no_condition(inst).verdict
    assert solvers.decide_weak_grouped(GroupedInstance(inst.groups, 2, 2, W, weak=True)) == "yes"
    uneven = GroupedInstance(((a, a, a, b),), 2, 2, W)
    assert not solvers.check_grouped_yes(uneven).verdict
    assert not solvers.check_grouped_no_condition(uneven).verdict


def test_subset_sum_solvers():
    assert solvers.subset_sum_dp(SubsetSumInstance((3, 5, 6), 8)).verdict
    assert not solvers.subset_sum_dp(SubsetSumInstance((2, 4), 5)).verdict
    for inst in harness.CorpusSpec("vss", 8, 300, {"n": 8}).instances():
        rep = solvers.vss_dp(inst)
        assert rep.verdict == solvers.subset_bruteforce(inst)
        if rep.verdict:
            assert check_witness(inst, rep.witness)
    one = VssInstance(((3,), (5,), (6,)), (8,))
    assert solvers.vss_dp(one).verdict == solvers.subset_sum_dp(SubsetSumInstance((3, 5, 6), 8)).verdict


def test_guard_trips_on_small_budget():
    with pytest.raises(solvers.GuardExceeded):
        solvers.binpacking_dp(PartitionInstance((1,) * 10, 3, capacity=100), budget=100)


def test_solve_dispatch():
    assert solvers.solve(PartitionInstance((1, 2, 3), 2, capacity=3)).verdict
    assert solvers.solve(SubsetSumInstance((1, 2), 3)).verdict
    with pytest.raises(TypeError):
        solvers.solve("nope")
