"""Parameter-preserving equivalences between the partition-type problems.

Every pass returns ``Reduced(instance, meta)`` or ``Decided(verdict, reason)``.
A Decided output appears only where the underlying argument needs a
precondition ("n large enough", divisibility, range) and the instance can
be settled directly instead, by arithmetic or by an exact search within the
enumeration budget.
"""

from __future__ import annotations

from fractions import Fraction

from .gadgets import filler_multiset
from .problems import (
    Decided, GroupedInstance, InvalidInstance, Job, PartitionInstance, Reduced,
    SchedulingInstance, in_bounded_range, parameter_of, size_of,
)
from . import solvers

# Passes the verification harness must cover.
REDUCTIONS = (
    "embed_special_case", "partition_to_binpacking", "binpacking_to_partition",
    "targets_to_plain_multiset", "multiset_to_bounded", "bounded_multiset_to_set",
    "qcmax_to_pcmax", "bounded_to_weak_grouped_q1", "weak_targets_to_weak_multiset",
    "weak_multiset_to_weak_set",
)


class NotASpecialCaseEdge(ValueError):
    pass


class IndivisibleGroup(ValueError):
    pass


def _meta(lemma, src, out, **extra):
    meta = {"lemma": lemma, "n": size_of(src), "T": parameter_of(src),
            "n_out": size_of(out), "T_out": parameter_of(out)}
    meta.update(extra)
    return meta


def _reduced(lemma, src, out, **extra):
    return Reduced(out, _meta(lemma, src, out, **extra))


def _decide_partition(inst: PartitionInstance, why: str, budget=None) -> Decided:
    return Decided(solvers.partition_targets_bruteforce(inst, budget).verdict, why)


def _decide_grouped(inst: GroupedInstance, why: str, budget=None) -> Decided:
    return Decided(solvers.check_grouped_yes(inst, budget).verdict, why)


# ------------------------------------------------------------ special cases

SPECIAL_CASE_EDGES = {
    ("bounded", "partition"),
    ("partition", "targets"),
    ("binpacking", "binpacking_multiset"),
    ("partition", "partition_multiset"),
    ("targets", "targets_multiset"),
    ("binpacking", "pcmax"),
    ("pcmax", "binpacking"),
    ("pcmax", "qcmax"),
    ("pbtwo_yes", "pbtwo"),
    ("sumuj0", "sumuj"),
}


def embed_special_case(inst, target_kind: str):
    """Re-tag an instance along one of the whitelisted special-case edges."""
    source_kind = _kind(inst)
    edge = (source_kind, target_kind)
    if edge not in SPECIAL_CASE_EDGES:
        raise NotASpecialCaseEdge(f"{source_kind} -> {target_kind}")
    if edge == ("bounded", "partition"):
        out = PartitionInstance(inst.items, inst.k, inst.set_flag)
    elif edge == ("partition", "targets"):
        goal = inst.bin_targets()
        if goal is None:
            return Decided(False, "item sum not divisible by k")
        out = PartitionInstance(inst.items, inst.k, inst.set_flag, targets=goal)
    elif target_kind.endswith("_multiset"):
        out = PartitionInstance(inst.items, inst.k, False, inst.targets, inst.capacity, inst.bounded_W)
    elif edge == ("binpacking", "pcmax"):
        # zero-size items fit anywhere and are not jobs
        jobs = tuple(Job(x) for x in inst.items if x > 0)
        out = SchedulingInstance(inst.k, jobs, "Cmax", inst.capacity)
    elif edge == ("pcmax", "binpacking"):
        if inst.threshold < 0:
            return Decided(False, "negative makespan bound")
        out = PartitionInstance(tuple(j.p for j in inst.jobs), inst.k, capacity=inst.threshold)
    elif edge == ("pcmax", "qcmax"):
        out = SchedulingInstance(inst.k, inst.jobs, "Cmax", inst.threshold, (Fraction(1),) * inst.k)
    elif edge == ("pbtwo_yes", "pbtwo"):
        out = GroupedInstance(inst.groups, inst.k, inst.s, inst.W, inst.targets, True, inst.set_flag)
    else:  # sumuj0 -> sumuj
        out = inst
    return _reduced("special case", inst, out)


def _kind(inst) -> str:
    if isinstance(inst, PartitionInstance):
        return inst.variant
    if isinstance(inst, GroupedInstance):
        return "pbtwo" if inst.weak else "pbtwo_yes"
    if isinstance(inst, SchedulingInstance):
        if inst.objective == "Cmax" and inst.speeds is None and all(j.r is None for j in inst.jobs):
            return "pcmax"
        if inst.objective == "SumUj" and inst.threshold == 0:
            return "sumuj0"
        return inst.objective.lower()
    return type(inst).__name__


# ------------------------------------------------------------ bin packing cycle

def partition_to_binpacking(inst: PartitionInstance):
    total = sum(inst.items)
    if total % inst.k:
        return Decided(False, "item sum not divisible by k")
    out = PartitionInstance(inst.items, inst.k, inst.set_flag, capacity=total // inst.k)
    return _reduced("partition is bin packing with capacity sum/k", inst, out)


def binpacking_to_partition(inst: PartitionInstance):
    """Pad the slack k*T - sum(X) with a filler multiset."""
    T, k = inst.capacity, inst.k
    total = sum(inst.items)
    if total > k * T:
        return Decided(False, "items exceed the total capacity")
    tau = k * T - total
    filler = filler_multiset(tau, k)
    out = PartitionInstance(inst.items + filler.P, k, False)
    return _reduced("bin packing to partition via filler", inst, out, tau=tau, filler=len(filler.P))


def targets_to_plain_multiset(inst: PartitionInstance):
    """Add dummies d_i = T - t_i with T = 3 max t; each bin must take one."""
    t = inst.targets
    if sum(inst.items) != sum(t):
        return Decided(False, "item sum differs from the target sum")
    if max(t) == 0:
        return Decided(all(x == 0 for x in inst.items), "all targets are zero")
    T = 3 * max(t)
    out = PartitionInstance(inst.items + tuple(T - ti for ti in t), inst.k, False)
    return _reduced("targets to plain partition via dummies", inst, out, bin_sum=T)


def multiset_to_bounded(inst: PartitionInstance):
    """Shift by W = m^10 max(X) and add n(k-1) copies of W, m = nk."""
    X, k = inst.items, inst.k
    n = len(X)
    total = sum(X)
    if n == 0:
        return Decided(True, "no items")
    if total % k:
        return Decided(False, "item sum not divisible by k")
    if max(X) == 0:
        return Decided(True, "all items are zero")
    m = n * k
    m10 = m ** 10
    W = m10 * max(X)
    items = tuple(x + W for x in X) + (W,) * (n * (k - 1))
    Wp = (W * m10) // (m10 - 1)
    out = PartitionInstance(items, k, False, bounded_W=Wp)
    return _reduced("multiset partition to bounded multiset partition", inst, out, W=W)


def bounded_multiset_to_set(inst: PartitionInstance, budget=None):
    """Twin items y_j, z_j make every item distinct."""
    X, k, W = inst.items, inst.k, inst.bounded_W
    n = len(X)
    if W is None:
        raise InvalidInstance("needs a bounded instance")
    if n < 2 or W < n ** 10:
        return _decide_partition(inst, "n < 2 or W < n^10: solved directly", budget)
    base = W * n ** 20
    ys = tuple(base + (x - W) * n ** 7 - n ** 5 + j for j, x in enumerate(X, start=1))
    zs = tuple(base - j for j in range(1, n + 1))
    out = PartitionInstance(ys + zs, k, True, bounded_W=base)
    return _reduced("bounded multiset to bounded set via twins", inst, out)


def qcmax_to_pcmax(inst: SchedulingInstance):
    """Uniform machines to identical ones: machine i keeps floor(s_i M) of room."""
    if inst.objective != "Cmax" or any(j.r is not None for j in inst.jobs):
        raise InvalidInstance("needs a Cmax instance without release dates")
    M = inst.threshold
    if M < 0:
        return Decided(False, "negative makespan bound")
    speeds = inst.speeds or (Fraction(1),) * inst.k
    caps = [(s.numerator * M) // s.denominator for s in speeds]
    total = sum(j.p for j in inst.jobs)
    if total <= max(caps):
        return Decided(True, "everything fits on the fastest machine")
    if max(caps) == 0:
        return Decided(False, "no machine can process anything by time M")
    Mp = 3 * max(caps)
    jobs = tuple(Job(j.p) for j in inst.jobs) + tuple(Job(Mp - c) for c in caps)
    out = SchedulingInstance(inst.k, jobs, "Cmax", Mp)
    return _reduced("uniform to identical machines via dummy jobs", inst, out, caps=caps)


# ------------------------------------------------------------ grouped chain

def bounded_to_weak_grouped_q1(inst: PartitionInstance) -> GroupedInstance:
    X, k, W = inst.items, inst.k, inst.bounded_W
    if W is None:
        raise InvalidInstance("needs a bounded instance")
    if len(X) % k or not X:
        raise IndivisibleGroup(f"{len(X)} items cannot form one group of size k*s")
    return GroupedInstance((X,), k, len(X) // k, W, weak=True, set_flag=inst.set_flag)


def _grouped_sizes_ok(inst: GroupedInstance) -> bool:
    n = inst.n
    return n >= 2 and inst.W >= n ** 10


def weak_targets_to_weak_multiset(inst: GroupedInstance, budget=None):
    """Replace targets by the average load using an extra group of fillers."""
    if inst.targets is None:
        raise InvalidInstance("needs a grouped instance with targets")
    k, s, q, W = inst.k, inst.s, inst.q, inst.W
    n = inst.n
    total = inst.total
    t = list(inst.targets) + [total - sum(inst.targets)]
    lo = Fraction(s * q * W) * (1 - Fraction(1, n ** 10))
    hi = s * q * W
    mu = Fraction(total, k)
    if not all(lo <= x <= hi for x in t + [mu]):
        return Decided(False, "a target lies outside [sqW(1-1/n^10), sqW]")
    if not _grouped_sizes_ok(inst):
        return _decide_grouped(inst, "n < 2 or W < n^10: solved directly", budget)
    if mu.denominator != 1:
        return _decide_grouped(inst, "average load not integral: solved directly", budget)
    mu = int(mu)
    n3, n20 = n ** 3, n ** 20
    groups = [tuple(W * n20 + (e - W - 1) * n3 for e in g) for g in inst.groups]
    fill = [W * n20 + (mu - tl - n * W) * n3 + 1 for tl in t]
    d = W * n20 - n3 + n
    groups.append(tuple(fill) + (d,) * (k * (s - 1)))
    Wp = W * n20
    m = n + s * k
    if not all(in_bounded_range(x, Wp, m) for g in groups for x in g):
        return _decide_grouped(inst, "n too small for the range bound: solved directly", budget)
    out = GroupedInstance(tuple(groups), k, s, Wp, None, True, False)
    return _reduced("weak grouped targets to weak grouped multiset", inst, out)


def weak_multiset_to_weak_set(inst: GroupedInstance, budget=None):
    """Twin groups G'_i (y items) and G'_{q+i} (z items) with distinct entries."""
    k, s, q, W = inst.k, inst.s, inst.q, inst.W
    n = inst.n
    if inst.targets is not None:
        raise InvalidInstance("expects a grouped instance without targets")
    if Fraction(inst.total, k).denominator != 1:
        return Decided(False, "average load not integral")
    if not _grouped_sizes_ok(inst):
        return _decide_grouped(inst, "n < 2 or W < n^10: solved directly", budget)
    n5, n7, n20 = n ** 5, n ** 7, n ** 20
    ys = [tuple(W * n20 + (x - W) * n7 - n5 + j for j, x in enumerate(g, start=1)) for g in inst.groups]
    zs = [tuple(W * n20 - j for j in range(1, k * s + 1)) for _ in inst.groups]
    Wp = W * n20
    groups = ys + zs
    if not all(in_bounded_range(x, Wp, 2 * n) for g in groups for x in g):
        return _decide_grouped(inst, "n too small for the range bound: solved directly", budget)
    out = GroupedInstance(tuple(groups), k, s, Wp, None, True, True)
    return _reduced("weak grouped multiset to weak grouped set via twins", inst, out)
