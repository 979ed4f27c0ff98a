"""Problem instances, reduction outputs and witnesses.

Bins, machines and groups are indexed from 0 in code.  In a grouped instance
bin ``k-1`` is the dumpster: items placed there are simply not packed.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .numeric import check_nat


class ProblemError(ValueError):
    pass


class InvalidInstance(ProblemError):
    pass


class ShapeMismatch(ProblemError):
    pass


def _nat_tuple(values, what):
    try:
        return tuple(check_nat(v) for v in values)
    except ValueError as exc:
        raise InvalidInstance(f"{what}: {exc}") from None


def in_bounded_range(x: int, W: int, n: int) -> bool:
    """W(1 - 1/n^10) <= x <= W, decided exactly."""
    n10 = max(n, 1) ** 10
    return x <= W and x * n10 >= W * (n10 - 1)


@dataclass(frozen=True)
class CnfFormula:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        clauses = tuple(tuple(int(l) for l in c) for c in self.clauses)
        object.__setattr__(self, "clauses", clauses)
        if self.num_vars < 0:
            raise InvalidInstance("negative variable count")
        for c in clauses:
            if not c:
                raise InvalidInstance("empty clause")
            for lit in c:
                if lit == 0 or abs(lit) > self.num_vars:
                    raise InvalidInstance(f"literal {lit} out of range 1..{self.num_vars}")

    @property
    def M(self) -> int:
        return len(self.clauses)

    @property
    def K(self) -> int:
        return max((len(set(c)) for c in self.clauses), default=0)

    @property
    def delta(self) -> int:
        occ = Counter(v for c in self.clauses for v in {abs(l) for l in c})
        return max(occ.values(), default=0)

    def clause_vars(self, i: int) -> tuple:
        """Sorted distinct variables of clause ``i`` (0-based)."""
        return tuple(sorted({abs(l) for l in self.clauses[i]}))

    def satisfied_by(self, assignment) -> bool:
        """``assignment[v-1]`` is the truth value of variable v."""
        return all(any((l > 0) == bool(assignment[abs(l) - 1]) for l in c) for c in self.clauses)


@dataclass(frozen=True)
class PartitionInstance:
    """Partition, partition with targets, bounded partition or bin packing.

    Which variant is meant follows from the optional fields: ``capacity``
    makes it bin packing, ``targets`` fixes per-bin sums, ``bounded_W``
    asserts the bounded range.  Items keep their given order so that witness
    positions stay meaningful.
    """

    items: tuple
    k: int
    set_flag: bool = False
    targets: Optional[tuple] = None
    capacity: Optional[int] = None
    bounded_W: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "items", _nat_tuple(self.items, "items"))
        if self.k < 2:
            raise InvalidInstance("k must be at least 2")
        if self.targets is not None:
            object.__setattr__(self, "targets", _nat_tuple(self.targets, "targets"))
            if len(self.targets) != self.k:
                raise InvalidInstance("need exactly k targets")
        if self.capacity is not None:
            check_nat(self.capacity)
        if self.targets is not None and self.capacity is not None:
            raise InvalidInstance("targets and capacity are exclusive")
        if self.set_flag and len(set(self.items)) != len(self.items):
            raise InvalidInstance("set_flag asserted but items repeat")
        if self.bounded_W is not None:
            n = len(self.items)
            bad = [x for x in self.items if not in_bounded_range(x, self.bounded_W, n)]
            if bad:
                raise InvalidInstance(f"item {bad[0]} outside the bounded range of W={self.bounded_W}")

    @property
    def n(self) -> int:
        return len(self.items)

    @property
    def variant(self) -> str:
        if self.capacity is not None:
            return "binpacking"
        if self.targets is not None:
            return "targets"
        if self.bounded_W is not None:
            return "bounded"
        return "partition"

    def multiset(self) -> list:
        """Sorted (value, multiplicity) pairs."""
        return sorted(Counter(self.items).items())

    def bin_targets(self):
        """Exact per-bin sums required, or None when they cannot be integral."""
        if self.targets is not None:
            return self.targets
        total = sum(self.items)
        if total % self.k:
            return None
        return (total // self.k,) * self.k


@dataclass(frozen=True)
class GroupedInstance:
    """Grouped k-way partition: q groups of k*s items each.

    With ``weak`` set it is the promise problem; ``targets`` (k-1 values)
    replaces the average load mu for the packed bins.
    """

    groups: tuple
    k: int
    s: int
    W: int
    targets: Optional[tuple] = None
    weak: bool = False
    set_flag: bool = False

    def __post_init__(self):
        groups = tuple(_nat_tuple(g, "group") for g in self.groups)
        object.__setattr__(self, "groups", groups)
        if self.k < 2 or self.s < 1:
            raise InvalidInstance("need k >= 2 and s >= 1")
        n = self.n
        for i, g in enumerate(groups):
            if len(g) != self.k * self.s:
                raise InvalidInstance(f"group {i} has {len(g)} items, expected {self.k * self.s}")
            if self.set_flag and len(set(g)) != len(g):
                raise InvalidInstance(f"set_flag asserted but group {i} repeats items")
            for x in g:
                if not in_bounded_range(x, self.W, n):
                    raise InvalidInstance(f"item {x} outside the range of W={self.W}")
        if self.targets is not None:
            object.__setattr__(self, "targets", _nat_tuple(self.targets, "targets"))
            if len(self.targets) != self.k - 1:
                raise InvalidInstance("need exactly k-1 targets")

    @property
    def q(self) -> int:
        return len(self.groups)

    @property
    def n(self) -> int:
        return self.k * self.s * self.q

    @property
    def total(self) -> int:
        return sum(sum(g) for g in self.groups)

    @property
    def mu(self) -> Fraction:
        return Fraction(self.total, self.k)

    def bin_targets(self):
        """Required sums of the k-1 packed bins, or None if not integral."""
        if self.targets is not None:
            return self.targets
        mu = self.mu
        if mu.denominator != 1:
            return None
        return (int(mu),) * (self.k - 1)


OBJECTIVES = ("Cmax", "SumUj", "SumWjCj", "SumPjUj", "Lmax", "Tmax")


@dataclass(frozen=True)
class Job:
    p: int
    r: Optional[int] = None
    d: Optional[int] = None
    w: Optional[int] = None

    def __post_init__(self):
        check_nat(self.p)
        if self.p < 1:
            raise InvalidInstance("processing times must be at least 1")
        for v in (self.r, self.d, self.w):
            if v is not None:
                check_nat(v)


@dataclass(frozen=True)
class SchedulingInstance:
    """k machines, identical unless ``speeds`` is given (uniform machines)."""

    k: int
    jobs: tuple
    objective: str
    threshold: int
    speeds: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "jobs", tuple(self.jobs))
        if self.k < 1:
            raise InvalidInstance("need at least one machine")
        if self.objective not in OBJECTIVES:
            raise InvalidInstance(f"unknown objective {self.objective!r}")
        if self.speeds is not None:
            speeds = tuple(Fraction(s) for s in self.speeds)
            if len(speeds) != self.k or not all(0 < s <= 1 for s in speeds):
                raise InvalidInstance("need k speeds in (0, 1]")
            object.__setattr__(self, "speeds", speeds)
        needs_d = self.objective in ("SumUj", "SumPjUj", "Lmax", "Tmax")
        for j in self.jobs:
            if needs_d and j.d is None:
                raise InvalidInstance(f"{self.objective} needs due dates")
            if self.objective == "SumWjCj" and j.w is None:
                raise InvalidInstance("SumWjCj needs weights")
            if j.r is not None and self.objective != "Cmax":
                raise InvalidInstance("release dates only go with Cmax")

    @property
    def n(self) -> int:
        return len(self.jobs)

    def speed(self, m: int) -> Fraction:
        return Fraction(1) if self.speeds is None else self.speeds[m]


@dataclass(frozen=True)
class VssInstance:
    vectors: tuple
    target: tuple

    def __post_init__(self):
        target = _nat_tuple(self.target, "target")
        vectors = tuple(_nat_tuple(v, "vector") for v in self.vectors)
        if not target:
            raise InvalidInstance("dimension must be at least 1")
        if any(len(v) != len(target) for v in vectors):
            raise InvalidInstance("vector dimension mismatch")
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "vectors", vectors)

    @property
    def dim(self) -> int:
        return len(self.target)


@dataclass(frozen=True)
class SubsetSumInstance:
    items: tuple
    target: int

    def __post_init__(self):
        object.__setattr__(self, "items", _nat_tuple(self.items, "items"))
        check_nat(self.target)


ProblemInstance = Union[PartitionInstance, GroupedInstance, SchedulingInstance,
                        VssInstance, SubsetSumInstance]


@dataclass(frozen=True)
class Reduced:
    instance: object
    meta: dict = field(default_factory=dict)

    decided = False


@dataclass(frozen=True)
class Decided:
    verdict: bool
    reason: str

    decided = True


ReductionOutput = Union[Reduced, Decided]


@dataclass(frozen=True)
class PartitionWitness:
    """``bins[j]`` is the bin of the j-th item occurrence."""

    bins: tuple


@dataclass(frozen=True)
class GroupedWitness:
    """``bins[i][j]`` is the bin of item j of group i; bin k-1 means unpacked."""

    bins: tuple


@dataclass(frozen=True)
class ScheduleWitness:
    """``slots[j] = (machine, start)`` for every job j."""

    slots: tuple


@dataclass(frozen=True)
class SubsetWitness:
    chosen: tuple


def _bin_loads(items, bins, k):
    if len(bins) != len(items):
        raise ShapeMismatch("witness length differs from item count")
    loads = [0] * k
    counts = [0] * k
    for x, b in zip(items, bins):
        if not isinstance(b, int) or not 0 <= b < k:
            raise ShapeMismatch(f"bin index {b!r} out of range")
        loads[b] += x
        counts[b] += 1
    return loads, counts


def _check_partition(inst: PartitionInstance, w: PartitionWitness) -> bool:
    loads, _ = _bin_loads(inst.items, w.bins, inst.k)
    if inst.capacity is not None:
        return all(load <= inst.capacity for load in loads)
    if inst.targets is not None:
        return list(loads) == list(inst.targets)
    return len(set(loads)) == 1


def grouped_counts_and_sums(inst: GroupedInstance, w: GroupedWitness):
    """Per group and bin: (count, sum) for the packed bins 0..k-2."""
    if len(w.bins) != inst.q:
        raise ShapeMismatch("witness group count differs")
    table = []
    for g, bins in zip(inst.groups, w.bins):
        loads, counts = _bin_loads(g, bins, inst.k)
        table.append([(counts[l], loads[l]) for l in range(inst.k - 1)])
    return table


def _check_grouped(inst: GroupedInstance, w: GroupedWitness) -> bool:
    goal = inst.bin_targets()
    table = grouped_counts_and_sums(inst, w)
    if goal is None:
        return False
    for row in table:
        if any(c != inst.s for c, _ in row):
            return False
    return all(sum(row[l][1] for row in table) == goal[l] for l in range(inst.k - 1))


def check_relaxed_grouped(inst: GroupedInstance, w: GroupedWitness) -> bool:
    """Do the packed bins form subsets of the kind the NO case forbids?

    Prefix counts stay within i*s, at least (k-1)qs items are packed and
    every packed bin hits its target.
    """
    goal = inst.bin_targets()
    table = grouped_counts_and_sums(inst, w)
    if goal is None:
        return False
    k1 = inst.k - 1
    prefix = [0] * k1
    for i, row in enumerate(table, start=1):
        for l in range(k1):
            prefix[l] += row[l][0]
            if prefix[l] > i * inst.s:
                return False
    if sum(prefix) < k1 * inst.q * inst.s:
        return False
    return all(sum(row[l][1] for row in table) == goal[l] for l in range(k1))


def schedule_objective(inst: SchedulingInstance, w: ScheduleWitness):
    """Objective value of a schedule, or None if the schedule is infeasible."""
    if len(w.slots) != inst.n:
        raise ShapeMismatch("witness length differs from job count")
    per_machine = [[] for _ in range(inst.k)]
    ends = []
    for job, slot in zip(inst.jobs, w.slots):
        if len(slot) != 2:
            raise ShapeMismatch("schedule slots are (machine, start) pairs")
        m, start = slot
        if not isinstance(m, int) or not 0 <= m < inst.k:
            raise ShapeMismatch(f"machine {m!r} out of range")
        start = Fraction(start)
        if start < 0 or (job.r is not None and start < job.r):
            return None
        end = start + Fraction(job.p) / inst.speed(m)
        per_machine[m].append((start, end))
        ends.append(end)
    for slots in per_machine:
        slots.sort()
        for (_, e1), (s2, _) in zip(slots, slots[1:]):
            if s2 < e1:
                return None
    jobs = inst.jobs
    obj = inst.objective
    if obj == "Cmax":
        return max(ends, default=Fraction(0))
    if obj == "SumUj":
        return sum(1 for j, e in zip(jobs, ends) if e > j.d)
    if obj == "SumPjUj":
        return sum(j.p for j, e in zip(jobs, ends) if e > j.d)
    if obj == "SumWjCj":
        return sum((j.w * e for j, e in zip(jobs, ends)), Fraction(0))
    lateness = [e - j.d for j, e in zip(jobs, ends)]
    if obj == "Lmax":
        return max(lateness, default=None)
    return max([Fraction(0)] + lateness)


def _check_schedule(inst: SchedulingInstance, w: ScheduleWitness) -> bool:
    value = schedule_objective(inst, w)
    if value is None:
        return False
    return value <= inst.threshold


def _check_subset(inst, w: SubsetWitness) -> bool:
    items = inst.vectors if isinstance(inst, VssInstance) else inst.items
    if len(w.chosen) != len(items):
        raise ShapeMismatch("indicator length differs from item count")
    picked = [x for x, c in zip(items, w.chosen) if c]
    if isinstance(inst, VssInstance):
        sums = tuple(sum(col) for col in zip(*picked)) if picked else (0,) * inst.dim
        return sums == inst.target
    return sum(picked) == inst.target


def check_witness(inst, w) -> bool:
    if isinstance(inst, PartitionInstance) and isinstance(w, PartitionWitness):
        return _check_partition(inst, w)
    if isinstance(inst, GroupedInstance) and isinstance(w, GroupedWitness):
        return _check_grouped(inst, w)
    if isinstance(inst, SchedulingInstance) and isinstance(w, ScheduleWitness):
        return _check_schedule(inst, w)
    if isinstance(inst, (VssInstance, SubsetSumInstance)) and isinstance(w, SubsetWitness):
        return _check_subset(inst, w)
    raise ShapeMismatch(f"{type(w).__name__} does not fit {type(inst).__name__}")


def parameter_of(inst) -> int:
    """The parameter T of each problem."""
    if isinstance(inst, PartitionInstance):
        if inst.capacity is not None:
            return inst.capacity
        if inst.targets is not None:
            return max(inst.targets)
        return sum(inst.items) // inst.k
    if isinstance(inst, GroupedInstance):
        return inst.W
    if isinstance(inst, SchedulingInstance):
        return sum(j.p for j in inst.jobs)
    if isinstance(inst, VssInstance):
        return sum(inst.target)
    if isinstance(inst, SubsetSumInstance):
        return inst.target
    raise ProblemError(f"no parameter for {type(inst).__name__}")


def size_of(inst) -> int:
    """Number of items, jobs or vectors."""
    if isinstance(inst, GroupedInstance):
        return inst.n
    if isinstance(inst, SchedulingInstance):
        return inst.n
    if isinstance(inst, VssInstance):
        return len(inst.vectors)
    return len(inst.items)
