"""Exact deciders used as oracles: brute-force searches and the textbook DPs.

Budgets count search nodes or DP cells, never wall-clock time, so every
verdict is reproducible.  ``REDUCE_BUDGET`` overrides the default budget.
"""

from __future__ import annotations

import bisect
import itertools
import os
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .problems import (
    CnfFormula, GroupedInstance, GroupedWitness, PartitionInstance, PartitionWitness,
    ScheduleWitness, SchedulingInstance, SubsetSumInstance, SubsetWitness, VssInstance,
)

DEFAULT_BUDGET = 10 ** 7


class GuardExceeded(RuntimeError):
    pass


def default_budget() -> int:
    env = os.environ.get("REDUCE_BUDGET")
    if env and env.isdigit():
        return int(env)
    return DEFAULT_BUDGET


@dataclass
class SolveReport:
    verdict: bool
    witness: Optional[object] = None
    states_explored: int = 0
    value: Optional[object] = None
    wall_budget_exceeded: bool = False


class _Counter:
    def __init__(self, budget, what):
        self.budget = default_budget() if budget is None else budget
        self.count = 0
        self.what = what

    def tick(self, amount=1):
        self.count += amount
        if self.count > self.budget:
            raise GuardExceeded(f"{self.what}: more than {self.budget} states")


# ---------------------------------------------------------------- SAT

def sat_bruteforce(phi: CnfFormula, max_vars: int = 24) -> SolveReport:
    """Try all assignments in lexicographic order (x1 first, False before True)."""
    if phi.num_vars > max_vars:
        raise GuardExceeded(f"{phi.num_vars} variables exceeds the guard of {max_vars}")
    tried = 0
    for alpha in itertools.product((False, True), repeat=phi.num_vars):
        tried += 1
        if phi.satisfied_by(alpha):
            return SolveReport(True, alpha, tried)
    return SolveReport(False, None, tried)


# ---------------------------------------------------------------- partition

def partition_targets_bruteforce(inst: PartitionInstance, budget=None) -> SolveReport:
    """DFS over items in descending order with memoised dead ends.

    Covers every partition variant: exact per-bin targets, equal sums, or a
    common capacity for bin packing.  Bins with the same target are
    interchangeable, which the memo key and the branching both exploit.
    """
    k, items = inst.k, inst.items
    n = len(items)
    exact = inst.capacity is None
    if exact:
        caps = inst.bin_targets()
        if caps is None or sum(caps) != sum(items):
            return SolveReport(False)
    else:
        caps = (inst.capacity,) * k
        if sum(items) > k * inst.capacity:
            return SolveReport(False)
    order = sorted(range(n), key=lambda j: -items[j])
    vals = [items[j] for j in order]
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] + vals[i]
    classes = {}
    cls = [classes.setdefault(c, len(classes)) for c in caps]
    members = [[b for b in range(k) if cls[b] == c] for c in range(len(classes))]
    rem = list(caps)
    assign = [0] * n
    failed = set()
    counter = _Counter(budget, "partition search")

    def key(idx):
        return (idx,) + tuple(tuple(sorted(rem[b] for b in group)) for group in members)

    def counts_fit(idx):
        # Each bin needs between lo and hi of the remaining items to hit its
        # target exactly; together they must use all of them.
        left = n - idx
        lo_total = hi_total = 0
        for r in rem:
            lo = bisect.bisect_left(range(left + 1), r, key=lambda c: suffix[idx] - suffix[idx + c])
            hi = bisect.bisect_right(range(left + 1), r, key=lambda c: suffix[n - c]) - 1
            if lo > left or lo > hi:
                return False
            lo_total += lo
            hi_total += hi
        return lo_total <= left <= hi_total

    def dfs(idx):
        if idx == n:
            return True
        if not exact and suffix[idx] > sum(rem):
            return False
        if exact and not counts_fit(idx):
            return False
        kk = key(idx)
        if kk in failed:
            return False
        counter.tick()
        x = vals[idx]
        smallest_rest = vals[-1] if idx + 1 < n else 0
        seen = set()
        for b in range(k):
            r = rem[b]
            if r < x or (r, cls[b]) in seen:
                continue
            seen.add((r, cls[b]))
            if exact and 0 < r - x < smallest_rest:
                continue
            rem[b] = r - x
            assign[idx] = b
            if dfs(idx + 1):
                return True
            rem[b] = r
        failed.add(kk)
        return False

    import sys
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 4 * n + 100))
    try:
        found = dfs(0)
    finally:
        sys.setrecursionlimit(old)
    if not found:
        return SolveReport(False, None, counter.count)
    bins = [0] * n
    for pos, j in enumerate(order):
        bins[j] = assign[pos]
    return SolveReport(True, PartitionWitness(tuple(bins)), counter.count)


def partition_exhaustive(inst: PartitionInstance) -> bool:
    """Unpruned k^n enumeration, only for cross-checking small cases."""
    from .problems import check_witness
    for bins in itertools.product(range(inst.k), repeat=inst.n):
        if check_witness(inst, PartitionWitness(bins)):
            return True
    return False


def binpacking_dp(inst: PartitionInstance, budget=None) -> SolveReport:
    """Table DP over the loads of the first k-1 bins; O(n T^(k-1)) cells."""
    T, k = inst.capacity, inst.k
    if T is None:
        raise ValueError("binpacking_dp needs a capacity")
    dims = k - 1
    shape = (T + 1,) * dims
    cells = (T + 1) ** dims
    counter = _Counter(budget, "bin packing DP")
    counter.tick(cells * max(1, inst.n))
    index_sum = np.indices(shape).sum(axis=0) if dims > 1 else np.arange(T + 1)
    reach = np.zeros(shape, dtype=bool)
    reach[(0,) * dims] = True
    layers = [reach]
    prefix = 0
    for x in inst.items:
        prefix += x
        new = reach.copy()
        if x <= T:
            for axis in range(dims):
                dst = [slice(None)] * dims
                src = [slice(None)] * dims
                dst[axis] = slice(x, None)
                src[axis] = slice(0, T + 1 - x)
                new[tuple(dst)] |= reach[tuple(src)]
        new &= index_sum >= prefix - T
        layers.append(new)
        reach = new
    if not reach.any():
        return SolveReport(False, None, counter.count)
    state = list(np.argwhere(reach)[0])
    bins = [0] * inst.n
    for j in range(inst.n - 1, -1, -1):
        x = inst.items[j]
        prev = layers[j]
        if prev[tuple(state)]:
            bins[j] = k - 1
            continue
        for axis in range(dims):
            if state[axis] >= x:
                cand = list(state)
                cand[axis] -= x
                if prev[tuple(cand)]:
                    bins[j] = axis
                    state = cand
                    break
        else:  # pragma: no cover - the table guarantees a predecessor
            raise AssertionError("broken back-pointer")
    return SolveReport(True, PartitionWitness(tuple(bins)), counter.count)


# ---------------------------------------------------------------- scheduling

def _floor_frac(x: Fraction) -> int:
    return x.numerator // x.denominator


def sum_uj_dp(inst: SchedulingInstance, budget=None) -> SolveReport:
    """DP over EDD order; DP[j, t, l_1..l_{k-1}] is the least load of machine k.

    Loads are measured in processing units, so machine i finishes at
    l_i / s_i and the due-date test becomes l_i <= floor(d_j * s_i).
    """
    if inst.objective != "SumUj":
        raise ValueError("sum_uj_dp needs a SumUj instance")
    k, n = inst.k, inst.n
    dims = k - 1
    T = sum(j.p for j in inst.jobs)
    order = sorted(range(n), key=lambda j: inst.jobs[j].d)
    cells = (n + 1) * (T + 1) ** dims
    counter = _Counter(budget, "SumUj DP")
    counter.tick(max(1, n) * cells)
    INF = np.iinfo(np.int64).max // 4
    shape = (n + 1,) + (T + 1,) * dims
    cur = np.full(shape, INF, dtype=np.int64)
    cur[(0,) * (dims + 1)] = 0
    layers = [cur]
    if dims:
        grids = np.indices(shape[1:])
    for j in order:
        job = inst.jobs[j]
        p = job.p
        caps = [min(T, _floor_frac(job.d * inst.speed(m))) for m in range(k)]
        new = np.full(shape, INF, dtype=np.int64)
        new[1:] = cur[:-1]  # job j is tardy
        for axis in range(dims):
            if p > caps[axis]:
                continue
            dst = [slice(None)] * (dims + 1)
            src = [slice(None)] * (dims + 1)
            dst[axis + 1] = slice(p, caps[axis] + 1)
            src[axis + 1] = slice(0, caps[axis] + 1 - p)
            new[tuple(dst)] = np.minimum(new[tuple(dst)], cur[tuple(src)])
        last = cur + p
        ok = (cur < INF) & (last <= caps[k - 1])
        new = np.where(ok, np.minimum(new, last), new)
        layers.append(new)
        cur = new
    best_t = None
    for t in range(n + 1):
        if (cur[t] < INF).any():
            best_t = t
            break
    verdict = best_t is not None and best_t <= inst.threshold
    witness = None
    if best_t is not None:
        witness = _sum_uj_witness(inst, order, layers, best_t, INF)
    return SolveReport(verdict, witness, counter.count, best_t)


def _sum_uj_witness(inst, order, layers, t, INF):
    k = inst.k
    dims = k - 1
    T = sum(j.p for j in inst.jobs)
    final = layers[-1][t]
    loads = tuple(int(v) for v in np.argwhere(final < INF)[0]) if dims else ()
    lk = int(final[loads]) if dims else int(final)
    machine_of = {}
    for step in range(len(order), 0, -1):
        j = order[step - 1]
        job = inst.jobs[j]
        p = job.p
        prev = layers[step - 1]
        caps = [min(T, _floor_frac(job.d * inst.speed(m))) for m in range(k)]
        if t > 0 and prev[(t - 1,) + loads] == lk:
            machine_of[j] = None
            t -= 1
            continue
        done = False
        for axis in range(dims):
            if p <= loads[axis] <= caps[axis]:
                cand = loads[:axis] + (loads[axis] - p,) + loads[axis + 1:]
                if prev[(t,) + cand] == lk:
                    machine_of[j] = axis
                    loads = cand
                    done = True
                    break
        if done:
            continue
        if p <= lk <= caps[k - 1] and prev[(t,) + loads] == lk - p:
            machine_of[j] = k - 1
            lk -= p
            continue
        raise AssertionError("broken DP back-pointer")  # pragma: no cover
    clock = [Fraction(0)] * k
    slots = [None] * inst.n
    for j in order:
        m = machine_of[j]
        if m is not None:
            slots[j] = (m, clock[m])
            clock[m] += Fraction(inst.jobs[j].p) / inst.speed(m)
    for j in order:
        if machine_of[j] is None:
            slots[j] = (0, clock[0])
            clock[0] += Fraction(inst.jobs[j].p) / inst.speed(0)
    return ScheduleWitness(tuple((m, _plain(s)) for m, s in slots))


def _plain(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _rule_order(inst: SchedulingInstance):
    jobs = inst.jobs
    idx = range(inst.n)
    if inst.objective == "Cmax":
        return sorted(idx, key=lambda j: (jobs[j].r or 0, -jobs[j].p))
    if inst.objective == "SumWjCj":
        # Smith's rule: non-increasing w/p
        return sorted(idx, key=lambda j: (Fraction(-jobs[j].w, jobs[j].p), jobs[j].p))
    return sorted(idx, key=lambda j: (jobs[j].d, jobs[j].p))


def _machine_key(inst, clock):
    """Multiset of machine states, used for symmetry breaking and memoising."""
    return tuple(sorted((inst.speed(m), clock[m]) for m in range(inst.k)))


def _dfs_schedule(inst: SchedulingInstance, jobs_idx, counter, allow_tardy: bool):
    """Branch and bound over machine assignments in the per-machine rule order.

    Returns (best value, {job: machine or None}).  ``allow_tardy`` lets a
    job be declared tardy (only for SumUj, where tardy jobs are appended
    after everything else).
    """
    obj = inst.objective
    jobs = inst.jobs
    k = inst.k
    best = [None, None]
    clock = [Fraction(0)] * k
    choice = {}
    seen = {}

    def combine(acc, job, end):
        if obj == "Cmax":
            return max(acc, end)
        if obj == "SumWjCj":
            return acc + job.w * end
        if obj in ("Lmax", "Tmax"):
            return max(acc, end - job.d) if acc is not None else end - job.d
        return acc  # SumUj: on-time jobs cost nothing

    def no_better(a, b):
        # a >= b where None stands for minus infinity
        if b is None:
            return True
        if a is None:
            return False
        return a >= b

    def rec(pos, acc):
        if best[1] is not None and no_better(acc, best[0]):
            return
        if pos == len(jobs_idx):
            best[0] = acc
            best[1] = dict(choice)
            return
        key = (pos, _machine_key(inst, clock))
        if key in seen and no_better(acc, seen[key]):
            return
        seen[key] = acc
        counter.tick()
        j = jobs_idx[pos]
        job = jobs[j]
        tried = set()
        for m in range(k):
            state = (inst.speed(m), clock[m])
            if state in tried:
                continue
            tried.add(state)
            start = clock[m]
            if job.r is not None and start < job.r:
                start = Fraction(job.r)
            end = start + Fraction(job.p) / inst.speed(m)
            if allow_tardy and end > job.d:
                continue
            old = clock[m]
            clock[m] = end
            choice[j] = m
            rec(pos + 1, combine(acc, job, end))
            clock[m] = old
        if allow_tardy:
            choice[j] = None
            rec(pos + 1, acc + 1)
        choice.pop(j, None)

    start_acc = 0 if obj in ("SumUj", "SumWjCj") else (Fraction(0) if obj == "Cmax" else None)
    rec(0, start_acc)
    return best[0], best[1]


def _slots_from_choice(inst, order, choice):
    clock = [Fraction(0)] * inst.k
    slots = [None] * inst.n
    late = []
    for j in order:
        m = choice.get(j)
        if m is None:
            late.append(j)
            continue
        job = inst.jobs[j]
        start = clock[m]
        if job.r is not None and start < job.r:
            start = Fraction(job.r)
        slots[j] = (m, start)
        clock[m] = start + Fraction(job.p) / inst.speed(m)
    for j in late:
        slots[j] = (0, clock[0])
        clock[0] += Fraction(inst.jobs[j].p) / inst.speed(0)
    return ScheduleWitness(tuple((m, _plain(s)) for m, s in slots))


def sched_bruteforce(inst: SchedulingInstance, budget=None) -> SolveReport:
    """Exact optimum by enumerating machine assignments.

    Each machine runs its jobs in the order that is optimal for a fixed
    assignment: earliest release first for Cmax, Smith's rule for SumWjCj,
    earliest due date for the due-date objectives.  Equal machine states are
    explored once and dominated partial schedules are cut.  SumPjUj
    enumerates tardy sets by increasing weight and tests the rest for a
    schedule without tardy jobs.
    """
    counter = _Counter(budget, "scheduling search")
    if inst.n == 0:
        value = 0 if inst.objective != "Lmax" else None
        verdict = inst.threshold >= 0 if value is not None else True
        return SolveReport(verdict, ScheduleWitness(()), 0, value)
    if inst.objective == "SumPjUj":
        return _pjuj_bruteforce(inst, counter)
    order = _rule_order(inst)
    value, choice = _dfs_schedule(inst, order, counter, inst.objective == "SumUj")
    if inst.objective == "Tmax":
        value = max(Fraction(0), value)
    witness = _slots_from_choice(inst, order, choice)
    value = _plain(value)
    return SolveReport(value <= inst.threshold, witness, counter.count, value)


def _pjuj_bruteforce(inst, counter):
    n = inst.n
    subsets = sorted(
        (sum(inst.jobs[j].p for j in range(n) if mask >> j & 1), mask) for mask in range(1 << n)
    )
    order = _rule_order(inst)
    probe = SchedulingInstance(inst.k, inst.jobs, "SumUj", 0, inst.speeds)
    for weight, mask in subsets:
        counter.tick()
        ontime = [j for j in order if not mask >> j & 1]
        value, choice = _dfs_schedule(probe, ontime, counter, True)
        if value == 0:
            full = dict(choice)
            for j in range(n):
                if mask >> j & 1:
                    full[j] = None
            witness = _slots_from_choice(inst, order, full)
            return SolveReport(weight <= inst.threshold, witness, counter.count, weight)
    raise AssertionError("the all-tardy set is always feasible")  # pragma: no cover


# ---------------------------------------------------------------- grouped

def _sub_multisets(counts, size):
    """All multiplicity vectors below ``counts`` with the given total."""
    out = []

    def rec(i, left, acc):
        if i == len(counts):
            if left == 0:
                out.append(tuple(acc))
            return
        for c in range(min(counts[i], left) + 1):
            acc.append(c)
            rec(i + 1, left - c, acc)
            acc.pop()
    rec(0, size, [])
    return out


def _group_options(group, k1, sizes):
    """Disjoint picks for k1 bins from one group.

    ``sizes`` is a function bin -> iterable of allowed pick sizes given the
    remaining multiplicities.  Yields (counts per bin, sums per bin, picks).
    """
    values = sorted(set(group))
    mult = [group.count(v) for v in values]

    def rec(l, left, picks):
        if l == k1:
            counts = tuple(sum(p) for p in picks)
            sums = tuple(sum(c * v for c, v in zip(p, values)) for p in picks)
            yield counts, sums, tuple(picks)
            return
        for size in sizes(sum(left)):
            for vec in _sub_multisets(left, size):
                rest = [a - b for a, b in zip(left, vec)]
                yield from rec(l + 1, rest, picks + [vec])
    yield from rec(0, mult, [])
    return values


def _picks_to_bins(group, picks, k):
    values = sorted(set(group))
    want = {}
    for l, vec in enumerate(picks):
        for v, c in zip(values, vec):
            want.setdefault(v, []).extend([l] * c)
    bins = []
    for x in group:
        queue = want.get(x)
        bins.append(queue.pop(0) if queue else k - 1)
    return tuple(bins)


def check_grouped_yes(inst: GroupedInstance, budget=None) -> SolveReport:
    """Search for the YES-case subsets: s items per group and packed bin."""
    goal = inst.bin_targets()
    if goal is None:
        return SolveReport(False)
    k1, s = inst.k - 1, inst.s
    counter = _Counter(budget, "grouped YES search")
    options = []
    bounds = []
    for g in inst.groups:
        per = {}
        for counts, sums, picks in _group_options(list(g), k1, lambda left: [s]):
            counter.tick()
            per.setdefault(sums, picks)
        options.append(list(per.items()))
        srt = sorted(g)
        bounds.append((sum(srt[:s]), sum(srt[-s:])))
    lo_rest = [0] * (inst.q + 1)
    hi_rest = [0] * (inst.q + 1)
    for i in range(inst.q - 1, -1, -1):
        lo_rest[i] = lo_rest[i + 1] + bounds[i][0]
        hi_rest[i] = hi_rest[i + 1] + bounds[i][1]
    layers = [{(0,) * k1: None}]
    for i, opts in enumerate(options):
        nxt = {}
        for state in layers[-1]:
            for sums, picks in opts:
                new = tuple(a + b for a, b in zip(state, sums))
                if new in nxt:
                    continue
                if any(new[l] + lo_rest[i + 1] > goal[l] or new[l] + hi_rest[i + 1] < goal[l]
                       for l in range(k1)):
                    continue
                counter.tick()
                nxt[new] = (state, picks)
        layers.append(nxt)
    final = tuple(goal)
    if final not in layers[-1]:
        return SolveReport(False, None, counter.count)
    bins = []
    state = final
    for i in range(inst.q, 0, -1):
        prev, picks = layers[i][state]
        bins.append(_picks_to_bins(list(inst.groups[i - 1]), picks, inst.k))
        state = prev
    return SolveReport(True, GroupedWitness(tuple(reversed(bins))), counter.count)


def check_grouped_no_condition(inst: GroupedInstance, budget=None) -> SolveReport:
    """Search for relaxed subsets; the NO case holds iff none exist.

    Relaxed means: packed bins hit their targets, prefix counts over groups
    1..i stay within i*s, and at least (k-1)qs items are packed in total
    (which forces exactly qs per bin).
    """
    goal = inst.bin_targets()
    if goal is None:
        return SolveReport(False)
    k1, s, q = inst.k - 1, inst.s, inst.q
    full = q * s
    counter = _Counter(budget, "grouped NO search")
    options = []
    for g in inst.groups:
        per = {}
        for counts, sums, picks in _group_options(list(g), k1, lambda left: range(min(left, s * q) + 1)):
            counter.tick()
            per.setdefault((counts, sums), picks)
        options.append(list(per.items()))
    lo_rest = [None] * (q + 1)
    hi_rest = [None] * (q + 1)
    left_rest = [0] * (q + 1)
    for i in range(q - 1, -1, -1):
        g = inst.groups[i]
        lo_rest[i] = min(g) if lo_rest[i + 1] is None else min(lo_rest[i + 1], min(g))
        hi_rest[i] = max(g) if hi_rest[i + 1] is None else max(hi_rest[i + 1], max(g))
        left_rest[i] = left_rest[i + 1] + len(g)

    def feasible(i, counts, sums):
        need_total = 0
        for l in range(k1):
            if counts[l] > i * s or sums[l] > goal[l]:
                return False
            c = full - counts[l]
            r = goal[l] - sums[l]
            need_total += c
            if c == 0:
                if r:
                    return False
                continue
            if i == q or r < c * lo_rest[i] or r > c * hi_rest[i]:
                return False
        return need_total <= left_rest[i]

    start = ((0,) * k1, (0,) * k1)
    layers = [{start: None}]
    for i, opts in enumerate(options, start=1):
        nxt = {}
        for counts, sums in layers[-1]:
            for (dc, ds), picks in opts:
                nc = tuple(a + b for a, b in zip(counts, dc))
                ns = tuple(a + b for a, b in zip(sums, ds))
                key = (nc, ns)
                if key in nxt or not feasible(i, nc, ns):
                    continue
                counter.tick()
                nxt[key] = ((counts, sums), picks)
        layers.append(nxt)
    final = ((full,) * k1, tuple(goal))
    if final not in layers[-1]:
        return SolveReport(False, None, counter.count)
    bins = []
    state = final
    for i in range(q, 0, -1):
        prev, picks = layers[i][state]
        bins.append(_picks_to_bins(list(inst.groups[i - 1]), picks, inst.k))
        state = prev
    return SolveReport(True, GroupedWitness(tuple(reversed(bins))), counter.count)


def decide_weak_grouped(inst: GroupedInstance, budget=None) -> str:
    """'yes', 'no', or 'promise_violated' for the weak grouped problem."""
    if check_grouped_yes(inst, budget).verdict:
        return "yes"
    if not check_grouped_no_condition(inst, budget).verdict:
        return "no"
    return "promise_violated"


# ---------------------------------------------------------------- subset sums

def subset_sum_dp(inst: SubsetSumInstance, budget=None) -> SolveReport:
    """Bitset DP with one Python integer per prefix of the items."""
    t = inst.target
    counter = _Counter(budget, "subset sum DP")
    counter.tick(max(1, len(inst.items)) * (t + 1))
    mask = (1 << (t + 1)) - 1
    layers = [1]
    for x in inst.items:
        layers.append((layers[-1] | (layers[-1] << x)) & mask)
    if not layers[-1] >> t & 1:
        return SolveReport(False, None, counter.count)
    chosen = [0] * len(inst.items)
    rest = t
    for j in range(len(inst.items), 0, -1):
        if layers[j - 1] >> rest & 1:
            continue
        chosen[j - 1] = 1
        rest -= inst.items[j - 1]
    return SolveReport(True, SubsetWitness(tuple(chosen)), counter.count)


def vss_dp(inst: VssInstance, budget=None) -> SolveReport:
    """DP over reachable partial sums that stay below the target."""
    t = inst.target
    counter = _Counter(budget, "vector subset sum DP")
    cells = 1
    for c in t:
        cells *= c + 1
    counter.tick(min(cells, counter.budget))
    zero = (0,) * inst.dim
    layers = [{zero}]
    for v in inst.vectors:
        cur = layers[-1]
        nxt = set(cur)
        for u in cur:
            w = tuple(a + b for a, b in zip(u, v))
            if all(a <= b for a, b in zip(w, t)):
                nxt.add(w)
        counter.tick(len(nxt))
        layers.append(nxt)
    if t not in layers[-1]:
        return SolveReport(False, None, counter.count)
    chosen = [0] * len(inst.vectors)
    rest = t
    for j in range(len(inst.vectors), 0, -1):
        if rest in layers[j - 1]:
            continue
        chosen[j - 1] = 1
        rest = tuple(a - b for a, b in zip(rest, inst.vectors[j - 1]))
    return SolveReport(True, SubsetWitness(tuple(chosen)), counter.count)


def subset_bruteforce(inst) -> bool:
    """2^n enumeration for subset sum or vector subset sum."""
    from .problems import check_witness
    n = len(inst.vectors) if isinstance(inst, VssInstance) else len(inst.items)
    return any(check_witness(inst, SubsetWitness(bits))
               for bits in itertools.product((0, 1), repeat=n))


# ---------------------------------------------------------------- dispatch

def solve(inst, solver: str = "auto", budget=None) -> SolveReport:
    if isinstance(inst, PartitionInstance):
        if solver == "dp" or (solver == "auto" and inst.capacity is not None
                              and (inst.capacity + 1) ** (inst.k - 1) * max(1, inst.n) <= 10 ** 6):
            if inst.capacity is None:
                raise ValueError("the DP solver needs a bin packing instance")
            return binpacking_dp(inst, budget)
        return partition_targets_bruteforce(inst, budget)
    if isinstance(inst, GroupedInstance):
        return check_grouped_yes(inst, budget)
    if isinstance(inst, SchedulingInstance):
        if solver == "dp" or (solver == "auto" and inst.objective == "SumUj"
                              and sum(j.p for j in inst.jobs) <= 400):
            return sum_uj_dp(inst, budget)
        return sched_bruteforce(inst, budget)
    if isinstance(inst, VssInstance):
        return vss_dp(inst, budget)
    if isinstance(inst, SubsetSumInstance):
        return subset_sum_dp(inst, budget)
    raise TypeError(f"cannot solve {type(inst).__name__}")
