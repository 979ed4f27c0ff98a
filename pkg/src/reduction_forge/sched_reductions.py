"""Reductions from grouped partition problems into machine scheduling.

Jobs are created group by group, in the order the items appear, so job j of
the output corresponds to the j-th item of the flattened groups.  Besides
the passes this module offers witness lifting from grouped witnesses to
schedules and the time-reversal map between schedules.
"""

from __future__ import annotations

from fractions import Fraction

from .problems import (
    Decided, GroupedInstance, GroupedWitness, InvalidInstance, Job,
    Reduced, SchedulingInstance, ScheduleWitness, parameter_of, size_of,
)
from . import solvers

# Passes the verification harness must cover.
REDUCTIONS = (
    "grouped_to_sumUj0", "reverse_time", "normalize_release_dates", "grouped_to_wjcj",
    "weak_grouped_to_pjUj", "lmax_tmax_shift",
)


class ReleaseDateExceedsM(ValueError):
    """A release date beyond the makespan bound; the instance is a NO."""


def _meta(lemma, src, out, **extra):
    meta = {"lemma": lemma, "n": size_of(src), "T": parameter_of(src),
            "n_out": size_of(out), "T_out": parameter_of(out)}
    meta.update(extra)
    return meta


def _needs_plain_grouped(inst: GroupedInstance):
    if not isinstance(inst, GroupedInstance):
        raise InvalidInstance("expects a grouped partition instance")
    if inst.targets is not None:
        raise InvalidInstance("expects a grouped instance without targets")


def _range_argument_applies(inst: GroupedInstance) -> bool:
    return inst.W >= inst.n ** 10


def group_due_dates(inst: GroupedInstance, mu: int) -> list:
    """Due date min(mu, i*s*W) for every job of group i (1-based)."""
    return [min(mu, i * inst.s * inst.W) for i in range(1, inst.q + 1)]


def _jobs_with_due_dates(inst: GroupedInstance, mu: int) -> tuple:
    dues = group_due_dates(inst, mu)
    return tuple(Job(p, d=dues[i]) for i, g in enumerate(inst.groups) for p in g)


def grouped_to_sumUj0(inst: GroupedInstance, budget=None):
    """Grouped partition (YES variant) to P_k || sum U_j with target 0."""
    _needs_plain_grouped(inst)
    mu = inst.mu
    if mu.denominator != 1:
        return Decided(False, "average load not integral")
    if not _range_argument_applies(inst):
        return Decided(solvers.check_grouped_yes(inst, budget).verdict,
                       "W < n^10: solved directly")
    out = SchedulingInstance(inst.k, _jobs_with_due_dates(inst, int(mu)), "SumUj", 0)
    return Reduced(out, _meta("grouped partition to sum U_j = 0", inst, out, mu=int(mu)))


def grouped_to_wjcj(inst: GroupedInstance, budget=None):
    """Grouped partition (YES variant) to P_k || sum w_j C_j."""
    _needs_plain_grouped(inst)
    mu = inst.mu
    if mu.denominator != 1:
        return Decided(False, "average load not integral")
    if not _range_argument_applies(inst):
        return Decided(solvers.check_grouped_yes(inst, budget).verdict,
                       "W < n^10: solved directly")
    mu = int(mu)
    k, s, q, W, n = inst.k, inst.s, inst.q, inst.W, inst.n
    Wt = 2 * W * n ** 10
    jobs = tuple(Job(p, w=p * Wt + (q - i)) for i, g in enumerate(inst.groups, start=1) for p in g)
    squares = sum(j.p * j.p for j in jobs)
    order_term = sum((q - i) * sum((i - 1) * s + r for r in range(1, s + 1)) for i in range(1, q + 1))
    lam = (Wt // 2) * k * mu * mu + (Wt // 2) * squares + W * k * order_term
    out = SchedulingInstance(k, jobs, "SumWjCj", lam)
    return Reduced(out, _meta("grouped partition to sum w_j C_j", inst, out, mu=mu, W_tilde=Wt))


def weak_grouped_to_pjUj(inst: GroupedInstance, budget=None):
    """Weak grouped partition with k bins to P_{k-1} || sum p_j U_j, target mu."""
    _needs_plain_grouped(inst)
    mu = inst.mu
    if mu.denominator != 1:
        # Neither the YES case nor the relaxed conditions can hit a
        # fractional load, so the instance is in the NO case.
        return Decided(False, "average load not integral")
    if not _range_argument_applies(inst):
        return Decided(solvers.check_grouped_yes(inst, budget).verdict,
                       "W < n^10: solved directly")
    mu = int(mu)
    out = SchedulingInstance(inst.k - 1, _jobs_with_due_dates(inst, mu), "SumPjUj", mu)
    return Reduced(out, _meta("weak grouped partition to sum p_j U_j on k-1 machines",
                              inst, out, mu=mu))


def lift_grouped_schedule(inst: GroupedInstance, witness: GroupedWitness,
                          out: SchedulingInstance) -> ScheduleWitness:
    """Schedule the jobs of S_{i,l} on machine l, group by group.

    Within one group the jobs go in ascending processing time.  Items in the
    unpacked bin (weak instances, k-1 machines) are run afterwards on
    machine 0, where they are tardy.
    """
    packed = out.k
    clocks = [0] * packed
    slots = [None] * out.n
    leftovers = []
    base = 0
    for i, g in enumerate(inst.groups):
        by_machine = [[] for _ in range(inst.k)]
        for j, b in enumerate(witness.bins[i]):
            by_machine[b].append((g[j], base + j))
        for m in range(packed):
            for p, idx in sorted(by_machine[m]):
                slots[idx] = (m, clocks[m])
                clocks[m] += p
        if packed < inst.k:
            leftovers.extend(idx for _, idx in sorted(by_machine[packed]))
        base += len(g)
    for idx in leftovers:
        slots[idx] = (0, clocks[0])
        clocks[0] += out.jobs[idx].p
    return ScheduleWitness(tuple(slots))


# ------------------------------------------------------------ time reversal

def reverse_time(inst: SchedulingInstance):
    """Swap release dates and due dates by reading time backwards.

    Cmax with releases and bound M becomes sum U_j = 0 with d_j = M - r_j.
    sum U_j = 0 becomes Cmax with M = max d_j and r_j = M - d_j.
    """
    if inst.objective == "Cmax":
        M = inst.threshold
        releases = [j.r or 0 for j in inst.jobs]
        if M < 0 or any(r > M for r in releases):
            return Decided(False, "a release date exceeds the makespan bound")
        jobs = tuple(Job(j.p, d=M - r) for j, r in zip(inst.jobs, releases))
        out = SchedulingInstance(inst.k, jobs, "SumUj", 0, inst.speeds)
        return Reduced(out, _meta("reverse time: release dates to due dates", inst, out, M=M))
    if inst.objective == "SumUj":
        if inst.threshold != 0:
            raise InvalidInstance("time reversal needs the target sum U_j = 0")
        M = max((j.d for j in inst.jobs), default=0)
        jobs = tuple(Job(j.p, r=M - j.d) for j in inst.jobs)
        out = SchedulingInstance(inst.k, jobs, "Cmax", M, inst.speeds)
        return Reduced(out, _meta("reverse time: due dates to release dates", inst, out, M=M))
    raise InvalidInstance(f"time reversal does not apply to {inst.objective}")


def reverse_schedule(inst: SchedulingInstance, witness: ScheduleWitness, M) -> ScheduleWitness:
    """Map a schedule through the reversal: t' = M - t - p / speed."""
    slots = []
    for job, (m, t) in zip(inst.jobs, witness.slots):
        start = Fraction(M) - Fraction(t) - Fraction(job.p) / inst.speed(m)
        slots.append((m, int(start) if start.denominator == 1 else start))
    return ScheduleWitness(tuple(slots))


def normalize_release_dates(inst: SchedulingInstance):
    """Remove idle stretches no schedule can use.

    After sorting by release date, a job released later than the total
    processing time of all earlier jobs opens a gap; every later release
    date moves left by the gap.  The bound shrinks by the removed time, so
    the result may carry a negative bound (then it is a NO instance).
    """
    if inst.objective != "Cmax":
        raise InvalidInstance("release dates only occur with Cmax")
    releases = [j.r or 0 for j in inst.jobs]
    order = sorted(range(inst.n), key=lambda j: releases[j])
    new = list(releases)
    removed = 0
    elapsed = 0
    for j in order:
        r = releases[j] - removed
        if r > elapsed:
            removed += r - elapsed
            r = elapsed
        new[j] = r
        elapsed += inst.jobs[j].p
    jobs = tuple(Job(job.p, r=r) for job, r in zip(inst.jobs, new))
    out = SchedulingInstance(inst.k, jobs, "Cmax", inst.threshold - removed, inst.speeds)
    return Reduced(out, _meta("normalize release dates", inst, out, removed=removed))


def lmax_tmax_shift(inst: SchedulingInstance):
    """L_max <= l (or T_max <= t) to sum U_j = 0 by moving due dates by l.

    For T_max a bound t >= 0 is the same as L_max <= t.
    """
    if inst.objective not in ("Lmax", "Tmax"):
        raise InvalidInstance("expects an L_max or T_max decision instance")
    ell = inst.threshold
    if inst.objective == "Tmax" and ell < 0:
        return Decided(False, "tardiness is never negative")
    if inst.jobs and ell < -min(j.d for j in inst.jobs):
        # Some job would need to finish before time 0.
        return Decided(False, "the lateness bound is below minus the smallest due date")
    jobs = tuple(Job(j.p, d=j.d + ell) for j in inst.jobs)
    out = SchedulingInstance(inst.k, jobs, "SumUj", 0, inst.speeds)
    return Reduced(out, _meta("lateness bound shift", inst, out, ell=ell))
