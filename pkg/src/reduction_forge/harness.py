"""Verification harness: round trips, parameter audits and structural checks.

Every reduction pass is registered in ``PASSES`` together with a corpus
generator that respects its preconditions and the size bounds the pass
promises.  Instances are regenerated deterministically from
``(generator, seed, index)``.  Checks run sequentially in corpus order, so
reports are reproducible byte for byte.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import equivalences, reduce_eth, reduce_seth, sched_reductions, solvers, vss
from .numeric import ceil_log2
from .problems import (
    CnfFormula, Decided, GroupedInstance, InvalidInstance, Job, PartitionInstance,
    PartitionWitness, ProblemError, Reduced, SchedulingInstance, SubsetSumInstance,
    VssInstance, check_witness, parameter_of, size_of,
)

MAX_SHRINK_STEPS = 1000


@dataclass(frozen=True)
class CorpusSpec:
    generator: str
    seed: int = 0
    count: int = 50
    caps: dict = field(default_factory=dict)

    def rng(self, index: int) -> random.Random:
        return random.Random(f"{self.generator}:{self.seed}:{index}")

    def instances(self):
        make = GENERATORS[self.generator]
        for i in range(self.count):
            yield make(self.rng(i), self.caps)


# ------------------------------------------------------------ generators

def _cap(caps, name, default):
    return caps.get(name, default)


def gen_cnf(rng, caps):
    N = rng.randint(1, _cap(caps, "N", 4))
    M = rng.randint(1, _cap(caps, "M", 3))
    width = _cap(caps, "K", 3)
    clauses = []
    for _ in range(M):
        w = rng.randint(1, min(width, N))
        vs = rng.sample(range(1, N + 1), w)
        clauses.append(tuple(v if rng.random() < 0.5 else -v for v in vs))
    return CnfFormula(N, tuple(clauses))


def _random_items(rng, caps, lo=1):
    n = rng.randint(1, _cap(caps, "n", 8))
    return [rng.randint(lo, _cap(caps, "value", 50)) for _ in range(n)]


def _k(rng, caps):
    return rng.randint(2, _cap(caps, "k", 3))


def _composition(rng, total, parts, hi):
    """Random composition of total into parts values in [1, hi], or None."""
    if not parts * 1 <= total <= parts * hi:
        return None
    vals = [1] * parts
    for _ in range(total - parts):
        open_slots = [i for i in range(parts) if vals[i] < hi]
        vals[rng.choice(open_slots)] += 1
    return vals


def gen_partition(rng, caps):
    k = _k(rng, caps)
    hi = _cap(caps, "value", 50)
    n = rng.randint(1, _cap(caps, "n", 8))
    if n >= k and rng.random() < 0.4:
        # planted yes instance: equal-sum bins of random sizes
        sizes = [1] * k
        for _ in range(n - k):
            sizes[rng.randrange(k)] += 1
        goal = rng.randint(max(sizes), min(sizes) * hi)
        items = []
        for m in sizes:
            items += _composition(rng, goal, m, hi)
        rng.shuffle(items)
        return PartitionInstance(tuple(items), k)
    items = [rng.randint(1, hi) for _ in range(n)]
    if rng.random() < 0.7:
        # nudge the total towards a multiple of k
        items[-1] += (-sum(items)) % k
    return PartitionInstance(tuple(items), k)


def gen_binpacking(rng, caps):
    k = _k(rng, caps)
    items = _random_items(rng, caps)
    cap = -(-sum(items) // k) + rng.randint(0, 5)
    return PartitionInstance(tuple(items), k, capacity=max(cap, max(items) - 1))


def gen_targets(rng, caps):
    k = _k(rng, caps)
    items = _random_items(rng, caps, lo=0)
    sums = [0] * k
    for x in items:
        sums[rng.randrange(k)] += x
    if rng.random() < 0.3 and sums[0] > 0:
        sums[0] -= 1
        sums[1] += 1
    return PartitionInstance(tuple(items), k, targets=tuple(sums))


def _bounded_values(rng, count, W, n, yes, k):
    """count values in the range of W with offsets up to W // n**10."""
    slack = W // n ** 10
    if not yes:
        return [W - rng.randint(0, slack) for _ in range(count)]
    per = count // k
    row = [rng.randint(0, slack) for _ in range(per)]
    offsets = list(row)
    for _ in range(k - 1):
        # same offset sum, different spread
        other = list(row)
        if per >= 2:
            a, b = rng.sample(range(per), 2)
            d = rng.randint(0, min(other[a], slack - other[b]))
            other[a] -= d
            other[b] += d
        offsets += other
    rng.shuffle(offsets)
    return [W - o for o in offsets]


def gen_bounded(rng, caps):
    k = _k(rng, caps)
    per = rng.randint(1, _cap(caps, "per_bin", 2))
    n = k * per
    W = n ** 10 * rng.randint(1, _cap(caps, "slack", 4))
    yes = rng.random() < 0.5
    items = _bounded_values(rng, n, W, n, yes, k)
    return PartitionInstance(tuple(items), k, bounded_W=W)


def _grouped(rng, caps, weak, with_targets=False):
    k = _k(rng, caps)
    s = rng.randint(1, _cap(caps, "s", 2))
    q = rng.randint(1, _cap(caps, "q", 2))
    n = k * s * q
    slack = rng.randint(1, _cap(caps, "slack", 3))
    W = n ** 10 * slack
    yes = rng.random() < 0.5
    groups = []
    if yes:
        # offsets o[i][l][r]; bin sums equalised through the last group
        for _ in range(40):
            table = [[[rng.randint(0, slack) for _ in range(s)] for _ in range(k)] for _ in range(q)]
            sums = [sum(sum(table[i][l]) for i in range(q)) for l in range(k)]
            goal = max(sums)
            ok = True
            for l in range(k):
                need = goal - sums[l]
                for r in range(s):
                    room = slack - table[q - 1][l][r]
                    step = min(room, need)
                    table[q - 1][l][r] += step
                    need -= step
                ok = ok and need == 0
            if ok:
                break
        for i in range(q):
            g = [W - o for l in range(k) for o in table[i][l]]
            rng.shuffle(g)
            groups.append(tuple(g))
    else:
        for _ in range(q):
            groups.append(tuple(W - rng.randint(0, slack) for _ in range(k * s)))
    targets = None
    if with_targets:
        sums = [0] * (k - 1)
        for g in groups:
            order = list(g)
            rng.shuffle(order)
            for l in range(k - 1):
                sums[l] += sum(order[l * s:(l + 1) * s])
        if rng.random() < 0.3:
            sums[0] -= 1
        targets = tuple(sums)
    return GroupedInstance(tuple(groups), k, s, W, targets, weak)


def gen_grouped(rng, caps):
    return _grouped(rng, caps, weak=False)


def gen_weak_grouped(rng, caps):
    return _grouped(rng, caps, weak=True)


def gen_weak_targets(rng, caps):
    return _grouped(rng, caps, weak=True, with_targets=True)


def _jobs(rng, caps):
    n = rng.randint(1, _cap(caps, "jobs", 5))
    T = _cap(caps, "T", 40)
    ps = [rng.randint(1, _cap(caps, "p", 8)) for _ in range(n)]
    while len(ps) > 1 and sum(ps) > T:
        ps.pop()
    return [min(p, T) for p in ps]


def gen_cmax_release(rng, caps):
    k = rng.randint(1, _cap(caps, "k", 3))
    ps = _jobs(rng, caps)
    jobs = tuple(Job(p, r=rng.randint(0, _cap(caps, "r", 15))) for p in ps)
    M = rng.randint(0, sum(ps) + _cap(caps, "r", 15))
    return SchedulingInstance(k, jobs, "Cmax", M)


def gen_sumuj0(rng, caps):
    k = rng.randint(1, _cap(caps, "k", 3))
    ps = _jobs(rng, caps)
    jobs = tuple(Job(p, d=rng.randint(0, _cap(caps, "d", 20))) for p in ps)
    return SchedulingInstance(k, jobs, "SumUj", 0)


def gen_sumuj(rng, caps):
    k = rng.randint(1, _cap(caps, "k", 3))
    ps = _jobs(rng, caps)
    jobs = tuple(Job(p, d=rng.randint(0, sum(ps))) for p in ps)
    return SchedulingInstance(k, jobs, "SumUj", rng.randint(0, len(ps)))


def gen_lateness(rng, caps):
    k = rng.randint(1, _cap(caps, "k", 3))
    ps = _jobs(rng, caps)
    jobs = tuple(Job(p, d=rng.randint(0, _cap(caps, "d", 20))) for p in ps)
    if rng.random() < 0.5:
        return SchedulingInstance(k, jobs, "Lmax", rng.randint(-8, 8))
    return SchedulingInstance(k, jobs, "Tmax", rng.randint(0, 8))


def gen_qcmax(rng, caps):
    k = rng.randint(1, _cap(caps, "k", 3))
    ps = _jobs(rng, caps)
    speeds = tuple(rng.choice((Fraction(1), Fraction(1, 2), Fraction(2, 3), Fraction(3, 4)))
                   for _ in range(k))
    jobs = tuple(Job(p) for p in ps)
    return SchedulingInstance(k, jobs, "Cmax", rng.randint(0, sum(ps) + 2), speeds)


def gen_subset_sum(rng, caps):
    n = rng.randint(0, _cap(caps, "n", 10))
    t_max = _cap(caps, "t", 200)
    items = [rng.randint(1, t_max) for _ in range(n)]
    if items and rng.random() < 0.5:
        t = sum(x for x in items if rng.random() < 0.5)
        t = min(t, t_max)
    else:
        t = rng.randint(0, t_max)
    return SubsetSumInstance(tuple(items), t)


def gen_vss(rng, caps):
    k = rng.randint(1, _cap(caps, "dim", 3))
    n = rng.randint(0, _cap(caps, "n", 8))
    hi = _cap(caps, "coord", 6)
    vectors = [tuple(rng.randint(0, hi) for _ in range(k)) for _ in range(n)]
    if vectors and rng.random() < 0.5:
        picked = [v for v in vectors if rng.random() < 0.5]
        target = tuple(sum(col) for col in zip(*picked)) if picked else (0,) * k
    else:
        target = tuple(rng.randint(0, 2 * hi) for _ in range(k))
    return VssInstance(tuple(vectors), target)


GENERATORS = {
    "cnf": gen_cnf,
    "partition": gen_partition,
    "binpacking": gen_binpacking,
    "targets": gen_targets,
    "bounded": gen_bounded,
    "grouped": gen_grouped,
    "weak_grouped": gen_weak_grouped,
    "weak_targets": gen_weak_targets,
    "cmax_release": gen_cmax_release,
    "sumuj0": gen_sumuj0,
    "sumuj": gen_sumuj,
    "lateness": gen_lateness,
    "qcmax": gen_qcmax,
    "subset_sum": gen_subset_sum,
    "vss": gen_vss,
}


# ------------------------------------------------------------ verdicts

def verdict_of(obj, budget=None) -> Optional[bool]:
    """Exact verdict of an instance or pass output; None for a broken promise."""
    if isinstance(obj, Decided):
        return obj.verdict
    if isinstance(obj, Reduced):
        return verdict_of(obj.instance, budget)
    if isinstance(obj, (list, tuple)):
        # a family: yes iff some member is yes
        verdicts = [verdict_of(x, budget) for x in obj]
        if any(v is True for v in verdicts):
            return True
        return None if any(v is None for v in verdicts) else False
    if isinstance(obj, CnfFormula):
        return solvers.sat_bruteforce(obj).verdict
    if isinstance(obj, PartitionInstance):
        return solvers.partition_targets_bruteforce(obj, budget).verdict
    if isinstance(obj, GroupedInstance):
        if obj.weak:
            return {"yes": True, "no": False}.get(solvers.decide_weak_grouped(obj, budget))
        return solvers.check_grouped_yes(obj, budget).verdict
    if isinstance(obj, SchedulingInstance):
        return solvers.sched_bruteforce(obj, budget).verdict
    if isinstance(obj, VssInstance):
        return solvers.vss_dp(obj, budget).verdict
    if isinstance(obj, SubsetSumInstance):
        return solvers.subset_sum_dp(obj, budget).verdict
    raise TypeError(f"no verdict for {type(obj).__name__}")


# ------------------------------------------------------------ pass registry

def _base(n, k):
    return k * max(n, 2)


@dataclass(frozen=True)
class PassSpec:
    """One reduction pass.

    ``n_bound`` and ``T_bound`` take (n, T, k) of the source and return the
    largest size and parameter the output may have.
    """

    id: str
    module: object
    func: str
    generator: str
    run: Callable
    n_bound: Optional[Callable] = None
    T_bound: Optional[Callable] = None
    caps: dict = field(default_factory=dict)


def _run_eth(phi, caps):
    k = caps.get("k_eth", 2)
    padded = reduce_eth.pad_formula(phi, k)
    inst, _ = reduce_eth.build_eth_instance(padded, k)
    return Reduced(inst, {"lemma": "3-SAT to partition with targets"})


def _run_seth(phi, caps):
    k = caps.get("k_seth", 2)
    padded = reduce_seth.pad_variables(phi, k, 1)
    params = reduce_seth.seth_params(padded, k, 1)
    return tuple(inst for _, inst in reduce_seth.seth_instance_family(padded, params))


def _run_embed(inst, caps):
    return equivalences.embed_special_case(inst, "partition")


def _run_q1(inst, caps):
    try:
        return Reduced(equivalences.bounded_to_weak_grouped_q1(inst), {})
    except equivalences.IndivisibleGroup:
        return Decided(verdict_of(inst), "item count not a multiple of k")


def _run_ss_to_vss(inst, caps):
    k = caps.get("dim", 2)
    return tuple(vss.subset_sum_to_vss(inst.items, inst.target, k))


def _wrap(fn):
    return lambda inst, caps: fn(inst)


def _mem_set_T(n, T, k):
    return T * 4 * max(n, 2) ** 20


PASSES = {p.id: p for p in [
    PassSpec("build_eth_instance", reduce_eth, "build_eth_instance", "cnf", _run_eth),
    PassSpec("seth_instance_family", reduce_seth, "seth_instance_family", "cnf", _run_seth,
             caps={"N": 3, "M": 2}),
    PassSpec("embed_special_case", equivalences, "embed_special_case", "bounded", _run_embed,
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("partition_to_binpacking", equivalences, "partition_to_binpacking", "partition",
             _wrap(equivalences.partition_to_binpacking),
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("binpacking_to_partition", equivalences, "binpacking_to_partition", "binpacking",
             _wrap(equivalences.binpacking_to_partition),
             lambda n, T, k: n + (k + 3) * (ceil_log2(max(k * T, 2)) + 1) + 2 * k * k,
             lambda n, T, k: T),
    PassSpec("targets_to_plain_multiset", equivalences, "targets_to_plain_multiset", "targets",
             _wrap(equivalences.targets_to_plain_multiset),
             lambda n, T, k: n + k, lambda n, T, k: 3 * T),
    PassSpec("multiset_to_bounded", equivalences, "multiset_to_bounded", "partition",
             _wrap(equivalences.multiset_to_bounded),
             lambda n, T, k: n * k, lambda n, T, k: max(T, 1) * _base(n, k) ** 12),
    PassSpec("bounded_multiset_to_set", equivalences, "bounded_multiset_to_set", "bounded",
             _wrap(equivalences.bounded_multiset_to_set),
             lambda n, T, k: 2 * n, _mem_set_T),
    PassSpec("qcmax_to_pcmax", equivalences, "qcmax_to_pcmax", "qcmax",
             _wrap(equivalences.qcmax_to_pcmax),
             lambda n, T, k: n + k, lambda n, T, k: T * (1 + 3 * k)),
    PassSpec("bounded_to_weak_grouped_q1", equivalences, "bounded_to_weak_grouped_q1", "bounded",
             _run_q1, lambda n, T, k: n, lambda n, T, k: 2 * T),
    PassSpec("weak_targets_to_weak_multiset", equivalences, "weak_targets_to_weak_multiset",
             "weak_targets", _wrap(equivalences.weak_targets_to_weak_multiset),
             lambda n, T, k: n + n, lambda n, T, k: T * max(n, 2) ** 20),
    PassSpec("weak_multiset_to_weak_set", equivalences, "weak_multiset_to_weak_set",
             "weak_grouped", _wrap(equivalences.weak_multiset_to_weak_set),
             lambda n, T, k: 2 * n, lambda n, T, k: T * max(n, 2) ** 20),
    PassSpec("grouped_to_sumUj0", sched_reductions, "grouped_to_sumUj0", "grouped",
             _wrap(sched_reductions.grouped_to_sumUj0),
             lambda n, T, k: n, lambda n, T, k: n * T),
    PassSpec("grouped_to_wjcj", sched_reductions, "grouped_to_wjcj", "grouped",
             _wrap(sched_reductions.grouped_to_wjcj),
             lambda n, T, k: n, lambda n, T, k: n * T),
    PassSpec("weak_grouped_to_pjUj", sched_reductions, "weak_grouped_to_pjUj", "weak_grouped",
             _wrap(sched_reductions.weak_grouped_to_pjUj),
             lambda n, T, k: n, lambda n, T, k: n * T),
    PassSpec("reverse_time", sched_reductions, "reverse_time", "cmax_release",
             _wrap(sched_reductions.reverse_time),
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("reverse_time_back", sched_reductions, "reverse_time", "sumuj0",
             _wrap(sched_reductions.reverse_time),
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("normalize_release_dates", sched_reductions, "normalize_release_dates",
             "cmax_release", _wrap(sched_reductions.normalize_release_dates),
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("lmax_tmax_shift", sched_reductions, "lmax_tmax_shift", "lateness",
             _wrap(sched_reductions.lmax_tmax_shift),
             lambda n, T, k: n, lambda n, T, k: T),
    PassSpec("vss_to_subset_sum", vss, "vss_to_subset_sum", "vss",
             _wrap(vss.vss_to_subset_sum),
             lambda n, T, k: n, lambda n, T, k: (2 * max(n, 1) * max(T, 1)) ** k),
    PassSpec("subset_sum_to_vss", vss, "subset_sum_to_vss", "subset_sum", _run_ss_to_vss),
]}

REDUCTION_MODULES = (reduce_eth, reduce_seth, equivalences, sched_reductions, vss)


def coverage_gaps() -> list:
    """Reductions declared by a module but not registered as a pass."""
    registered = {(p.module.__name__, p.func) for p in PASSES.values()}
    gaps = []
    for mod in REDUCTION_MODULES:
        for name in mod.REDUCTIONS:
            if (mod.__name__, name) not in registered:
                gaps.append(f"{mod.__name__}.{name}")
    return gaps


# ------------------------------------------------------------ round trips

@dataclass
class RoundtripReport:
    pass_id: str
    results: list = field(default_factory=list)
    skipped: int = 0
    counterexample: Optional[object] = None

    @property
    def ok(self) -> bool:
        return self.counterexample is None

    @property
    def checked(self) -> int:
        return len(self.results)

    def summary(self) -> dict:
        yes = sum(1 for v, _, _ in self.results if v)
        return {"pass": self.pass_id, "checked": self.checked, "skipped": self.skipped,
                "source_yes": yes, "source_no": self.checked - yes, "ok": self.ok,
                "counterexample": None if self.ok else repr(self.counterexample)}


def _mismatch(spec: PassSpec, inst, caps, budget) -> Optional[bool]:
    """True on mismatch, False on match, None if the instance must be skipped."""
    src = verdict_of(inst, budget)
    if src is None:
        return None
    out = verdict_of(spec.run(inst, caps), budget)
    if out is None:
        return None
    return src != out


def _shrink_candidates(inst):
    if isinstance(inst, CnfFormula):
        for i in range(inst.M):
            if inst.M > 1:
                yield CnfFormula(inst.num_vars, inst.clauses[:i] + inst.clauses[i + 1:])
    elif isinstance(inst, PartitionInstance):
        for i in range(inst.n):
            yield PartitionInstance(inst.items[:i] + inst.items[i + 1:], inst.k, inst.set_flag,
                                    inst.targets, inst.capacity, inst.bounded_W)
    elif isinstance(inst, SchedulingInstance):
        for i in range(inst.n):
            yield SchedulingInstance(inst.k, inst.jobs[:i] + inst.jobs[i + 1:], inst.objective,
                                     inst.threshold, inst.speeds)
    elif isinstance(inst, SubsetSumInstance):
        for i in range(len(inst.items)):
            yield SubsetSumInstance(inst.items[:i] + inst.items[i + 1:], inst.target)
    elif isinstance(inst, VssInstance):
        for i in range(len(inst.vectors)):
            yield VssInstance(inst.vectors[:i] + inst.vectors[i + 1:], inst.target)
    elif isinstance(inst, GroupedInstance) and inst.q > 1:
        for i in range(inst.q):
            yield GroupedInstance(inst.groups[:i] + inst.groups[i + 1:], inst.k, inst.s,
                                  inst.W, inst.targets, inst.weak, inst.set_flag)


def shrink(spec: PassSpec, inst, caps=None, budget=None, max_steps=MAX_SHRINK_STEPS):
    """Greedily drop items, jobs or clauses while the mismatch persists."""
    caps = spec.caps if caps is None else caps
    steps = 0
    progress = True
    while progress and steps < max_steps:
        progress = False
        for cand in _safe_candidates(inst):
            steps += 1
            if steps > max_steps:
                break
            try:
                if _mismatch(spec, cand, caps, budget):
                    inst = cand
                    progress = True
                    break
            except (ProblemError, ValueError):
                continue
    return inst


def _safe_candidates(inst):
    gen = _shrink_candidates(inst)
    while True:
        try:
            yield next(gen)
        except StopIteration:
            return
        except (ProblemError, ValueError):
            continue


def roundtrip_check(pass_id: str, corpus: CorpusSpec, budget=None) -> RoundtripReport:
    """Compare source and output verdicts over a corpus; shrink the first mismatch."""
    spec = PASSES[pass_id]
    caps = {**spec.caps, **corpus.caps}
    report = RoundtripReport(pass_id)
    for inst in CorpusSpec(corpus.generator, corpus.seed, corpus.count, caps).instances():
        src = verdict_of(inst, budget)
        out = verdict_of(spec.run(inst, caps), budget) if src is not None else None
        if src is None or out is None:
            report.skipped += 1
            continue
        report.results.append((src, out, src == out))
        if src != out:
            report.counterexample = shrink(spec, inst, caps, budget)
            break
    return report


def corpus_for(pass_id: str, seed: int = 0, count: int = 50, **caps) -> CorpusSpec:
    spec = PASSES[pass_id]
    return CorpusSpec(spec.generator, seed, count, {**spec.caps, **caps})


# ------------------------------------------------------------ parameter audit

@dataclass
class AuditReport:
    pass_id: str
    checked: int = 0
    decided: int = 0
    max_n_ratio: Fraction = Fraction(0)
    max_T_ratio: Fraction = Fraction(0)
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def _k_of(inst) -> int:
    if isinstance(inst, (PartitionInstance, GroupedInstance, SchedulingInstance)):
        return inst.k
    if isinstance(inst, VssInstance):
        return inst.dim
    return 1


def audit_pair(pass_id: str, src, out, report: Optional[AuditReport] = None) -> AuditReport:
    """Record one (source, pass output) pair against the pass's bounds."""
    spec = PASSES[pass_id]
    if spec.n_bound is None:
        raise ValueError(f"{pass_id} records no parameter bounds")
    report = AuditReport(pass_id) if report is None else report
    if isinstance(out, Decided):
        report.decided += 1
        return report
    n, T, k = size_of(src), parameter_of(src), _k_of(src)
    n2, T2 = size_of(out.instance), parameter_of(out.instance)
    report.checked += 1
    report.max_n_ratio = max(report.max_n_ratio, Fraction(n2, max(1, n + ceil_log2(max(T, 2)))))
    report.max_T_ratio = max(report.max_T_ratio, Fraction(T2, max(T, 1)))
    if n2 > spec.n_bound(n, T, k) or T2 > spec.T_bound(n, T, k):
        report.violations.append((src, n2, T2))
    return report


def param_audit(pass_id: str, corpus: CorpusSpec) -> AuditReport:
    """Check n' and T' against the pass's recorded bounds on every instance.

    The ratios reported are n'/(n + log2 T) and T'/T.
    """
    spec = PASSES[pass_id]
    caps = {**spec.caps, **corpus.caps}
    report = AuditReport(pass_id)
    for inst in CorpusSpec(corpus.generator, corpus.seed, corpus.count, caps).instances():
        audit_pair(pass_id, inst, spec.run(inst, caps), report)
    return report


# ------------------------------------------------------------ equivalence cycle

CYCLE = ("partition_to_binpacking", "binpacking_to_partition", "multiset_to_bounded",
         "bounded_multiset_to_set", "embed_special_case")


@dataclass
class CycleReport:
    checked: int = 0
    mismatches: list = field(default_factory=list)
    audits: dict = field(default_factory=dict)
    source_yes: int = 0

    @property
    def ok(self) -> bool:
        return not self.mismatches and all(a.ok for a in self.audits.values())


def run_cycle(inst: PartitionInstance):
    """Apply the cycle; returns the list of (pass id, source, output) steps."""
    steps = []
    cur = inst
    for pid in CYCLE:
        out = PASSES[pid].run(cur, {})
        steps.append((pid, cur, out))
        if isinstance(out, Decided):
            break
        cur = out.instance
    return steps


def cycle_check(instances, budget=None) -> CycleReport:
    """Brute-force verdicts at both ends of the cycle, plus per-pass audits."""
    report = CycleReport(audits={pid: AuditReport(pid) for pid in CYCLE})
    for inst in instances:
        steps = run_cycle(inst)
        for pid, src, out in steps:
            audit_pair(pid, src, out, report.audits[pid])
        src_v = verdict_of(inst, budget)
        out_v = verdict_of(steps[-1][2], budget)
        report.checked += 1
        report.source_yes += src_v
        if src_v != out_v:
            report.mismatches.append(inst)
    return report


# ------------------------------------------------------------ structural checks

@dataclass
class CardinalityReport:
    checked: int = 0
    skipped: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures


def _bounded_gate(inst: PartitionInstance) -> bool:
    from .problems import in_bounded_range
    W = inst.bounded_W
    return (W is not None and inst.n >= 2
            and all(in_bounded_range(x, W, inst.n) for x in inst.items))


def bounded_cardinality_check(pairs) -> CardinalityReport:
    """Every bin of an equal-sum bounded witness holds exactly n/k items.

    ``pairs`` yields (instance, witness).  Pairs whose instance is not a
    bounded instance, or whose witness is not an exact solution, are skipped.
    """
    report = CardinalityReport()
    for inst, w in pairs:
        if not isinstance(inst, PartitionInstance) or not _bounded_gate(inst):
            report.skipped += 1
            continue
        if not isinstance(w, PartitionWitness) or not check_witness(inst, w):
            report.skipped += 1
            continue
        report.checked += 1
        counts = [0] * inst.k
        for b in w.bins:
            counts[b] += 1
        if any(c * inst.k != inst.n for c in counts):
            report.failures.append((inst, w, counts))
    return report


def bounded_yes_pairs(seed: int, count: int, **caps):
    """Bounded yes-instances with a solver witness, for the cardinality check."""
    spec = CorpusSpec("bounded", seed, count * 4, caps)
    found = 0
    for inst in spec.instances():
        rep = solvers.partition_targets_bruteforce(inst)
        if rep.verdict:
            yield inst, rep.witness
            found += 1
            if found == count:
                return
