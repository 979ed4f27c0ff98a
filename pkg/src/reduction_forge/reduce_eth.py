"""3-CNF to multiset k-way partition with targets.

Clauses are spread over k-1 bins (M/(k-1) clauses each); every bin picks
one satisfying local assignment per clause, and 3-bit communication
channels force two clauses that share a variable to agree on it.  Bin k
is the dumpster for everything that is not picked.

Clause indices i, j are 1-based in ids and maps, as in the construction;
bins in witnesses are 0-based.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .numeric import BlockWriter, assemble, build_layout, ceil_div, log_width
from .problems import CnfFormula, PartitionInstance, PartitionWitness

# Passes the verification harness must cover.
REDUCTIONS = ("build_eth_instance",)


class EthError(ValueError):
    pass


class AllocationFailed(EthError):
    pass


class NotSatisfying(EthError):
    pass


def pad_formula(phi: CnfFormula, k: int) -> CnfFormula:
    """Append tautologies (x1 or not x1) until k-1 divides M."""
    if k < 2:
        raise EthError("k must be at least 2")
    clauses = list(phi.clauses)
    while len(clauses) % (k - 1):
        if phi.num_vars < 1:
            raise EthError("cannot pad a formula without variables")
        clauses.append((1, -1))
    return CnfFormula(phi.num_vars, tuple(clauses))


def clause_bin(i: int, M: int, k: int) -> int:
    """l(i) = ceil(i (k-1) / M), in 1..k-1."""
    return ceil_div(i * (k - 1), M)


def clause_pos(i: int, M: int, k: int) -> int:
    """p(i) = i mod M/(k-1), taking M/(k-1) instead of 0."""
    per = M // (k - 1)
    r = i % per
    return r if r else per


@dataclass(frozen=True)
class ChannelPlan:
    tuples: tuple
    channel_of: dict
    num_channels: int
    used: int


def communication_tuples(phi: CnfFormula) -> list:
    out = []
    M = phi.M
    vars_of = [set(phi.clause_vars(i)) for i in range(M)]
    for i in range(1, M + 1):
        for j in range(i + 1, M + 1):
            for x in sorted(vars_of[i - 1] & vars_of[j - 1]):
                out.append((i, j, x))
    return out


def allocate_channels(phi: CnfFormula, k: int) -> ChannelPlan:
    """Greedy: lowest channel open on both bins, tuples in lexicographic order."""
    M = phi.M
    if M % (k - 1):
        raise EthError("pad the formula first")
    per = M // (k - 1) if M else 0
    num = 6 * phi.delta * per
    full = [set() for _ in range(num)]
    channel_of = {}
    tuples = communication_tuples(phi)
    for (i, j, x) in tuples:
        bins = {clause_bin(i, M, k), clause_bin(j, M, k)}
        for c in range(num):
            if not (full[c] & bins):
                full[c] |= bins
                channel_of[(i, j, x)] = c + 1
                break
        else:
            raise AllocationFailed(f"no open channel for tuple {(i, j, x)}")
    used = max(channel_of.values(), default=0)
    return ChannelPlan(tuple(tuples), channel_of, num, used)


@dataclass(frozen=True)
class EthArtifacts:
    formula: CnfFormula
    k: int
    layout: object
    item_ids: tuple
    items: tuple
    targets: tuple
    plan: ChannelPlan

    def ell(self, i: int) -> int:
        return clause_bin(i, self.formula.M, self.k)

    def pos(self, i: int) -> int:
        return clause_pos(i, self.formula.M, self.k)

    def index_of(self) -> dict:
        return {item_id: n for n, item_id in enumerate(self.item_ids)}


def eth_bit_bound(phi: CnfFormula, k: int) -> int:
    """Width of the layout: M/(k-1) + 18 Delta M/(k-1) + (10 + 20(k-1) + 20 C(k-1,2)) ceil(log M)."""
    per = phi.M // (k - 1)
    L = log_width(phi.M)
    pairs = (k - 1) * (k - 2) // 2
    return per + 18 * phi.delta * per + (10 + 20 * (k - 1) + 20 * pairs) * L


def _local_assignments(phi: CnfFormula, i: int):
    """Satisfying assignments of clause i (1-based) over its own variables."""
    vs = phi.clause_vars(i - 1)
    clause = phi.clauses[i - 1]
    for bits in itertools.product((0, 1), repeat=len(vs)):
        alpha = dict(zip(vs, bits))
        if any((lit > 0) == bool(alpha[abs(lit)]) for lit in clause):
            yield bits


def build_eth_instance(phi: CnfFormula, k: int):
    """Build (PartitionInstance with targets, EthArtifacts) for a padded formula."""
    if k < 2:
        raise EthError("k must be at least 2")
    if phi.K > 3:
        raise EthError("clauses may have at most 3 literals")
    M = phi.M
    if M % (k - 1):
        raise EthError("M must be divisible by k-1; call pad_formula first")
    per = M // (k - 1)
    L = log_width(M)
    pad = 10 * L
    plan = allocate_channels(phi, k)
    pairs = [(a, b) for a in range(1, k) for b in range(a + 1, k)]
    blocks = []
    for l in range(1, k):
        blocks += [(("I", l), pad), (("padI", l), pad)]
    blocks += [(("II", p), 1) for p in range(1, per + 1)]
    blocks.append((("padII",), pad))
    for pr in pairs:
        blocks += [(("III",) + pr, pad), (("padIII",) + pr, pad)]
    blocks += [(("ch", c), 3) for c in range(1, plan.num_channels + 1)]
    layout = build_layout(blocks)

    ell = {i: clause_bin(i, M, k) for i in range(1, M + 1)}
    touching = {i: [] for i in range(1, M + 1)}
    for t in plan.tuples:
        touching[t[0]].append(t)
        touching[t[1]].append(t)

    ids, values = [], []
    for i in range(1, M + 1):
        vs = phi.clause_vars(i - 1)
        for bits in _local_assignments(phi, i):
            alpha = dict(zip(vs, bits))
            w = BlockWriter(layout)
            w.set(("I", ell[i]), 1)
            w.set(("II", clause_pos(i, M, k)), 1)
            for (a, b, x) in touching[i]:
                bit = alpha[x] if a == i else 1 - alpha[x]
                w.set(("ch", plan.channel_of[(a, b, x)]), bit)
            ids.append(("z", i, bits))
            values.append(assemble(w))
    for (i, j, x) in plan.tuples:
        if ell[i] == ell[j]:
            continue
        pr = (ell[i], ell[j])
        c = plan.channel_of[(i, j, x)]
        for tag, code in (("d", 0b010), ("d'", 0b011)):
            w = BlockWriter(layout)
            w.set(("III",) + pr, 1)
            w.set(("ch", c), code)
            ids.append((tag, i, j, x))
            values.append(assemble(w))

    external = {}
    for (i, j, x) in plan.tuples:
        if ell[i] != ell[j]:
            external[(ell[i], ell[j])] = external.get((ell[i], ell[j]), 0) + 1
    targets = []
    for l in range(1, k):
        w = BlockWriter(layout)
        w.set(("I", l), per)
        for p in range(1, per + 1):
            w.set(("II", p), 1)
        for pr in pairs:
            if l in pr:
                w.set(("III",) + pr, external.get(pr, 0))
        for (i, j, x) in plan.tuples:
            if l in (ell[i], ell[j]):
                w.set(("ch", plan.channel_of[(i, j, x)]), 0b001 if ell[i] == ell[j] else 0b011)
        targets.append(assemble(w))
    # A negative remainder means the packed bins already ask for more than
    # the items hold; a zero dumpster target keeps the instance a NO.
    targets.append(max(0, sum(values) - sum(targets)))
    inst = PartitionInstance(tuple(values), k, targets=tuple(targets))
    art = EthArtifacts(phi, k, layout, tuple(ids), tuple(values), tuple(targets), plan)
    return inst, art


def lift_eth_assignment(art: EthArtifacts, alpha) -> PartitionWitness:
    """Witness from a satisfying assignment (alpha[v-1] is variable v)."""
    phi, k = art.formula, art.k
    if not phi.satisfied_by(alpha):
        raise NotSatisfying("assignment does not satisfy the formula")
    bins = []
    for item_id in art.item_ids:
        if item_id[0] == "z":
            _, i, bits = item_id
            vs = phi.clause_vars(i - 1)
            local = tuple(int(bool(alpha[v - 1])) for v in vs)
            bins.append(art.ell(i) - 1 if local == bits else k - 1)
        else:
            # d (010) joins the side whose assignment item shows 001 on the
            # channel, d' (011) the side showing 000.
            tag, i, j, x = item_id
            with_one = art.ell(i) if alpha[x - 1] else art.ell(j)
            with_zero = art.ell(j) if alpha[x - 1] else art.ell(i)
            bins.append((with_one if tag == "d" else with_zero) - 1)
    return PartitionWitness(tuple(bins))
