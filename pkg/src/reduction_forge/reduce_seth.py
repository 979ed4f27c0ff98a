"""K-CNF to weak grouped k-way partition with targets.

Variables are bundled into supervariables of a variables each.  Group G_i
(one per supervariable) holds an assignment item per local assignment and
group G_{N/a+j} (one per clause) holds an item per supervariable assignment
satisfying clause j.  A guessed tuple gamma says how many clauses each
supervariable is responsible for; an average-free set B makes the IV-block
sums consistent only when all items chosen for one supervariable agree.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .gadgets import AvgFreeSet, behrend_set
from .numeric import BlockWriter, assemble, build_layout, ceil_div, ceil_log2
from .problems import CnfFormula, GroupedInstance, GroupedWitness

# Passes the verification harness must cover.
REDUCTIONS = ("seth_instance_family",)


class SethError(ValueError):
    pass


def pad_variables(phi: CnfFormula, k: int, a: int) -> CnfFormula:
    """Add unused variables until (k-1)a divides N."""
    step = (k - 1) * a
    N = max(phi.num_vars, 1)
    N = ceil_div(N, step) * step
    return CnfFormula(N, phi.clauses)


@dataclass(frozen=True)
class SethParams:
    k: int
    a: int
    mu: Fraction
    N: int
    M: int
    delta: int
    K: int
    q: int
    s: int
    n: int
    B: AvgFreeSet

    @property
    def U(self) -> int:
        return self.B.U

    @property
    def supervars(self) -> int:
        return self.N // self.a

    @property
    def per_bin(self) -> int:
        return self.N // ((self.k - 1) * self.a)

    @property
    def cap(self) -> int:
        """Delta * a, the largest admissible gamma_i."""
        return self.delta * self.a


def seth_params(phi: CnfFormula, k: int, a: int = 1, mu=Fraction(1, 2)) -> SethParams:
    """Derived sizes for a formula already padded with ``pad_variables``.

    K is taken as at least 3 and Delta as at least 1, and the average-free
    set gets strength at least 2 (a 1-average-free set says nothing).
    """
    if k < 2 or a < 1:
        raise SethError("need k >= 2 and a >= 1")
    N = phi.num_vars
    if N % ((k - 1) * a):
        raise SethError("N must be divisible by (k-1)a; call pad_variables first")
    mu = Fraction(mu)
    delta = max(phi.delta, 1)
    K = max(phi.K, 3)
    q = N // a + phi.M
    s = 2 ** a * max(delta * a, K)
    n = k * s * q
    B = behrend_set(2 ** a, max(2, delta * a), mu)
    return SethParams(k, a, mu, N, phi.M, delta, K, q, s, n, B)


def gamma_tuples(params_or_len, cap=None, total=None):
    """Tuples in {0..cap}^len summing to total, in lexicographic order.

    Accepts either a SethParams or the three numbers (len, cap, total).
    """
    if isinstance(params_or_len, SethParams):
        length, cap, total = params_or_len.supervars, params_or_len.cap, params_or_len.M
    else:
        length = params_or_len

    def rec(pos, left):
        if pos == length - 1:
            if left <= cap:
                yield (left,)
            return
        rest = length - pos - 1
        for g in range(0, min(cap, left) + 1):
            if left - g <= rest * cap:
                for tail in rec(pos + 1, left - g):
                    yield (g,) + tail

    if length == 0:
        if total == 0:
            yield ()
        return
    yield from rec(0, total)


def supervar_bin(i: int, p: SethParams) -> int:
    return ceil_div(i * (p.k - 1) * p.a, p.N)


def supervar_pos(i: int, p: SethParams) -> int:
    r = i % p.per_bin
    return r if r else p.per_bin


def b_of(alpha, p: SethParams) -> int:
    """B[alpha] with alpha read little-endian (alpha[0] weighs 1)."""
    idx = sum(bit << j for j, bit in enumerate(alpha))
    return p.B.elements[idx]


def _local(a):
    """All alpha in {0,1}^a, ordered by their little-endian index."""
    return [tuple((idx >> j) & 1 for j in range(a)) for idx in range(2 ** a)]


def satisfies_clause(phi: CnfFormula, j: int, i: int, alpha, a: int) -> bool:
    """Does setting supervariable i (1-based) to alpha satisfy clause j (1-based)?"""
    lo = (i - 1) * a + 1
    for lit in phi.clauses[j - 1]:
        v = abs(lit)
        if lo <= v < lo + a and (lit > 0) == bool(alpha[v - lo]):
            return True
    return False


def supervars_of_clause(phi: CnfFormula, j: int, a: int) -> list:
    return sorted({(abs(lit) - 1) // a + 1 for lit in phi.clauses[j - 1]})


@dataclass(frozen=True)
class SethLayout:
    layout: object
    width: int
    exponent: int
    W: int


def seth_layout(p: SethParams) -> SethLayout:
    L = ceil_log2(max(p.n, 2))
    pad = 10 * L
    w4 = ceil_log2(2 * p.cap * p.U)
    blocks = [("I", pad), ("padI", pad), ("II", pad), ("padII", pad)]
    for l in range(1, p.k):
        blocks += [(("III", l), pad), (("padIII", l), pad)]
    blocks += [(("IV", pos), w4) for pos in range(1, p.per_bin + 1)]
    layout = build_layout(blocks)
    E = layout.width - pad
    W = (1 << E) + (1 << (E - pad))
    return SethLayout(layout, layout.width, E, W)


def build_seth_instance(phi: CnfFormula, p: SethParams, gamma) -> GroupedInstance:
    gamma = tuple(gamma)
    if len(gamma) != p.supervars:
        raise SethError("gamma needs one entry per supervariable")
    lay = seth_layout(p)
    L = lay.layout
    k, s, a = p.k, p.s, p.a
    DU = p.cap * p.U

    def item(group, bin_=None, pos=None, iv=0):
        w = BlockWriter(L).set("I", 1).set("II", group)
        if bin_ is not None:
            w.set(("III", bin_), 1)
            w.set(("IV", pos), iv)
        return assemble(w)

    groups = []
    for i in range(1, p.supervars + 1):
        l, pos = supervar_bin(i, p), supervar_pos(i, p)
        zs = [item(i, l, pos, DU - gamma[i - 1] * b_of(al, p)) for al in _local(a)]
        g = zs + [item(i)] * ((k - 1) * s - 1)
        g += [zs[0]] * (k * s - len(g))
        groups.append(tuple(g))
    for j in range(1, p.M + 1):
        b = p.supervars + j
        ys = []
        for i in supervars_of_clause(phi, j, a):
            l, pos = supervar_bin(i, p), supervar_pos(i, p)
            for al in _local(a):
                if satisfies_clause(phi, j, i, al, a):
                    ys.append(item(b, l, pos, b_of(al, p)))
        g = ys + [item(b)] * ((k - 1) * s - 1)
        if len(g) > k * s:
            raise SethError("clause group overflows; s is too small")  # pragma: no cover
        g += [ys[0]] * (k * s - len(g))
        groups.append(tuple(g))

    targets = []
    II = sum(b * s for b in range(1, p.q + 1))
    for l in range(1, k):
        w = BlockWriter(L).set("I", s * p.q).set("II", II)
        w.set(("III", l), p.per_bin + sum(gamma[i - 1] for i in range(1, p.supervars + 1)
                                          if supervar_bin(i, p) == l))
        for pos in range(1, p.per_bin + 1):
            w.set(("IV", pos), DU)
        targets.append(assemble(w))
    return GroupedInstance(tuple(groups), k, s, lay.W, targets=tuple(targets), weak=True)


def seth_instance_family(phi: CnfFormula, p: SethParams):
    for gamma in gamma_tuples(p):
        yield gamma, build_seth_instance(phi, p, gamma)


def lift_seth_assignment(phi: CnfFormula, p: SethParams, alpha):
    """(gamma, witness) from a satisfying assignment, following the forward proof.

    Each clause is charged to the first supervariable that satisfies it.
    """
    if not phi.satisfied_by(alpha):
        raise SethError("assignment does not satisfy the formula")
    a, k, s = p.a, p.k, p.s
    local = [tuple(int(bool(alpha[(i - 1) * a + t])) for t in range(a))
             for i in range(1, p.supervars + 1)]
    charge = []
    for j in range(1, p.M + 1):
        for i in supervars_of_clause(phi, j, a):
            if satisfies_clause(phi, j, i, local[i - 1], a):
                charge.append(i)
                break
    gamma = tuple(charge.count(i) for i in range(1, p.supervars + 1))
    inst = build_seth_instance(phi, p, gamma)
    bins = []
    for b, g in enumerate(inst.groups, start=1):
        if b <= p.supervars:
            chosen_idx = _local(a).index(local[b - 1])
            home = supervar_bin(b, p) - 1
        else:
            j = b - p.supervars
            i = charge[j - 1]
            options = [(i2, al) for i2 in supervars_of_clause(phi, j, a) for al in _local(a)
                       if satisfies_clause(phi, j, i2, al, a)]
            chosen_idx = options.index((i, local[i - 1]))
            home = supervar_bin(i, p) - 1
        row = [k - 1] * len(g)
        row[chosen_idx] = home
        need = [s] * (k - 1)
        need[home] -= 1
        pos = _first_dummy_index(g)
        for l in range(k - 1):
            for _ in range(need[l]):
                row[pos] = l
                pos += 1
        bins.append(tuple(row))
    return gamma, GroupedWitness(tuple(bins))


def _first_dummy_index(group):
    """Dummies are the smallest items of a group (no III-block bits)."""
    dmin = min(group)
    return group.index(dmin)
