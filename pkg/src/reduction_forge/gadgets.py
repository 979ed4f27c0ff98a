"""Strong average-free sets and filler multisets."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .numeric import floor_log2, rational_root_ceil
from .problems import PartitionWitness


class GadgetError(ValueError):
    pass


class TooLarge(GadgetError):
    pass


class BadCompositionSum(GadgetError):
    pass


@dataclass(frozen=True)
class AvgFreeSet:
    elements: tuple
    k: int
    U: int
    params: dict


def behrend_set(n: int, k: int, mu) -> AvgFreeSet:
    """A strong k-average-free set of n integers.

    Vectors of {0..u}^d on a common sphere are written in base 2ku with an
    extra leading digit; sums of at most k such numbers never carry, so an
    average relation would have to hold coordinatewise, which the strict
    convexity of the sphere forbids.
    """
    mu = Fraction(mu)
    if n < 1 or k < 2 or not 0 < mu < 1:
        raise GadgetError("need n >= 1, k >= 2 and 0 < mu < 1")
    d = ceil(2 / mu) + 2
    u = rational_root_ceil(Fraction(d * n), d - 2)
    classes = defaultdict(int)
    for y in itertools.product(range(u + 1), repeat=d):
        classes[sum(c * c for c in y)] += 1
    r2 = max(sorted(classes), key=lambda r: classes[r])
    if classes[r2] < n:
        raise GadgetError(f"sphere class too small ({classes[r2]} < {n})")
    base = 2 * k * u
    chosen = []
    for y in itertools.product(range(u + 1), repeat=d):
        if sum(c * c for c in y) == r2:
            chosen.append(y)
            if len(chosen) == n:
                break
    lead = base ** d
    elements = sorted(lead + sum(c * base ** i for i, c in enumerate(y)) for y in chosen)
    return AvgFreeSet(tuple(elements), k, elements[-1], {"u": u, "r2": r2, "d": d, "base": base})


def verify_avg_free(B, k: int, limit: int = 10 ** 8):
    """Exhaustive check; returns (True, None) or (False, counterexample).

    A counterexample is ``(xs, b, x)`` with ``sum(xs) == b * x``.  Relations
    with a == b are searched first, then the rest, each in increasing a and
    lexicographic order.
    """
    B = sorted(set(B))
    if len(B) ** k > limit:
        raise TooLarge(f"|B|^k = {len(B) ** k} exceeds {limit}")
    members = set(B)
    pairs = [(a, a) for a in range(k + 1)] + [(a, b) for a in range(k + 1)
                                               for b in range(k + 1) if a != b]
    for a, b in pairs:
        for xs in itertools.combinations_with_replacement(B, a):
            total = sum(xs)
            if b == 0:
                if total == 0 and a != 0:
                    return False, (xs, b, None)
                continue
            if total % b:
                continue
            x = total // b
            if x in members and not (a == b and all(v == x for v in xs)):
                return False, (xs, b, x)
    return True, None


@dataclass(frozen=True)
class FillerMultiset:
    """Multiset P summing to tau, laid out as A, B^(1..k-1), C.

    ``h`` is None in the small case where P is tau copies of 1.
    """

    P: tuple
    tau: int
    k: int
    h: object = None


def filler_multiset(tau: int, k: int) -> FillerMultiset:
    if tau < 0 or k < 2:
        raise GadgetError("need tau >= 0 and k >= 2")
    if tau < k * k:
        return FillerMultiset((1,) * tau, tau, k, None)
    h = floor_log2(tau // (k * k))
    b = (1 << h) - 1
    a = tau - (k - 1) * b
    c = a >> h
    A = tuple(1 << i for i in range(h) if a >> i & 1)
    Bs = tuple(1 << i for i in range(h)) * (k - 1)
    C = (1 << h,) * c
    P = A + Bs + C
    assert sum(P) == tau
    return FillerMultiset(P, tau, k, h)


def filler_size_bound(tau: int, k: int) -> int:
    """Explicit bound on |P| for tau >= k^2."""
    L = (tau - 1).bit_length()
    return 2 * L + (k - 1) * L + 2 * k * k


def split_filler(F: FillerMultiset, targets) -> PartitionWitness:
    """Partition P into parts with the given sums, one bin per target."""
    targets = list(targets)
    if len(targets) != F.k or any(t < 0 for t in targets) or sum(targets) != F.tau:
        raise BadCompositionSum(f"targets {targets} are not a composition of {F.tau}")
    k = F.k
    bins = [None] * len(F.P)
    if F.h is None:
        pos = 0
        for l, t in enumerate(targets):
            for _ in range(t):
                bins[pos] = l
                pos += 1
        return PartitionWitness(tuple(bins))
    h = F.h
    mask = (1 << h) - 1
    a = F.tau - (k - 1) * mask
    nA = bin(a & mask).count("1")
    next_c = nA + (k - 1) * h
    order = sorted(range(k), key=targets.__getitem__)
    last = order[-1]
    bins = [last] * len(F.P)
    for rank, l in enumerate(order[:-1]):
        t = targets[l]
        low, high = t & mask, t >> h
        block = nA + rank * h
        while low:
            bit = low & -low
            bins[block + bit.bit_length() - 1] = l
            low ^= bit
        if next_c + high > len(F.P):  # pragma: no cover - excluded by the size argument
            raise GadgetError("ran out of 2^h items")
        bins[next_c:next_c + high] = [l] * high
        next_c += high
    return PartitionWitness(tuple(bins))
