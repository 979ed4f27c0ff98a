"""Subset Sum and k-dimensional Vector Subset Sum, in both directions.

Vectors are packed into one integer with a base large enough that no
coordinate sum can carry into the next digit.  The other way, an integer is
split into k digits and every possible carry sequence gets its own vector
instance.
"""

from __future__ import annotations

import itertools

from .numeric import iroot_floor
from .problems import (
    InvalidInstance, Reduced, SubsetSumInstance, SubsetWitness, VssInstance,
)

# Passes the verification harness must cover.
REDUCTIONS = ("vss_to_subset_sum", "subset_sum_to_vss")


def vss_to_subset_sum(inst: VssInstance) -> Reduced:
    """Pack the vectors in base 2*n*max(t) after dropping dominated ones.

    ``meta["kept"]`` lists the original indices of the packed vectors.
    """
    t = inst.target
    kept = [i for i, v in enumerate(inst.vectors) if all(a <= b for a, b in zip(v, t))]
    n = len(kept)
    B = max(2, 2 * n * max(t))
    packed = tuple(sum(x * B ** l for l, x in enumerate(inst.vectors[i])) for i in kept)
    target = sum(x * B ** l for l, x in enumerate(t))
    out = SubsetSumInstance(packed, target)
    meta = {"lemma": "vector subset sum to subset sum", "B": B, "kept": tuple(kept),
            "n": len(inst.vectors), "T": sum(t), "n_out": n, "T_out": target}
    return Reduced(out, meta)


def lift_packed_witness(src: VssInstance, reduced: Reduced, w: SubsetWitness) -> SubsetWitness:
    """Carry a subset-sum solution back to the vector instance."""
    chosen = [0] * len(src.vectors)
    for idx, c in zip(reduced.meta["kept"], w.chosen):
        chosen[idx] = c
    return SubsetWitness(tuple(chosen))


def digit_base(t: int, k: int) -> int:
    """Smallest base with t < base**k, and at least 2."""
    return max(2, iroot_floor(t, k) + 1)


def digits(x: int, base: int, k: int) -> tuple:
    """Little-endian base expansion of x with exactly k digits."""
    out = []
    for _ in range(k):
        x, r = divmod(x, base)
        out.append(r)
    if x:
        raise InvalidInstance("value needs more than k digits")
    return tuple(out)


def kept_items(items, t: int) -> list:
    """Indices of the items not exceeding the target."""
    return [i for i, x in enumerate(items) if x <= t]


def carry_members(items, t: int, k: int):
    """Yield ``(carries, VssInstance)`` for every carry sequence.

    Carries run over {0, ..., n-1} with the first and last fixed to 0.
    Members with a negative target coordinate are skipped.
    """
    if k < 1:
        raise InvalidInstance("dimension must be at least 1")
    keep = kept_items(items, t)
    base = digit_base(t, k)
    vectors = tuple(digits(items[i], base, k) for i in keep)
    t_digits = digits(t, base, k)
    top = max(len(keep), 1)
    for inner in itertools.product(range(top), repeat=k - 1):
        c = (0,) + inner + (0,)
        target = tuple(t_digits[l] + c[l + 1] * base - c[l] for l in range(k))
        if min(target) < 0:
            continue
        yield c, VssInstance(vectors, target)


def subset_sum_to_vss(items, t: int, k: int):
    """Stream of vector instances; the source is yes iff some member is yes."""
    for _, member in carry_members(items, t, k):
        yield member


def lift_member_witness(items, t: int, w: SubsetWitness) -> SubsetWitness:
    """Carry a member solution back to the original item list."""
    chosen = [0] * len(items)
    for idx, c in zip(kept_items(items, t), w.chosen):
        chosen[idx] = c
    return SubsetWitness(tuple(chosen))
