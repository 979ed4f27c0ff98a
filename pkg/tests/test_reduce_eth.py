"""3-SAT to k-way partition with targets."""

import itertools

import pytest

from reduction_forge import reduce_eth, solvers
from reduction_forge.numeric import extract_block, log_width
from reduction_forge.problems import CnfFormula, check_witness


def build(phi, k):
    return reduce_eth.build_eth_instance(reduce_eth.pad_formula(phi, k), k)


def test_pad_formula_reaches_a_multiple():
    three = CnfFormula(2, ((1,), (2,), (1, 2)))
    assert reduce_eth.pad_formula(three, 3).M == 4
    four = CnfFormula(2, ((1,), (2,), (1, 2), (-1, 2)))
    assert reduce_eth.pad_formula(four, 3) == four


def test_channel_allocation_examples():
    plan = reduce_eth.allocate_channels(CnfFormula(3, ((1, 2, 3),)), 2)
    assert plan.tuples == () and plan.used == 0
    contradiction = CnfFormula(1, ((1,), (-1,)))
    internal = reduce_eth.allocate_channels(contradiction, 2)
    assert internal.tuples == ((1, 2, 1),) and internal.used == 1
    assert reduce_eth.clause_bin(1, 2, 2) == reduce_eth.clause_bin(2, 2, 2) == 1
    external = reduce_eth.allocate_channels(contradiction, 3)
    assert external.used == 1
    assert (reduce_eth.clause_bin(1, 2, 3), reduce_eth.clause_bin(2, 2, 3)) == (1, 2)
    _, art = build(contradiction, 3)
    assert sum(1 for i in art.item_ids if i[0] in ("d", "d'")) == 2


def test_single_clause_instance():
    phi = CnfFormula(3, ((1, 2, 3),))
    inst, art = build(phi, 2)
    assert sum(1 for i in art.item_ids if i[0] == "z") == 7
    assert not any(i[0] != "z" for i in art.item_ids)
    assert solvers.partition_targets_bruteforce(inst).verdict
    w = reduce_eth.lift_eth_assignment(art, (1, 1, 1))
    assert check_witness(inst, w)
    chosen = art.index_of()[("z", 1, (1, 1, 1))]
    assert w.bins[chosen] == 0
    assert sum(1 for b in w.bins if b == 1) == 6


def test_single_clause_target_matches_hand_built_bit_string():
    phi = CnfFormula(3, ((1, 2, 3),))
    inst, art = build(phi, 2)
    pad = 10 * log_width(1)
    channels = "000" * art.plan.num_channels
    bits = format(1, f"0{pad}b") + "0" * pad + "1" + "0" * pad + channels
    assert inst.targets[0] == int(bits, 2)


def test_contradiction_is_a_no_instance():
    phi = CnfFormula(1, ((1,), (-1,)))
    for k in (2, 3):
        inst, art = build(phi, k)
        assert not solvers.partition_targets_bruteforce(inst).verdict
        with pytest.raises(reduce_eth.NotSatisfying):
            reduce_eth.lift_eth_assignment(art, (1,))


def test_external_channel_lifting():
    phi = CnfFormula(2, ((1, 2), (-1, 2)))
    inst, art = build(phi, 3)
    assert solvers.partition_targets_bruteforce(inst).verdict
    for alpha in ((0, 1), (1, 1)):
        w = reduce_eth.lift_eth_assignment(art, alpha)
        assert check_witness(inst, w)
        idx = art.index_of()
        # d (010) sits with the assignment item showing 001 on the channel
        holder = art.ell(1) if alpha[0] else art.ell(2)
        assert w.bins[idx[("d", 1, 2, 1)]] == holder - 1


def test_layout_width_equals_bit_bound():
    for clauses in (((1, 2),), ((1, 2), (-1,)), ((1, 2, 3), (-1, -2), (2, 3), (1, -3))):
        phi = CnfFormula(3, clauses)
        for k in (2, 3):
            padded = reduce_eth.pad_formula(phi, k)
            _, art = reduce_eth.build_eth_instance(padded, k)
            M, per = padded.M, padded.M // (k - 1)
            L = max(1, (M - 1).bit_length())
            expected = per + 18 * padded.delta * per + (10 + 20 * (k - 1) + 20 * (k - 1) * (k - 2) // 2) * L
            assert art.layout.width <= expected
            assert reduce_eth.eth_bit_bound(padded, k) == expected


def test_packed_bins_have_clean_pad_blocks():
    phi = CnfFormula(3, ((1, 2), (-1, 3), (2, -3), (1, 2, 3)))
    for k in (2, 3):
        inst, art = build(phi, k)
        alpha = next(a for a in itertools.product((0, 1), repeat=3) if phi.satisfied_by(a))
        w = reduce_eth.lift_eth_assignment(art, alpha)
        sums = [0] * k
        for x, b in zip(inst.items, w.bins):
            sums[b] += x
        pads = [n for n in art.layout.names if n[0].startswith("pad")]
        for total in sums[:-1]:
            assert all(extract_block(total, art.layout, n) == 0 for n in pads)


def test_rejects_wide_clauses_and_unpadded_input():
    with pytest.raises(reduce_eth.EthError):
        reduce_eth.build_eth_instance(CnfFormula(4, ((1, 2, 3, 4),)), 2)
    with pytest.raises(reduce_eth.EthError):
        reduce_eth.build_eth_instance(CnfFormula(2, ((1,), (2,), (1, 2))), 3)
