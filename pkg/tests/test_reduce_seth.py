"""K-SAT to the family of weak grouped partition instances."""

import itertools
from fractions import Fraction

import pytest

from reduction_forge import reduce_seth, solvers
from reduction_forge.problems import CnfFormula, check_relaxed_grouped, check_witness


def family(phi, k=2, a=1):
    padded = reduce_seth.pad_variables(phi, k, a)
    params = reduce_seth.seth_params(padded, k, a, Fraction(1, 2))
    return padded, params, list(reduce_seth.seth_instance_family(padded, params))


def test_gamma_tuple_examples():
    assert list(reduce_seth.gamma_tuples(2, 2, 2)) == [(0, 2), (1, 1), (2, 0)]
    assert list(reduce_seth.gamma_tuples(1, 3, 5)) == []
    brute = [t for t in itertools.product(range(3), repeat=3) if sum(t) == 3]
    assert list(reduce_seth.gamma_tuples(3, 2, 3)) == sorted(brute)


def test_pad_variables():
    phi = CnfFormula(3, ((1, 2, 3),))
    assert reduce_seth.pad_variables(phi, 3, 2).num_vars == 4
    assert reduce_seth.pad_variables(phi, 2, 1).num_vars == 3


def test_params_and_instance_shape():
    phi = CnfFormula(2, ((1, 2), (-1,)))
    padded, p, members = family(phi)
    assert (p.q, p.s) == (2 + 2, 2 * max(p.delta, 3))
    for gamma, inst in members:
        assert inst.weak and inst.targets is not None
        assert all(len(g) == inst.k * inst.s for g in inst.groups)
        assert inst.q == p.q


def test_satisfiable_formula_has_a_yes_member_and_lifts():
    phi = CnfFormula(3, ((1, -2), (2, 3)))
    padded, p, members = family(phi)
    assert any(solvers.check_grouped_yes(inst).verdict for _, inst in members)
    for alpha in itertools.product((0, 1), repeat=padded.num_vars):
        if padded.satisfied_by(alpha):
            gamma, w = reduce_seth.lift_seth_assignment(padded, p, alpha)
            inst = reduce_seth.build_seth_instance(padded, p, gamma)
            assert check_witness(inst, w)
            assert check_relaxed_grouped(inst, w)


def test_unsatisfiable_formula_has_no_member_with_relaxed_subsets():
    phi = CnfFormula(1, ((1,), (-1,)))
    _, _, members = family(phi)
    assert members
    for _, inst in members:
        assert not solvers.check_grouped_yes(inst).verdict
        assert not solvers.check_grouped_no_condition(inst).verdict


def test_three_bins():
    phi = CnfFormula(2, ((1, -2),))
    padded, p, members = family(phi, k=3)
    assert p.supervars == 2 and p.per_bin == 1
    assert all(solvers.check_grouped_yes(inst).verdict for _, inst in members)
    unsat = CnfFormula(2, ((1,), (-1,)))
    _, _, members = family(unsat, k=3)
    assert not any(solvers.check_grouped_yes(inst).verdict for _, inst in members)


def test_pairs_of_variables_form_supervariables():
    phi = CnfFormula(4, ((1, 3), (-2, 4), (2, -4)))
    padded = reduce_seth.pad_variables(phi, 3, 2)
    p = reduce_seth.seth_params(padded, 3, 2, Fraction(1, 2))
    assert (p.supervars, p.per_bin, p.s) == (2, 1, 4 * 4)
    assert len(p.B.elements) == 4
    gamma = next(reduce_seth.gamma_tuples(p))
    inst = reduce_seth.build_seth_instance(padded, p, gamma)
    assert all(len(g) == 3 * p.s for g in inst.groups)


def test_rejects_unpadded_formula():
    with pytest.raises(reduce_seth.SethError):
        reduce_seth.seth_params(CnfFormula(3, ((1,),)), 3, 1)
