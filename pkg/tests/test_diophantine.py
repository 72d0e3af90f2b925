import math

import pytest

from hypercyclic.diophantine import (
    DependentBasis,
    NotFound,
    find_integer_relation,
    is_lll_reduced,
    kronecker_approximate,
    lll_reduce,
    same_lattice,
)


def test_lll_orthogonal_unchanged():
    B, U = lll_reduce([[2, 0], [0, 3]])
    assert [[abs(x) for x in r] for r in B] == [[2, 0], [0, 3]]


def test_lll_skewed_basis():
    basis = [[1, 0], [10**6, 1]]
    B, U = lll_reduce(basis)
    assert is_lll_reduced(B) and same_lattice(basis, B, U)
    assert sorted(abs(x) for r in B for x in r) == [0, 0, 1, 1]


def test_lll_dependent():
    with pytest.raises(DependentBasis):
        lll_reduce([[1, 2], [2, 4]])


def test_kronecker_one_dimensional():
    res = kronecker_approximate([math.sqrt(2) - 1], [0.5], 0.01)
    # the brute-force minimum is 35; 157 is not within eps at all
    assert res.m == 35 and res.strategy == "brute_force" and res.error < 0.01
    d157 = abs(157 * (math.sqrt(2) - 1) - 0.5 - round(157 * (math.sqrt(2) - 1) - 0.5))
    assert d157 > 0.01


def test_kronecker_two_dimensional():
    r = [math.sqrt(2) % 1, math.sqrt(3) % 1]
    res = kronecker_approximate(r, [0, 0], 0.05)
    assert res.m <= 10**4 and res.error < 0.05


def test_kronecker_rational_not_found():
    with pytest.raises(NotFound):
        kronecker_approximate([0.0], [0.5], 0.01, brute_force_limit=1000)
    with pytest.raises(ValueError):
        kronecker_approximate([0.3], [0.5], 0.5)


def test_relations():
    assert find_integer_relation([1, 0.5]).relation == (1, -2)
    assert find_integer_relation([1, math.sqrt(2), math.sqrt(8)]).relation == (0, 2, -1)
    res = find_integer_relation([1, math.sqrt(2), math.sqrt(3)], H=10**6, tol=1e-10)
    assert not res.found and res.relation is None
