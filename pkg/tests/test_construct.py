import json
import random

import pytest

from hypercyclic.construct import (
    MatrixTuple,
    NonConstructive,
    ToeplitzMatrix,
    backward_shift,
    exp_toeplitz,
    is_toeplitz,
    make_dense_group_generators,
    make_dense_Rn_generators,
    make_hypercyclic_tuple,
    self_check,
    toeplitz_predicates,
)
from hypercyclic.density import (
    AbelianGroupSpec,
    Verdict,
    check_dense_group_exp,
    check_dense_Rn_structured,
    classify_line_semigroup,
)
from hypercyclic.exactreal import parse_symreal as P


def test_dense_Rn_small():
    g = make_dense_Rn_generators(1)
    assert g == [[P("1")], [P("-sqrt3")]]
    assert classify_line_semigroup([v[0] for v in g]).kind == "DenseInR"
    g = make_dense_Rn_generators(2)
    assert g[2] == [P("-sqrt3"), P("-sqrt5")]


@pytest.mark.parametrize("n", range(1, 13))
def test_dense_Rn_structured(n):
    g = make_dense_Rn_generators(n)
    assert check_dense_Rn_structured(g[:-1], g[-1]).verdict is Verdict.DENSE


def test_group_generators():
    circle = AbelianGroupSpec.standard(1, 1)
    W = make_dense_group_generators(circle)
    assert W == [[P("-sqrt3")]]
    assert make_dense_group_generators(AbelianGroupSpec.standard(2, 0)) == make_dense_Rn_generators(2)
    spec = AbelianGroupSpec.standard(2, 1)
    W = make_dense_group_generators(spec)
    assert len(W) == 2 and check_dense_group_exp(spec, W).is_dense
    skew = AbelianGroupSpec(3, 2, ((1, 1, 0), (0, 2, 1)))
    W = make_dense_group_generators(skew, step="1/3", shrink="1/5")
    assert check_dense_group_exp(skew, W).is_dense


def test_backward_shift():
    assert backward_shift(1) == [[0]]
    assert backward_shift(2) == [[0, 1], [0, 0]]
    S = backward_shift(4)
    P4 = S
    for _ in range(3):
        P4 = [[sum(a * b for a, b in zip(r, c)) for c in zip(*S)] for r in P4]
    assert all(x == 0 for r in P4 for x in r)


def test_is_toeplitz_examples():
    assert is_toeplitz([[1, 0], [0, 1]])
    assert is_toeplitz(backward_shift(3))
    assert not is_toeplitz([[1, 0], [1, 1]])
    assert not is_toeplitz([[1, 2], [0, 3]])


def test_toeplitz_predicates_agree_random():
    rng = random.Random(7)
    for _ in range(200):
        n = rng.randint(1, 6)
        prof = [rng.randint(-3, 3) for _ in range(n)]
        M = ToeplitzMatrix(tuple(P(str(c)) for c in prof)).dense()
        M = [[int(x.rational_value()) for x in r] for r in M]
        if rng.random() < 0.5:
            i, j = rng.randrange(n), rng.randrange(n)
            M[i][j] += rng.choice([-1, 1])
        assert len(set(toeplitz_predicates(M).values())) == 1


def test_exp_toeplitz_examples():
    assert exp_toeplitz([0, 1]).dense() == [[1, 1], [0, 1]]
    assert exp_toeplitz([0, 1, 0]).dense() == [[1, 1, P("1/2")], [0, 1, 1], [0, 0, 1]]
    c, d = [0, "sqrt2", 3, "1/2"], [0, 1, "sqrt5", "-sqrt2"]
    s = [0, "sqrt2 + 1", "3 + sqrt5", "1/2 - sqrt2"]
    assert exp_toeplitz(c) @ exp_toeplitz(d) == exp_toeplitz(s)
    inv = exp_toeplitz([0, "-sqrt2", -3, "-1/2"])
    assert (exp_toeplitz(c) @ inv).profile == (1, 0, 0, 0)
    assert exp_toeplitz(["sqrt2", 1]).invertible()


def test_exp_toeplitz_complex():
    T = exp_toeplitz([(0, 0), (0, 1), (1, 0)])
    # exp(i*sigma + sigma^2) = I + i*sigma + (1 - 1/2)*sigma^2
    assert T.profile[1] == (0, 1) and T.profile[2] == (P("1/2"), 0)


CASES = [(c, n) for c in ("DiagonalC", "RotationScalingR", "OddR", "ToeplitzC", "ToeplitzR",
                          "TriangularR", "TriangularC", "DiagonalR")
         for n in range(1, 7)
         if not (c == "RotationScalingR" and n % 2) and not (c == "OddR" and n % 2 == 0)
         and not (c == "TriangularC" and n == 1)]


@pytest.mark.parametrize("cls,n", CASES)
def test_tuple_invariants(cls, n):
    T = make_hypercyclic_tuple(cls, n)
    rep = self_check(T)
    assert rep["generator_count"] == rep["expected_count"]
    assert rep["commute_exactly"] and rep["invertibility"] == "exact"
    assert rep["density"]["verdict"] == "Dense" and rep["base_point_ok"]


def test_aliases_and_errors():
    assert len(make_hypercyclic_tuple("GL_R_even", 4)) == 3
    assert len(make_hypercyclic_tuple("GL_C", 2)) == 3
    with pytest.raises(ValueError):
        make_hypercyclic_tuple("RotationScalingR", 3)
    with pytest.raises(NonConstructive):
        make_hypercyclic_tuple("TriangularC", 1)
    with pytest.raises(ValueError):
        make_hypercyclic_tuple("Nope", 2)


def test_triangular_real_not_diagonalizable():
    T = make_hypercyclic_tuple("TriangularR", 4)
    for M in T.matrices:
        n = len(M)
        assert all(M[i][j].is_zero() for i in range(n) for j in range(i))
        # M - c0*I is strictly upper triangular and nonzero, so M is not diagonalizable
        assert any(not M[i][j].is_zero() for i in range(n) for j in range(i + 1, n))
        assert all(M[i][i] == M[0][0] for i in range(n))


def test_document_round_trip():
    for cls, n in [("DiagonalC", 2), ("ToeplitzC", 2), ("OddR", 3), ("TriangularR", 3)]:
        T = make_hypercyclic_tuple(cls, n)
        doc = json.loads(json.dumps(T.to_document()))
        U = MatrixTuple.from_document(doc)
        assert U.matrices == T.matrices or all(
            a == b for M, N in zip(T.matrices, U.matrices) for r, s in zip(M, N) for a, b in zip(r, s))
        assert U.base_point == T.base_point and U.density_check().is_dense
    doc = make_hypercyclic_tuple("DiagonalC", 1).to_document()
    assert doc["generators"][0][0][0].endswith("*i")
    assert doc["provenance"]["symbols"]
