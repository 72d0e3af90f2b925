from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hypercyclic.exactreal import (
    AmbiguousSign,
    BasisMismatch,
    SymbolBasis,
    SymReal,
    SymRealParseError,
    default_basis,
    format_symreal,
    is_q_independent,
    parse_symreal,
    sign_dead_zone,
    sym_eval,
    sym_sign,
)

B2 = SymbolBasis(["sqrt2"])


def P(text, basis=SymbolBasis()):
    return parse_symreal(text, basis)


def test_eval_basics():
    assert sym_eval(SymReal(B2, [3, 0])) == 3.0
    assert sym_eval(SymReal(B2, [0, -1])) == pytest.approx(-1.41421356, abs=1e-8)
    assert sym_eval(SymReal(B2, [1, 1])) == pytest.approx(2.41421356, abs=1e-8)


def test_sign_rules():
    assert sym_sign(SymReal(B2, [0, 0])) == 0
    assert sym_sign(P("-sqrt2")) == -1
    assert sym_sign(P("1/3")) == 1


def test_sign_dead_zone():
    with pytest.raises(AmbiguousSign):
        sym_sign(P("1.4142135623 - sqrt2"))
    # just outside the default zone
    assert sym_sign(P("1.41421356 - sqrt2")) == -1
    with sign_dead_zone(1e-8):
        with pytest.raises(AmbiguousSign):
            sym_sign(P("1.41421356 - sqrt2"))


def test_independence_examples():
    assert is_q_independent([P("1"), P("sqrt2")]) == (True, None)
    ok, w = is_q_independent([P("1"), P("1/2"), P("sqrt2")])
    assert not ok and w == [1, -2, 0]
    ok, w = is_q_independent([P("sqrt2"), P("sqrt3"), P("sqrt2 + sqrt3")])
    assert not ok and w == [1, 1, -1]


def test_conflicting_atoms_raise():
    a = SymbolBasis((), {"x": 1.5}).symbol("x")
    b = SymbolBasis((), {"x": 2.5}).symbol("x")
    with pytest.raises(BasisMismatch):
        a + b


def test_products_reduce_roots():
    assert P("sqrt2") * P("sqrt6") == P("2*sqrt3")
    assert P("sqrt2") * P("sqrt2") == 2
    assert P("sqrt8") == P("2*sqrt2")
    x = SymbolBasis((), {"x": 3.0}).symbol("x")
    assert (x * P("sqrt2")).shadow() == pytest.approx(3 * 2 ** 0.5)


def test_parse_errors_have_columns():
    with pytest.raises(SymRealParseError) as exc:
        P("1 + * 2")
    assert exc.value.column == 4
    with pytest.raises(SymRealParseError):
        P("1 + y")
    with pytest.raises(SymRealParseError):
        P("")


def test_format_round_trip():
    x = P("1 + 2*sqrt2 - 1/3*sqrt5")
    assert format_symreal(x) == "1 + 2*sqrt2 - 1/3*sqrt5"
    assert P(format_symreal(x)) == x


def test_default_basis():
    b = default_basis(3)
    assert b.names == ("1", "sqrt2", "sqrt3", "sqrt5")


coeff = st.fractions(min_value=-50, max_value=50, max_denominator=20)


@given(st.lists(coeff, min_size=4, max_size=4), st.lists(coeff, min_size=4, max_size=4))
def test_arithmetic_matches_shadow(a, b):
    basis = default_basis(3)
    x, y = SymReal(basis, a), SymReal(basis, b)
    assert (x + y).shadow() == pytest.approx(x.shadow() + y.shadow(), abs=1e-9)
    assert (x * y).shadow() == pytest.approx(x.shadow() * y.shadow(), rel=1e-9, abs=1e-9)
    assert x - x == 0


@given(st.lists(coeff, min_size=3, max_size=3))
def test_independence_witness_is_a_relation(c):
    xs = [P("1"), P("sqrt2"), SymReal(SymbolBasis(["sqrt2"]), [c[0], c[1]])]
    ok, w = is_q_independent(xs)
    assert not ok
    total = sum((x * k for x, k in zip(xs, w)), SymbolBasis().zero())
    assert total.is_zero() and any(w)
