"""Density of finitely generated abelian matrix semigroups: exact checkers,
explicit minimal generators, orbit simulation and Diophantine helpers."""

from .construct import (
    MatrixTuple,
    ToeplitzMatrix,
    backward_shift,
    exp_toeplitz,
    is_toeplitz,
    make_dense_group_generators,
    make_dense_Rn_generators,
    make_hypercyclic_tuple,
)
from .density import (
    AbelianGroupSpec,
    DensityVerdict,
    Verdict,
    check_dense_group_exp,
    check_dense_Rn,
    check_dense_Rn_structured,
    classify_line_semigroup,
    cone_is_dense,
    m_of_G,
    min_generators,
    verify_verdict,
)
from .diophantine import find_integer_relation, kronecker_approximate, lll_reduce
from .exactreal import SymbolBasis, SymReal, is_q_independent, parse_symreal, sym_eval, sym_sign
from .orbit import check_base_point, coverage, enumerate_orbit

__version__ = "0.1.0"
