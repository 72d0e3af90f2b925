"""Explicit generators: dense subsemigroups of R^n and of abelian Lie groups,
and commuting matrix tuples of minimal size for the standard matrix classes.

Complex classes are realified: a complex n x n matrix becomes a real 2n x 2n
matrix whose 2x2 blocks are ``[[re, -im], [im, re]]``.  Lie algebra
coordinates measure angles in turns, so exp(a + 2*pi*i*b) has kernel Z in b
and every Gamma lattice is rational.

Transcendental matrix entries (e^a, e^a cos 2*pi*b, ...) become fresh opaque
symbols with a float value.  Their Q-independence is an axiom; the tuple's
provenance records each one.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

import numpy as np

from . import linalg
from .density import AbelianGroupSpec, CLASS_ALIASES, check_dense_group_exp, m_of_G
from .exactreal import (
    EMPTY_BASIS,
    SymbolBasis,
    SymReal,
    _multiply_names,
    as_symreal,
    format_symreal,
    parse_symreal,
    primes,
)

ZERO = EMPTY_BASIS.zero()
ONE = EMPTY_BASIS.rational(1)
DEFAULT_STEP = Fraction(1, 8)
DEFAULT_SHRINK = Fraction(1, 8)

CLASSES = ("DiagonalC", "RotationScalingR", "OddR", "ToeplitzC", "ToeplitzR",
           "TriangularR", "TriangularC", "DiagonalR")

# table names that map onto a constructive class
CONSTRUCT_ALIASES = {
    "GL_C": "DiagonalC",
    "DiagC_to_GLC": "DiagonalC",
    "GL_R_even": "RotationScalingR",
    "GL_R_odd": "OddR",
    "DiagR": "DiagonalR",
    "ToeplitzBlockC": "TriangularC",
}


class NonConstructive(ValueError):
    """The class has a generator count but no explicit witness here."""


def odd_prime_roots(count: int) -> list[SymReal]:
    return [EMPTY_BASIS.symbol(f"sqrt{p}") for p in primes(count, start=3)]


# -- dense generators ----------------------------------------------------------

def make_dense_Rn_generators(n: int) -> list[list[SymReal]]:
    """e_1..e_n plus -(sqrt3, sqrt5, ...): n+1 generators of a dense subsemigroup of R^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    gens = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    gens.append([-r for r in odd_prime_roots(n)])
    return gens


def complete_basis(gamma: Sequence[Sequence], n: int) -> list[list[Fraction]]:
    """Standard vectors (lowest index first) extending ``gamma`` to a basis."""
    current = [[Fraction(x) for x in v] for v in gamma]
    if current and linalg.rational_rank(current) != len(current):
        raise ValueError("gamma_basis is rank deficient")
    extra = []
    for i in range(n):
        if len(current) == n:
            break
        e = [Fraction(int(i == j)) for j in range(n)]
        if linalg.rational_rank(current + [e]) > len(current):
            current.append(e)
            extra.append(e)
    return extra


def make_dense_group_generators(spec: AbelianGroupSpec, step=1, shrink=1) -> list[list[SymReal]]:
    """n+1-t Lie algebra vectors whose exponentials generate a dense subsemigroup.

    The non-lattice basis vectors are scaled by ``step`` and the non-lattice
    coefficients of the last vector by ``shrink`` (positive rationals).  Both
    only change how finely a bounded word length samples the group.
    """
    if spec.component_count != 1:
        raise ValueError("only connected groups are supported")
    step, shrink = Fraction(step), Fraction(shrink)
    if step <= 0 or shrink <= 0:
        raise ValueError("step and shrink must be positive")
    n = spec.n
    extra = [[x * step for x in v] for v in complete_basis(spec.gamma_basis, n)]
    basis = [list(v) for v in spec.gamma_basis] + extra
    alpha = [-r if i < spec.t else -r * shrink for i, r in enumerate(odd_prime_roots(n))]
    last = [sum((a * v[k] for a, v in zip(alpha, basis)), ZERO) for k in range(n)]
    return [[as_symreal(x) for x in v] for v in extra] + [last]


# -- symbols for transcendental entries ------------------------------------------

def _tag(x: SymReal) -> str:
    s = format_symreal(x).replace(" ", "")
    return s.replace("-", "m").replace("+", "p").replace("/", "_").replace("*", "")


class Provenance:
    """Collects the opaque symbols introduced while building a tuple."""

    def __init__(self):
        self.values: dict[str, float] = {}
        self.definitions: dict[str, str] = {}

    def atom(self, name: str, value: float, definition: str) -> SymReal:
        if name in self.values and self.values[name] != value:
            raise ValueError(f"symbol {name} defined twice with different values")
        self.values[name] = value
        self.definitions[name] = definition
        return SymbolBasis([name], {name: value}).symbol(name)

    def exp(self, a: SymReal) -> SymReal:
        if a.is_zero():
            return ONE
        if a == 1:
            return self.atom("e", math.e, "exp(1)")
        return self.atom(f"exp_{_tag(a)}", math.exp(a.shadow()), f"exp({a})")

    def polar(self, a: SymReal, b: SymReal) -> tuple[SymReal, SymReal]:
        """exp(a + 2*pi*i*b) as a (re, im) pair; b in turns."""
        if b.is_rational() and b.rational_value().denominator == 1:
            return self.exp(a), ZERO
        r, t = math.exp(a.shadow()), 2 * math.pi * b.shadow()
        stem = f"cexp_{_tag(a)}_{_tag(b)}"
        what = f"exp({a} + 2*pi*i*({b}))"
        return (self.atom(stem + "_re", r * math.cos(t), f"Re {what}"),
                self.atom(stem + "_im", r * math.sin(t), f"Im {what}"))

    def cexp(self, re_: SymReal, im: SymReal) -> tuple[SymReal, SymReal]:
        """exp(re + i*im), im in radians."""
        if im.is_zero():
            return self.exp(re_), ZERO
        r, t = math.exp(re_.shadow()), im.shadow()
        stem = f"cexprad_{_tag(re_)}_{_tag(im)}"
        what = f"exp({re_} + i*({im}))"
        return (self.atom(stem + "_re", r * math.cos(t), f"Re {what}"),
                self.atom(stem + "_im", r * math.sin(t), f"Im {what}"))


# -- complex helpers (pairs of SymReal) ------------------------------------------

def _cmul(x, y):
    return (x[0] * y[0] - x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _cadd(x, y):
    return (x[0] + y[0], x[1] + y[1])


def _cscale(x, q):
    return (x[0] * q, x[1] * q)


def _realify(C: Sequence[Sequence[tuple]]) -> list[list[SymReal]]:
    n = len(C)
    R = [[ZERO] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            re_, im = C[i][j]
            R[2 * i][2 * j], R[2 * i][2 * j + 1] = re_, -im
            R[2 * i + 1][2 * j], R[2 * i + 1][2 * j + 1] = im, re_
    return R


def _complexify(R: Sequence[Sequence[SymReal]]) -> list[list[tuple]]:
    n = len(R) // 2
    return [[(R[2 * i][2 * j], R[2 * i + 1][2 * j]) for j in range(n)] for i in range(n)]


# -- Toeplitz matrices ------------------------------------------------------------

def backward_shift(n: int) -> list[list[int]]:
    if n < 1:
        raise ValueError("n must be >= 1")
    return [[int(j == i + 1) for j in range(n)] for i in range(n)]


@dataclass(frozen=True)
class ToeplitzMatrix:
    """Upper triangular Toeplitz matrix: entry (i, j) is profile[j - i] for j >= i."""

    profile: tuple
    is_complex: bool = False

    @property
    def size(self) -> int:
        return len(self.profile)

    def _zero(self):
        return (ZERO, ZERO) if self.is_complex else ZERO

    def dense(self) -> list[list]:
        n = self.size
        return [[self.profile[j - i] if j >= i else self._zero() for j in range(n)] for i in range(n)]

    def realified(self) -> list[list[SymReal]]:
        return _realify(self.dense()) if self.is_complex else self.dense()

    def __matmul__(self, other: ToeplitzMatrix) -> ToeplitzMatrix:
        if self.size != other.size or self.is_complex != other.is_complex:
            raise ValueError("shape or field mismatch")
        mul = _cmul if self.is_complex else (lambda a, b: a * b)
        add = _cadd if self.is_complex else (lambda a, b: a + b)
        out = []
        for k in range(self.size):
            acc = self._zero()
            for i in range(k + 1):
                acc = add(acc, mul(self.profile[i], other.profile[k - i]))
            out.append(acc)
        return ToeplitzMatrix(tuple(out), self.is_complex)

    def invertible(self) -> bool:
        c0 = self.profile[0]
        return not (c0[0].is_zero() and c0[1].is_zero()) if self.is_complex else not c0.is_zero()


def _coerce_profile(c):
    if any(isinstance(x, (tuple, list, complex)) for x in c):
        out = []
        for x in c:
            if isinstance(x, complex):
                raise TypeError("complex entries must be (re, im) pairs of exact values")
            if isinstance(x, (tuple, list)):
                out.append((as_symreal(x[0]), as_symreal(x[1])))
            else:
                out.append((as_symreal(x), ZERO))
        return tuple(out), True
    return tuple(as_symreal(x) for x in c), False


def _exp_nilpotent(nil: Sequence, is_complex: bool) -> ToeplitzMatrix:
    """exp(N) for the strictly upper Toeplitz N with the given profile (entry 0 ignored)."""
    n = len(nil)
    zero = (ZERO, ZERO) if is_complex else ZERO
    one = (ONE, ZERO) if is_complex else ONE
    N = ToeplitzMatrix((zero,) + tuple(nil[1:]), is_complex)
    term = ToeplitzMatrix((one,) + (zero,) * (n - 1), is_complex)
    total = list(term.profile)
    scale = _cscale if is_complex else (lambda a, q: a * q)
    add = _cadd if is_complex else (lambda a, b: a + b)
    for k in range(1, n):
        term = term @ N
        term = ToeplitzMatrix(tuple(scale(x, Fraction(1, k)) for x in term.profile), is_complex)
        total = [add(a, b) for a, b in zip(total, term.profile)]
    return ToeplitzMatrix(tuple(total), is_complex)


def _scale_toeplitz(T: ToeplitzMatrix, s) -> ToeplitzMatrix:
    if T.is_complex:
        return ToeplitzMatrix(tuple(_cmul(s, x) for x in T.profile), True)
    return ToeplitzMatrix(tuple(s * x for x in T.profile), False)


def exp_toeplitz(c: Sequence, provenance: Provenance | None = None) -> ToeplitzMatrix:
    """exp(c_0 I + sum c_i sigma^i) with the nilpotent factor computed exactly.

    Entries may be exact reals or ``(re, im)`` pairs.  A nonzero c_0 becomes
    a fresh symbol for e^{c_0}; for complex c_0 the imaginary part is in radians.
    """
    prov = provenance or Provenance()
    profile, is_complex = _coerce_profile(c)
    if not profile:
        raise ValueError("empty profile")
    E = _exp_nilpotent(profile, is_complex)
    c0 = profile[0]
    scalar = prov.cexp(*c0) if is_complex else prov.exp(c0)
    return _scale_toeplitz(E, scalar)


def _matmul_generic(A, B):
    n, m = len(A), len(B[0])
    out = [[0] * m for _ in range(n)]
    for k, row in enumerate(B):
        for j, b in enumerate(row):
            if b == 0:
                continue
            for i in range(n):
                a = A[i][k]
                if a != 0:
                    out[i][j] = out[i][j] + a * b
    return out


def _entries_equal(A, B) -> bool:
    return all(a == b for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def _commutes_with_shift(M) -> bool:
    S = backward_shift(len(M))
    return _entries_equal(_matmul_generic(M, S), _matmul_generic(S, M))


def _polynomial_in_shift(M) -> bool:
    n = len(M)
    S = backward_shift(n)
    P = [[int(i == j) for j in range(n)] for i in range(n)]
    R = [[0] * n for _ in range(n)]
    for k in range(n):
        c = M[0][k]
        if c != 0:
            R = [[r + c * p if p else r for r, p in zip(rr, pr)] for rr, pr in zip(R, P)]
        P = _matmul_generic(P, S)
    return _entries_equal(R, M)


def _constant_superdiagonals(M) -> bool:
    n = len(M)
    for i in range(n):
        for j in range(n):
            if i > j and M[i][j] != 0:
                return False
            if i + 1 < n and j + 1 < n and M[i + 1][j + 1] != M[i][j]:
                return False
    return True


TOEPLITZ_PREDICATES: dict[str, Callable] = {
    "commutes_with_shift": _commutes_with_shift,
    "polynomial_in_shift": _polynomial_in_shift,
    "constant_superdiagonals": _constant_superdiagonals,
}


def toeplitz_predicates(M) -> dict[str, bool]:
    if any(len(r) != len(M) for r in M):
        raise ValueError("matrix must be square")
    return {name: f(M) for name, f in TOEPLITZ_PREDICATES.items()}


def is_toeplitz(M) -> bool:
    """Upper triangular Toeplitz test; the three characterizations must agree."""
    res = toeplitz_predicates(M)
    vals = set(res.values())
    assert len(vals) == 1, f"Toeplitz predicates disagree: {res}"
    return vals.pop()


# -- exact matrix checks ------------------------------------------------------------

def _sparse(M):
    return [[dict(x.terms()) for x in row] for row in M]


def _sparse_product(A, B):
    n = len(A)
    out = [[{} for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if not a:
                continue
            Bk = B[k]
            for j in range(n):
                b = Bk[j]
                if not b:
                    continue
                acc = out[i][j]
                for na, ca in a.items():
                    for nb, cb in b.items():
                        mult, nm = _multiply_names(na, nb)
                        acc[nm] = acc.get(nm, 0) + ca * cb * mult
    return [[{k: v for k, v in d.items() if v} for d in row] for row in out]


def commute_exactly(A, B) -> bool:
    sa, sb = _sparse(A), _sparse(B)
    return _sparse_product(sa, sb) == _sparse_product(sb, sa)


def _det2(a, b, c, d) -> SymReal:
    return a * d - b * c


def exact_invertible(M, blocks: Sequence[int]) -> bool | None:
    """Nonzero determinant for a block upper triangular matrix (block sizes 1 or 2).

    ``None`` when ``M`` does not have that shape.
    """
    starts = np.cumsum([0] + list(blocks))
    if starts[-1] != len(M):
        return None
    for bi, (s, size) in enumerate(zip(starts, blocks)):
        for i in range(s, s + size):
            if any(not M[i][j].is_zero() for j in range(s)):
                return None
        if size == 1:
            if M[s][s].is_zero():
                return False
        elif _det2(M[s][s], M[s][s + 1], M[s + 1][s], M[s + 1][s + 1]).is_zero():
            return False
    return True


# -- matrix tuples ------------------------------------------------------------------

@dataclass
class MatrixTuple:
    """Commuting invertible matrices with the Lie data that certifies their density.

    ``matrices`` are real (complex classes are realified); ``size`` is the
    size over ``field``.
    """

    field: str
    size: int
    class_tag: str
    matrices: list[list[list[SymReal]]]
    base_point: list[Fraction]
    spec: AbelianGroupSpec | None = None
    exp_data: list[list[SymReal]] | None = None
    provenance: Provenance = field(default_factory=Provenance)
    blocks: tuple[int, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.base_point)

    def __len__(self) -> int:
        return len(self.matrices)

    def shadows(self) -> list[np.ndarray]:
        return [np.array([[x.shadow() for x in row] for row in M], dtype=np.float64) for M in self.matrices]

    def base_vector(self) -> np.ndarray:
        return np.array([float(x) for x in self.base_point], dtype=np.float64)

    def commute(self) -> bool:
        sp = [_sparse(M) for M in self.matrices]
        for i in range(len(sp)):
            for j in range(i + 1, len(sp)):
                if _sparse_product(sp[i], sp[j]) != _sparse_product(sp[j], sp[i]):
                    return False
        return True

    def invertibility(self) -> str:
        """``exact``, ``numeric`` or ``singular``."""
        how = "exact"
        for M, S in zip(self.matrices, self.shadows()):
            ok = exact_invertible(M, self.blocks) if self.blocks else None
            if ok is None:
                how = "numeric"
                ok = abs(np.linalg.det(S)) > 1e-12
            if not ok:
                return "singular"
        return how

    def density_check(self):
        if self.spec is None or self.exp_data is None:
            raise ValueError("tuple carries no Lie algebra data")
        return check_dense_group_exp(self.spec, self.exp_data)

    def to_document(self) -> dict[str, Any]:
        if self.field == "complex":
            gens = [[[_fmt_complex(z) for z in row] for row in _complexify(M)] for M in self.matrices]
            point = [_fmt_complex((as_symreal(self.base_point[2 * i]), as_symreal(self.base_point[2 * i + 1])))
                     for i in range(self.dim // 2)]
        else:
            gens = [[[format_symreal(x) for x in row] for row in M] for M in self.matrices]
            point = [_fmt_q(x) for x in self.base_point]
        doc = {
            "field": self.field,
            "size": self.size,
            "class": self.class_tag,
            "generators": gens,
            "base_point": point,
            "provenance": {
                "symbols": {k: self.provenance.values[k] for k in sorted(self.provenance.values)},
                "definitions": {k: self.provenance.definitions[k] for k in sorted(self.provenance.definitions)},
                "declared_independent": "all monomials in sqrt of squarefree integers and the symbols above",
            },
        }
        if self.spec is not None and self.exp_data is not None:
            doc["exp_data"] = {"group": self.spec.to_dict(),
                               "W": [[format_symreal(x) for x in v] for v in self.exp_data]}
        if self.blocks:
            doc["blocks"] = list(self.blocks)
        return doc

    @classmethod
    def from_document(cls, doc: dict[str, Any]) -> MatrixTuple:
        try:
            prov = Provenance()
            for k, v in doc.get("provenance", {}).get("symbols", {}).items():
                prov.values[k] = float(v)
                prov.definitions[k] = doc["provenance"].get("definitions", {}).get(k, "")
            basis = SymbolBasis((), prov.values)
            fld = doc["field"]
            if fld == "complex":
                mats = [_realify([[_parse_complex(z, basis) for z in row] for row in M]) for M in doc["generators"]]
                point = []
                for z in doc["base_point"]:
                    re_, im = _parse_complex(z, basis)
                    point += [re_.rational_value(), im.rational_value()]
            elif fld == "real":
                mats = [[[parse_symreal(x, basis) for x in row] for row in M] for M in doc["generators"]]
                point = [Fraction(x) for x in doc["base_point"]]
            else:
                raise ValueError(f"unknown field {fld!r}")
            spec = W = None
            if "exp_data" in doc:
                spec = AbelianGroupSpec.from_dict(doc["exp_data"]["group"])
                W = [[parse_symreal(x, basis) for x in v] for v in doc["exp_data"]["W"]]
            dim = len(point)
            if not mats or any(len(M) != dim or any(len(r) != dim for r in M) for M in mats):
                raise ValueError("generator shapes do not match the base point")
            return cls(fld, int(doc["size"]), str(doc.get("class", "custom")), mats, point,
                       spec, W, prov, tuple(doc.get("blocks", ())))
        except KeyError as exc:
            raise ValueError(f"tuple document lacks field {exc.args[0]!r}") from None


def _fmt_q(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_complex(z) -> str:
    return f"({format_symreal(z[0])}) + ({format_symreal(z[1])})*i"


_COMPLEX_RE = re.compile(r"^\s*\((?P<re>[^()]*)\)\s*\+\s*\((?P<im>[^()]*)\)\s*\*\s*i\s*$")


def _parse_complex(text: str, basis: SymbolBasis) -> tuple[SymReal, SymReal]:
    m = _COMPLEX_RE.match(text)
    if not m:
        return parse_symreal(text, basis), ZERO
    return parse_symreal(m.group("re"), basis), parse_symreal(m.group("im"), basis)


# -- class models ------------------------------------------------------------------
# Each model: (Lie algebra spec, field, block sizes, exp map W-vector -> real matrix, base point)

def _diag_polar(m, angles, logs, prov):
    blocks = []
    for j in range(m):
        blocks.append(prov.polar(logs[j], angles[j]))
    return blocks


def _block_diag(parts: Sequence[list[list[SymReal]]]) -> list[list[SymReal]]:
    dim = sum(len(p) for p in parts)
    M = [[ZERO] * dim for _ in range(dim)]
    off = 0
    for p in parts:
        for i, row in enumerate(p):
            for j, x in enumerate(row):
                M[off + i][off + j] = x
        off += len(p)
    return M


def _rotation_blocks(w, m, prov):
    zs = _diag_polar(m, w[:m], w[m:2 * m], prov)
    return [[[re_, -im], [im, re_]] for re_, im in zs]


def _model(cls: str, n: int, prov: Provenance):
    if cls == "DiagonalC":
        spec = AbelianGroupSpec.standard(2 * n, n)
        return spec, "complex", (2,) * n, (lambda w: _block_diag(_rotation_blocks(w, n, prov))), \
            [Fraction(int(i % 2 == 0)) for i in range(2 * n)]
    if cls == "RotationScalingR":
        if n % 2:
            raise ValueError("RotationScalingR needs even n")
        m = n // 2
        return AbelianGroupSpec.standard(n, m), "real", (2,) * m, \
            (lambda w: _block_diag(_rotation_blocks(w, m, prov))), [Fraction(1)] * n
    if cls == "OddR":
        if n % 2 != 1:
            raise ValueError("OddR needs odd n")
        m = n // 2
        return AbelianGroupSpec.standard(n, m), "real", (2,) * m + (1,), \
            (lambda w: _block_diag(_rotation_blocks(w, m, prov) + [[[prov.exp(w[2 * m])]]])), [Fraction(1)] * n
    if cls == "DiagonalR":
        return AbelianGroupSpec.standard(n, 0), "real", (1,) * n, \
            (lambda w: _block_diag([[[prov.exp(x)]] for x in w])), [Fraction(1)] * n
    if cls == "ToeplitzR":
        return AbelianGroupSpec.standard(n, 0), "real", (1,) * n, \
            (lambda w: exp_toeplitz(w, prov).dense()), _toeplitz_point(n, False)
    if cls == "TriangularR":
        # W lives in profile coordinates; the completion basis is I+sigma, sigma, sigma^2, ...
        return AbelianGroupSpec.standard(n, 0), "real", (1,) * n, \
            (lambda w: exp_toeplitz(w, prov).dense()), _toeplitz_point(n, False)
    if cls == "ToeplitzC":
        # coordinates: b0 (turns), a0, then (x_k, y_k) for k = 1..n-1
        def exp_map(w):
            nil = [(ZERO, ZERO)] + [(w[2 * k], w[2 * k + 1]) for k in range(1, n)]
            E = _exp_nilpotent(nil, True)
            return _scale_toeplitz(E, prov.polar(w[1], w[0])).realified()
        return AbelianGroupSpec.standard(2 * n, 1), "complex", (2,) * n, exp_map, _toeplitz_point(n, True)
    if cls == "TriangularC":
        if n < 2:
            raise NonConstructive("complex triangular n=1: count from the table only, no witness (NON-CONSTRUCTIVE)")
        d = n - 2
        # coordinates: b_1..b_d, b0, a_1..a_d, a0, x1, y1

        def exp_map(w):
            angles, logs = w[:d + 1], w[d + 1:2 * d + 2]
            zs = _diag_polar(d + 1, angles, logs, prov)
            parts = [[[re_, -im], [im, re_]] for re_, im in zs[:d]]
            lam = zs[d]
            top = _cmul(lam, (w[2 * d + 2], w[2 * d + 3]))
            block = _realify([[lam, top], [(ZERO, ZERO), lam]])
            return _block_diag(parts + [block])
        point = [Fraction(int(i % 2 == 0)) for i in range(2 * n)]
        return AbelianGroupSpec.standard(2 * n, n - 1), "complex", (2,) * n, exp_map, point
    raise ValueError(f"unknown matrix class {cls!r}")


def _toeplitz_point(n: int, is_complex: bool) -> list[Fraction]:
    pts = [Fraction(i + 1, n) for i in range(n)]
    if not is_complex:
        return pts
    out = []
    for x in pts:
        out += [x, Fraction(0)]
    return out


def _triangular_lift(v: Sequence[SymReal]) -> list[SymReal]:
    """Coordinates in the basis I+sigma, sigma, sigma^2, ... to a Toeplitz profile."""
    out = list(v)
    if len(v) >= 2:
        out[1] = v[0] + v[1]
    return out


def resolve_class(cls: str) -> str:
    return CONSTRUCT_ALIASES.get(cls, cls)


def make_hypercyclic_tuple(cls: str, n: int, step=DEFAULT_STEP, shrink=DEFAULT_SHRINK) -> MatrixTuple:
    """A tuple of m(G) commuting matrices generating a dense subsemigroup of H."""
    name = resolve_class(cls)
    if name not in CLASSES:
        raise ValueError(f"unknown matrix class {cls!r}")
    if n < 1:
        raise ValueError("n must be >= 1")
    if name == "TriangularC" and n < 2:
        raise NonConstructive("complex triangular n=1: count from the table only, no witness (NON-CONSTRUCTIVE)")
    count = m_of_G(CLASS_ALIASES.get(name, name), n).count
    prov = Provenance()
    spec, fld, blocks, exp_map, point = _model(name, n, prov)
    W = make_dense_group_generators(spec, step, shrink)
    if name == "TriangularR":
        W = [_triangular_lift(w) for w in W]
    mats = [exp_map(w) for w in W]
    assert len(mats) == count, (name, n, len(mats), count)
    return MatrixTuple(fld, n, name, mats, point, spec, W, prov, blocks)


def self_check(T: MatrixTuple) -> dict[str, Any]:
    """Density verdict, commutation, invertibility and base point report."""
    from .orbit import check_base_point

    verdict = T.density_check()
    ok, reason = check_base_point(T)
    report = {
        "generator_count": len(T),
        "commute_exactly": T.commute(),
        "invertibility": T.invertibility(),
        "density": verdict.to_dict(),
        "base_point_ok": ok,
        "base_point_reason": reason,
    }
    cls = CLASS_ALIASES.get(T.class_tag, T.class_tag)
    try:
        report["expected_count"] = m_of_G(cls, T.size).count
    except ValueError:
        pass
    return report
