"""Exact arithmetic in a finitely generated Q-vector space of real numbers.

A :class:`SymbolBasis` is an ordered list of named reals ``1, s_1, ..., s_k``
which is *declared* linearly independent over Q.  A :class:`SymReal` is a
vector of rational coefficients over such a basis; its float "shadow" is
only ever used for sign decisions and simulation.

Symbol names are monomials in atoms.  Two kinds of atom exist:

* ``sqrtN`` for a squarefree integer ``N > 1``; its value is implicit and
  products of these reduce exactly (``sqrt2*sqrt6 == 2*sqrt3``).
* opaque atoms (identifiers such as ``e`` or ``z1_re``) whose float value
  must be declared.  Products of opaque atoms are kept as formal monomials.

Monomials in distinct squarefree roots are Q-independent (a classical
fact); independence of everything involving opaque atoms is an input axiom.
"""

from __future__ import annotations

import math
import re
from contextlib import contextmanager
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .linalg import nullspace, primitive_integer_vector, rational_rank

SIGN_DEAD_ZONE = 1e-9

_ATOM_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SQRT_RE = re.compile(r"sqrt(\d+)\Z")


class BasisMismatch(ValueError):
    """Two values disagree on what a symbol means."""


class AmbiguousSign(ArithmeticError):
    """A nonzero value whose float shadow lies inside the sign dead zone."""


class SymRealParseError(ValueError):
    def __init__(self, message: str, text: str, column: int):
        super().__init__(f"{message} at column {column + 1}: {text!r}")
        self.column = column
        self.text = text


def _squarefree_split(n: int) -> tuple[int, int]:
    """Return ``(k, m)`` with ``n == k*k*m`` and ``m`` squarefree."""
    k, m, p = 1, 1, 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            m *= p
        p += 1
    return k, m * n


def primes(count: int, start: int = 2) -> list[int]:
    out: list[int] = []
    p = start
    while len(out) < count:
        if all(p % q for q in range(2, int(p**0.5) + 1)):
            out.append(p)
        p += 1
    return out


# Monomial = (sorted tuple of opaque atoms, squarefree radicand)
def _parse_monomial(name: str) -> tuple[tuple[str, ...], int]:
    if name == "1":
        return (), 1
    atoms = []
    rad = 1
    for part in name.split("*"):
        m = _SQRT_RE.match(part)
        if m:
            rad *= int(m.group(1))
        elif _ATOM_RE.match(part):
            atoms.append(part)
        else:
            raise ValueError(f"bad symbol name {name!r}")
    k, rad = _squarefree_split(rad)
    if k != 1:
        raise ValueError(f"symbol {name!r} is not in reduced form")
    return tuple(sorted(atoms)), rad


def _monomial_name(atoms: tuple[str, ...], rad: int) -> str:
    parts = list(atoms)
    if rad > 1:
        parts.append(f"sqrt{rad}")
    return "*".join(parts) if parts else "1"


@lru_cache(maxsize=65536)
def _multiply_names(a: str, b: str) -> tuple[int, str]:
    """``a*b == k * name`` for monomial names; returns ``(k, name)``."""
    atoms_a, rad_a = _parse_monomial(a)
    atoms_b, rad_b = _parse_monomial(b)
    k, rad = _squarefree_split(rad_a * rad_b)
    return k, _monomial_name(tuple(sorted(atoms_a + atoms_b)), rad)


def normalize_symbol(name: str) -> tuple[int, str]:
    """Reduce a raw product like ``sqrt8*x`` to ``(2, 'x*sqrt2')``."""
    k, out = 1, "1"
    for part in name.split("*"):
        m = _SQRT_RE.match(part)
        if m:
            kk, rad = _squarefree_split(int(m.group(1)))
            k *= kk
            part = f"sqrt{rad}" if rad > 1 else "1"
        elif not _ATOM_RE.match(part):
            raise ValueError(f"bad symbol factor {part!r}")
        kk, out = _multiply_names(out, part)
        k *= kk
    return k, out


class SymbolBasis:
    """Ordered, immutable list of declared-independent reals; symbol 0 is ``1``."""

    __slots__ = ("names", "atoms", "_index", "_values", "_key")

    def __init__(self, names: Iterable[str] = (), atoms: dict[str, float] | None = None):
        atoms = dict(atoms or {})
        ordered = ["1"]
        for nm in names:
            if nm == "1":
                continue
            k, canon = normalize_symbol(nm)
            if k != 1 or canon != nm:
                raise ValueError(f"symbol {nm!r} is not in reduced form (use {canon!r})")
            if nm in ordered:
                raise ValueError(f"duplicate symbol {nm!r}")
            ordered.append(nm)
        self.names: tuple[str, ...] = tuple(ordered)
        values = []
        for nm in self.names:
            opaque, rad = _parse_monomial(nm)
            v = math.sqrt(rad)
            for a in opaque:
                if a not in atoms:
                    raise ValueError(f"no value declared for atom {a!r}")
                v *= atoms[a]
            if not math.isfinite(v):
                raise ValueError(f"symbol {nm!r} has non-finite value")
            values.append(v)
        used = {a for nm in self.names for a in _parse_monomial(nm)[0]}
        self.atoms: dict[str, float] = {a: float(atoms[a]) for a in sorted(used | set(atoms))}
        self._values = tuple(values)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        self._key = (self.names, tuple(sorted(self.atoms.items())))

    @property
    def values(self) -> tuple[float, ...]:
        return self._values

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        return self._index[name]

    def value(self, name: str) -> float:
        return self._values[self._index[name]]

    def __eq__(self, other) -> bool:
        return isinstance(other, SymbolBasis) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"SymbolBasis({list(self.names[1:])!r})"

    def with_symbols(self, names: Iterable[str], atoms: dict[str, float] | None = None) -> SymbolBasis:
        """A basis extending this one; existing symbol order is preserved."""
        merged = dict(self.atoms)
        for a, v in (atoms or {}).items():
            if a in merged and merged[a] != v:
                raise BasisMismatch(f"atom {a!r} declared as {merged[a]} and {v}")
            merged[a] = v
        extra = [nm for nm in names if nm not in self._index]
        if not extra and merged == self.atoms:
            return self
        return SymbolBasis(self.names[1:] + tuple(dict.fromkeys(extra)), merged)

    def union(self, other: SymbolBasis) -> SymbolBasis:
        if other is self or other == self:
            return self
        return _union(self, other)

    # constructors for values over this basis
    def zero(self) -> SymReal:
        return SymReal(self, (Fraction(0),) * len(self))

    def rational(self, q) -> SymReal:
        return SymReal(self, (Fraction(q),) + (Fraction(0),) * (len(self) - 1))

    def symbol(self, name: str, coeff=1) -> SymReal:
        k, canon = normalize_symbol(name)
        basis = self if canon in self._index else self.with_symbols([canon])
        coeffs = [Fraction(0)] * len(basis)
        coeffs[basis.index(canon)] = Fraction(coeff) * k
        return SymReal(basis, tuple(coeffs))


@lru_cache(maxsize=4096)
def _union(a: SymbolBasis, b: SymbolBasis) -> SymbolBasis:
    return a.with_symbols(b.names[1:], b.atoms)


def default_basis(count: int = 8) -> SymbolBasis:
    """``1, sqrt2, sqrt3, sqrt5, ...`` over the first ``count`` primes."""
    return SymbolBasis([f"sqrt{p}" for p in primes(count)])


EMPTY_BASIS = SymbolBasis()


class SymReal:
    """A rational combination of basis symbols.  Immutable."""

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: SymbolBasis, coeffs: Sequence):
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != len(basis):
            raise ValueError("coefficient vector does not match basis length")
        self.basis = basis
        self.coeffs = coeffs

    @classmethod
    def from_rational(cls, q, basis: SymbolBasis = EMPTY_BASIS) -> SymReal:
        return basis.rational(q)

    # -- structure --------------------------------------------------------
    def lift(self, basis: SymbolBasis) -> SymReal:
        """Re-express over a basis that contains every symbol of ours."""
        if basis is self.basis:
            return self
        out = [Fraction(0)] * len(basis)
        for nm, c in zip(self.basis.names, self.coeffs):
            if c:
                if nm not in basis:
                    raise BasisMismatch(f"symbol {nm!r} missing from target basis")
                out[basis.index(nm)] = c
        return SymReal(basis, out)

    def terms(self) -> list[tuple[str, Fraction]]:
        return [(nm, c) for nm, c in zip(self.basis.names, self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def shadow(self) -> float:
        return math.fsum(float(c) * v for c, v in zip(self.coeffs, self.basis.values) if c)

    def sign(self, dead_zone: float | None = None) -> int:
        return sym_sign(self, dead_zone)

    # -- arithmetic -------------------------------------------------------
    def _coerce(self, other) -> SymReal | None:
        if isinstance(other, SymReal):
            return other
        if isinstance(other, (int, Fraction)):
            return self.basis.rational(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        basis = self.basis.union(other.basis)
        a, b = self.lift(basis), other.lift(basis)
        return SymReal(basis, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return SymReal(self.basis, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SymReal(self.basis, [c * other for c in self.coeffs])
        if not isinstance(other, SymReal):
            return NotImplemented
        if other.is_rational():
            return self * other.coeffs[0]
        if self.is_rational():
            return other * self.coeffs[0]
        acc: dict[str, Fraction] = {}
        for na, ca in self.terms():
            for nb, cb in other.terms():
                k, nm = _multiply_names(na, nb)
                acc[nm] = acc.get(nm, Fraction(0)) + ca * cb * k
        basis = self.basis.union(other.basis).with_symbols(acc)
        coeffs = [Fraction(0)] * len(basis)
        for nm, c in acc.items():
            coeffs[basis.index(nm)] = c
        return SymReal(basis, coeffs)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, SymReal):
            other = other.rational_value()
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return self * (1 / Fraction(other))

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms() == other.terms() or sorted(self.terms()) == sorted(other.terms())

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms())))

    def __float__(self) -> float:
        return self.shadow()

    def __str__(self) -> str:
        return format_symreal(self)

    def __repr__(self) -> str:
        return f"SymReal({format_symreal(self)!r})"


def as_symreal(x, basis: SymbolBasis = EMPTY_BASIS) -> SymReal:
    if isinstance(x, SymReal):
        return x
    if isinstance(x, (int, Fraction)):
        return basis.rational(x)
    if isinstance(x, str):
        return parse_symreal(x, basis)
    raise TypeError(f"cannot interpret {x!r} as an exact real")


def common_basis(xs: Iterable[SymReal]) -> SymbolBasis:
    basis = EMPTY_BASIS
    for x in xs:
        basis = basis.union(x.basis)
    return basis


def align(xs: Sequence[SymReal]) -> list[SymReal]:
    basis = common_basis(xs)
    return [x.lift(basis) for x in xs]


def sym_eval(x: SymReal) -> float:
    return x.shadow()


_active_dead_zone = [SIGN_DEAD_ZONE]


@contextmanager
def sign_dead_zone(value: float):
    """Temporarily change the default dead zone used by :func:`sym_sign`."""
    if not value > 0:
        raise ValueError("dead zone must be positive")
    _active_dead_zone.append(float(value))
    try:
        yield
    finally:
        _active_dead_zone.pop()


def sym_sign(x: SymReal, dead_zone: float | None = None) -> int:
    """-1, 0 or 1.  Zero is decided exactly; other signs need the shadow to clear the dead zone."""
    if dead_zone is None:
        dead_zone = _active_dead_zone[-1]
    if x.is_zero():
        return 0
    if x.is_rational():
        return 1 if x.coeffs[0] > 0 else -1
    s = x.shadow()
    if abs(s) < dead_zone:
        raise AmbiguousSign(f"{x} has shadow {s:.3e} inside the dead zone {dead_zone:g}")
    return 1 if s > 0 else -1


def coefficient_matrix(xs: Sequence[SymReal]) -> list[list[Fraction]]:
    return [list(x.coeffs) for x in align(xs)]


def is_q_independent(xs: Sequence[SymReal]) -> tuple[bool, list[int] | None]:
    """Exact Q-linear independence.

    Returns ``(True, None)`` or ``(False, b)`` with ``b`` a primitive integer
    vector such that ``sum(b_i * xs_i) == 0`` exactly.
    """
    if not xs:
        return True, None
    M = coefficient_matrix(xs)
    if rational_rank(M) == len(xs):
        return True, None
    # left kernel of M = right kernel of M^T
    Mt = [list(col) for col in zip(*M)]
    ker = nullspace(Mt, ncols=len(xs))
    return False, primitive_integer_vector(ker[0])


# -- text syntax ------------------------------------------------------------

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d+)?(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*]))"
)


def parse_symreal(text: str, basis: SymbolBasis = EMPTY_BASIS) -> SymReal:
    """Parse ``"3/4 - 1/3*sqrt5 + x*sqrt2"`` against ``basis``.

    ``sqrtN`` symbols are always available; other atoms must be declared in
    ``basis``.  Decimal literals are read as exact rationals.
    """
    pos = 0
    tokens = []
    stripped = text.rstrip()
    while pos < len(stripped):
        m = _TOKEN_RE.match(stripped, pos)
        if not m or m.end() == pos:
            raise SymRealParseError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    if not tokens:
        raise SymRealParseError("empty expression", text, 0)

    acc: dict[str, Fraction] = {}
    i = 0
    expect_term = True
    sign = 1
    while i < len(tokens):
        kind, val, col = tokens[i]
        if expect_term and kind == "op" and val in "+-":
            if val == "-":
                sign = -sign
            i += 1
            continue
        if not expect_term:
            if kind != "op" or val not in "+-":
                raise SymRealParseError("expected '+' or '-'", text, col)
            sign = -1 if val == "-" else 1
            expect_term = True
            i += 1
            continue
        # a term: factor ('*' factor)*
        coeff = Fraction(sign)
        factors = []
        while True:
            if i >= len(tokens):
                raise SymRealParseError("expected a number or symbol", text, len(text))
            kind, val, col = tokens[i]
            if kind == "num":
                coeff *= Fraction(val)
            elif kind == "name":
                if not _SQRT_RE.match(val) and val not in basis.atoms:
                    raise SymRealParseError(f"undeclared symbol {val!r}", text, col)
                factors.append(val)
            else:
                raise SymRealParseError("expected a number or symbol", text, col)
            i += 1
            if i < len(tokens) and tokens[i][0] == "op" and tokens[i][1] == "*":
                i += 1
                continue
            break
        k, name = normalize_symbol("*".join(factors)) if factors else (1, "1")
        acc[name] = acc.get(name, Fraction(0)) + coeff * k
        expect_term = False
        sign = 1
    if expect_term:
        raise SymRealParseError("dangling operator", text, len(text))
    target = basis.with_symbols(acc)
    coeffs = [Fraction(0)] * len(target)
    for nm, c in acc.items():
        coeffs[target.index(nm)] = c
    return SymReal(target, coeffs)


def _format_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_symreal(x: SymReal) -> str:
    parts = []
    for nm, c in x.terms():
        mag = abs(c)
        if nm == "1":
            body = _format_rational(mag)
        elif mag == 1:
            body = nm
        else:
            body = f"{_format_rational(mag)}*{nm}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts) if parts else "0"
