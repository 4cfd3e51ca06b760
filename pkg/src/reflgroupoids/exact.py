"""Exact scalars, sparse integer polynomials and 2x2 matrices.

Three scalar kinds are supported: Python ``int`` (arbitrary precision),
:class:`fractions.Fraction`, and :class:`Poly`.  Nothing here ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .errors import NonInvertible, UnknownVariable, VariableMismatch

Rational = Union[int, Fraction]


# ---------------------------------------------------------------------------
# Scalars
# ---------------------------------------------------------------------------

def as_rational(x) -> Rational:
    """Coerce ints, Fractions and strings like ``"-3/4"`` to an exact value.

    Integral results are returned as ``int``.
    """
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return as_rational(Fraction(x.strip()))
    raise TypeError(f"not an exact scalar: {x!r}")


def format_scalar(x) -> str:
    """Canonical text: ``"7"``, ``"-1/2"``, or the polynomial rendering."""
    if isinstance(x, Poly):
        return str(x)
    x = as_rational(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------

def _grlex_key(exps: tuple[int, ...]) -> tuple:
    # total degree first, then the highest-indexed variable is most significant
    return (sum(exps), exps[::-1])


class Poly:
    """Sparse polynomial with integer coefficients.

    The variable universe is fixed at construction; binary operations
    require both operands to share it.  Zero coefficients are never stored,
    so ``==`` is mathematical equality.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], int] | None = None):
        self.variables = tuple(variables)
        k = len(self.variables)
        clean: dict[tuple[int, ...], int] = {}
        for exps, coeff in (terms or {}).items():
            if len(exps) != k:
                raise ValueError("exponent vector length does not match variables")
            if not isinstance(coeff, int):
                raise TypeError("Poly coefficients must be integers")
            if coeff:
                clean[tuple(exps)] = clean.get(tuple(exps), 0) + coeff
        self._terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def const(cls, variables: Sequence[str], value: int) -> "Poly":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "Poly":
        variables = tuple(variables)
        if name not in variables:
            raise UnknownVariable(f"{name} is not in {variables}")
        exps = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exps: 1})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["Poly", ...]:
        variables = tuple(variables)
        return tuple(cls.var(variables, v) for v in variables)

    # -- inspection ---------------------------------------------------------

    def terms(self) -> list[tuple[tuple[int, ...], int]]:
        """Terms in descending graded-lex order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def constant_value(self) -> int:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self._terms.get((0,) * len(self.variables), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.variables != self.variables:
                raise VariableMismatch(f"{self.variables} vs {other.variables}")
            return other
        if isinstance(other, bool):
            raise TypeError("booleans are not scalars")
        if isinstance(other, int):
            return Poly.const(self.variables, other)
        if isinstance(other, Fraction) and other.denominator == 1:
            return Poly.const(self.variables, other.numerator)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[tuple[int, ...], int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.variables, out)

    __rmul__ = __mul__

    def scalar_mul(self, k: int) -> "Poly":
        return Poly(self.variables, {e: k * c for e, c in self._terms.items()})

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = Poly.const(self.variables, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self._terms
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- evaluation ---------------------------------------------------------

    def eval(self, assignment: Mapping[str, Rational]) -> Rational:
        """Evaluate at exact values; every variable that occurs must be assigned."""
        total: Rational = 0
        for exps, coeff in self._terms.items():
            value: Rational = coeff
            for name, p in zip(self.variables, exps):
                if p:
                    if name not in assignment:
                        raise UnknownVariable(f"no value for {name}")
                    value = value * as_rational(assignment[name]) ** p
            total += value
        return as_rational(Fraction(total))

    def subs(self, assignment: Mapping[str, int]) -> "Poly":
        """Substitute integers for some variables, keeping the universe."""
        idx = {v: i for i, v in enumerate(self.variables)}
        for name in assignment:
            if name not in idx:
                raise UnknownVariable(f"{name} is not in {self.variables}")
        out: dict[tuple[int, ...], int] = {}
        for exps, coeff in self._terms.items():
            e = list(exps)
            for name, val in assignment.items():
                i = idx[name]
                if e[i]:
                    coeff *= int(val) ** e[i]
                    e[i] = 0
            t = tuple(e)
            out[t] = out.get(t, 0) + coeff
        return Poly(self.variables, out)

    # -- rendering ----------------------------------------------------------

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for exps, coeff in self.terms():
            factors = []
            for name, p in zip(self.variables, exps):
                if p == 1:
                    factors.append(name)
                elif p:
                    factors.append(f"{name}^{p}")
            mag = abs(coeff)
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append((coeff < 0, body))
        neg, body = pieces[0]
        out = ("-" if neg else "") + body
        for neg, body in pieces[1:]:
            out += (" - " if neg else " + ") + body
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def variables(prefix: str, count: int, start: int = 1) -> tuple[str, ...]:
    """``variables("c", 3)`` -> ``("c1", "c2", "c3")``."""
    return tuple(f"{prefix}{i}" for i in range(start, start + count))


# ---------------------------------------------------------------------------
# 2x2 matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Mat2:
    """Immutable 2x2 matrix ``((a11, a12), (a21, a22))``.

    ``m[i, j]`` uses 1-based indices.  Entries may be any exact scalar kind;
    ``@`` is the matrix product.
    """

    a11: object
    a12: object
    a21: object
    a22: object

    @classmethod
    def rows(cls, r1: Sequence, r2: Sequence) -> "Mat2":
        return cls(r1[0], r1[1], r2[0], r2[1])

    def __getitem__(self, ij: tuple[int, int]):
        i, j = ij
        if i not in (1, 2) or j not in (1, 2):
            raise IndexError(f"matrix index {ij} out of range")
        return ((self.a11, self.a12), (self.a21, self.a22))[i - 1][j - 1]

    def __iter__(self) -> Iterator:
        return iter((self.a11, self.a12, self.a21, self.a22))

    def tolist(self) -> list[list]:
        return [[self.a11, self.a12], [self.a21, self.a22]]

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.a11 * other.a11 + self.a12 * other.a21,
            self.a11 * other.a12 + self.a12 * other.a22,
            self.a21 * other.a11 + self.a22 * other.a21,
            self.a21 * other.a12 + self.a22 * other.a22,
        )

    def __neg__(self) -> "Mat2":
        return Mat2(-self.a11, -self.a12, -self.a21, -self.a22)

    def __add__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(x + y for x, y in zip(self, other)))

    def __sub__(self, other: "Mat2") -> "Mat2":
        return Mat2(*(x - y for x, y in zip(self, other)))

    def scale(self, k) -> "Mat2":
        return Mat2(*(k * x for x in self))

    def det(self):
        return self.a11 * self.a22 - self.a12 * self.a21

    def transpose(self) -> "Mat2":
        return Mat2(self.a11, self.a21, self.a12, self.a22)

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        return (self.a11 * v[0] + self.a12 * v[1], self.a21 * v[0] + self.a22 * v[1])

    def column(self, j: int) -> tuple:
        return (self[1, j], self[2, j])

    def map(self, f) -> "Mat2":
        return Mat2(*(f(x) for x in self))

    def eval(self, assignment: Mapping[str, Rational]) -> "Mat2":
        return self.map(lambda x: x.eval(assignment) if isinstance(x, Poly) else x)

    def is_zero(self) -> bool:
        return all(x == 0 for x in self)

    def formatted(self) -> list[list[str]]:
        return [[format_scalar(self.a11), format_scalar(self.a12)],
                [format_scalar(self.a21), format_scalar(self.a22)]]


IDENTITY = Mat2(1, 0, 0, 1)
TAU = Mat2(0, 1, 1, 0)
DIAG_FLIP = Mat2(1, 0, 0, -1)


def identity(like=None) -> Mat2:
    """Identity matrix; with a Poly ``like`` the entries share its universe."""
    if isinstance(like, Poly):
        one, zero = Poly.const(like.variables, 1), Poly.const(like.variables, 0)
        return Mat2(one, zero, zero, one)
    return IDENTITY


def eta(x) -> Mat2:
    """``((x, -1), (1, 0))``."""
    if isinstance(x, Poly):
        return Mat2(x, Poly.const(x.variables, -1), Poly.const(x.variables, 1), Poly.const(x.variables, 0))
    return Mat2(x, -1, 1, 0)


def mu(a, b, c) -> Mat2:
    """``((a, -b), (c, 0))``; ``mu(x, 1, 1) == eta(x)``."""
    zero = 0
    for v in (a, b, c):
        if isinstance(v, Poly):
            zero = Poly.const(v.variables, 0)
            break
    return Mat2(a, -b, c, zero)


def mat_mul(a: Mat2, b: Mat2) -> Mat2:
    return a @ b


def mat_neg(a: Mat2) -> Mat2:
    return -a


def mat_eq(a: Mat2, b: Mat2) -> bool:
    return all(x == y for x, y in zip(a, b))


def mat_prod(factors: Iterable[Mat2]) -> Mat2:
    """Left-to-right product; the empty product is the identity."""
    factors = list(factors)
    if not factors:
        return IDENTITY
    return reduce(mat_mul, factors)


def eta_product(values: Iterable) -> Mat2:
    """``eta(v1) @ eta(v2) @ ... @ eta(vk)`` in the order given."""
    return mat_prod(eta(v) for v in values)


def mat_inv(a: Mat2) -> Mat2:
    """Exact inverse within the scalar kind of ``a``.

    Integer and polynomial matrices need determinant +-1; rational matrices
    need a nonzero determinant.
    """
    d = a.det()
    adj = Mat2(a.a22, -a.a12, -a.a21, a.a11)
    if isinstance(d, Poly):
        if not d.is_constant() or d.constant_value() not in (1, -1):
            raise NonInvertible(f"determinant {d} is not a unit")
        return adj if d.constant_value() == 1 else -adj
    if any(isinstance(x, Fraction) for x in a):
        if d == 0:
            raise NonInvertible("determinant is zero")
        return adj.map(lambda x: as_rational(Fraction(x) / d))
    if d not in (1, -1):
        raise NonInvertible(f"integer determinant {d} is not a unit")
    return adj if d == 1 else -adj
