"""Positive roots as F-sequences: slope order, mediant insertion, sum decompositions."""

from __future__ import annotations

from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence

from . import etaseq
from .errors import InvalidPosition, NotARoot, RootOrderTie
from .exact import IDENTITY, Mat2
from .groupoid import CartanScheme, real_roots
from .reports import ValidityReport

RootVec = tuple  # (a, b) of nonnegative ints
BASE_ROOTS = ((0, 1), (1, 1), (1, 0))


def leq_Q(u: Sequence[int], v: Sequence[int]) -> bool:
    """``(a, b) <= (c, d)`` iff ``a*d <= c*b``: slope order with (1, 0) on top."""
    (a, b), (c, d) = u, v
    return a * d <= c * b


def _compare(u: RootVec, v: RootVec) -> int:
    lhs, rhs = u[0] * v[1], v[0] * u[1]
    if lhs == rhs:
        if tuple(u) == tuple(v):
            return 0
        raise RootOrderTie(f"{u} and {v} have the same slope")
    return -1 if lhs < rhs else 1


def sort_roots(roots: Iterable[RootVec]) -> tuple[RootVec, ...]:
    return tuple(sorted({tuple(r) for r in roots}, key=cmp_to_key(_compare)))


def mediant_insert(rs: Sequence[RootVec], i: int) -> tuple[RootVec, ...]:
    """Insert ``v_i + v_{i+1}`` between positions ``i`` and ``i + 1`` (1-based)."""
    rs = tuple(tuple(v) for v in rs)
    if not 1 <= i < len(rs):
        raise InvalidPosition(f"position {i} not in 1..{len(rs) - 1}")
    u, w = rs[i - 1], rs[i]
    return rs[:i] + ((u[0] + w[0], u[1] + w[1]),) + rs[i:]


def validate_F(rs: Sequence[Sequence[int]]) -> ValidityReport:
    """Check F-sequence membership; the witness is the order in which roots were removed."""
    rs = [tuple(v) for v in rs]
    if len(rs) < 3:
        return ValidityReport.fail("too_short", "F-sequences have length >= 3")
    for v in rs:
        if len(v) != 2 or v[0] < 0 or v[1] < 0 or v == (0, 0):
            return ValidityReport.fail("not_positive", f"{v} is not a nonzero vector in N0^2")
        if gcd(v[0], v[1]) != 1:
            return ValidityReport.fail("not_primitive", f"{v} is not primitive")
    if rs[0] != (0, 1) or rs[-1] != (1, 0):
        return ValidityReport.fail("endpoints", "must run from (0, 1) to (1, 0)")
    for u, w in zip(rs, rs[1:]):
        if u[0] * w[1] >= w[0] * u[1]:
            return ValidityReport.fail("not_ascending", f"{u} is not strictly below {w}")
    for u, w in zip(rs, rs[1:]):
        if u[1] * w[0] - u[0] * w[1] != 1:
            return ValidityReport.fail("not_unimodular", f"{u}, {w} are not unimodular")

    witness = []
    cur = list(rs)
    while len(cur) > 3:
        for k in range(1, len(cur) - 1):
            u, v, w = cur[k - 1], cur[k], cur[k + 1]
            if v == (u[0] + w[0], u[1] + w[1]):
                witness.append(v)
                del cur[k]
                break
        else:
            return ValidityReport.fail("no_reduction", f"stuck at {tuple(cur)}", witness=witness)
    if tuple(cur) != BASE_ROOTS:
        return ValidityReport.fail("no_reduction", f"reduced to {tuple(cur)}", witness=witness)
    return ValidityReport.ok(witness=witness)


def roots_from_scheme(scheme: CartanScheme, obj: int) -> tuple[RootVec, ...]:
    """Positive real roots at object ``obj`` (1-based), in ascending slope order."""
    positive = [r for r in real_roots(scheme, obj) if r[0] >= 0 and r[1] >= 0]
    return sort_roots(positive)


def root_sets(scheme: CartanScheme) -> list[tuple[RootVec, ...]]:
    """``roots_from_scheme`` at every object, in object order."""
    return [roots_from_scheme(scheme, a) for a in range(1, scheme.size + 1)]


def roots_by_words(seq: Sequence[int]) -> tuple[RootVec, ...]:
    """Positive roots at the anchor object from the explicit reflection words.

    With ``s_k`` the reflection across the k-th edge of the cycle (label 2
    for odd ``k``, label 1 for even ``k``, entry ``c_k``), the roots are
    ``s_1 s_2 ... s_v (alpha)`` for ``v = 0..n-1``, with ``alpha`` the second
    simple root for even ``v`` and the first for odd ``v``.  Independent of
    the morphism closure.
    """
    seq = tuple(seq)
    n = len(seq)
    found = []
    M = IDENTITY
    for v in range(n):
        alpha = (0, 1) if v % 2 == 0 else (1, 0)
        found.append(M.apply(alpha))
        c = seq[v % n]
        # edge v+1 (1-based) has label 2 when v is even
        s = Mat2(1, 0, c, -1) if v % 2 == 0 else Mat2(-1, c, 0, 1)
        M = M @ s
    return sort_roots(found)


def sum_of_two(rs: Sequence[RootVec], v: Sequence[int]):
    """``"simple"`` for a simple root, else the first pair ``(u, v - u)`` of roots in ``rs``."""
    rs = [tuple(r) for r in rs]
    v = tuple(v)
    if v not in rs:
        raise NotARoot(f"{v} is not in the root sequence")
    if v in ((0, 1), (1, 0)):
        return "simple"
    members = set(rs)
    for u in rs:
        w = (v[0] - u[0], v[1] - u[1])
        if u != v and w in members and w != v:
            return (u, w)
    raise NotARoot(f"{v} is not a sum of two roots")  # pragma: no cover - excluded by theory


def is_unimodular_chain(rs: Sequence[RootVec]) -> bool:
    return all(u[1] * w[0] - u[0] * w[1] == 1 for u, w in zip(rs, rs[1:]))


def roots_to_json(obj: int, rs: Sequence[RootVec]) -> dict:
    return {"object": obj, "roots": [list(r) for r in rs]}


def roots_of_sequence(seq: Sequence[int]) -> list[tuple[RootVec, ...]]:
    """Root sets at every object of the universal scheme of an eta-sequence."""
    from .groupoid import scheme_from_eta

    return root_sets(scheme_from_eta(etaseq.require_valid(seq)))
