"""Eta-sequences: validation, expansion/contraction, canonical forms, enumeration.

An eta-sequence is a tuple of positive integers ``(c1, ..., cn)`` with
``eta(c1) @ ... @ eta(cn) == -id`` whose partial products all have
nonnegative first columns.  Sequences are plain tuples of ``int``; positions
are 1-based in the public API.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BoundExceeded, InvalidPosition, InvalidSequence, NotContractible
from .exact import IDENTITY, eta
from .reports import ValidityReport

log = logging.getLogger(__name__)

BASE = (1, 1, 1)
DEFAULT_BOUND = 14

EtaSequence = tuple  # tuple[int, ...]


class SymmetryType(str, enum.Enum):
    TYPE1 = "type1"
    TYPE2 = "type2"


@dataclass(frozen=True)
class DihedralElement:
    """The map ``x -> rotation + x`` (or ``rotation - x`` when ``flip``) on Z/order."""

    rotation: int
    flip: bool
    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        object.__setattr__(self, "rotation", self.rotation % self.order)

    def __call__(self, x: int) -> int:
        return (self.rotation - x if self.flip else self.rotation + x) % self.order

    def compose(self, other: "DihedralElement") -> "DihedralElement":
        """``self`` after ``other``."""
        if other.order != self.order:
            raise ValueError("orders differ")
        t = -other.rotation if self.flip else other.rotation
        return DihedralElement(self.rotation + t, self.flip != other.flip, self.order)

    def inverse(self) -> "DihedralElement":
        if self.flip:
            return self
        return DihedralElement(-self.rotation, False, self.order)

    def is_identity(self) -> bool:
        return not self.flip and self.rotation == 0

    def element_order(self) -> int:
        if self.flip:
            return 2
        k, g = 1, self
        while not g.is_identity():
            g = g.compose(self)
            k += 1
        return k

    def permutation(self) -> tuple[int, ...]:
        return tuple(self(x) for x in range(self.order))

    def act_on(self, seq: Sequence) -> tuple:
        """Move the entry at (0-based) position ``x`` to position ``self(x)``."""
        if len(seq) != self.order:
            raise ValueError("sequence length does not match group order")
        out = [None] * self.order
        for x, v in enumerate(seq):
            out[self(x)] = v
        return tuple(out)

    @classmethod
    def all(cls, order: int) -> list["DihedralElement"]:
        return [cls(r, f, order) for f in (False, True) for r in range(order)]

    def to_dict(self) -> dict:
        return {"rotation": self.rotation, "flip": self.flip, "order": self.order}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate(entries: Sequence[int]) -> ValidityReport:
    """Check every eta-sequence condition; the report names the first failure."""
    seq = tuple(entries)
    n = len(seq)
    if n == 0:
        return ValidityReport.fail("empty", "sequence has no entries")
    if any(not isinstance(c, int) or isinstance(c, bool) for c in seq):
        return ValidityReport.fail("not_integer", "entries must be integers")
    if any(c < 1 for c in seq):
        return ValidityReport.fail("nonpositive_entry", "every entry must be >= 1")

    partial = IDENTITY
    column_ok = True
    first_bad = None
    for i, c in enumerate(seq, start=1):
        partial = partial @ eta(c)
        if i < n and (partial.a11 < 0 or partial.a21 < 0) and column_ok:
            column_ok, first_bad = False, i
    if partial != -IDENTITY:
        return ValidityReport.fail("eta_product", f"eta-product is {partial.tolist()}, not -id")
    if not column_ok:
        log.warning("positive sequence %s has eta-product -id but fails the "
                    "first-column condition at prefix %d", seq, first_bad)
        return ValidityReport.fail("first_column",
                                   f"prefix of length {first_bad} has a negative first-column entry")
    if n < 3:
        return ValidityReport.fail("too_short", "eta-sequences have length >= 3")
    if sum(seq) != 3 * (n - 2):
        return ValidityReport.fail("entry_sum", f"sum {sum(seq)} != {3 * (n - 2)}")
    if seq != BASE:
        if 1 not in seq:
            return ValidityReport.fail("ones", "no entry equals 1")
        for i in range(n):
            if seq[i] == 1 and seq[(i + 1) % n] == 1:
                return ValidityReport.fail("ones", f"adjacent ones at positions {i + 1}, {(i + 1) % n + 1}")
    return ValidityReport.ok()


def is_valid(entries: Sequence[int]) -> bool:
    return validate(entries).valid


def require_valid(entries: Sequence[int]) -> tuple[int, ...]:
    report = validate(entries)
    if not report:
        raise InvalidSequence(f"{tuple(entries)} is not an eta-sequence: {report.reason} ({report.detail})")
    return tuple(entries)


# ---------------------------------------------------------------------------
# local moves
# ---------------------------------------------------------------------------

def expand(seq: Sequence[int], gap: int) -> tuple[int, ...]:
    """Insert a 1 into the gap after entry ``gap`` and bump both neighbours.

    Gap ``n`` is the wrap-around gap between the last and first entries; the
    new 1 then becomes the last entry.
    """
    seq = tuple(seq)
    n = len(seq)
    if not 1 <= gap <= n:
        raise InvalidPosition(f"gap {gap} not in 1..{n}")
    out = list(seq)
    left, right = gap - 1, gap % n
    out[left] += 1
    out[right] += 1
    out.insert(gap, 1)
    return tuple(out)


def contract(seq: Sequence[int], position: int) -> tuple[int, ...]:
    """Remove the 1 at ``position`` and decrement its two cyclic neighbours."""
    seq = tuple(seq)
    n = len(seq)
    if not 1 <= position <= n:
        raise InvalidPosition(f"position {position} not in 1..{n}")
    if n <= 3:
        raise NotContractible("length-3 sequences cannot be contracted")
    i = position - 1
    if seq[i] != 1:
        raise NotContractible(f"entry at position {position} is {seq[i]}, not 1")
    lo, hi = (i - 1) % n, (i + 1) % n
    if seq[lo] < 2 or seq[hi] < 2:
        raise NotContractible("both neighbours of the removed 1 must be >= 2")
    out = list(seq)
    out[lo] -= 1
    out[hi] -= 1
    del out[i]
    return tuple(out)


def contractible_positions(seq: Sequence[int]) -> list[int]:
    n = len(seq)
    if n <= 3:
        return []
    return [i + 1 for i in range(n)
            if seq[i] == 1 and seq[i - 1] >= 2 and seq[(i + 1) % n] >= 2]


def reduce_to_base(seq: Sequence[int]) -> list[tuple[str, int]]:
    """Chain of ``("contract", position)`` steps taking ``seq`` to ``(1, 1, 1)``.

    Depth-first, lowest position first, backtracking on dead ends.
    """
    start = require_valid(seq)

    def search(s: tuple[int, ...]):
        if s == BASE:
            return []
        for pos in contractible_positions(s):
            rest = search(contract(s, pos))
            if rest is not None:
                return [("contract", pos)] + rest
        return None

    chain = search(start)
    if chain is None:  # pragma: no cover - excluded by the classification theorem
        raise InvalidSequence(f"{start} does not reduce to (1, 1, 1)")
    return chain


# ---------------------------------------------------------------------------
# symmetry
# ---------------------------------------------------------------------------

def rotate(seq: Sequence[int], k: int) -> tuple[int, ...]:
    """Left rotation by ``k``: entry ``k+1`` comes first."""
    seq = tuple(seq)
    if not seq:
        return seq
    k %= len(seq)
    return seq[k:] + seq[:k]


def dihedral_images(seq: Sequence[int]) -> list[tuple[int, ...]]:
    seq = tuple(seq)
    rev = seq[::-1]
    n = len(seq)
    return [rotate(seq, k) for k in range(n)] + [rotate(rev, k) for k in range(n)]


def canonical_form(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least of the 2n rotations and reflections."""
    return min(dihedral_images(seq))


def period(seq: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """``(d, r)`` with ``seq == d * r`` and ``r`` maximal."""
    seq = tuple(seq)
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq[:p] * (n // p) == seq:
            return seq[:p], n // p
    raise ValueError("empty sequence has no period")  # pragma: no cover


def type1_witness(seq: Sequence[int]) -> int | None:
    """Smallest 1-based ``k`` with ``(a_k, ..., a_{k-1}) == (a_k, a_{k-1}, ..., a_{k+1})``."""
    a = tuple(seq)
    n = len(a)
    for k in range(1, n + 1):
        forward = a[k - 1:] + a[:k - 1]
        backward = tuple(a[(k - 1 - t) % n] for t in range(n))
        if forward == backward:
            return k
    return None


def symmetry_type(seq: Sequence[int]) -> SymmetryType:
    return SymmetryType.TYPE1 if type1_witness(seq) is not None else SymmetryType.TYPE2


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def _check_bound(n: int, bound: int) -> None:
    if n < 3:
        raise BoundExceeded(f"n = {n} is below 3")
    if n > bound:
        raise BoundExceeded(f"n = {n} exceeds the enumeration bound {bound}")


def enumerate_sequences(n: int, canonical: bool = False, bound: int = DEFAULT_BOUND) -> list[tuple[int, ...]]:
    """All eta-sequences of length ``n``, sorted; one per orbit if ``canonical``.

    Generated from the triangulations of the n-gon and re-validated through
    the eta-product.
    """
    from .polygon import enumerate_triangulations, psi_inverse

    _check_bound(n, bound)
    raw = set()
    for t in enumerate_triangulations(n, bound=bound):
        seq = psi_inverse(t)
        require_valid(seq)
        raw.add(seq)
    if canonical:
        return sorted({canonical_form(s) for s in raw})
    return sorted(raw)


def enumerate_by_expansion(n: int, bound: int = DEFAULT_BOUND) -> list[tuple[int, ...]]:
    """Same set as :func:`enumerate_sequences`, grown from ``(1, 1, 1)`` by expansion."""
    _check_bound(n, bound)
    level = {BASE}
    for _ in range(n - 3):
        level = {expand(s, g) for s in level for g in range(1, len(s) + 1)}
    return sorted(level)


def orbit_representatives(seqs: Iterable[Sequence[int]]) -> list[tuple[int, ...]]:
    return sorted({canonical_form(s) for s in seqs})


def to_json(seq: Sequence[int]) -> dict:
    return {"n": len(seq), "entries": list(seq)}


def from_json(obj: dict) -> tuple[int, ...]:
    entries = tuple(int(x) for x in obj["entries"])
    if "n" in obj and obj["n"] != len(entries):
        raise InvalidSequence("field n does not match the number of entries")
    return entries
