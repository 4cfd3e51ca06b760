"""Triangulations of the convex n-gon and their bijection with eta-sequences.

Vertices carry the labels ``1..n`` everywhere in this module.  The dihedral
relabelings are the one place where arithmetic happens modulo ``n``; they
go through :class:`~reflgroupoids.etaseq.DihedralElement` on ``0..n-1``,
so a vertex ``v`` is shifted to ``v - 1`` and back.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from . import etaseq
from .errors import BoundExceeded, InvalidTriangulation, NotADiagonal
from .etaseq import DihedralElement
from .reports import ValidityReport

DEFAULT_BOUND = etaseq.DEFAULT_BOUND

Chord = tuple  # tuple[int, int] with i < j


def chord(i: int, j: int, n: int) -> tuple[int, int]:
    """Normalise a vertex pair (labels read mod n) to ``(min, max)`` in 1..n."""
    a, b = (i - 1) % n + 1, (j - 1) % n + 1
    if a == b:
        raise ValueError(f"degenerate chord ({i}, {j})")
    return (a, b) if a < b else (b, a)


def is_edge(c: tuple[int, int], n: int) -> bool:
    i, j = c
    return j - i == 1 or (i == 1 and j == n)


def all_chords(n: int) -> list[tuple[int, int]]:
    """Every vertex pair, edges included, in lexicographic order."""
    return [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]


def all_diagonals(n: int) -> list[tuple[int, int]]:
    return [c for c in all_chords(n) if not is_edge(c, n)]


def crosses(d1: tuple[int, int], d2: tuple[int, int]) -> bool:
    """Two chords cross iff their endpoints are distinct and interleave."""
    a, b = d1
    c, d = d2
    if len({a, b, c, d}) < 4:
        return False
    return (a < c < b) != (a < d < b)


@dataclass(frozen=True)
class Triangulation:
    n: int
    diagonals: frozenset

    @classmethod
    def make(cls, n: int, diagonals: Iterable[Sequence[int]]) -> "Triangulation":
        return cls(n, frozenset(chord(i, j, n) for i, j in diagonals))

    def sorted_diagonals(self) -> list[tuple[int, int]]:
        return sorted(self.diagonals)

    def sides(self) -> set[tuple[int, int]]:
        return set(self.diagonals) | {chord(i, i + 1, self.n) for i in range(1, self.n + 1)}

    def triangles(self) -> list[tuple[int, int, int]]:
        s = self.sides()
        return [t for t in combinations(range(1, self.n + 1), 3)
                if (t[0], t[1]) in s and (t[1], t[2]) in s and (t[0], t[2]) in s]

    def to_json(self) -> dict:
        return {"n": self.n, "diagonals": [list(d) for d in self.sorted_diagonals()]}

    @classmethod
    def from_json(cls, obj: dict) -> "Triangulation":
        return cls.make(int(obj["n"]), [tuple(d) for d in obj["diagonals"]])

    def __str__(self) -> str:
        inner = ", ".join(f"{{{i},{j}}}" for i, j in self.sorted_diagonals())
        return f"T{self.n}[{inner}]"


def validate_triangulation(t: Triangulation) -> ValidityReport:
    n = t.n
    if n < 3:
        return ValidityReport.fail("too_small", "a polygon needs at least 3 vertices")
    for i, j in t.diagonals:
        if not (1 <= i < j <= n):
            return ValidityReport.fail("bad_chord", f"({i}, {j}) is not a chord of the {n}-gon")
        if is_edge((i, j), n):
            return ValidityReport.fail("edge_as_diagonal", f"({i}, {j}) is an edge")
    if len(t.diagonals) != n - 3:
        return ValidityReport.fail("diagonal_count", f"{len(t.diagonals)} diagonals, expected {n - 3}")
    for d1, d2 in combinations(sorted(t.diagonals), 2):
        if crosses(d1, d2):
            return ValidityReport.fail("crossing", f"{d1} crosses {d2}")
    tri = t.triangles()
    if len(tri) != n - 2:
        return ValidityReport.fail("triangle_count", f"{len(tri)} triangles, expected {n - 2}")
    return ValidityReport.ok()


def _require(t: Triangulation) -> None:
    report = validate_triangulation(t)
    if not report:
        raise InvalidTriangulation(f"{t}: {report.reason} ({report.detail})")


# ---------------------------------------------------------------------------
# the bijection with eta-sequences
# ---------------------------------------------------------------------------

def psi_inverse(t: Triangulation) -> tuple[int, ...]:
    """Number of triangles meeting each vertex."""
    _require(t)
    counts = [0] * t.n
    for tri in t.triangles():
        for v in tri:
            counts[v - 1] += 1
    return tuple(counts)


def psi(seq: Sequence[int]) -> Triangulation:
    """The triangulation with ``seq[i-1]`` triangles at vertex ``i``.

    Repeatedly cuts the lowest-labelled ear (a vertex whose count is 1),
    recording the diagonal joining its neighbours.
    """
    seq = etaseq.require_valid(seq)
    n = len(seq)
    labels = list(range(1, n + 1))
    counts = list(seq)
    diagonals = set()
    while len(labels) > 3:
        k = len(labels)
        pos = min((p for p in range(k) if counts[p] == 1), key=lambda p: labels[p])
        left, right = (pos - 1) % k, (pos + 1) % k
        diagonals.add(chord(labels[left], labels[right], n))
        counts[left] -= 1
        counts[right] -= 1
        del labels[pos], counts[pos]
    t = Triangulation(n, frozenset(diagonals))
    if psi_inverse(t) != seq:  # pragma: no cover - guarded by the bijection
        raise InvalidTriangulation(f"ear reconstruction of {seq} did not round-trip")
    return t


# ---------------------------------------------------------------------------
# enumeration and flips
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sub_triangulations(lo: int, hi: int) -> tuple[frozenset, ...]:
    """Triangulations of the polygon lo, lo+1, ..., hi (base edge (lo, hi))."""
    if hi - lo < 2:
        return (frozenset(),)
    out = []
    for apex in range(lo + 1, hi):
        extra = set()
        if apex - lo >= 2:
            extra.add((lo, apex))
        if hi - apex >= 2:
            extra.add((apex, hi))
        for left in _sub_triangulations(lo, apex):
            for right in _sub_triangulations(apex, hi):
                out.append(frozenset(extra) | left | right)
    return tuple(out)


def enumerate_triangulations(n: int, bound: int = DEFAULT_BOUND) -> list[Triangulation]:
    """All triangulations of the n-gon, ordered by their sorted diagonal lists."""
    if n < 3:
        raise BoundExceeded(f"n = {n} is below 3")
    if n > bound:
        raise BoundExceeded(f"n = {n} exceeds the enumeration bound {bound}")
    result = [Triangulation(n, d) for d in _sub_triangulations(1, n)]
    result.sort(key=Triangulation.sorted_diagonals)
    return result


def flip(t: Triangulation, d: Sequence[int]) -> Triangulation:
    """Replace diagonal ``d`` by the other diagonal of its quadrilateral."""
    d = chord(d[0], d[1], t.n)
    if d not in t.diagonals:
        raise NotADiagonal(f"{d} is not a diagonal of {t}")
    a, b = d
    apexes = [v for tri in t.triangles() if a in tri and b in tri for v in tri if v not in d]
    if len(apexes) != 2:  # pragma: no cover - every diagonal borders two triangles
        raise InvalidTriangulation(f"{d} does not border exactly two triangles")
    new = chord(apexes[0], apexes[1], t.n)
    return Triangulation(t.n, (t.diagonals - {d}) | {new})


def flipped_diagonal(t: Triangulation, d: Sequence[int]) -> tuple[int, int]:
    return next(iter(flip(t, d).diagonals - t.diagonals))


def flip_graph(n: int, bound: int = DEFAULT_BOUND) -> dict[Triangulation, set[Triangulation]]:
    """Adjacency of the flip graph, built by breadth-first search from the fan at 1."""
    start = fan(n)
    adj: dict[Triangulation, set[Triangulation]] = {start: set()}
    queue = deque([start])
    if n > bound:
        raise BoundExceeded(f"n = {n} exceeds the enumeration bound {bound}")
    while queue:
        t = queue.popleft()
        for d in t.sorted_diagonals():
            u = flip(t, d)
            adj[t].add(u)
            if u not in adj:
                adj[u] = set()
                queue.append(u)
    return adj


def fan(n: int, apex: int = 1) -> Triangulation:
    """All diagonals from ``apex``."""
    return Triangulation.make(n, [(apex, apex + k) for k in range(2, n - 1)])


def flip_graph_dot(n: int, bound: int = DEFAULT_BOUND) -> str:
    adj = flip_graph(n, bound)
    nodes = sorted(adj, key=Triangulation.sorted_diagonals)
    index = {t: k for k, t in enumerate(nodes)}
    lines = [f"graph flips_{n} {{"]
    for t in nodes:
        label = " ".join(f"{i}-{j}" for i, j in t.sorted_diagonals()) or "triangle"
        lines.append(f'  t{index[t]} [label="{label}"];')
    for t in nodes:
        for u in sorted(adj[t], key=index.get):
            if index[t] < index[u]:
                lines.append(f"  t{index[t]} -- t{index[u]};")
    lines.append("}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# dihedral action
# ---------------------------------------------------------------------------

def relabel(t: Triangulation, g: DihedralElement) -> Triangulation:
    if g.order != t.n:
        raise ValueError("group element acts on the wrong polygon")
    return Triangulation(t.n, frozenset(chord(g(i - 1) + 1, g(j - 1) + 1, t.n) for i, j in t.diagonals))


def canonical_triangulation(t: Triangulation) -> Triangulation:
    """Least relabeling, ordered by its eta-sequence and then its diagonals.

    Ordering by the eta-sequence first makes this commute with
    :func:`~reflgroupoids.etaseq.canonical_form` under :func:`psi_inverse`.
    """
    _require(t)
    images = {relabel(t, g) for g in DihedralElement.all(t.n)}
    return min(images, key=lambda u: (psi_inverse(u), u.sorted_diagonals()))


def ascii_incidence(t: Triangulation) -> str:
    """One line per vertex: its triangle count and diagonal neighbours."""
    seq = psi_inverse(t)
    lines = []
    for v in range(1, t.n + 1):
        nbrs = sorted(j if i == v else i for i, j in t.diagonals if v in (i, j))
        lines.append(f"{v:>3}: {seq[v - 1]} triangles; diagonals to {nbrs if nbrs else '-'}")
    return "\n".join(lines)
