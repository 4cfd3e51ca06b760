"""Rank-two Cartan schemes over the integers or rationals.

A scheme built from a sequence ``(c1, ..., cn)`` has ``2n`` objects on a
cycle.  Internally objects are ``0..2n-1``; the public API numbers them
``1..2n`` and object ``k`` is called ``a_k``.  Edge ``e`` (0-based) joins
objects ``e`` and ``e + 1``, carries the value ``c[e mod n]`` and has label
2 for even ``e`` and 1 for odd ``e``.  So ``rho_2(a_1) = a_2`` and reading
the values from ``a_1`` along its label-2 edge gives back the sequence.

Quotients keep the same data layout; their object names record which
original objects were identified.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Sequence

from . import etaseq
from .errors import NonTerminating, NotASymmetry
from .etaseq import DihedralElement, SymmetryType
from .exact import IDENTITY, TAU, Mat2, as_rational, eta, format_scalar
from .reports import ValidityReport

DEFAULT_CLOSURE_CAP = 200_000


@dataclass(frozen=True)
class CartanScheme:
    """Objects, the two involutions and one Cartan matrix per object.

    ``n_half`` is the length of the Cartan-entry sequence; on the universal
    cycle it equals half the number of objects, and quotients inherit it.
    """

    n_half: int
    names: tuple
    rho1: tuple
    rho2: tuple
    cartan: tuple

    @property
    def size(self) -> int:
        return len(self.names)

    def rho(self, i: int, a: int) -> int:
        """0-based object ``rho_i(a)``."""
        return (self.rho1 if i == 1 else self.rho2)[a]

    def index_of(self, obj: int) -> int:
        """Translate a 1-based object number to the internal index."""
        if not 1 <= obj <= self.size:
            raise IndexError(f"object {obj} not in 1..{self.size}")
        return obj - 1

    def is_cycle_cover(self) -> bool:
        return self.size == 2 * self.n_half


@dataclass(frozen=True)
class Morphism:
    source: int  # 1-based
    target: int
    matrix: Mat2

    def compose(self, other: "Morphism") -> "Morphism":
        """``self`` after ``other``."""
        if other.target != self.source:
            raise ValueError("morphisms are not composable")
        return Morphism(other.source, self.target, self.matrix @ other.matrix)


@dataclass(frozen=True)
class QuotientSpec:
    generators: tuple


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def scheme_from_cvalues(cvals: Sequence) -> CartanScheme:
    """Lay ``cvals`` around a ``2n``-cycle with period ``n``; no finiteness implied."""
    c = tuple(as_rational(x) for x in cvals)
    n = len(c)
    if n < 1:
        raise ValueError("need at least one Cartan entry")
    size = 2 * n
    rho1, rho2 = [0] * size, [0] * size
    for e in range(size):
        a, b = e, (e + 1) % size
        target = rho2 if e % 2 == 0 else rho1
        target[a], target[b] = b, a
    cartan = []
    for k in range(size):
        # object k meets edges k-1 and k; the even one carries label 2
        label2_edge = k if k % 2 == 0 else k - 1
        label1_edge = k - 1 if k % 2 == 0 else k
        c12 = -c[label1_edge % n]
        c21 = -c[label2_edge % n]
        cartan.append(Mat2(2, c12, c21, 2))
    names = tuple((k + 1,) for k in range(size))
    return CartanScheme(n, names, tuple(rho1), tuple(rho2), tuple(cartan))


def scheme_from_eta(seq: Sequence[int]) -> CartanScheme:
    return scheme_from_cvalues(etaseq.require_valid(seq))


def sigma(scheme: CartanScheme, i: int, a: int) -> Mat2:
    """Matrix of the reflection at 0-based object ``a``: alpha_j -> alpha_j - c_ij alpha_i."""
    C = scheme.cartan[a]
    if i == 1:
        return Mat2(1 - C.a11, -C.a12, 0, 1)
    return Mat2(1, 0, -C.a21, 1 - C.a22)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------

def _is_connected(scheme: CartanScheme) -> bool:
    seen = {0}
    queue = deque([0])
    while queue:
        a = queue.popleft()
        for i in (1, 2):
            b = scheme.rho(i, a)
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return len(seen) == scheme.size


def _is_alternating_cycle(scheme: CartanScheme) -> bool:
    if any(scheme.rho(i, a) == a for i in (1, 2) for a in range(scheme.size)):
        return False
    a, label, visited = 0, 2, []
    for _ in range(scheme.size):
        visited.append(a)
        a = scheme.rho(label, a)
        label = 3 - label
    return a == 0 and len(set(visited)) == scheme.size


def check_axioms(scheme: CartanScheme, require_cycle: bool | None = None) -> ValidityReport:
    """(M1), (C1), (C2), connectivity, and the cycle shape of the object change diagram.

    ``require_cycle`` defaults to whether the scheme has ``2 * n_half`` objects;
    proper quotients are only required to be connected.
    """
    N = scheme.size
    if require_cycle is None:
        require_cycle = scheme.is_cycle_cover()
    for a, C in enumerate(scheme.cartan):
        if C.a11 != 2 or C.a22 != 2:
            return ValidityReport.fail("M1", f"object {a + 1} has diagonal ({C.a11}, {C.a22})")
    for i in (1, 2):
        r = scheme.rho1 if i == 1 else scheme.rho2
        if len(r) != N or any(not 0 <= r[a] < N or r[r[a]] != a for a in range(N)):
            return ValidityReport.fail("C1", f"rho_{i} is not an involution")
    for a, i, j in product(range(N), (1, 2), (1, 2)):
        b = scheme.rho(i, a)
        if scheme.cartan[a][i, j] != scheme.cartan[b][i, j]:
            return ValidityReport.fail(
                "C2", f"c_{i}{j} differs between objects {a + 1} and {b + 1}", witness=(a + 1, i, j))
    if not _is_connected(scheme):
        return ValidityReport.fail("connected", "object change diagram is disconnected")
    if require_cycle and not _is_alternating_cycle(scheme):
        return ValidityReport.fail("cycle", "object change diagram is not a single alternating cycle")
    return ValidityReport.ok()


def alternating_product(scheme: CartanScheme, m: int, a: int, i: int) -> Mat2:
    """``... sigma_i sigma_j sigma_i^a`` with ``m`` factors, starting at 0-based ``a``."""
    M = IDENTITY
    obj, label = a, i
    for _ in range(m):
        M = sigma(scheme, label, obj) @ M
        obj = scheme.rho(label, obj)
        label = 3 - label
    return M


def minus_tau_power(n: int) -> Mat2:
    return -(TAU if n % 2 else IDENTITY)


def check_finiteness(scheme: CartanScheme) -> ValidityReport:
    """``Pi(n; a, i, j) == -tau^n`` for every object and both generator orders."""
    n = scheme.n_half
    target = minus_tau_power(n)
    for a in range(scheme.size):
        for i in (1, 2):
            M = alternating_product(scheme, n, a, i)
            if M != target:
                return ValidityReport.fail(
                    "axiomF", f"Pi({n}; a{a + 1}, {i}, {3 - i}) = {M.formatted()}",
                    witness={"object": a + 1, "i": i, "matrix": M.formatted()})
    return ValidityReport.ok(detail=f"{2 * scheme.size} products checked")


def walk(scheme: CartanScheme, i: int, a: int, length: int) -> tuple:
    """Cartan entries met walking from 0-based ``a``, first along label ``i``.

    Step ``k`` reads ``-c_{ij}`` (odd ``k``) or ``-c_{ji}`` (even ``k``) at the
    current object before crossing its edge.
    """
    j = 3 - i
    out, obj = [], a
    for k in range(length):
        lab, other = (i, j) if k % 2 == 0 else (j, i)
        out.append(as_rational(-scheme.cartan[obj][lab, other]))
        obj = scheme.rho(lab, obj)
    return tuple(out)


def phi(scheme: CartanScheme, i: int, a: int) -> tuple:
    """Length-``n_half`` Cartan-entry sequence starting at object ``a`` (1-based) with label ``i``."""
    return walk(scheme, i, scheme.index_of(a), scheme.n_half)


def check_periodicity(scheme: CartanScheme) -> ValidityReport:
    """Walks of length ``2n`` repeat with period ``n`` from every object and label."""
    n = scheme.n_half
    for a in range(scheme.size):
        for i in (1, 2):
            c = walk(scheme, i, a, 2 * n)
            if c[n:] != c[:n]:
                return ValidityReport.fail("periodicity", f"walk from a{a + 1}, label {i}: {c}")
    return ValidityReport.ok()


def check_sigma_factorization(scheme: CartanScheme) -> ValidityReport:
    """sigma_1^a = eta(-c12) tau and sigma_2^a = tau eta(-c21) at every object."""
    for a, C in enumerate(scheme.cartan):
        if sigma(scheme, 1, a) != eta(-C.a12) @ TAU:
            return ValidityReport.fail("sigma1", f"object {a + 1}")
        if sigma(scheme, 2, a) != TAU @ eta(-C.a21):
            return ValidityReport.fail("sigma2", f"object {a + 1}")
    return ValidityReport.ok()


# ---------------------------------------------------------------------------
# morphism closure
# ---------------------------------------------------------------------------

def _closure(scheme: CartanScheme, a: int, cap: int) -> dict[int, set]:
    # Breadth-first search meets every morphism first through a reduced word.
    # A finite groupoid has none longer than its number of positive roots
    # (n_half), so longer words, or more than ``cap`` morphisms, mean the
    # search would not terminate.  The length bound matters: reduced words
    # alternate in rank two, so entries grow exponentially with depth.
    max_depth = 4 * (scheme.size + scheme.n_half)
    homs: dict[int, set] = {b: set() for b in range(scheme.size)}
    homs[a].add(IDENTITY)
    queue = deque([(a, IDENTITY, 0)])
    total = 1
    while queue:
        b, M, depth = queue.popleft()
        for i in (1, 2):
            b2 = scheme.rho(i, b)
            M2 = M @ sigma(scheme, i, b2)  # sigma_i^{b2} : b2 -> b
            if M2 not in homs[b2]:
                if depth + 1 > max_depth:
                    raise NonTerminating(
                        f"reduced words into a{a + 1} exceed length {max_depth}; groupoid looks infinite")
                homs[b2].add(M2)
                total += 1
                if total > cap:
                    raise NonTerminating(f"more than {cap} morphisms into a{a + 1}; groupoid looks infinite")
                queue.append((b2, M2, depth + 1))
    return homs


def hom_closure(scheme: CartanScheme, a: int, cap: int = DEFAULT_CLOSURE_CAP) -> dict[int, set]:
    """All morphisms into object ``a`` (1-based), keyed by 1-based source object."""
    ai = scheme.index_of(a)
    homs = _closure(scheme, ai, cap)
    return {b + 1: {Morphism(b + 1, a, M) for M in mats} for b, mats in homs.items()}


def hom_sizes(scheme: CartanScheme, a: int, cap: int = DEFAULT_CLOSURE_CAP) -> dict[int, int]:
    return {b + 1: len(m) for b, m in _closure(scheme, scheme.index_of(a), cap).items()}


def end_size(scheme: CartanScheme, a: int, cap: int = DEFAULT_CLOSURE_CAP) -> int:
    ai = scheme.index_of(a)
    return len(_closure(scheme, ai, cap)[ai])


def real_roots(scheme: CartanScheme, a: int, cap: int = DEFAULT_CLOSURE_CAP) -> set[tuple]:
    """Images of the simple roots under every morphism into ``a`` (1-based)."""
    roots = set()
    for mats in _closure(scheme, scheme.index_of(a), cap).values():
        for M in mats:
            roots.add(tuple(as_rational(x) for x in M.column(1)))
            roots.add(tuple(as_rational(x) for x in M.column(2)))
    return roots


def is_sign_coherent(roots: Iterable[tuple]) -> bool:
    return all((x >= 0 and y >= 0) or (x <= 0 and y <= 0) for x, y in roots)


# ---------------------------------------------------------------------------
# symmetries of the cycle
# ---------------------------------------------------------------------------

def in_H(g: DihedralElement) -> bool:
    """Even rotations and the reflections that fix an edge of the 2n-cycle."""
    return (g.rotation % 2 == 1) if g.flip else (g.rotation % 2 == 0)


def preserves_labels(scheme: CartanScheme, g: DihedralElement) -> bool:
    return all(g(scheme.rho(i, x)) == scheme.rho(i, g(x)) for i in (1, 2) for x in range(scheme.size))


def preserves_cartan(scheme: CartanScheme, g: DihedralElement) -> bool:
    return all(scheme.cartan[g(x)] == scheme.cartan[x] for x in range(scheme.size))


def is_symmetry(scheme: CartanScheme, g: DihedralElement) -> bool:
    return preserves_labels(scheme, g) and preserves_cartan(scheme, g)


def brute_force_stabilizer(scheme: CartanScheme) -> list[DihedralElement]:
    """Every element of D_{2n} commuting with both involutions and fixing all Cartan matrices."""
    if not scheme.is_cycle_cover():
        raise ValueError("stabilizers are computed on the universal cycle")
    return [g for g in DihedralElement.all(scheme.size) if is_symmetry(scheme, g)]


def generate(gens: Iterable[DihedralElement], order: int) -> frozenset:
    group = {DihedralElement(0, False, order)}
    gens = list(gens)
    frontier = list(group)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = g.compose(x)
                if y not in group:
                    group.add(y)
                    new.append(y)
        frontier = new
    return frozenset(group)


def all_subgroups(elements: Iterable[DihedralElement]) -> list[frozenset]:
    """Subgroups of a dihedral group; each is generated by at most two elements."""
    elements = sorted(elements, key=_element_key)
    if not elements:
        return []
    order = elements[0].order
    found = set()
    for g in elements:
        for h in elements:
            found.add(generate([g, h], order))
    return sorted(found, key=lambda s: (len(s), sorted(_element_key(x) for x in s)))


def _element_key(g: DihedralElement) -> tuple:
    return (g.flip, g.rotation)


def classify_group(elements: Iterable[DihedralElement]) -> str:
    """Abstract isomorphism type of a small subgroup of a dihedral group."""
    els = list(elements)
    k = len(els)
    if k == 1:
        return "1"
    if any(g.element_order() == k for g in els):
        return f"Z{k}"
    abelian = all(g.compose(h) == h.compose(g) for g in els for h in els)
    if abelian and k == 4:
        return "Z2xZ2"
    if not abelian and k == 6:
        return "Z3:Z2"
    if not abelian and k % 2 == 0:
        return f"D{k // 2}"
    return f"order{k}"  # pragma: no cover - not a subgroup of a dihedral group


# Rows: type, columns: r = 1, 2, 3.
MAX_END_TABLE = {
    "even": {SymmetryType.TYPE1: ("Z2xZ2", "D4", "D6"), SymmetryType.TYPE2: ("Z2", "Z4", "Z6")},
    "odd": {SymmetryType.TYPE1: ("Z2", "Z2xZ2", "Z3:Z2"), SymmetryType.TYPE2: ("1", "Z2", "Z3")},
}


@dataclass(frozen=True)
class GroupDescriptor:
    name: str
    order: int
    generators: tuple
    elements: frozenset
    r: int
    m: int
    symmetry_type: SymmetryType

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "r": self.r,
            "m": self.m,
            "symmetry_type": self.symmetry_type.value,
            "generators": [g.to_dict() for g in self.generators],
        }


def table_prediction(seq: Sequence[int]) -> GroupDescriptor:
    """Maximal endomorphism group read off from period, block length and symmetry type."""
    seq = etaseq.require_valid(seq)
    n = len(seq)
    d, r = etaseq.period(seq)
    m = len(d)
    stype = etaseq.symmetry_type(seq)
    name = MAX_END_TABLE["even" if m % 2 == 0 else "odd"][stype][r - 1]
    size = 2 * n
    rotations = 2 * r if m % 2 == 0 else r
    gens = []
    if rotations > 1:
        gens.append(DihedralElement(size // rotations, False, size))
    if stype is SymmetryType.TYPE1:
        k = etaseq.type1_witness(seq)
        gens.append(DihedralElement(2 * k - 1, True, size))
    elements = generate(gens, size)
    return GroupDescriptor(name, len(elements), tuple(gens), elements, r, m, stype)


def end_group(seq: Sequence[int]) -> GroupDescriptor:
    """Table prediction, cross-checked against the brute-force stabilizer inside H."""
    pred = table_prediction(seq)
    scheme = scheme_from_eta(seq)
    stab = brute_force_stabilizer(scheme)
    if not all(in_H(g) for g in stab):
        raise AssertionError(f"{seq}: a label-preserving symmetry lies outside H")
    if frozenset(stab) != pred.elements or classify_group(stab) != pred.name:
        raise AssertionError(
            f"{seq}: table predicts {pred.name} of order {pred.order}, brute force finds "
            f"{classify_group(stab)} of order {len(stab)}")
    return pred


# ---------------------------------------------------------------------------
# quotients
# ---------------------------------------------------------------------------

def orbit_quotient(scheme: CartanScheme, permutations: Iterable[Sequence[int]]) -> CartanScheme:
    """Identify objects along the orbits of a group of object permutations (0-based)."""
    perms = [tuple(p) for p in permutations]
    N = scheme.size
    parent = list(range(N))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        if sorted(p) != list(range(N)):
            raise ValueError("not a permutation of the objects")
        for x in range(N):
            ra, rb = find(x), find(p[x])
            if ra != rb:
                parent[ra] = rb
    groups: dict[int, list[int]] = {}
    for x in range(N):
        groups.setdefault(find(x), []).append(x)
    orbits = sorted(groups.values(), key=lambda o: tuple(sorted(v for x in o for v in scheme.names[x])))
    where = {x: k for k, o in enumerate(orbits) for x in o}

    names, cartan, rho1, rho2 = [], [], [], []
    for o in orbits:
        rep = o[0]
        for x in o:
            if scheme.cartan[x] != scheme.cartan[rep]:
                raise NotASymmetry(f"objects {rep + 1} and {x + 1} have different Cartan matrices")
            for i in (1, 2):
                if where[scheme.rho(i, x)] != where[scheme.rho(i, rep)]:
                    raise NotASymmetry("identification does not commute with the involutions")
        names.append(tuple(sorted(v for x in o for v in scheme.names[x])))
        cartan.append(scheme.cartan[rep])
        rho1.append(where[scheme.rho(1, rep)])
        rho2.append(where[scheme.rho(2, rep)])
    return CartanScheme(scheme.n_half, tuple(names), tuple(rho1), tuple(rho2), tuple(cartan))


def quotient(scheme: CartanScheme, group_spec: QuotientSpec) -> CartanScheme:
    """Quotient of a universal cycle by the subgroup generated in ``group_spec``."""
    if not scheme.is_cycle_cover():
        raise ValueError("quotient() acts on the universal cycle; use orbit_quotient for iterated quotients")
    group = generate(group_spec.generators, scheme.size)
    for g in group:
        if g.order != scheme.size:
            raise NotASymmetry("generator acts on the wrong number of objects")
        if not in_H(g):
            raise NotASymmetry(f"{g} is not in H")
        if not is_symmetry(scheme, g):
            raise NotASymmetry(f"{g} moves the Cartan labeling")
    return orbit_quotient(scheme, [g.permutation() for g in group])


def induced_permutation(q: CartanScheme, g: DihedralElement) -> tuple[int, ...]:
    """Action of a cycle symmetry on a quotient's objects (named by original objects)."""
    lookup = {frozenset(name): k for k, name in enumerate(q.names)}
    out = []
    for name in q.names:
        image = frozenset(g(v - 1) + 1 for v in name)
        if image not in lookup:
            raise NotASymmetry(f"{g} does not descend to the quotient")
        out.append(lookup[image])
    return tuple(out)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def scheme_to_json(scheme: CartanScheme) -> dict:
    return {
        "n": scheme.n_half,
        "objects": scheme.size,
        "names": [list(nm) for nm in scheme.names],
        "cartan": [
            {"object": k + 1, "c12": format_scalar(C.a12), "c21": format_scalar(C.a21)}
            for k, C in enumerate(scheme.cartan)
        ],
        "rho": {"1": [b + 1 for b in scheme.rho1], "2": [b + 1 for b in scheme.rho2]},
    }


def scheme_from_json(obj: dict) -> CartanScheme:
    """Inverse of :func:`scheme_to_json`; the diagonal entries are taken to be 2."""
    size = int(obj["objects"])
    entries = sorted(obj["cartan"], key=lambda e: int(e["object"]))
    if len(entries) != size:
        raise ValueError("cartan list does not cover every object")
    cartan = tuple(Mat2(as_rational(e.get("c11", 2)), as_rational(e["c12"]),
                        as_rational(e["c21"]), as_rational(e.get("c22", 2))) for e in entries)
    rho1 = tuple(int(b) - 1 for b in obj["rho"]["1"])
    rho2 = tuple(int(b) - 1 for b in obj["rho"]["2"])
    names = tuple(tuple(nm) for nm in obj.get("names", [[k + 1] for k in range(size)]))
    return CartanScheme(int(obj["n"]), names, rho1, rho2, cartan)


def morphism_to_json(m: Morphism) -> dict:
    return {"source": m.source, "target": m.target, "matrix": m.matrix.formatted()}


def object_change_dot(scheme: CartanScheme) -> str:
    lines = ["graph object_change {"]
    for k, nm in enumerate(scheme.names):
        lines.append(f'  a{k + 1} [label="{",".join(map(str, nm))}"];')
    seen = set()
    for a in range(scheme.size):
        for i in (1, 2):
            b = scheme.rho(i, a)
            key = (min(a, b), max(a, b), i)
            if key not in seen:
                seen.add(key)
                lines.append(f'  a{key[0] + 1} -- a{key[1] + 1} [label="{i}"];')
    lines.append("}")
    return "\n".join(lines)

