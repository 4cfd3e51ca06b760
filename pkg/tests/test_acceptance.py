"""Acceptance criteria, one test each.  Every test prints a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) or through pytest.
"""

import sys
import time
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import pytest

from reflgroupoids import cluster as K
from reflgroupoids import etaseq as E
from reflgroupoids import groupoid as G
from reflgroupoids import polygon as P
from reflgroupoids import roots as R

B2 = ((0, 1), (1, 2), (1, 1), (1, 0))
C2 = ((0, 1), (1, 1), (2, 1), (1, 0))
PENTAGON_SETS = [
    ((0, 1), (1, 3), (1, 2), (1, 1), (1, 0)),
    ((0, 1), (1, 1), (2, 1), (3, 1), (1, 0)),
    ((0, 1), (1, 2), (2, 3), (1, 1), (1, 0)),
    ((0, 1), (1, 2), (1, 1), (2, 1), (1, 0)),
    ((0, 1), (1, 1), (3, 2), (2, 1), (1, 0)),
]


@lru_cache(maxsize=None)
def polygon_count(n):
    """Triangulations of an n-gon: fix the edge (1, n) and choose the apex of its triangle."""
    if n == 2:
        return 1
    return sum(polygon_count(k) * polygon_count(n - k + 1) for k in range(2, n))


@pytest.fixture
def report(capsys):
    def emit(number, title, passed, elapsed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {number}: {title} ({elapsed:.1f}s)"
        if detail:
            line += f"  {detail}"
        with capsys.disabled():
            print("\n" + line)
    return emit


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def sequences_up_to(n_max):
    return [s for n in range(3, n_max + 1) for s in E.enumerate_sequences(n)]


def test_criterion_1_classification_counts(report):
    problems = []
    with Timer() as t:
        for n in range(3, 11):
            raw = E.enumerate_sequences(n)
            if len(raw) != polygon_count(n):
                problems.append(f"n={n}: {len(raw)} sequences vs {polygon_count(n)} triangulations")
            tris = P.enumerate_triangulations(n)
            if sorted(P.psi_inverse(tr) for tr in tris) != raw:
                problems.append(f"n={n}: psi_inverse image differs from the sequence list")
            canon_tri = {P.canonical_triangulation(tr) for tr in tris}
            canon_seq = E.enumerate_sequences(n, canonical=True)
            if sorted(P.psi_inverse(c) for c in canon_tri) != canon_seq:
                problems.append(f"n={n}: canonical counts {len(canon_tri)} vs {len(canon_seq)}")
        assert [polygon_count(n) for n in (3, 4, 5)] == [1, 2, 5]
    ok = not problems and t.elapsed < 60
    report(1, "raw counts = triangulation counts, canonical counts agree (n=3..10)", ok, t.elapsed,
           "; ".join(problems))
    assert ok, problems


def test_criterion_2_worked_example_root_sets(report):
    with Timer() as t:
        a2 = R.root_sets(G.scheme_from_eta((1, 1, 1)))
        ok_a2 = all(rs == ((0, 1), (1, 1), (1, 0)) for rs in a2)
        # the two length-4 sequences differ by swapping the generator labels
        n4 = Counter(rs for seq in E.enumerate_sequences(4) for rs in R.root_sets(G.scheme_from_eta(seq)))
        ok_n4 = set(n4) == {B2, C2}
        n5 = Counter(R.root_sets(G.scheme_from_eta((3, 1, 2, 2, 1))))
        ok_n5 = n5 == Counter({s: 2 for s in PENTAGON_SETS})
    ok = ok_a2 and ok_n4 and ok_n5
    report(2, "root sets of the worked examples", ok, t.elapsed, f"n=4 sets {sorted(n4)}; n=5 multiset ok={ok_n5}")
    assert ok


def check_scheme_fully(s):
    """The axiom suite; returns the failing check name or None."""
    if not G.check_axioms(s).valid:
        return "axioms"
    if not G.check_periodicity(s).valid:
        return "periodicity"
    if not G.check_finiteness(s).valid:
        return "finiteness"
    return None


def test_criterion_3_axiom_suite(report):
    failures = []
    with Timer() as t:
        for seq in sequences_up_to(10):
            s = G.scheme_from_eta(seq)
            bad = check_scheme_fully(s)
            if bad:
                failures.append((seq, bad))
                continue
            for a in range(1, s.size + 1):
                if set(G.hom_sizes(s, a).values()) != {1}:
                    failures.append((seq, f"hom sizes at a{a}"))
                    break
    ok = not failures and t.elapsed < 120
    report(3, "M1, C1, C2, periodicity, finiteness, |Hom(b,a)| = 1 for n <= 10", ok, t.elapsed,
           f"{len(failures)} failures {failures[:3]}")
    assert ok


def test_criterion_4_root_properties(report):
    failures = []
    with Timer() as t:
        for seq in sequences_up_to(10):
            s = G.scheme_from_eta(seq)
            for a in range(1, s.size + 1):
                rs = R.roots_from_scheme(s, a)
                ascending = all(R.leq_Q(u, w) and u != w for u, w in zip(rs, rs[1:]))
                fine = (ascending and rs[0] == (0, 1) and rs[-1] == (1, 0)
                        and all(u[1] * w[0] - u[0] * w[1] == 1 for u, w in zip(rs, rs[1:]))
                        and R.validate_F(rs).valid)
                if fine:
                    for v in rs:
                        if v in ((0, 1), (1, 0)):
                            continue
                        u, w = R.sum_of_two(rs, v)
                        fine &= (u in rs and w in rs and (u[0] + w[0], u[1] + w[1]) == v)
                if not fine:
                    failures.append((seq, a))
    ok = not failures
    report(4, "root order, endpoints, unimodularity, F-sequence, sums of two (n <= 10)", ok, t.elapsed,
           f"{len(failures)} failures {failures[:3]}")
    assert ok


def test_criterion_5_quotient_table(report):
    failures = []
    quotients = 0
    with Timer() as t:
        for seq in sequences_up_to(10):
            s = G.scheme_from_eta(seq)
            try:
                desc = G.end_group(seq)
            except AssertionError as exc:
                failures.append((seq, str(exc)))
                continue
            stab = G.brute_force_stabilizer(s)
            if len(stab) != desc.order or G.classify_group(stab) != desc.name:
                failures.append((seq, "stabilizer"))
            for sub in G.all_subgroups(desc.elements):
                q = G.orbit_quotient(s, [g.permutation() for g in sub])
                quotients += 1
                bad = check_scheme_fully(q)
                if bad:
                    failures.append((seq, len(sub), bad))
                    continue
                for a in range(1, q.size + 1):
                    sizes = G.hom_sizes(q, a)
                    if set(sizes.values()) != {len(sub)}:
                        failures.append((seq, len(sub), f"|Hom| at a{a} = {sorted(set(sizes.values()))}"))
                        break
        full = G.quotient(G.scheme_from_eta((1, 1, 1)), G.QuotientSpec(G.end_group((1, 1, 1)).generators))
        a2_ok = full.size == 1 and G.end_size(full, 1) == 6
    ok = not failures and a2_ok
    report(5, "stabilizer = table prediction, all quotients pass with |End| = |U| (n <= 10)", ok, t.elapsed,
           f"{quotients} quotients, {len(failures)} failures {failures[:3]}; (1,1,1) full quotient ok={a2_ok}")
    assert ok


def test_criterion_6_symbolic_identities(report):
    results = {}
    with Timer() as t:
        results["equ1"] = K.check_equ1()
        for n in range(3, 7):
            results[f"equ2 n={n}"] = K.check_equ2(n)
        for n in range(3, 9):
            results[f"psi n={n}"] = K.verify_psi_recurrences(n).passed
    failed = [k for k, v in results.items() if not v]
    ok = not failed and t.elapsed < 120
    report(6, "equ1, equ2 (n=3..6), psi recurrences and generators (n <= 8)", ok, t.elapsed,
           f"failed: {failed}" if failed else "")
    assert ok


def test_criterion_7_main_theorem(report):
    summary = []
    ok = True
    with Timer() as t:
        for n in range(4, 10):
            r = K.verify_main_theorem(n, 100, rng_seed=1000 + n)
            ok &= r["pass"] and r["passed"] + r["skipped"] == 100
            summary.append(f"n={n}: {r['passed']} pass/{r['skipped']} skip/{r['converse_checked']} converse")
        r3 = K.verify_main_theorem(3, 0, 0)
        ok &= r3["pass"] and r3["converse_checked"] == 1
    ok &= t.elapsed < 300
    report(7, "randomised cluster correspondence n=4..9 and converse n <= 9", ok, t.elapsed, "; ".join(summary))
    assert ok


def test_criterion_8_z_matrix(report):
    failures = []
    with Timer() as t:
        cases = sequences_up_to(8) + [(4, Fraction(1, 2), 4, Fraction(1, 2))]
        for c in cases:
            if not K.check_z_matrix(K.z_matrix(c), c).valid:
                failures.append(c)
    ok = not failures
    report(8, "z-matrix minor conditions for n <= 8 and (4,1/2,4,1/2)", ok, t.elapsed,
           f"{len(cases)} cases, failures {failures[:3]}")
    assert ok


def test_criterion_9_periodicity(report):
    bad = []
    with Timer() as t:
        for n in range(3, 13):
            for seq in E.enumerate_sequences(n):
                if E.period(seq)[1] not in (1, 2, 3):
                    bad.append(seq)
        example = E.period((3, 1, 3, 1, 3, 1))[1]
    ok = not bad and example == 3
    report(9, "period r in {1,2,3} for n <= 12; (3,1,3,1,3,1) has r = 3", ok, t.elapsed,
           f"{len(bad)} violations")
    assert ok


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
