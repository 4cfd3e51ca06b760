"""Command-line front end.  Output is newline-delimited JSON; the last record is a summary.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
The environment variable ``REFLGROUPOIDS_MAX_N`` raises or lowers the
enumeration cap (default 14).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Callable, Iterable, Sequence

from . import cluster, etaseq, groupoid, polygon, roots
from .errors import GroupoidError, NonTerminating
from .exact import as_rational, format_scalar

CAP_ENV = "REFLGROUPOIDS_MAX_N"
SYMBOLIC_MAX_N = 9


class UsageError(Exception):
    pass


def enumeration_cap() -> int:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return etaseq.DEFAULT_BOUND
    try:
        cap = int(raw)
    except ValueError:
        raise UsageError(f"{CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 3:
        raise UsageError(f"{CAP_ENV} must be at least 3")
    return cap


def parse_sequence(text: str) -> tuple:
    parts = [p for p in text.replace(" ", "").strip("()[]").split(",") if p]
    if not parts:
        raise UsageError("empty sequence")
    try:
        return tuple(as_rational(p) for p in parts)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse sequence {text!r}: {exc}") from None


def _require_n(n: int, upper: int, what: str = "n") -> None:
    if not 3 <= n <= upper:
        raise UsageError(f"{what} must satisfy 3 <= {what} <= {upper}, got {n}")


def _is_integral_positive(seq: Sequence) -> bool:
    return all(isinstance(c, int) and c > 0 for c in seq)


class Emitter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def __call__(self, record: dict) -> None:
        if self.fmt == "json":
            self.out.write(json.dumps(record, separators=(",", ":")) + "\n")
        else:
            self.out.write("  ".join(f"{k}={_flat(v)}" for k, v in record.items()) + "\n")

    def text(self, s: str) -> None:
        self.out.write(s + "\n")


def _flat(v) -> str:
    if isinstance(v, (list, tuple, dict)):
        return json.dumps(v, separators=(",", ":"))
    return str(v)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def run_enumerate(args, emit: Emitter) -> int:
    cap = enumeration_cap()
    _require_n(args.n, cap)
    seqs = etaseq.enumerate_sequences(args.n, canonical=args.canonical, bound=cap)
    for seq in seqs:
        rec = {"type": "sequence", "n": args.n, "entries": list(seq),
               "triangulation": [list(d) for d in polygon.psi(seq).sorted_diagonals()]}
        if args.with_roots:
            rec["roots"] = [list(r) for r in roots.roots_from_scheme(groupoid.scheme_from_eta(seq), 1)]
        if args.with_end_groups:
            rec["end_group"] = groupoid.end_group(seq).to_dict()
        emit(rec)
    emit({"type": "summary", "n": args.n, "canonical": args.canonical, "count": len(seqs)})
    return 0


def run_triangulations(args, emit: Emitter) -> int:
    cap = enumeration_cap()
    _require_n(args.n, cap)
    if args.dot:
        emit.text(polygon.flip_graph_dot(args.n, bound=cap))
        return 0
    tris = polygon.enumerate_triangulations(args.n, bound=cap)
    for t in tris:
        rec = {"type": "triangulation", **t.to_json(), "eta": list(polygon.psi_inverse(t))}
        emit(rec)
        if args.ascii:
            emit.text(polygon.ascii_incidence(t))
    emit({"type": "summary", "n": args.n, "count": len(tris)})
    return 0


def run_roots(args, emit: Emitter) -> int:
    seq = parse_sequence(args.sequence)
    report = etaseq.validate(seq)
    if not report:
        emit({"type": "error", "reason": report.reason, "detail": report.detail})
        return 1
    scheme = groupoid.scheme_from_eta(seq)
    objects = [args.object] if args.object else range(1, scheme.size + 1)
    for a in objects:
        if not 1 <= a <= scheme.size:
            raise UsageError(f"object must be in 1..{scheme.size}")
        rs = roots.roots_from_scheme(scheme, a)
        emit({"type": "roots", **roots.roots_to_json(a, rs), "valid_F": roots.validate_F(rs).valid})
    emit({"type": "summary", "entries": list(seq), "objects": len(objects)})
    return 0


def _load_scheme(args):
    if args.scheme:
        try:
            with open(args.scheme, encoding="utf-8") as fh:
                return groupoid.scheme_from_json(json.load(fh)), None
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise UsageError(f"cannot read scheme file {args.scheme}: {exc}") from None
    seq = parse_sequence(args.sequence)
    return groupoid.scheme_from_cvalues(seq), seq


def verify_scheme(scheme, seq, all_checks: bool) -> list[dict]:
    """Checks run by ``verify``, as records with a ``pass`` flag."""
    records = []

    def add(name: str, report) -> None:
        records.append({"type": "check", "check": name, "pass": report.valid, **report.to_dict()})

    add("axioms", groupoid.check_axioms(scheme))
    add("finiteness", groupoid.check_finiteness(scheme))
    add("periodicity", groupoid.check_periodicity(scheme))
    add("sigma_factorization", groupoid.check_sigma_factorization(scheme))
    if not all_checks:
        return records
    if not records[1]["pass"]:
        records.append({"type": "check", "check": "closure", "pass": False, "valid": False,
                        "reason": "skipped", "detail": "closure not attempted on a non-finite scheme"})
        return records
    try:
        sizes = [groupoid.hom_sizes(scheme, a) for a in range(1, scheme.size + 1)]
    except NonTerminating as exc:
        records.append({"type": "check", "check": "closure", "pass": False, "valid": False, "reason": exc.code})
        return records
    simply = all(v == 1 for s in sizes for v in s.values())
    rec = {"type": "check", "check": "simply_connected", "pass": simply or not scheme.is_cycle_cover()}
    rec["end_sizes"] = [s[a + 1] for a, s in enumerate(sizes)]
    records.append(rec)
    coherent = all(groupoid.is_sign_coherent(groupoid.real_roots(scheme, a))
                   for a in range(1, scheme.size + 1))
    records.append({"type": "check", "check": "roots_sign_coherent", "pass": coherent})
    if seq is not None and _is_integral_positive(seq) and etaseq.is_valid(seq):
        bad = [a for a in range(1, scheme.size + 1)
               if not roots.validate_F(roots.roots_from_scheme(scheme, a)).valid]
        records.append({"type": "check", "check": "roots_F_sequence", "pass": not bad, "failed_objects": bad})
        try:
            desc = groupoid.end_group(seq)
            records.append({"type": "check", "check": "end_group", "pass": True, **desc.to_dict()})
        except AssertionError as exc:
            records.append({"type": "check", "check": "end_group", "pass": False, "detail": str(exc)})
    return records


def run_verify(args, emit: Emitter) -> int:
    scheme, seq = _load_scheme(args)
    records = verify_scheme(scheme, seq, args.all_checks)
    for rec in records:
        emit(rec)
    ok = all(r["pass"] for r in records)
    summary = {"type": "summary", "objects": scheme.size, "checks": len(records), "pass": ok}
    if seq is not None:
        summary["entries"] = [format_scalar(c) for c in seq]
    emit(summary)
    return 0 if ok else 1


def run_quotients(args, emit: Emitter) -> int:
    seq = parse_sequence(args.sequence)
    report = etaseq.validate(seq)
    if not report:
        emit({"type": "error", "reason": report.reason, "detail": report.detail})
        return 1
    scheme = groupoid.scheme_from_eta(seq)
    desc = groupoid.end_group(seq)
    subgroups = groupoid.all_subgroups(desc.elements)
    if args.maximal:
        subgroups = [s for s in subgroups if s == desc.elements]
    ok = True
    for sub in subgroups:
        q = groupoid.orbit_quotient(scheme, [g.permutation() for g in sorted(sub, key=groupoid._element_key)])
        axioms = groupoid.check_axioms(q)
        finite = groupoid.check_finiteness(q)
        ends = {groupoid.end_size(q, a) for a in range(1, q.size + 1)}
        passed = axioms.valid and finite.valid and ends == {len(sub)}
        ok &= passed
        emit({"type": "quotient", "group": groupoid.classify_group(sub), "order": len(sub),
              "objects": q.size, "end_size": sorted(ends), "axioms": axioms.valid,
              "finiteness": finite.valid, "pass": passed})
        if args.dot:
            emit.text(groupoid.object_change_dot(q))
    emit({"type": "summary", "entries": list(seq), "max_group": desc.name, "subgroups": len(subgroups), "pass": ok})
    return 0 if ok else 1


def _identity_records(n: int) -> Iterable[dict]:
    for rep in (cluster.verify_psi_recurrences(n), cluster.verify_mu_identities(min(n, 6))):
        for c in rep.checks:
            yield {"type": "identity", "report": rep.name, **c}


def run_identities(args, emit: Emitter) -> int:
    _require_n(args.n, SYMBOLIC_MAX_N)
    ok = True
    for rec in _identity_records(args.n):
        ok &= rec["pass"]
        emit(rec)
    emit({"type": "summary", "n": args.n, "pass": ok})
    return 0 if ok else 1


def run_cluster(args, emit: Emitter) -> int:
    _require_n(args.n, SYMBOLIC_MAX_N)
    if args.trials < 0:
        raise UsageError("--trials must be nonnegative")
    if args.bound < 1:
        raise UsageError("--bound must be positive")
    ok = True
    if args.identities:
        for rec in _identity_records(args.n):
            ok &= rec["pass"]
            emit(rec)
    result = cluster.verify_main_theorem(args.n, args.trials, args.seed, bound=args.bound,
                                         converse=not args.no_converse, allow_zero=args.allow_zero)
    for rec in result["records"]:
        emit({"type": "trial", **rec})
    ok &= result["pass"]
    summary = {k: v for k, v in result.items() if k not in ("records", "converse")}
    summary["pass"] = ok
    emit({"type": "summary", **summary})
    return 0 if ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="reflgroupoids", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("json", "table"), default="json")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("enumerate", help="eta-sequences of length n")
    e.add_argument("n", type=int)
    e.add_argument("--canonical", action="store_true", help="one representative per dihedral orbit")
    e.add_argument("--with-roots", action="store_true")
    e.add_argument("--with-end-groups", action="store_true")
    e.add_argument("--json", action="store_true", help="accepted for compatibility; JSON is the default")
    e.set_defaults(func=run_enumerate)

    t = sub.add_parser("triangulations", help="triangulations of the n-gon")
    t.add_argument("n", type=int)
    t.add_argument("--ascii", action="store_true", help="incidence list after each record")
    t.add_argument("--dot", action="store_true", help="print the flip graph in DOT")
    t.set_defaults(func=run_triangulations)

    r = sub.add_parser("roots", help="positive roots of an eta-sequence")
    r.add_argument("--sequence", required=True)
    r.add_argument("--object", type=int)
    r.set_defaults(func=run_roots)

    v = sub.add_parser("verify", help="check a scheme or Cartan-entry sequence")
    src = v.add_mutually_exclusive_group(required=True)
    src.add_argument("--scheme", help="scheme JSON file")
    src.add_argument("--sequence", help="comma-separated entries, rationals allowed")
    v.add_argument("--all-checks", action="store_true")
    v.set_defaults(func=run_verify)

    q = sub.add_parser("quotients", help="quotients by subgroups of the symmetry group")
    q.add_argument("--sequence", required=True)
    q.add_argument("--maximal", action="store_true", help="only the full symmetry group")
    q.add_argument("--dot", action="store_true", help="object change diagram of each quotient")
    q.set_defaults(func=run_quotients)

    c = sub.add_parser("cluster", help="randomised check of the cluster correspondence")
    c.add_argument("n", type=int)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--bound", type=int, default=5, help="numerators and denominators of seed values")
    c.add_argument("--allow-zero", action="store_true", help="seed values may be 0")
    c.add_argument("--identities", action="store_true")
    c.add_argument("--no-converse", action="store_true")
    c.set_defaults(func=run_cluster)

    i = sub.add_parser("identities", help="symbolic polynomial identities")
    i.add_argument("n", type=int)
    i.set_defaults(func=run_identities)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    emit = Emitter(args.format, out)
    handler: Callable = args.func
    try:
        return handler(args, emit)
    except UsageError as exc:
        print(f"reflgroupoids: error: {exc}", file=sys.stderr)
        return 2
    except GroupoidError as exc:
        print(f"reflgroupoids: {exc.code}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
