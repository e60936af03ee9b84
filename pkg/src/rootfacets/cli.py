"""Command-line front end.

    rootfacets roots --system G2
    rootfacets triangulate --system A3 --facet 2
    rootfacets verify --system A3 --suite all --format json

Exit codes: 0 on success, 1 when a verification fails, 2 on usage errors.
Output is deterministic: per-facet work may run in parallel (capped by the
``RPT_THREADS`` environment variable) but results are assembled in facet
order and carry no timings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence

from rootfacets.errors import RootFacetsError
from rootfacets.ideals import extended_diagram, facet_ideal, facet_ideals, order_involution
from rootfacets.rootsys import RootSystem, format_root, root_system

VERBS = ("roots", "facets", "triangulate", "verify", "volume")
SUITES = ("all", "crossing", "triangulation", "order", "lemmas")
FORMATS = ("json", "csv", "text")


class UsageError(Exception):
    pass


def thread_count() -> int:
    raw = os.environ.get("RPT_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"RPT_THREADS must be an integer, got {raw!r}")
    if n < 1:
        raise UsageError("RPT_THREADS must be at least 1")
    return n


def parallel_map(fn: Callable, items: Sequence, threads: int) -> List:
    """``map`` over a process pool when ``threads > 1``; order is preserved."""
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=min(threads, len(items))) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# Per-verb work.  Worker functions take plain tuples so they pickle.
# ---------------------------------------------------------------------------

def roots_report(rs: RootSystem) -> dict:
    rows = [{"root": format_root(r.coeffs), "coeffs": list(r.coeffs), "height": r.height,
             "long": rs.is_long(r)} for r in rs.positive_roots]
    return {"theta": format_root(rs.theta.coeffs), "marks": list(rs.marks),
            "count": len(rows), "roots": rows}


def facets_report(rs: RootSystem) -> dict:
    rows = []
    for I in facet_ideals(rs):
        rows.append({"alpha": I.alpha, "mark": I.mark, "mu": format_root(I.mu.coeffs),
                     "type": str(I.nilradical_type), "size": len(I.members),
                     "members": [format_root(m.coeffs) for m in I.members]})
    return {"facets": rows}


def _triangulate_one(job) -> dict:
    from rootfacets.triangulate.simplices import verify_triangulation
    name, alpha = job
    rs = root_system(name)
    rep = verify_triangulation(rs, facet_ideal(rs, alpha), check_order=False, check_pairs=False)
    out = rep.to_dict()
    for key in ("pairs_checked", "pairs_total", "pairs_failed", "order_cert"):
        out.pop(key)
    out["simplices"] = [[format_root(r.coeffs) for r in s.roots] for s in rep.simplices]
    return out


def _verify_one(job) -> dict:
    from rootfacets.laws import check_crossing_laws, check_ideal_lemmas
    from rootfacets.triangulate.orders import certified_order, verify_order
    from rootfacets.triangulate.simplices import verify_triangulation
    name, alpha, suite, max_pairs = job
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    out: Dict[str, object] = {"alpha": alpha, "type": str(I.nilradical_type)}
    passed = True
    if suite in ("all", "lemmas"):
        lem = check_ideal_lemmas(rs, I.members)
        try:
            order_involution(rs, [alpha])
            inv = {"passed": True}
        except RootFacetsError as exc:
            inv = {"passed": False, "failure": str(exc)}
        out["lemmas"] = lem.to_dict()
        out["involution"] = inv
        passed = passed and lem.passed and inv["passed"]
    if suite in ("all", "crossing"):
        rep = check_crossing_laws(rs, I.ideal)
        out["crossing"] = rep.to_dict()
        passed = passed and rep.passed
    if suite in ("all", "triangulation"):
        tri = verify_triangulation(rs, I, max_pairs=max_pairs, check_order=False)
        out["triangulation"] = tri.to_dict()
        passed = passed and tri.passed
    if suite in ("all", "order"):
        cert = certified_order(rs, I)
        strict = verify_order(rs, I, cert)
        relaxed = verify_order(rs, I, cert, strict=False)
        out["order"] = {"case": cert.case, "length": len(cert.order),
                        "strict": strict.to_dict(), "relaxed": relaxed.to_dict()}
        passed = passed and strict.passed
    out["verdict"] = "pass" if passed else "fail"
    return out


def verify_global(rs: RootSystem, suite: str) -> Optional[dict]:
    """Root-system-wide laws that do not depend on a facet."""
    if suite not in ("all", "lemmas"):
        return None
    from rootfacets.laws import check_cartan_table, check_three_sums
    reps = [check_three_sums(rs), check_cartan_table(rs)]
    return {"laws": [r.to_dict() for r in reps], "verdict": "pass" if all(r.passed for r in reps) else "fail"}


def volume_report(rs: RootSystem) -> dict:
    from rootfacets.weyl import boundary_inventory
    records = boundary_inventory(rs)
    return {"orbits": [r.to_dict() for r in records],
            "boundary_simplices": sum(r.simplex_total for r in records)}


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _rows(verb: str, report: dict) -> List[dict]:
    if verb == "roots":
        return [{"root": r["root"], "height": r["height"], "long": r["long"]} for r in report["roots"]]
    if verb == "facets":
        return [{k: f[k] for k in ("alpha", "mark", "mu", "type", "size")} for f in report["facets"]]
    if verb == "triangulate":
        return [{"alpha": f["alpha"], "type": f["type"], "simplex_count": f["simplex_count"],
                 "oracle_volume": f["oracle_volume"], "verdict": f["verdict"]} for f in report["facets"]]
    if verb == "volume":
        return [{k: o[k] for k in ("alpha", "type", "orbit_size", "simplices_per_facet",
                                   "simplex_total", "gram_det")} for o in report["orbits"]]
    rows = []
    for f in report["facets"]:
        row = {"alpha": f["alpha"], "type": f["type"]}
        for key in ("lemmas", "crossing", "triangulation"):
            if key in f:
                sub = f[key]
                row[key] = sub.get("verdict", "pass" if sub.get("failure_count", 0) == 0 else "fail")
        if "order" in f:
            row["order"] = "pass" if f["order"]["strict"]["passed"] else "fail"
            row["order_relaxed"] = "pass" if f["order"]["relaxed"]["passed"] else "fail"
        row["verdict"] = f["verdict"]
        rows.append(row)
    return rows


def render(verb: str, report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True) + "\n"
    rows = _rows(verb, report)
    if fmt == "csv":
        buf = io.StringIO()
        if rows:
            writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
            writer.writeheader()
            writer.writerows(rows)
        return buf.getvalue()
    lines = [f"{verb} {report['system']}"]
    for row in rows:
        lines.append("  " + "  ".join(f"{k}={v}" for k, v in row.items()))
    if verb == "triangulate":
        for f in report["facets"]:
            lines.append(f"  simplices of F_{f['alpha']}:")
            lines.extend("    {" + ", ".join(s) + "}" for s in f["simplices"])
    if verb == "volume":
        lines.append(f"  boundary simplices: {report['boundary_simplices']}")
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Driver
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rootfacets",
                                     description="Facets of root polytopes and their unimodular triangulations.")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--system", required=True, help="family letter and rank, e.g. E7")
    parser.add_argument("--facet", default="all", help="Bourbaki index of the facet root, or 'all'")
    parser.add_argument("--format", default="text", choices=FORMATS)
    parser.add_argument("--max-pairs", type=int, default=10000,
                        help="cap on common-face pair checks above rank 6")
    parser.add_argument("--suite", default="all", choices=SUITES)
    return parser


def _facet_list(rs: RootSystem, facet: str) -> List[int]:
    available = [i + 1 for i in extended_diagram(rs).facet_roots]
    if facet == "all":
        return available
    try:
        alpha = int(facet)
    except ValueError:
        raise UsageError(f"--facet must be an integer or 'all', got {facet!r}")
    if alpha not in available:
        raise UsageError(f"alpha_{alpha} does not define a facet of {rs.name}; facets: {available}")
    return [alpha]


def run(args: argparse.Namespace) -> tuple:
    """Execute a parsed command; returns ``(exit code, report)``."""
    rs = root_system(args.system)
    if args.max_pairs < 0:
        raise UsageError("--max-pairs must be nonnegative")
    if args.verb in ("roots", "facets", "volume") and args.facet != "all":
        raise UsageError(f"--facet does not apply to {args.verb}")
    if args.verb != "verify" and args.suite != "all":
        raise UsageError("--suite applies only to verify")
    threads = thread_count()
    report: Dict[str, object] = {"command": args.verb, "system": rs.name}
    code = 0
    if args.verb == "roots":
        report.update(roots_report(rs))
    elif args.verb == "facets":
        report.update(facets_report(rs))
    elif args.verb == "volume":
        report.update(volume_report(rs))
    elif args.verb == "triangulate":
        jobs = [(rs.name, a) for a in _facet_list(rs, args.facet)]
        report["facets"] = parallel_map(_triangulate_one, jobs, threads)
        if any(f["verdict"] != "pass" for f in report["facets"]):
            code = 1
    else:
        jobs = [(rs.name, a, args.suite, args.max_pairs) for a in _facet_list(rs, args.facet)]
        report["suite"] = args.suite
        report["facets"] = parallel_map(_verify_one, jobs, threads)
        glob = verify_global(rs, args.suite)
        if glob is not None:
            report["global"] = glob
        ok = all(f["verdict"] == "pass" for f in report["facets"])
        ok = ok and (glob is None or glob["verdict"] == "pass")
        report["verdict"] = "pass" if ok else "fail"
        code = 0 if ok else 1
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        code, report = run(args)
    except (UsageError, ValueError) as exc:
        print(f"rootfacets: error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(render(args.verb, report, args.format))
    return code


if __name__ == "__main__":
    sys.exit(main())
