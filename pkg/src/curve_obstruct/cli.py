"""Obstruction pipeline driver: parse documents, run checks, emit reports.

Reports are deterministic: the same input bytes always produce the same
canonical (structured) output bytes.  Exit codes: 0 when nothing
obstructs, 1 when at least one input is obstructed, 2 on usage or parse
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from . import curve_model, hurwitz, invariants, lattice, realize_ff
from .curve_model import (
    CombinatorialCurve,
    Document,
    DocumentError,
    LineArrangement,
    document_echo,
    parse_document,
)
from .invariants import AbelianGroupSpec
from .lattice import INAPPLICABLE, OBSTRUCTED, PASS, LatticeClass

DEFAULT_PRIMES: tuple[int, ...] = (2, 3, 5, 7, 11, 13)
DEFAULT_MAX_BRANCH_SUBSET = 8

CAVEAT_NECESSARY = "necessary, not sufficient"

CURVE_CHECKS = (
    "adjunction_check",
    "max_singular_points",
    "complement_h1",
    "rational_cuspidal_check",
    "fdblmhn_family",
    "best_pivot_obstruction",
)
ARRANGEMENT_CHECKS = (
    "pair_count_check",
    "weak_profile",
    "arrangement_euler",
    "realizable_primes",
    "branched_cover_b2_obstruction",
    "kervaire_milnor_check",
)
ALL_CHECKS = CURVE_CHECKS + ARRANGEMENT_CHECKS


@dataclass(frozen=True)
class CheckRecord:
    name: str
    verdict: str
    certificate: dict
    caveat: str = ""


@dataclass(frozen=True)
class ObstructionReport:
    kind: str
    document: dict
    checks: tuple[CheckRecord, ...]

    @property
    def summary(self) -> str:
        return OBSTRUCTED if any(c.verdict == OBSTRUCTED for c in self.checks) else PASS


@dataclass(frozen=True)
class BatchResult:
    path: str
    report: Optional[ObstructionReport] = None
    error: Optional[str] = None


# ---------------------------------------------------------------------------
# Certificate serialisation helpers
# ---------------------------------------------------------------------------


def _group_cert(spec: AbelianGroupSpec) -> dict:
    return {"free_rank": spec.free_rank, "torsion": list(spec.torsion), "text": str(spec)}


def _class_cert(cls: LatticeClass) -> dict:
    return {"h": cls.d, "e": list(cls.m), "text": str(cls)}


def _branched_cover_cert(report: lattice.BranchedCoverReport) -> dict:
    cert: dict = {
        "branch_lines": list(report.branch_lines),
        "point_count": report.point_count,
        "reason": report.reason,
    }
    if report.branch_class is not None:
        cert["branch_class"] = _class_cert(report.branch_class)
    if report.inclusion_matrix is not None:
        cert["inclusion_matrix"] = [list(row) for row in report.inclusion_matrix]
    if report.h1_branch_complement is not None:
        cert["h1_branch_complement"] = _group_cert(report.h1_branch_complement)
    if report.chi_cover is not None:
        cert.update(
            chi_blowup=report.chi_blowup,
            chi_branch=report.chi_branch,
            chi_cover=report.chi_cover,
            b2_cover=report.b2_cover,
            negative_lift_count=report.negative_lift_count,
            transverse_lift_square=report.transverse_lift_square,
            lift_table=[
                {
                    "line": row.line,
                    "class": str(row.transform),
                    "square": row.square,
                    "relation": row.relation,
                    "lift_count": row.lift_count,
                    "lift_square": row.lift_square,
                }
                for row in report.lift_table
            ],
        )
    return cert


def _projection_cert(result: hurwitz.ProjectionResult) -> dict:
    cert = result.certificate
    return {
        "pivot_index": cert.pivot_index,
        "pivot": cert.pivot,
        "cover_degree": cert.cover_degree,
        "slack": cert.slack,
        "pivot_bound": cert.pivot_bound,
        "pivot_bound_heuristic": cert.pivot_bound_heuristic,
        "other_bounds": [
            {"cusp": o.cusp, "bound": o.bound, "within_cover_degree": o.within_cover_degree}
            for o in cert.other_bounds
        ],
        "total": cert.total,
        "total_heuristic": cert.total_heuristic,
        "obstructed": result.obstructed,
        "note": cert.note,
    }


# ---------------------------------------------------------------------------
# Curve pipeline
# ---------------------------------------------------------------------------


def _curve_checks(curve: CombinatorialCurve, selected: frozenset[str]) -> list[CheckRecord]:
    records: list[CheckRecord] = []
    d = curve.total_degree
    c = curve.component_count
    singularities = tuple(sorted(curve.singularities))

    if "adjunction_check" in selected:
        verdict = invariants.adjunction_check(curve)
        cert = {
            "degree": d,
            "components": c,
            "total_chi_g": verdict.total_chi_g,
            "contribution_sum": sum(s.adjunction_contribution for s in singularities),
            "reason": verdict.reason,
        }
        if c == 1 and verdict.feasible:
            cert["forced_genus"] = (2 - verdict.total_chi_g) // 2
        records.append(
            CheckRecord(
                "adjunction_check",
                PASS if verdict.feasible else OBSTRUCTED,
                cert,
                CAVEAT_NECESSARY if verdict.feasible else "",
            )
        )

    if "max_singular_points" in selected:
        bound = invariants.max_singular_points(d)
        count = len(singularities)
        records.append(
            CheckRecord(
                "max_singular_points",
                PASS if count <= bound else OBSTRUCTED,
                {"singular_points": count, "bound": bound},
                CAVEAT_NECESSARY if count <= bound else "",
            )
        )

    if "complement_h1" in selected:
        group = invariants.complement_h1(curve)
        records.append(CheckRecord("complement_h1", PASS, _group_cert(group)))

    cuspidal = c == 1 and all(s.branch_count == 1 for s in singularities)
    genus_check = (
        invariants.rational_cuspidal_check(d, singularities) if cuspidal else None
    )
    rational = genus_check is not None and genus_check.passed

    if "rational_cuspidal_check" in selected:
        if not cuspidal:
            reason = (
                "reducible curve" if c > 1 else "singularities with several branches present"
            )
            records.append(
                CheckRecord("rational_cuspidal_check", INAPPLICABLE, {"reason": reason})
            )
        else:
            cert = {"link_genus_sum": genus_check.genus_sum, "expected": genus_check.expected}
            if rational:
                records.append(
                    CheckRecord("rational_cuspidal_check", PASS, cert, CAVEAT_NECESSARY)
                )
            else:
                cert["reason"] = "total link genus differs from the degree-genus bound; not a rational cuspidal type"
                records.append(CheckRecord("rational_cuspidal_check", INAPPLICABLE, cert))

    if "fdblmhn_family" in selected:
        if rational and len(singularities) == 1:
            s = singularities[0]
            family = invariants.fdblmhn_family(s.a, s.b, d)
            cert = {"a": s.a, "b": s.b, "degree": d}
            if family is None:
                cert["family"] = None
                cert["reason"] = "outside every classified unicuspidal family"
                records.append(CheckRecord("fdblmhn_family", OBSTRUCTED, cert))
            else:
                cert["family"] = family.tag
                if family.parameter is not None:
                    cert["parameter"] = family.parameter
                records.append(CheckRecord("fdblmhn_family", PASS, cert))
        else:
            reason = (
                "requires a rational cuspidal type with exactly one cusp"
                if not rational or len(singularities) != 1
                else "not applicable"
            )
            records.append(CheckRecord("fdblmhn_family", INAPPLICABLE, {"reason": reason}))

    if "best_pivot_obstruction" in selected:
        if rational and singularities:
            result = hurwitz.best_pivot_obstruction(d, singularities)
            cert = {"pivots": [_projection_cert(r) for r in result.results]}
            records.append(
                CheckRecord(
                    "best_pivot_obstruction",
                    OBSTRUCTED if result.obstructed else PASS,
                    cert,
                    "" if result.obstructed else CAVEAT_NECESSARY,
                )
            )
        else:
            reason = "no cusps to project from" if rational else "requires a rational cuspidal type"
            records.append(CheckRecord("best_pivot_obstruction", INAPPLICABLE, {"reason": reason}))

    return records


# ---------------------------------------------------------------------------
# Arrangement pipeline
# ---------------------------------------------------------------------------


def _even_branch_subsets(
    arr: LineArrangement, cap: int
) -> tuple[list[tuple[int, ...]], int]:
    transforms = lattice.line_transform_classes(arr)
    subsets = []
    limit = min(cap, arr.line_count)
    examined = 0
    for size in range(1, limit + 1):
        for combo in combinations(range(1, arr.line_count + 1), size):
            examined += 1
            total = lattice.tube_classes([transforms[i] for i in combo])
            if lattice.divisible_by_two(total):
                subsets.append(combo)
    return subsets, examined


def _arrangement_checks(
    arr: LineArrangement,
    selected: frozenset[str],
    primes: Sequence[int],
    max_branch_subset: int,
) -> list[CheckRecord]:
    records: list[CheckRecord] = []

    if "pair_count_check" in selected:
        check = curve_model.pair_count_check(arr)
        records.append(
            CheckRecord(
                "pair_count_check",
                PASS if check.passed else OBSTRUCTED,
                {"pair_sum": check.pair_sum, "expected": check.expected},
                CAVEAT_NECESSARY if check.passed else "",
            )
        )

    if "weak_profile" in selected:
        profile = curve_model.weak_profile(arr)
        records.append(
            CheckRecord(
                "weak_profile",
                PASS,
                {"t": {str(m): t for m, t in profile.counts}},
            )
        )

    if "arrangement_euler" in selected:
        euler = curve_model.arrangement_euler(arr)
        records.append(
            CheckRecord(
                "arrangement_euler",
                PASS,
                {"euler": euler, "complement_euler": 3 - euler},
            )
        )

    if "realizable_primes" in selected:
        usable = [p for p in primes if p * p + p + 1 >= arr.line_count]
        skipped = [p for p in primes if p not in usable]
        witnesses = realize_ff.realizable_primes(arr, usable)
        realizable = sorted(witnesses)
        odd_realizable = [p for p in realizable if p != 2]
        cert = {
            "primes": list(usable),
            "skipped_too_small": skipped,
            "realizable": realizable,
            "witnesses": {
                str(p): [list(line) for line in witnesses[p]] if p in witnesses else None
                for p in usable
            },
            "note": "search is exhaustive per prime field; realisability over a prime "
            "field is compared against the characteristic-zero question only "
            "through the listed primes",
        }
        records.append(
            CheckRecord(
                "realizable_primes",
                OBSTRUCTED if not odd_realizable else PASS,
                cert,
                "" if not odd_realizable else CAVEAT_NECESSARY,
            )
        )

    if "branched_cover_b2_obstruction" in selected:
        subsets, examined = _even_branch_subsets(arr, max_branch_subset)
        cert: dict = {
            "max_branch_subset": max_branch_subset,
            "subsets_examined": examined,
            "divisible_subsets": [list(s) for s in subsets],
        }
        if not subsets:
            cert["reason"] = "no branch subset within the size cap has class divisible by 2"
            records.append(CheckRecord("branched_cover_b2_obstruction", INAPPLICABLE, cert))
        else:
            runs = [lattice.branched_cover_b2_obstruction(arr, s) for s in subsets]
            cert["runs"] = [
                {"branch_lines": list(r.branch_lines), "verdict": r.verdict}
                for r in runs
            ]
            obstructing = [r for r in runs if r.verdict == OBSTRUCTED]
            applicable = [r for r in runs if r.verdict != INAPPLICABLE]
            if obstructing:
                cert["obstruction"] = _branched_cover_cert(obstructing[0])
                records.append(CheckRecord("branched_cover_b2_obstruction", OBSTRUCTED, cert))
            elif applicable:
                records.append(
                    CheckRecord(
                        "branched_cover_b2_obstruction", PASS, cert, CAVEAT_NECESSARY
                    )
                )
            else:
                cert["reason"] = "every divisible branch subset fails the finite cyclic homology hypothesis"
                records.append(CheckRecord("branched_cover_b2_obstruction", INAPPLICABLE, cert))

    if "kervaire_milnor_check" in selected:
        transforms = lattice.line_transform_classes(arr)
        tubed = lattice.tube_classes([transforms[i] for i in range(1, arr.line_count + 1)])
        result = lattice.kervaire_milnor_check(tubed)
        cert = {
            "tubed_class": _class_cert(tubed),
            "square": result.square,
            "signature": result.signature,
            "square_mod_16": result.square_mod_16,
            "signature_mod_16": result.signature_mod_16,
        }
        if result.verdict == INAPPLICABLE:
            cert["reason"] = "tubed class is not characteristic (some coordinate is even)"
        records.append(
            CheckRecord(
                "kervaire_milnor_check",
                result.verdict,
                cert,
                CAVEAT_NECESSARY if result.verdict == PASS else "",
            )
        )

    return records


# ---------------------------------------------------------------------------
# Pipeline entry points
# ---------------------------------------------------------------------------


def run_pipeline(
    doc: Document,
    *,
    primes: Sequence[int] = DEFAULT_PRIMES,
    max_branch_subset: int = DEFAULT_MAX_BRANCH_SUBSET,
    checks: Optional[Iterable[str]] = None,
) -> ObstructionReport:
    """Run every applicable check on one parsed document."""
    if checks is None:
        selected = frozenset(ALL_CHECKS)
    else:
        selected = frozenset(checks)
        unknown = selected - set(ALL_CHECKS)
        if unknown:
            raise ValueError(f"unknown checks: {', '.join(sorted(unknown))}")
    if isinstance(doc, CombinatorialCurve):
        records = _curve_checks(doc, selected)
        kind = "curve"
    elif isinstance(doc, LineArrangement):
        records = _arrangement_checks(doc, selected, primes, max_branch_subset)
        kind = "arrangement"
    else:
        raise TypeError(f"unsupported document type {type(doc)!r}")
    return ObstructionReport(kind, document_echo(doc), tuple(records))


def batch(
    paths: Sequence[str],
    parallelism: int = 1,
    *,
    primes: Sequence[int] = DEFAULT_PRIMES,
    max_branch_subset: int = DEFAULT_MAX_BRANCH_SUBSET,
    checks: Optional[Iterable[str]] = None,
) -> list[BatchResult]:
    """Run the pipeline over many files; results keep input order.

    Per-file failures (unreadable or unparseable documents) become error
    records and never abort the batch.
    """

    def run_one(path: str) -> BatchResult:
        try:
            with open(path, "r", encoding="utf-8") as handle:
                text = handle.read()
        except OSError as exc:
            return BatchResult(path, error=f"cannot read {path}: {exc}")
        try:
            doc = parse_document(text)
        except DocumentError as exc:
            return BatchResult(path, error=f"{path}: {exc}")
        report = run_pipeline(
            doc, primes=primes, max_branch_subset=max_branch_subset, checks=checks
        )
        return BatchResult(path, report=report)

    if parallelism <= 1 or len(paths) <= 1:
        return [run_one(path) for path in paths]
    with ThreadPoolExecutor(max_workers=parallelism) as pool:
        return list(pool.map(run_one, paths))


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------


def report_payload(report: ObstructionReport) -> dict:
    return {
        "kind": report.kind,
        "document": report.document,
        "checks": [
            {
                "name": record.name,
                "verdict": record.verdict,
                "certificate": record.certificate,
                "caveat": record.caveat,
            }
            for record in report.checks
        ],
        "summary": report.summary,
    }


def canonical_json(report: ObstructionReport) -> str:
    return json.dumps(report_payload(report), sort_keys=True, indent=2)


def render_text(result: BatchResult) -> str:
    lines = [f"== {result.path}"]
    if result.error is not None:
        lines.append(f"  error: {result.error}")
        return "\n".join(lines)
    report = result.report
    assert report is not None
    lines.append(f"  kind: {report.kind}")
    for record in report.checks:
        lines.append(f"  {record.name:<32} {record.verdict}")
        if record.caveat:
            lines.append(f"      caveat: {record.caveat}")
        blob = json.dumps(record.certificate, sort_keys=True)
        if len(blob) > 100:
            blob = blob[:97] + "..."
        lines.append(f"      certificate: {blob}")
    lines.append(f"  summary: {report.summary}")
    return "\n".join(lines)


def _parse_int_list(raw: str) -> Optional[list[int]]:
    try:
        return [int(token) for token in raw.replace(",", " ").split()]
    except ValueError:
        return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curve-obstruct",
        description="Run non-existence obstructions on combinatorial curve types and line arrangements.",
    )
    parser.add_argument("--input", nargs="+", required=True, metavar="PATH", help="input document(s)")
    parser.add_argument("--checks", default=None, help="comma-separated subset of checks to run")
    parser.add_argument(
        "--primes",
        default=None,
        help=f"comma-separated primes for the realizability search (default {','.join(map(str, DEFAULT_PRIMES))})",
    )
    parser.add_argument(
        "--max-branch-subset",
        type=int,
        default=DEFAULT_MAX_BRANCH_SUBSET,
        help="largest branch subset size for the double-cover pipeline",
    )
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers over inputs")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    primes: Sequence[int] = DEFAULT_PRIMES
    if args.primes is not None:
        parsed = _parse_int_list(args.primes)
        if parsed is None:
            parser.error(f"--primes expects a comma-separated integer list, got {args.primes!r}")
        if any(not realize_ff._is_prime(p) for p in parsed):
            parser.error(f"--primes entries must be prime, got {args.primes}")
        primes = parsed
    checks = None
    if args.checks is not None:
        checks = [token.strip() for token in args.checks.split(",") if token.strip()]
        unknown = set(checks) - set(ALL_CHECKS)
        if unknown:
            parser.error(f"unknown checks: {', '.join(sorted(unknown))}")
    results = batch(
        args.input,
        parallelism=max(args.jobs, 1),
        primes=primes,
        max_branch_subset=args.max_branch_subset,
        checks=checks,
    )
    if args.format == "structured":
        payload = [
            {"path": r.path, "error": r.error}
            if r.error is not None
            else {"path": r.path, "report": report_payload(r.report)}
            for r in results
        ]
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for result in results:
            print(render_text(result))
    if any(r.error is not None for r in results):
        return 2
    if any(r.report is not None and r.report.summary == OBSTRUCTED for r in results):
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
