"""Command line interface.

Every command emits either human-readable text or, with --json, a single
report object (an array when several input forms are given) with the fixed
key set {command, input, parameters, ranks, memberships, orbit_class,
conormal_dim, expected_codim, verdict, caveats, elapsed_ms}.  Command
specific values nest inside "parameters" so the top-level schema never
changes shape.  Every number shown in text mode is also present in the JSON.

Exit codes: 0 success / verification passed, 1 verification mismatch,
2 input error, 3 precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import comb

from .catalecticant import build_flattening, flattening_rank, span_of
from .forms import Form, ParseError, format_form, infer_nvars, parse_form
from .secant import expected_codim, membership_verdict
from .tangent import (
    ClassificationError,
    InSigmaTwoError,
    NotInSigmaThreeError,
    OrbitClass,
    UnsupportedDegreeError,
    canonical_form,
    classify_orbit,
    conormal_with_formula,
    hilbert_function,
    smoothness_at,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_INPUT = 2
EXIT_PRECONDITION = 3


class UsageError(Exception):
    """Bad command line input (missing form, unreadable file, bad range)."""


def _base_report(command: str, input_text: str | None, parameters: dict) -> dict:
    return {
        "command": command,
        "input": input_text,
        "parameters": parameters,
        "ranks": None,
        "memberships": None,
        "orbit_class": None,
        "conormal_dim": None,
        "expected_codim": None,
        "verdict": None,
        "caveats": [],
        "elapsed_ms": None,
    }


def _collect_forms(args) -> list[Form]:
    texts: list[str] = []
    if getattr(args, "form", None):
        texts.append(args.form)
    if getattr(args, "file", None):
        try:
            with open(args.file, "r", encoding="utf-8") as handle:
                for line in handle:
                    stripped = line.strip()
                    if stripped and not stripped.startswith("#"):
                        texts.append(stripped)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc}") from exc
    if not texts:
        raise UsageError("no input form: pass --form or --file")
    forms = []
    for text in texts:
        nvars = args.nvars if args.nvars else infer_nvars(text)
        forms.append(parse_form(text, nvars))
    return forms


def _guard_size(f: Form, force: bool) -> None:
    d, n = f.degree, f.nvars - 1
    if force:
        return
    if d > 12 or comb(d + n, n) > 1000:
        raise UsageError(
            f"degree {d} in {f.nvars} variables exceeds the resource guard "
            f"(d <= 12 and C(d+n, n) <= 1000); pass --force to override"
        )


def _emit(args, reports: list[dict], lines: list[str]) -> None:
    if args.json:
        payload = reports[0] if len(reports) == 1 else reports
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(lines))


def _finish(report: dict, started: float) -> None:
    report["elapsed_ms"] = round((time.monotonic() - started) * 1000, 3)


# ---------------------------------------------------------------------------
# commands


def cmd_flatten(args) -> int:
    reports, lines = [], []
    for f in _collect_forms(args):
        started = time.monotonic()
        _guard_size(f, args.force)
        flat = build_flattening(f, args.k)
        rank = flat.rank()
        params: dict = {"k": args.k, "nvars": f.nvars, "shape": list(flat.shape)}
        if args.entries or args.csv:
            params["entries"] = [[str(x) for x in row] for row in flat.matrix.entries]
        report = _base_report("flatten", format_form(f), params)
        report["ranks"] = {str(args.k): rank}
        _finish(report, started)
        reports.append(report)
        if args.csv:
            for row in flat.matrix.entries:
                lines.append(",".join(str(x) for x in row))
            continue
        lines.append(f"form: {format_form(f)}")
        lines.append(f"flattening k={args.k}: shape {flat.shape[0]} x {flat.shape[1]}, rank {rank}")
        if args.entries:
            for row in flat.matrix.entries:
                lines.append("  [" + ", ".join(str(x) for x in row) + "]")
    _emit(args, reports, lines)
    return EXIT_OK


def _membership_payload(f: Form) -> tuple[dict, dict, list[str], str]:
    verdict = membership_verdict(f)
    memberships = {
        "sigma1": verdict.in_sigma1,
        "sigma2": verdict.in_sigma2,
        "sigma3": verdict.in_sigma3,
        "degenerate": verdict.in_D,
    }
    ranks = {str(k): r for k, r in sorted(verdict.witness_ranks.items())}
    caveats = [verdict.caveat] if verdict.caveat else []
    if verdict.in_sigma1:
        tightest = "sigma1"
    elif verdict.in_sigma2:
        tightest = "sigma2"
    elif verdict.in_D:
        tightest = "degenerate"
    elif verdict.in_sigma3:
        tightest = "sigma3"
    else:
        tightest = "outside-sigma3"
    return memberships, ranks, caveats, tightest


def cmd_membership(args) -> int:
    reports, lines = [], []
    for f in _collect_forms(args):
        started = time.monotonic()
        _guard_size(f, args.force)
        memberships, ranks, caveats, tightest = _membership_payload(f)
        report = _base_report("membership", format_form(f), {"nvars": f.nvars, "d": f.degree})
        report["ranks"] = ranks
        report["memberships"] = memberships
        report["verdict"] = tightest
        report["caveats"] = caveats
        _finish(report, started)
        reports.append(report)
        lines.append(f"form: {format_form(f)}")
        lines.append(
            "  sigma1={sigma1} sigma2={sigma2} sigma3={sigma3} degenerate={degenerate}".format(
                **memberships
            )
        )
        lines.append(
            "  witness ranks: "
            + ", ".join(f"k={k}: {r}" for k, r in ranks.items())
            + f"; tightest: {tightest}"
        )
        lines.extend(f"  caveat: {c}" for c in caveats)
    _emit(args, reports, lines)
    return EXIT_OK


def cmd_classify(args) -> int:
    reports, lines = [], []
    for f in _collect_forms(args):
        started = time.monotonic()
        _guard_size(f, args.force)
        orbit = classify_orbit(f, seed=args.seed)
        report = _base_report("classify", format_form(f), {"nvars": f.nvars, "d": f.degree, "seed": args.seed})
        report["orbit_class"] = orbit.value
        if f.degree == 3:
            report["caveats"] = ["necessary conditions only for d=3"]
        _finish(report, started)
        reports.append(report)
        lines.append(f"form: {format_form(f)}")
        lines.append(f"  orbit class: {orbit.value}")
        lines.extend(f"  caveat: {c}" for c in report["caveats"])
    _emit(args, reports, lines)
    return EXIT_OK


def cmd_conormal(args) -> int:
    reports, lines = [], []
    for f in _collect_forms(args):
        started = time.monotonic()
        _guard_size(f, args.force)
        space, formula = conormal_with_formula(f)
        codim = expected_codim(f.degree, f.nvars - 1)
        verdict = "smooth" if space.dim == codim else "singular"
        report = _base_report(
            "conormal",
            format_form(f),
            {"nvars": f.nvars, "d": f.degree, "formula_used": formula},
        )
        report["conormal_dim"] = space.dim
        report["expected_codim"] = codim
        report["verdict"] = verdict
        _finish(report, started)
        reports.append(report)
        lines.append(f"form: {format_form(f)}")
        lines.append(
            f"  conormal dim {space.dim}, expected codim {codim}, formula {formula}: {verdict}"
        )
    _emit(args, reports, lines)
    return EXIT_OK


def cmd_analyze(args) -> int:
    reports, lines = [], []
    for f in _collect_forms(args):
        started = time.monotonic()
        _guard_size(f, args.force)
        d, n = f.degree, f.nvars - 1
        memberships, witness_ranks, caveats, _ = _membership_payload(f)
        all_ranks = {str(k): (0 if f.is_zero() else flattening_rank(f, k)) for k in range(1, d)}
        orbit = classify_orbit(f, seed=args.seed)
        span_dim = None if f.is_zero() else span_of(f).dim
        params = {"nvars": f.nvars, "d": d, "seed": args.seed, "span_dim": span_dim}
        report = _base_report("analyze", format_form(f), params)
        report["ranks"] = all_ranks
        report["memberships"] = memberships
        report["orbit_class"] = orbit.value
        report["expected_codim"] = expected_codim(d, n)
        if f.is_zero():
            report["verdict"] = "in-sigma2"
        else:
            smooth = smoothness_at(f)
            report["verdict"] = smooth.verdict
            report["conormal_dim"] = smooth.conormal_dim
            report["parameters"]["formula_used"] = smooth.formula_used
        report["caveats"] = caveats
        _finish(report, started)
        reports.append(report)
        lines.append(f"form: {format_form(f)}")
        lines.append("  flattening ranks: " + ", ".join(f"k={k}: {r}" for k, r in all_ranks.items()))
        lines.append(f"  span dim: {span_dim}")
        lines.append(
            "  sigma1={sigma1} sigma2={sigma2} sigma3={sigma3} degenerate={degenerate}".format(
                **memberships
            )
        )
        lines.append(f"  orbit class: {orbit.value}")
        if report["conormal_dim"] is not None:
            lines.append(
                f"  conormal dim {report['conormal_dim']}, expected codim {report['expected_codim']}"
            )
        else:
            lines.append(f"  expected codim {report['expected_codim']}")
        lines.append(f"  verdict: {report['verdict']}")
        lines.extend(f"  caveat: {c}" for c in caveats)
    _emit(args, reports, lines)
    return EXIT_OK


def _hilbert_net(kind: str, d: int) -> list[Form]:
    y0y2 = Form.monomial(3, (1, 0, 1))
    y1y1 = Form.monomial(3, (0, 2, 0))
    y1y2 = Form.monomial(3, (0, 1, 1))
    y2y2 = Form.monomial(3, (0, 0, 2))
    if kind == "unmixed":
        return [y0y2, y1y1, y1y2]
    return [y0y2 - Fraction(d - 1, 2) * y1y1, y1y2, y2y2]


def _hilbert_closed_form(d: int) -> int:
    if d < 4:
        return 0
    return 6 * comb(d - 2, 2) - 6 * comb(d - 3, 2) + comb(d - 4, 2)


def cmd_hilbert(args) -> int:
    started = time.monotonic()
    d = args.d
    if not (2 <= d <= 12) and not args.force:
        raise UsageError(f"degree {d} outside [2, 12]; pass --force to override")
    net = _hilbert_net(args.net, d)
    squares = [net[i] * net[j] for i in range(3) for j in range(i, 3)]
    brute = hilbert_function(squares, d)
    closed = _hilbert_closed_form(d)
    ok = brute == closed
    report = _base_report(
        "hilbert",
        None,
        {"net": args.net, "d": d, "brute": brute, "closed_form": closed},
    )
    report["verdict"] = "ok" if ok else "mismatch"
    _finish(report, started)
    lines = [
        f"net {args.net}, degree {d}: H(I^2, {d}) = {brute}, closed form {closed}: "
        + ("ok" if ok else "MISMATCH")
    ]
    _emit(args, [report], lines)
    return EXIT_OK if ok else EXIT_MISMATCH


def cmd_canonical(args) -> int:
    started = time.monotonic()
    f = canonical_form(args.kind, args.d, args.n, args.alpha, args.beta)
    text = format_form(f)
    report = _base_report(
        "canonical",
        text,
        {
            "kind": args.kind,
            "d": args.d,
            "n": args.n,
            "alpha": str(args.alpha),
            "beta": str(args.beta),
        },
    )
    _finish(report, started)
    _emit(args, [report], [text])
    return EXIT_OK


_TABLE_KINDS = ("fermat", "unmixed", "mixed", "degenerate-binary")


def _predicted_verdict(d: int, n: int, kind: str) -> str:
    if d == 3:
        return "d3-classified"
    if kind == "degenerate-binary" and d == 4 and n >= 3:
        return "singular"
    return "smooth"


def _verify_cell(cell: tuple[int, int, str]) -> dict:
    d, n, kind = cell
    report = smoothness_at(canonical_form(kind, d, n))
    predicted = _predicted_verdict(d, n, kind)
    return {
        "d": d,
        "n": n,
        "kind": kind,
        "verdict": report.verdict,
        "predicted": predicted,
        "conormal_dim": report.conormal_dim,
        "expected_codim": report.expected_codim,
        "ok": report.verdict == predicted,
    }


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise UsageError(f"bad range {text!r}, expected like 3..7") from exc
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def cmd_verify_table(args) -> int:
    started = time.monotonic()
    d_lo, d_hi = _parse_range(args.d_range)
    n_lo, n_hi = _parse_range(args.n_range)
    if not args.force and not (3 <= d_lo and d_hi <= 10 and 2 <= n_lo and n_hi <= 5):
        raise UsageError("ranges outside d in [3, 10], n in [2, 5]; pass --force to override")
    cells = [
        (d, n, kind)
        for d in range(d_lo, d_hi + 1)
        for n in range(n_lo, n_hi + 1)
        for kind in _TABLE_KINDS
        if kind != "degenerate-binary" or d >= 4
    ]
    if args.jobs and args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_verify_cell, cells))
    else:
        results = [_verify_cell(cell) for cell in cells]
    mismatches = [r for r in results if not r["ok"]]
    report = _base_report(
        "verify-table",
        None,
        {
            "d_range": [d_lo, d_hi],
            "n_range": [n_lo, n_hi],
            "jobs": args.jobs,
            "cells": results,
        },
    )
    report["verdict"] = "ok" if not mismatches else "mismatch"
    _finish(report, started)
    lines = []
    for r in results:
        dim_text = "-" if r["conormal_dim"] is None else str(r["conormal_dim"])
        lines.append(
            f"d={r['d']} n={r['n']} kind={r['kind']}: verdict={r['verdict']} "
            f"predicted={r['predicted']} conormal_dim={dim_text} "
            f"expected_codim={r['expected_codim']} {'ok' if r['ok'] else 'MISMATCH'}"
        )
    if mismatches:
        lines.append(f"{len(mismatches)} mismatched cells")
    else:
        lines.append(f"all {len(results)} cells match")
    _emit(args, [report], lines)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


# ---------------------------------------------------------------------------
# parser


def _add_common(parser: argparse.ArgumentParser, forms: bool = True) -> None:
    parser.add_argument("--json", action="store_true", help="emit a JSON report")
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    parser.add_argument("--jobs", type=int, default=1, help="parallel worker count")
    parser.add_argument("--force", action="store_true", help="override resource guards")
    if forms:
        parser.add_argument("--form", help="polynomial text, e.g. 'x0^4 + x1^4'")
        parser.add_argument("--file", help="file with one form per line, # for comments")
        parser.add_argument("--nvars", type=int, help="variable count (default: inferred)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trisecant",
        description="Exact flattenings, apolarity, and smoothness of the third secant variety",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("flatten", help="catalecticant flattening matrix and rank")
    _add_common(p)
    p.add_argument("--k", type=int, required=True, help="row degree of the flattening")
    p.add_argument("--entries", action="store_true", help="include matrix entries")
    p.add_argument("--csv", action="store_true", help="emit entries as CSV")
    p.set_defaults(run=cmd_flatten)

    p = sub.add_parser("membership", help="secant variety membership flags")
    _add_common(p)
    p.set_defaults(run=cmd_membership)

    p = sub.add_parser("classify", help="orbit class of a border rank <= 3 form")
    _add_common(p)
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("conormal", help="conormal space dimension at a point")
    _add_common(p)
    p.set_defaults(run=cmd_conormal)

    p = sub.add_parser("analyze", help="ranks, memberships, orbit, and smoothness")
    _add_common(p)
    p.set_defaults(run=cmd_analyze)

    p = sub.add_parser("hilbert", help="Hilbert function of a squared net ideal vs closed form")
    _add_common(p, forms=False)
    p.add_argument("--net", choices=("unmixed", "mixed"), required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(run=cmd_hilbert)

    p = sub.add_parser("canonical", help="canonical representative of an orbit")
    _add_common(p, forms=False)
    p.add_argument("--kind", required=True, choices=("fermat", "unmixed", "mixed", "degenerate-binary"))
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=Fraction, default=Fraction(1))
    p.add_argument("--beta", type=Fraction, default=Fraction(1))
    p.set_defaults(run=cmd_canonical)

    p = sub.add_parser("verify-table", help="sweep canonical forms against predicted verdicts")
    _add_common(p, forms=False)
    p.add_argument("--d-range", default="3..7", help="degree range like 3..7")
    p.add_argument("--n-range", default="2..4", help="ambient dimension range like 2..4")
    p.set_defaults(run=cmd_verify_table)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except ParseError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (UnsupportedDegreeError, InSigmaTwoError, NotInSigmaThreeError) as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ClassificationError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"precondition error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
