"""Command-line surface.

Exit codes: 0 for the command's expected outcome (replay matches, falsify
finds a counterexample, verify finds none), 1 for a surprising outcome,
2 for usage and input errors, 3 when falsify exhausts its bounds on a
claim whose status is open (nothing found here, but nothing was promised).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__, kernels
from .approx import approximations
from .claims import Claim, evaluate, get_claim, list_claims
from .docio import (
    ParsedInstance,
    parse_instance_doc,
    raw_to_instance,
    render_instance_text,
    render_relation,
    render_subset,
    render_witness,
    report_doc,
    write_json,
    REPORT_SCHEMA,
)
from .enumeration import bell, subset_count, surjection_count
from .errors import BadInstanceError, IoError, ParseError, RoughmapError, ValidationError
from .mappings import degree_table, relmap
from .replay import replay_examples
from .search import SearchReport, falsify, verify


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="roughmap",
        description="Relation mappings between finite universes, rough approximations, "
        "and exhaustive claim checking.",
    )
    p.add_argument(
        "--version",
        action="version",
        version=f"roughmap {__version__} (kernels: {kernels.BACKEND})",
    )
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser(
        "replay-paper",
        help="recompute the bundled worked instances and compare with frozen values",
    )

    ev = sub.add_parser("eval", help="evaluate an instance or report document")
    ev.add_argument("--input", required=True, metavar="FILE")
    ev.add_argument(
        "--show",
        default="relmap,approx,degrees",
        metavar="LIST",
        help="comma list from: relmap, approx, degrees (default: all)",
    )

    fa = sub.add_parser("falsify", help="search for the first counterexample to a claim")
    fa.add_argument("claim")
    fa.add_argument("--max-u", type=int, required=True, metavar="N")
    fa.add_argument("--max-v", type=int, required=True, metavar="M")
    fa.add_argument("--json", dest="json_path", metavar="FILE")
    fa.add_argument("--workers", type=int, default=None, metavar="K")

    ve = sub.add_parser("verify", help="sweep the whole bounded space for a claim")
    ve.add_argument("claim")
    ve.add_argument("--max-u", type=int, required=True, metavar="N")
    ve.add_argument("--max-v", type=int, default=None, metavar="M")
    ve.add_argument("--json", dest="json_path", metavar="FILE")
    ve.add_argument("--workers", type=int, default=None, metavar="K")

    sub.add_parser("list-claims", help="print the claim registry")

    co = sub.add_parser("count", help="closed-form sizes of the search spaces")
    g = co.add_mutually_exclusive_group(required=True)
    g.add_argument("--partitions", type=int, metavar="N")
    g.add_argument("--surjections", type=int, nargs=2, metavar=("N", "M"))
    g.add_argument("--subsets", type=int, metavar="N")
    return p


def _print_registry(out) -> None:
    rows = [
        (c.id, c.expected_status, _shape_text(c), c.statement) for c in list_claims()
    ]
    wid = max(len(r[0]) for r in rows)
    wst = max(len(r[1]) for r in rows)
    wsh = max(len(r[2]) for r in rows)
    print(f"{'id':<{wid}}  {'status':<{wst}}  {'shape':<{wsh}}  statement", file=out)
    for rid, status, shape, stmt in rows:
        print(f"{rid:<{wid}}  {status:<{wst}}  {shape:<{wsh}}  {stmt}", file=out)


def _shape_text(c: Claim) -> str:
    parts = f"{c.partitions} partition" + ("s" if c.partitions > 1 else "")
    if c.needs_subset:
        parts += " + X"
    constraint = {"any": "any f", "surjective": "surjective f", "bijective": "bijective f"}
    return f"{parts}, {constraint[c.map_constraint]}"


def _resolve_claim(claim_id: str) -> Optional[Claim]:
    try:
        return get_claim(claim_id)
    except BadInstanceError:
        print(f"unknown claim id {claim_id!r}; known claims:", file=sys.stderr)
        _print_registry(sys.stderr)
        return None


def _cmd_replay(args) -> int:
    report = replay_examples()
    current = None
    for check in report.checks:
        if check.instance != current:
            current = check.instance
            print(f"instance {current}:")
        if check.ok:
            print(f"  PASS  {check.name} = {check.actual}")
        else:
            print(f"  FAIL  {check.name}: expected {check.expected}, got {check.actual}")
    passed = sum(1 for c in report.checks if c.ok)
    print(f"replay: {passed}/{len(report.checks)} checks passed")
    return 0 if report.ok else 1


def _cmd_list_claims(args) -> int:
    _print_registry(sys.stdout)
    return 0


def _cmd_count(args) -> int:
    if args.partitions is not None:
        n = args.partitions
        if n < 1:
            print("count: n must be at least 1", file=sys.stderr)
            return 2
        print(f"partitions of {n}: {bell(n)}")
    elif args.surjections is not None:
        n, m = args.surjections
        if n < 1 or m < 1:
            print("count: n and m must be at least 1", file=sys.stderr)
            return 2
        count = surjection_count(n, m)
        note = " (no surjections onto a larger codomain)" if m > n else ""
        print(f"surjections {n} -> {m}: {count}{note}")
    else:
        n = args.subsets
        if n < 1:
            print("count: n must be at least 1", file=sys.stderr)
            return 2
        print(f"subsets of {n}: {subset_count(n)}")
    return 0


def _print_search_head(report: SearchReport, claim: Claim) -> None:
    print(
        f"{report.mode} {claim.id}: bounds max |U| = {report.max_u}, "
        f"max |V| = {report.max_v}, workers {report.workers}"
    )
    print(f"  claim: {claim.statement}")
    print(f"  expected status: {claim.expected_status}")


def _print_tallies(report: SearchReport) -> None:
    t = report.tally
    print(
        f"  tallies: holds {t.holds}, fails {t.fails}, "
        f"ill-typed {t.ill_typed}, vacuous {t.vacuous} "
        f"({report.instances} instances, {report.groups} groups, "
        f"{report.elapsed_s:.2f} s)"
    )
    if report.instances == 0:
        print("  note: bounds admit no instance of this claim's shape")
    if report.ill_typed_reason and report.tally.ill_typed == report.instances:
        print(f"  note: every instance is ill-typed ({report.ill_typed_reason})")


def _print_counterexample(report: SearchReport) -> None:
    inst = raw_to_instance(report.first_counterexample)
    for line in render_instance_text(inst):
        print(f"  {line}")
    text = render_witness(report.witness, inst.f.domain, inst.f.codomain)
    print("  witness: " + text.replace("\n", "\n  "))


def _cmd_falsify(args) -> int:
    claim = _resolve_claim(args.claim)
    if claim is None:
        return 2
    if args.max_u < 1 or args.max_v < 1:
        print("falsify: bounds must be at least 1", file=sys.stderr)
        return 2
    report = falsify(claim, args.max_u, args.max_v, workers=args.workers)
    _print_search_head(report, claim)
    if report.found:
        print("counterexample found:")
        _print_counterexample(report)
    else:
        print("no counterexample within bounds")
    _print_tallies(report)
    if args.json_path:
        write_json(args.json_path, report_doc(report))
        print(f"  report written to {args.json_path}")
    if report.found:
        return 1 if claim.expected_status in ("proved", "ill-typed") else 0
    if claim.expected_status == "refuted":
        return 1
    if claim.expected_status == "open":
        return 3
    return 0


def _cmd_verify(args) -> int:
    claim = _resolve_claim(args.claim)
    if claim is None:
        return 2
    max_v = args.max_v if args.max_v is not None else args.max_u
    if args.max_u < 1 or max_v < 1:
        print("verify: bounds must be at least 1", file=sys.stderr)
        return 2
    report = verify(claim, args.max_u, max_v, workers=args.workers)
    _print_search_head(report, claim)
    if report.found:
        shown = len(report.failures)
        print(f"{report.tally.fails} failing instance(s); first (showing {shown} in any report):")
        _print_counterexample(report)
    else:
        print("zero failures across the full space")
    _print_tallies(report)
    if args.json_path:
        write_json(args.json_path, report_doc(report))
        print(f"  report written to {args.json_path}")
    if not report.found:
        return 0
    return 0 if claim.expected_status == "refuted" else 1


def _show_relmap(parsed: ParsedInstance) -> None:
    inst = parsed.instance
    for name, p in zip(parsed.partition_names, inst.partitions):
        fr = relmap(inst.f, p)
        c = fr.classify()
        kind = (
            "an equivalence"
            if c.equivalence
            else "reflexive " + ("yes" if c.reflexive else "no")
            + ", symmetric " + ("yes" if c.symmetric else "no")
            + ", transitive " + ("yes" if c.transitive else "no")
        )
        print(f"f({name}) = {render_relation(fr)}   [{kind}]")


def _show_degrees(parsed: ParsedInstance) -> None:
    inst = parsed.instance
    u = inst.f.domain
    for name, p in zip(parsed.partition_names, inst.partitions):
        degrees = degree_table(inst.f, p)
        body = ", ".join(f"{u.label(x)}: {d}" for x, d in enumerate(degrees))
        print(f"degrees w.r.t. {name}: {body}")


def _show_approx(parsed: ParsedInstance) -> None:
    inst = parsed.instance
    if inst.x is None:
        print("approx: document has no subset_x")
        return
    fx = inst.f.image_subset(inst.x)
    print(f"X = {render_subset(inst.x)}, f(X) = {render_subset(fx)}")
    for name, p in zip(parsed.partition_names, inst.partitions):
        lo, hi = approximations(p, inst.x)
        print(f"apr_{name} X = {render_subset(lo)}, apr̄_{name} X = {render_subset(hi)}")
        fr = relmap(inst.f, p)
        if fr.classify().equivalence:
            lo_v, hi_v = approximations(fr.to_partition(), fx)
            print(
                f"apr_f({name}) f(X) = {render_subset(lo_v)}, "
                f"apr̄_f({name}) f(X) = {render_subset(hi_v)}"
            )
        else:
            print(f"f({name}) is not an equivalence; no approximations over it")


def _eval_verdict(parsed: ParsedInstance) -> tuple[int, str]:
    """Evaluate the document's claim; (exit code, outcome value)."""
    inst = parsed.instance
    claim = parsed.claim
    verdict = evaluate(claim, inst)
    print(f"claim {claim.id}: {claim.statement}")
    print(f"verdict: {verdict.outcome.value}")
    if verdict.reason:
        print(f"reason: {verdict.reason}")
    if verdict.witness:
        text = render_witness(verdict.witness, inst.f.domain, inst.f.codomain)
        print("witness: " + text)
    if parsed.expected_outcome is not None:
        if verdict.outcome.value == parsed.expected_outcome:
            print(f"matches recorded outcome ({parsed.expected_outcome})")
            return 0, verdict.outcome.value
        print(
            f"MISMATCH: recorded outcome {parsed.expected_outcome}, "
            f"got {verdict.outcome.value}"
        )
        return 1, verdict.outcome.value
    return 0, verdict.outcome.value


def _cmd_eval(args) -> int:
    shows = [s for s in args.show.split(",") if s]
    bad = [s for s in shows if s not in ("relmap", "approx", "degrees")]
    if bad:
        print(f"eval: unknown --show section(s): {', '.join(bad)}", file=sys.stderr)
        return 2
    try:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"eval: cannot read {args.input}: {e}", file=sys.stderr)
        return 2
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        print(f"eval: line {e.lineno}, column {e.colno}: {e.msg}", file=sys.stderr)
        return 2
    if isinstance(doc, dict) and doc.get("schema") == REPORT_SCHEMA:
        embedded = doc.get("first_counterexample")
        if embedded is None:
            print("report has no embedded counterexample; nothing to re-check")
            return 0
        doc = embedded
    try:
        parsed = parse_instance_doc(doc)
    except (ParseError, ValidationError) as e:
        print(f"eval: {e}", file=sys.stderr)
        return 2
    code = 0
    if parsed.claim_id is not None:
        try:
            code, _ = _eval_verdict(parsed)
        except BadInstanceError as e:
            print(f"eval: {e}", file=sys.stderr)
            return 2
    if "relmap" in shows:
        _show_relmap(parsed)
    if "degrees" in shows:
        _show_degrees(parsed)
    if "approx" in shows:
        _show_approx(parsed)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    handlers = {
        "replay-paper": _cmd_replay,
        "eval": _cmd_eval,
        "falsify": _cmd_falsify,
        "verify": _cmd_verify,
        "list-claims": _cmd_list_claims,
        "count": _cmd_count,
    }
    try:
        return handlers[args.command](args)
    except IoError as e:
        print(f"roughmap: {e}", file=sys.stderr)
        return 2
    except RoughmapError as e:
        print(f"roughmap: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
