"""Command-line front end: ``gknormal {classify,enumerate,count,verify,member}``.

Exit codes: 0 success, 1 verification failure, 2 usage or unsupported input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import smallgroup as sg
from .enumerate import (
    classify_quotient_groups,
    enumerate_paper_index8,
    enumerate_paper_index10,
    formula_index8,
    formula_index10,
    formula_R,
)
from .errors import GkError
from .freeword import parse_word
from .oracle import DEFAULT_BUDGET, cross_check_paper, dedup_crosscheck, scan
from .quotients import KernelDescriptor, evaluate, verify_descriptor

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    out = json.dumps(payload, indent=2, sort_keys=False) + "\n" if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out)
    else:
        sys.stdout.write(out)


def _paper(k: int, index: int):
    if index == 8:
        return enumerate_paper_index8(k)
    if index == 10:
        return enumerate_paper_index10(k)
    raise UsageError(f"printed families exist for index 8 and 10, not {index}")


def _formulas(k: int, index: int) -> dict[str, int]:
    if index == 8:
        return {"index8": formula_index8(k), "R_printed": formula_R(k)}
    if index == 10:
        return {"index10": formula_index10(k)}
    return {}


def _check_enum_config(args) -> None:
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    if args.index < 2 or args.index % 2 or args.index > sg.MAX_CATALOG_ORDER:
        raise UsageError("--index must be even and at most 12 (odd indices admit no normal subgroups)")


def cmd_classify(args) -> int:
    try:
        labels = classify_quotient_groups(args.order)
    except GkError as exc:
        raise UsageError(str(exc)) from exc
    shown = [f"{lbl} (R10)" if lbl == "D5" else lbl for lbl in labels]
    rows = []
    for G in sg.catalog(args.order):
        inv = len(sg.involution_ids(G)) - 1
        rows.append({"group": G.iso_label, "involutions": inv, "quotient_of_Gk": G.iso_label in labels})
    text = (", ".join(shown) if shown else "(none)") + "\n"
    if args.verbose:
        text += "".join(
            f"  {r['group']}: {r['involutions']} involutions, "
            f"{'involution-generated' if r['quotient_of_Gk'] else 'not involution-generated'}\n"
            for r in rows
        )
    _emit(args, {"order": args.order, "quotients": labels, "catalog": rows}, text)
    return EXIT_OK


def _catalog_payload(args) -> dict:
    families: dict[str, list] = {}
    labeled: dict[str, int] = {}
    if args.source in ("paper", "both"):
        paper = _paper(args.k, args.index)
        for name, ds in paper.families.items():
            key = name if args.source == "paper" else f"paper/{name}"
            families[key] = [d.to_json() for d in sorted(ds)]
        labeled.update(paper.labeled_counts)
    if args.source in ("oracle", "both"):
        result = scan(args.k, args.index, args.budget, args.workers)
        for q in result.quotients:
            if q.descriptors:
                key = q.iso_label if args.source == "oracle" else f"oracle/{q.iso_label}"
                families[key] = [d.to_json() for d in sorted(q.descriptors)]
                labeled[f"surjective_{q.iso_label}"] = q.surjective
    return {
        "k": args.k,
        "index": args.index,
        "source": args.source,
        "families": families,
        "labeled_counts": labeled,
        "formulas": _formulas(args.k, args.index),
    }


def cmd_enumerate(args) -> int:
    _check_enum_config(args)
    payload = _catalog_payload(args)
    total = sum(len(v) for v in payload["families"].values())
    lines = [f"k={args.k} index={args.index} source={args.source}: {total} descriptors"]
    for name, ds in payload["families"].items():
        lines.append(f"[{name}] {len(ds)}")
        lines += [f"  {d['quotient']}: {' '.join(d['images'])}" for d in ds]
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_count(args) -> int:
    _check_enum_config(args)
    if args.index not in (8, 10):
        raise UsageError("count compares against the printed families; use --index 8 or 10")
    report = cross_check_paper(args.k, args.index, args.budget, args.workers)
    j = report.to_json()
    lines = [
        f"k={args.k} index={args.index}",
        f"  oracle kernels:        {j['oracle_count']}  {j['oracle_by_quotient']}",
        f"  printed families:      {j['paper_family_count']}  {j['paper_families']}",
        f"  labeled constructions: {j['labeled_count']}  {j['labeled_counts']}",
        f"  printed formula:       {j['formula_value']}  {j['formulas']}",
    ]
    lines += [f"  {name}: {'yes' if ok else 'no'}" for name, ok in j["verdicts"].items()]
    lines += [f"  note: {n}" for n in j["notes"]]
    _emit(args, j, "\n".join(lines) + "\n")
    return EXIT_OK


def _load_catalog(path: str) -> list[KernelDescriptor]:
    try:
        data = json.loads(Path(path).read_text())
        return [KernelDescriptor.from_json(d) for ds in data["families"].values() for d in ds]
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"cannot read catalog {path}: {exc}") from exc


def cmd_verify(args) -> int:
    failures: list[str] = []
    summary: dict[str, object] = {}
    if args.catalog:
        descriptors = _load_catalog(args.catalog)
    else:
        _check_enum_config(args)
        paper = _paper(args.k, args.index).descriptors if args.index in (8, 10) else frozenset()
        oracle = scan(args.k, args.index, args.budget, args.workers)
        descriptors = sorted(paper | oracle.descriptors)
        dedup = dedup_crosscheck(args.k, args.index)
        summary["dedup_agree"] = dedup.agree
        summary["containment"] = paper <= oracle.descriptors
        summary["orbit_law"] = all(q.orbit_law_holds for q in oracle.quotients)
        if not dedup.agree:
            failures.append(f"dedup strategies disagree on {dedup.failing_pair}")
        if not summary["containment"]:
            failures.append("printed family not contained in oracle set")
        if not summary["orbit_law"]:
            failures.append("orbit-size law violated")
    reports = [
        verify_descriptor(d, max_len=args.max_word_len, samples=args.samples, seed=args.seed)
        for d in descriptors
    ]
    for r in reports:
        if not r.passed:
            failures.append(f"{r.descriptor}: {r.detail}; counterexample: {r.counterexample}")
    summary["descriptors_verified"] = len(reports)
    summary["descriptors_failed"] = sum(not r.passed for r in reports)
    payload = {
        "k": args.k,
        "index": args.index,
        "max_word_len": args.max_word_len,
        "seed": args.seed,
        "summary": summary,
        "failures": failures,
        "reports": [r.to_json() for r in reports if not r.passed],
    }
    text = f"verified {len(reports)} descriptors: {'FAIL' if failures else 'ok'}\n"
    text += "".join(f"  {key}: {val}\n" for key, val in summary.items())
    text += "".join(f"  FAIL {f}\n" for f in failures)
    _emit(args, payload, text)
    return EXIT_FAIL if failures else EXIT_OK


def cmd_member(args) -> int:
    try:
        d = KernelDescriptor.from_json(Path(args.descriptor).read_text())
        x = parse_word(args.word, d.k)
    except (OSError, KeyError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    image = evaluate(d.assignment(), x)
    member = image == 0
    payload = {
        "descriptor": d.to_json(),
        "word": args.word,
        "image": d.quotient.labels[image],
        "member": member,
    }
    _emit(args, payload, ("member" if member else "non-member") + f" (image {payload['image']})\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="gknormal",
        description="Normal subgroups of index 8 and 10 in the free product of k+1 copies of Z/2.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--out", default=None, help="write output to this file")

    run = argparse.ArgumentParser(add_help=False)
    run.add_argument("--k", type=int, default=1)
    run.add_argument("--index", type=int, default=8)
    run.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    run.add_argument("--workers", type=int, default=1)
    run.add_argument("--max-word-len", type=int, default=8)
    run.add_argument("--seed", type=int, default=0)

    sub = ap.add_subparsers(dest="command", required=True)
    p = sub.add_parser("classify", parents=[common], help="groups of a given order that G_k maps onto")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--verbose", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("enumerate", parents=[common, run], help="emit a descriptor catalog")
    p.add_argument("--source", choices=("paper", "oracle", "both"), default="paper")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", parents=[common, run], help="compare counts and formulas")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", parents=[common, run], help="re-verify descriptors")
    p.add_argument("--catalog", default=None, help="catalog JSON to verify instead of enumerating")
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("member", parents=[common], help="kernel membership of a word")
    p.add_argument("--descriptor", required=True, help="descriptor JSON file")
    p.add_argument("--word", default="", help='space-separated generator indices, e.g. "1 2 1"')
    p.set_defaults(func=cmd_member)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, GkError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
