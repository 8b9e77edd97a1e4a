"""Command-line front end.

    evenwilf count 321 --n 6
    evenwilf count 321 --shape 3,3,3
    evenwilf classify 4 --max-n 9
    evenwilf map 321 --t 3 --dir forward
    evenwilf verify theorem-jtft --t 3 --box 6
    evenwilf tables --max-len 4 --max-n 9
    evenwilf --verify-cache

Exit codes: 0 success, 1 usage or input error, 2 a verify run refuted its
statement, 3 a request exceeded the search budget.  Output rows for count,
classify, and tables contain no timestamps, so identical invocations render
byte-identical csv/json; verify reports carry their elapsed time by design.
"""
from __future__ import annotations

import argparse
import csv
import inspect
import json
import os
import sys

from . import __version__
from .cache import CountCache
from .classify import (
    class_count_table,
    empirical_classes,
    pair_provenance,
    proven_classes,
    symmetry_classes,
)
from .counting import (
    DEFAULT_MAX_BOX,
    DEFAULT_MAX_N,
    BudgetError,
    count_avoiders,
    count_avoiders_shape,
)
from .bijection import backward, forward
from .perms import SYMMETRIES, apply_symmetry, format_perm, parse_perm
from .shapes import format_shape, parse_shape, square_shape
from .verify import REGISTRY, run_check


def _default_jobs() -> int:
    try:
        return max(1, int(os.environ.get("EVENWILF_JOBS", "1")))
    except ValueError:
        return 1


def _print_table(headers, rows, separators=None, file=None):
    """Plain aligned columns; separators maps a row index to 'solid' or
    'dotted' -- a rule drawn *after* that row."""
    file = file or sys.stdout
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    fmt = "  ".join("{:<%d}" % w for w in widths)
    total = sum(widths) + 2 * (len(widths) - 1)
    print(fmt.format(*cells[0]).rstrip(), file=file)
    print("-" * total, file=file)
    for i, row in enumerate(cells[1:]):
        print(fmt.format(*row).rstrip(), file=file)
        kind = (separators or {}).get(i)
        if kind == "solid":
            print("-" * total, file=file)
        elif kind == "dotted":
            print((". " * ((total + 1) // 2))[:total], file=file)


def _print_csv(headers, rows, file=None):
    w = csv.writer(file or sys.stdout, lineterminator="\n")
    w.writerow(headers)
    w.writerows(rows)


def _emit(fmt, headers, rows, payload, separators=None):
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    elif fmt == "csv":
        _print_csv(headers, rows)
    else:
        _print_table(headers, rows, separators)


# -- count -------------------------------------------------------------------


def cmd_count(args) -> int:
    sigma = parse_perm(args.pattern)
    cache = None if args.no_cache else CountCache()
    if args.shape is not None:
        parts = parse_shape(args.shape)
        triple = count_avoiders_shape(
            parts, sigma, jobs=args.jobs, max_box=args.max_box, cache=cache
        )
        where = ("shape", format_shape(parts))
    else:
        triple = count_avoiders(
            args.n, sigma, jobs=args.jobs, max_n=args.max_n, cache=cache
        )
        where = ("n", args.n)
    headers = ["pattern", where[0], "total", "even", "odd"]
    row = [format_perm(sigma), where[1], triple.total, triple.even, triple.odd]
    payload = {
        "pattern": format_perm(sigma),
        where[0]: where[1],
        "total": triple.total,
        "even": triple.even,
        "odd": triple.odd,
    }
    _emit(args.format, headers, [row], payload)
    return 0


# -- classify ----------------------------------------------------------------


def _full_symmetry_groups(block):
    """Split a block by classical symmetry orbits (all eight maps)."""
    seen = {}
    for p in block:
        orbit = frozenset(apply_symmetry(p, s) for s in SYMMETRIES)
        seen.setdefault(min(orbit), []).append(p)
    return [tuple(sorted(g)) for _, g in sorted(seen.items())]


def _classify_payload(args):
    cache = None if args.no_cache else CountCache()
    part = empirical_classes(
        args.k,
        args.max_n,
        args.mode,
        jobs=args.jobs,
        max_k=args.max_k,
        max_n=args.max_n,
        cache=cache,
    )
    even = args.mode == "even-wilf"
    proven = proven_classes(args.k) if even else None
    symmetry = symmetry_classes(args.k) if even else None
    values = (lambda v: v.evens()) if even else (lambda v: v.totals())

    blocks = []
    for block in part.blocks:
        if even:
            groups = {}
            for p in block:
                groups.setdefault(min(proven.block_of(p)), []).append(p)
            groups = [tuple(sorted(g)) for _, g in sorted(groups.items())]
        else:
            groups = _full_symmetry_groups(block)
        rep = block[0]
        rows = []
        for gi, group in enumerate(groups):
            for p in group:
                if p == rep:
                    basis = "representative"
                elif even:
                    basis = pair_provenance(
                        rep, p, proven=proven, symmetry=symmetry, horizon=args.max_n
                    )
                else:
                    basis = (
                        "symmetry" if gi == 0 else f"empirical(N={args.max_n})"
                    )
                rows.append((p, gi, basis, values(part.vectors[p])))
        blocks.append({"groups": groups, "rows": rows})
    return part, blocks


def cmd_classify(args) -> int:
    part, blocks = _classify_payload(args)
    kind = "even" if args.mode == "even-wilf" else "total"
    headers = (
        ["pattern", "block", "group", "basis"]
        + [f"{kind}{n}" for n in range(args.max_n + 1)]
    )
    rows, separators = [], {}
    for bi, blk in enumerate(blocks):
        for gi, group in enumerate(blk["groups"]):
            for p, _, basis, vec in (r for r in blk["rows"] if r[1] == gi):
                rows.append([format_perm(p), bi + 1, gi + 1, basis] + list(vec))
            if gi + 1 < len(blk["groups"]):
                separators[len(rows) - 1] = "dotted"
        if bi + 1 < len(blocks):
            separators[len(rows) - 1] = "solid"
    payload = {
        "k": args.k,
        "mode": args.mode,
        "horizon": args.max_n,
        "classes": len(blocks),
        "blocks": [
            {
                "patterns": [format_perm(p) for p, *_ in blk["rows"]],
                "groups": [[format_perm(p) for p in g] for g in blk["groups"]],
                "vectors": {
                    format_perm(p): list(vec) for p, _, _, vec in blk["rows"]
                },
            }
            for blk in blocks
        ],
    }
    _emit(args.format, headers, rows, payload, separators)
    return 0


# -- map ---------------------------------------------------------------------


def cmd_map(args) -> int:
    word = parse_perm(args.pattern)
    parts = parse_shape(args.shape) if args.shape else square_shape(len(word))
    mapper = forward if args.dir == "forward" else backward
    _, trace = mapper(parts, word, args.t)
    out = {
        "shape": format_shape(parts),
        "t": args.t,
        "direction": args.dir,
        **trace.as_dict(),
    }
    print(json.dumps(out, indent=2))
    return 0


# -- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    fn = REGISTRY[args.name]
    accepted = inspect.signature(fn).parameters
    params = {}
    for key in ("t", "box", "max_n", "alpha_max", "max_len"):
        value = getattr(args, key)
        if value is not None:
            if key not in accepted:
                print(
                    f"error: check {args.name!r} takes no --{key.replace('_', '-')}",
                    file=sys.stderr,
                )
                return 1
            params[key] = value
    if "jobs" in accepted:
        params["jobs"] = args.jobs
    if "cache" in accepted and not args.no_cache:
        params["cache"] = CountCache()
    report = run_check(args.name, **params)
    if args.format == "json":
        print(json.dumps(report.as_dict(), indent=2))
    elif args.format == "csv":
        d = report.as_dict()
        headers = ["name", "status", "params", "horizons", "witness", "details",
                   "elapsed_ms", "tool_version"]
        row = [
            d["name"], d["status"], json.dumps(d["params"], sort_keys=True),
            json.dumps(d["horizons"], sort_keys=True),
            json.dumps(d.get("witness"), sort_keys=True),
            json.dumps(d.get("details"), sort_keys=True),
            d["elapsed_ms"], d["tool_version"],
        ]
        _print_csv(headers, [row])
    else:
        d = report.as_dict()
        for key in ("name", "status", "params", "horizons", "witness", "details",
                    "elapsed_ms", "tool_version"):
            if key in d:
                value = d[key]
                if isinstance(value, dict):
                    value = json.dumps(value, sort_keys=True)
                print(f"{key}: {value}")
    return 2 if report.status == "refuted" else 0


# -- tables ------------------------------------------------------------------


def cmd_tables(args) -> int:
    cache = None if args.no_cache else CountCache()
    counts = class_count_table(
        args.max_len, args.max_n, jobs=args.jobs, cache=cache, max_n=args.max_n
    )
    count_headers = ["k", "wilf", "wilf_ref", "even_wilf", "even_wilf_ref"]
    count_rows = [
        [r["k"], r["wilf_classes"], r["wilf_reference"] or "",
         r["even_wilf_classes"], r["even_wilf_reference"] or ""]
        for r in counts
    ]
    if args.format == "csv":  # csv mode emits the summary table only
        _print_csv(count_headers, count_rows)
        return 0

    sections = []
    for k in range(3, args.max_len + 1):
        sub = argparse.Namespace(
            k=k, max_n=args.max_n, mode="even-wilf", jobs=args.jobs,
            max_k=args.max_k, no_cache=args.no_cache, format=args.format,
        )
        sections.append((k, sub))

    if args.format == "json":
        payload = {"horizon": args.max_n, "class_counts": counts, "classifications": []}
        for k, sub in sections:
            part, blocks = _classify_payload(sub)
            payload["classifications"].append(
                {
                    "k": k,
                    "classes": len(blocks),
                    "blocks": [
                        {
                            "patterns": [format_perm(p) for p, *_ in blk["rows"]],
                            "groups": [[format_perm(p) for p in g] for g in blk["groups"]],
                        }
                        for blk in blocks
                    ],
                }
            )
        print(json.dumps(payload, indent=2))
        return 0

    print(f"class counts at horizon N={args.max_n}")
    _print_table(count_headers, count_rows)
    for k, sub in sections:
        print()
        print(f"even-avoider classes, length {k}, horizon N={args.max_n}")
        cmd_classify(sub)
    return 0


# -- wiring ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evenwilf",
        description="Parity-split pattern avoidance: counts, classes, rotation maps.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--verify-cache",
        action="store_true",
        help="recompute a sample of cached counts and fail on any mismatch",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("table", "csv", "json"), default="table",
        help="output format (default: table)",
    )
    common.add_argument(
        "--jobs", type=int, default=_default_jobs(),
        help="worker processes (default: $EVENWILF_JOBS or 1)",
    )
    common.add_argument(
        "--no-cache", action="store_true", help="skip the on-disk count cache"
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("count", parents=[common], help="count avoiders, split by sign")
    p.add_argument("pattern", help="pattern, e.g. 321 or '3 2 1'")
    where = p.add_mutually_exclusive_group(required=True)
    where.add_argument("--n", type=int, help="count over permutations of 1..n")
    where.add_argument("--shape", help="count over transversals, e.g. 5,5,5,3,2")
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="length budget")
    p.add_argument("--max-box", type=int, default=DEFAULT_MAX_BOX, help="shape budget")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("classify", parents=[common], help="group patterns by count vectors")
    p.add_argument("k", type=int, help="pattern length")
    p.add_argument("--max-n", type=int, default=9, help="horizon (default: 9)")
    p.add_argument(
        "--mode", choices=("even-wilf", "wilf"), default="even-wilf",
        help="compare even-avoider counts or totals",
    )
    p.add_argument("--max-k", type=int, default=6, help="pattern-length budget")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("map", parents=[common], help="apply a rotation bijection")
    p.add_argument("pattern", help="the transversal word to map")
    p.add_argument("--shape", help="its shape (default: the square)")
    p.add_argument("--t", type=int, required=True, help="rotation window length")
    p.add_argument(
        "--dir", choices=("forward", "backward"), default="forward",
        help="eliminate decreasing copies (forward) or max-last copies (backward)",
    )
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("verify", parents=[common], help="run a named statement check")
    p.add_argument("name", choices=sorted(REGISTRY), help="which check to run")
    p.add_argument("--t", type=int, help="rotation window length")
    p.add_argument("--box", type=int, help="largest square box to sweep")
    p.add_argument("--max-n", type=int, help="length horizon")
    p.add_argument("--alpha-max", type=int, help="largest appended-tail length")
    p.add_argument("--max-len", type=int, help="largest pattern length")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("tables", parents=[common], help="reproduce the summary tables")
    p.add_argument("--max-len", type=int, default=4, help="largest pattern length")
    p.add_argument("--max-n", type=int, default=9, help="horizon (default: 9)")
    p.add_argument("--max-k", type=int, default=6, help="pattern-length budget")
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors, 0 on --help
        return 0 if exc.code == 0 else 1
    if args.verify_cache:
        cache = CountCache()
        mismatches = cache.verify_sample()
        if mismatches:
            for m in mismatches:
                print(
                    f"cache mismatch for {m['key']}: cached {m['cached']}, "
                    f"recomputed {m['fresh']}",
                    file=sys.stderr,
                )
            return 1
        print(f"cache ok: {len(cache)} entries, sample verified")
        return 0
    if args.command is None:
        parser.print_usage(sys.stderr)
        return 1
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    sys.exit(main())
