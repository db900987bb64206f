"""Command-line front end.

Exit codes: 0 success, 1 verification mismatch, 2 input error,
3 resource ceiling.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from collections import Counter
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .cdc import DEFAULT_ORACLE_BOUND
from .construct import ALL_TYPES, CensusRecord, Limits, census_graph, parse_types
from .errors import CeilingExceeded, EtsurfError, InputError
from .graph import parse_corpus, parse_graph6, write_graph6
from .perm import DEFAULT_MAX_ORDER, Permutation
from .surface import load_surface_json
from .verify import oracle_check, relabel_check, verify_fixture

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_CEILING = 0, 1, 2, 3

ENV = {
    "max_aut_order": "ETSURF_MAX_AUT_ORDER",
    "oracle_bound": "ETSURF_ORACLE_BOUND",
    "types": "ETSURF_TYPES",
    "jobs": "ETSURF_JOBS",
}


def _env(key, default, cast=str):
    raw = os.environ.get(ENV[key])
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError:
        raise SystemExit(f"error: bad value {raw!r} for {ENV[key]}")


def _types_arg(text):
    try:
        return parse_types(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _perm_arg(text):
    try:
        return Permutation(int(x) for x in text.split(","))
    except (ValueError, InputError) as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="etsurf",
        description="Construct and verify edge-transitive surfaces from edge-transitive cubic graphs.",
    )
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--max-aut-order",
        type=int,
        default=_env("max_aut_order", DEFAULT_MAX_ORDER, int),
        help=f"refuse graphs whose automorphism group is larger (default {DEFAULT_MAX_ORDER}, env {ENV['max_aut_order']})",
    )
    common.add_argument(
        "--types",
        type=_types_arg,
        default=_env("types", ALL_TYPES, parse_types),
        help=f"face-edge types to report, e.g. '1,2;1,4;2,1;2,2' (default all, env {ENV['types']})",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", parents=[common], help="run the construction over a graph6 corpus")
    c.add_argument("corpus", help="graph6 corpus file (one graph per line, '#' comments)")
    c.add_argument("-o", "--output", required=True, help="JSON Lines census file to write")
    c.add_argument(
        "--jobs",
        type=int,
        default=_env("jobs", 1, int),
        help=f"graphs processed in parallel (default 1, env {ENV['jobs']})",
    )

    v = sub.add_parser("verify-fixture", help="load a surface JSON file and run every invariant")
    v.add_argument("surface", help='JSON document {"faces": [[a, b, c], ...], "metadata": {...}}')

    o = sub.add_parser("oracle-check", parents=[common], help="compare the pipeline with brute-force CDC enumeration")
    o.add_argument("graph6", help="one graph6 line")
    o.add_argument(
        "--oracle-bound",
        type=int,
        default=_env("oracle_bound", DEFAULT_ORACLE_BOUND, int),
        help=f"largest vertex count the oracle accepts (default {DEFAULT_ORACLE_BOUND}, env {ENV['oracle_bound']})",
    )

    r = sub.add_parser("relabel-check", parents=[common], help="compare census output on a relabelled copy")
    r.add_argument("graph6", help="one graph6 line")
    r.add_argument("--seed", type=int, default=0, help="seed for the random relabelling (default 0)")
    r.add_argument("--perm", type=_perm_arg, help="explicit relabelling as comma-separated images")
    return p


# --------------------------------------------------------------------------
# census
# --------------------------------------------------------------------------


def _census_one(args):
    name, line, types, limits = args
    try:
        g = parse_graph6(line, name=name)
        return name, [r.to_json() for r in census_graph(g, name, types, limits)], None
    except CeilingExceeded as exc:
        return name, [], ("ceiling", str(exc))
    except EtsurfError as exc:
        return name, [], ("input", str(exc))


def summary_table(records) -> list[str]:
    counts = Counter(r.fe_label for r in records)
    rows = [
        ("(1,4)", counts["(1,4)"], "x", "x"),
        ("(1,2)", counts["(1,2).1"] + counts["(1,2).2"], counts["(1,2).1"], counts["(1,2).2"]),
        ("(2,2)", counts["(2,2)"], "x", "x"),
        ("(2,1)", counts["(2,1)"], "x", "x"),
    ]
    out = [f"{'fe(X)':<8}{'count':>7}{'type 1':>8}{'type 2':>8}"]
    out += [f"{a:<8}{b:>7}{c:>8}{d:>8}" for a, b, c, d in rows]
    orient = sum(1 for r in records if r.orientable)
    out.append(f"{'total':<8}{len(records):>7}")
    out.append(f"orientable {orient}, non-orientable {len(records) - orient}")
    return out


def cmd_census(args) -> int:
    try:
        with open(args.corpus, "rb") as fh:
            raw = fh.read()
        corpus = parse_corpus(raw.decode("ascii"))
    except (OSError, UnicodeDecodeError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    limits = Limits(max_aut_order=args.max_aut_order)
    work = [(name, write_graph6(g), args.types, limits) for name, g in corpus]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_census_one, work))
    else:
        results = [_census_one(w) for w in work]

    records, failures = [], []
    for name, recs, err in results:
        records.extend(CensusRecord.from_json(r) for r in recs)
        if err:
            failures.append({"graph_id": name, "kind": err[0], "error": err[1]})
    records.sort()
    header = {
        "tool": "etsurf",
        "version": __version__,
        "ceilings": {
            "max_aut_order": limits.max_aut_order,
            "max_subgroups": limits.max_subgroups,
            "max_paths": limits.max_paths,
        },
        "types": [f"{f},{s}" for f, s in args.types],
        "corpus_sha256": hashlib.sha256(raw).hexdigest(),
        "graphs": [name for name, _ in corpus],
        "failures": failures,
    }
    with open(args.output, "w") as fh:
        fh.write(json.dumps({"header": header}, sort_keys=True, separators=(",", ":")) + "\n")
        for r in records:
            fh.write(json.dumps(r.to_json(), sort_keys=True, separators=(",", ":")) + "\n")

    for line in summary_table(records):
        print(line)
    for f in failures:
        print(f"FAILED {f['graph_id']}: {f['error']}", file=sys.stderr)
    if not failures:
        return EXIT_OK
    return EXIT_CEILING if any(f["kind"] == "ceiling" for f in failures) else EXIT_INPUT


def read_census(path) -> tuple[dict, list[CensusRecord]]:
    with open(path) as fh:
        lines = [json.loads(ln) for ln in fh if ln.strip()]
    return lines[0]["header"], [CensusRecord.from_json(d) for d in lines[1:]]


# --------------------------------------------------------------------------
# checks
# --------------------------------------------------------------------------


def cmd_verify_fixture(args) -> int:
    try:
        surface, meta = load_surface_json(args.surface)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    report = verify_fixture(surface, meta.get("name") or os.path.basename(args.surface))
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_oracle_check(args) -> int:
    g = parse_graph6(args.graph6)
    report = oracle_check(g, args.graph6, bound=args.oracle_bound, limits=Limits(args.max_aut_order))
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


def cmd_relabel_check(args) -> int:
    g = parse_graph6(args.graph6)
    report = relabel_check(g, seed=args.seed, perm=args.perm, graph_id=args.graph6,
                           limits=Limits(args.max_aut_order))
    for line in report.lines():
        print(line)
    return EXIT_OK if report.ok else EXIT_MISMATCH


COMMANDS = {
    "census": cmd_census,
    "verify-fixture": cmd_verify_fixture,
    "oracle-check": cmd_oracle_check,
    "relabel-check": cmd_relabel_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except CeilingExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CEILING
    except EtsurfError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
