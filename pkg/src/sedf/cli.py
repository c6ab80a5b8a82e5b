"""Command-line interface: ``sedf verify|construct|classify|sweep|search|region|crosscheck``.

Exit codes: 0 success / property holds, 1 property fails, 2 usage or parse
error, 3 search budget exhausted.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from .algebra import ParseError, resolve_group
from .constructions import ConstructionDescriptor
from .diffcore import format_element, verify_edf, verify_gsedf, verify_pds, verify_sedf
from .feasibility import (
    GsedfParams,
    SedfParams,
    Status,
    classify,
    classify_gsedf,
    enumerate_feasible,
    region_grid,
    sweep_table,
)
from .formats import append_records, format_family, make_record, read_family, write_family
from .search import SearchOptions, Symmetry, characterization_crosscheck, search_pds, search_sedf

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def cmd_verify(args: argparse.Namespace) -> int:
    fam = read_family(args.file)
    g = fam.group
    n = g.order
    if args.mode == "pds":
        if fam.m != 1:
            raise UsageError("pds mode expects a file with exactly one set")
        v = verify_pds(fam.sets[0], g)
        if not v.is_pds:
            print(f"not a PDS: {v.failure.describe(g)}")
            return EXIT_FAIL
        p = v.params
        tags = "".join([" regular" if v.regular else "", " paley" if v.paley_type else ""])
        print(f"PDS({p.v},{p.k},{p.lam},{p.mu}){tags}")
        return EXIT_OK
    if fam.m < 2:
        raise UsageError(f"{args.mode} mode needs at least two sets")
    if args.mode == "sedf":
        v = verify_sedf(fam)
        if v.is_sedf:
            print(f"SEDF({n},{fam.m},{v.k},{v.lam})")
            return EXIT_OK
    elif args.mode == "edf":
        v = verify_edf(fam)
        if v.is_edf:
            print(f"EDF({n},{fam.m},{v.k},{v.lam})")
            return EXIT_OK
    else:
        v = verify_gsedf(fam)
        if v.is_gsedf:
            ks = ",".join(map(str, fam.sizes))
            ls = ",".join(map(str, v.lambdas))
            print(f"GSEDF({n},{fam.m};{ks};{ls})")
            return EXIT_OK
    detail = v.failure.describe(g) if v.failure is not None else v.reason
    print(f"not an {args.mode.upper()}: {detail}")
    return EXIT_FAIL


def cmd_construct(args: argparse.Namespace) -> int:
    try:
        desc = ConstructionDescriptor(args.name, tuple(args.params))
        fam = desc.build()
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text = format_family(fam)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    try:
        if args.gsedf:
            if len(args.values) != 3:
                raise UsageError("gsedf form: classify --gsedf N K1,K2,... L1,L2,...")
            n = int(args.values[0])
            p = GsedfParams(n, _ints(args.values[1]), _ints(args.values[2]))
            verdict, kind = classify_gsedf(p), "gsedf"
        else:
            if len(args.values) != 4:
                raise UsageError("usage: classify N M K LAMBDA")
            p = SedfParams(*(int(v) for v in args.values))
            verdict, kind = classify(p), "sedf"
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(f"{p}: {verdict}")
    if args.catalog:
        append_records(args.catalog, [make_record(kind, str(p), verdict)])
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace) -> int:
    if args.n_max < 2:
        raise UsageError("n_max must be >= 2")
    rows = enumerate_feasible(args.n_max)
    if args.lam is not None:
        rows = [r for r in rows if r[0].lam == args.lam]
    if args.m is not None:
        rows = [r for r in rows if r[0].m == args.m]
    if args.status:
        rows = [r for r in rows if r[1].status.value in args.status]
    if args.format == "csv":
        print("n,m,k,lambda,status,rules,witness")
        for p, v in rows:
            print(f"{p.n},{p.m},{p.k},{p.lam},{v.status.value},{'|'.join(v.rules_fired)},{v.witness or ''}")
    else:
        sys.stdout.write(sweep_table(rows))
        counts = {s.value: sum(1 for _, v in rows if v.status is s) for s in Status}
        print("summary: " + ", ".join(f"{k}={n}" for k, n in counts.items()))
    if args.catalog:
        append_records(args.catalog, [make_record("sedf", str(p), v) for p, v in rows])
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    group = resolve_group(args.group)
    symmetry = args.symmetry or ("none" if args.mode == "pds" else "translation")
    try:
        opts = SearchOptions(Symmetry(symmetry), args.limit, args.budget, args.workers, args.engine)
        if args.mode == "pds":
            if len(args.values) != 3:
                raise UsageError("pds search takes K LAMBDA MU")
            report = search_pds(group, *args.values, opts=opts)
        else:
            if len(args.values) != 3:
                raise UsageError("sedf search takes M K LAMBDA")
            report = search_sedf(group, *args.values, opts=opts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for i, fam in enumerate(report.families, 1):
            write_family(out / f"{args.mode}_{group.spec}_{i:04d}.txt", fam)
    else:
        for fam in report.families:
            sys.stdout.write(format_family(fam))
            print()
    print(
        f"found {report.count} families, nodes_explored={report.nodes_explored}, "
        f"exhausted={str(report.exhausted).lower()}"
    )
    if report.stopped_by == "budget":
        return EXIT_BUDGET
    return EXIT_OK


def cmd_region(args: argparse.Namespace) -> int:
    try:
        grid = region_grid(args.lam, args.m_max, args.k_max)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    sys.stdout.write(grid.to_csv() if args.format == "csv" else grid.to_text())
    return EXIT_OK


def cmd_crosscheck(args: argparse.Namespace) -> int:
    group = resolve_group(args.group)
    try:
        rep = characterization_crosscheck(group)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(
        f"{group.spec}: {rep.partitions} partitions, {len(rep.sedf_partitions)} SEDF partitions, "
        f"agree={str(rep.agree).lower()}"
    )
    for d1, is_sedf, paley in rep.counterexamples:
        elems = " ".join(format_element(group, x) for x in d1)
        print(f"counterexample: D1 = {elems}  sedf={is_sedf} paley={paley}")
    return EXIT_OK if rep.agree else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sedf", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a family file")
    p.add_argument("file")
    p.add_argument("--mode", choices=["sedf", "edf", "gsedf", "pds"], default="sedf")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a family file for a named construction")
    p.add_argument("name")
    p.add_argument("params", nargs="*", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("classify", help="classify (n, m, k, lambda) or, with --gsedf, a GSEDF vector")
    p.add_argument("values", nargs="+")
    p.add_argument("--gsedf", action="store_true")
    p.add_argument("--catalog")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("sweep", help="classify every parameter set with n <= N")
    p.add_argument("n_max", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--status", action="append", choices=[s.value for s in Status])
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.add_argument("--catalog")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("search", help="exhaustive search in one group")
    p.add_argument("values", nargs=3, type=int, metavar="INT")
    p.add_argument("--group", required=True)
    p.add_argument("--mode", choices=["sedf", "pds"], default="sedf")
    p.add_argument("--symmetry", choices=[s.value for s in Symmetry])
    p.add_argument("--limit", type=int)
    p.add_argument("--budget", type=int)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--engine", choices=["auto", "python", "numba"], default="auto")
    p.add_argument("--out")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("region", help="violation grid of the lambda inequality")
    p.add_argument("lam", type=int, metavar="LAMBDA")
    p.add_argument("--m-max", type=int, default=20)
    p.add_argument("--k-max", type=int, default=20)
    p.add_argument("--format", choices=["text", "csv"], default="text")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("crosscheck", help="partition-type SEDF vs Paley PDS over all partitions")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_crosscheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
