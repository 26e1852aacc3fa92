"""Command-line frontend.

Exit codes: 0 success, 1 verification failure, 2 input error,
3 resource limit, 4 inverse-problem failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import binpoly, configs, swiatkowski
from .errors import (
    CapExceeded,
    GrapeError,
    InconsistentDegrees,
    NonIntegerRoot,
    ParseError,
    ResourceLimit,
    RoundTripMismatch,
    ValidationError,
)
from .exactla import QQ, FieldSpec, PrimeField
from .graphs import GrapeGraph, essential_vertices, load_grape
from .hilbert import (
    disjoint_union_table,
    hilbert_table,
    one_bridge_table,
    recover_local_data,
    table_json_dict,
    table_text,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_RESOURCE, EXIT_INVERSE = 0, 1, 2, 3, 4


def _parse_field(text: str) -> FieldSpec:
    if text == "q":
        return QQ
    if text.startswith("p:"):
        try:
            return PrimeField(int(text[2:]))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown field {text!r} (use q or p:<prime>)")


def _graph_files(args) -> list[str]:
    if args.corpus:
        names = sorted(f for f in os.listdir(args.corpus) if f.endswith(".grape"))
        if not names:
            raise ParseError(f"no .grape files in {args.corpus}")
        return [os.path.join(args.corpus, f) for f in names]
    if not args.file:
        raise ParseError("a graph file (or --corpus DIR) is required")
    return [args.file]


def _dump_matrices(g: GrapeGraph, directory: str, imax: int, kmax: int) -> None:
    os.makedirs(directory, exist_ok=True)
    cx = swiatkowski.complex_for(g)
    for i in range(1, imax + 1):
        for k in range(kmax + 1):
            m = cx.boundary_matrix(i, k)
            path = os.path.join(directory, f"d_{i}_{k}.mtx")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write("%%MatrixMarket matrix coordinate integer general\n")
                fh.write(f"{m.rows} {m.cols} {m.nnz}\n")
                for r, c, v in m.entries:
                    fh.write(f"{r + 1} {c + 1} {v}\n")


def cmd_hilbert(args) -> int:
    for path in _graph_files(args):
        g = load_grape(path)
        t = hilbert_table(g)
        if len(_graph_files(args)) > 1:
            print(f"# {path}")
        if args.json:
            print(json.dumps(table_json_dict(t), sort_keys=True))
        else:
            print(table_text(t))
    return EXIT_OK


def cmd_betti(args) -> int:
    field = _parse_field(args.field)
    for path in _graph_files(args):
        g = load_grape(path)
        if len(_graph_files(args)) > 1:
            print(f"# {path}")
        imax = args.imax if args.imax is not None else len(essential_vertices(g)) + 1
        header = ["i\\k"] + [str(k) for k in range(args.kmax + 1)]
        print("\t".join(header))
        for i in range(imax + 1):
            row = [str(swiatkowski.betti(g, i, k, field)) for k in range(args.kmax + 1)]
            print("\t".join([str(i)] + row))
        if args.dump_matrix:
            _dump_matrices(g, args.dump_matrix, imax, args.kmax)
    return EXIT_OK


def _verify_column(payload) -> list[str]:
    g, imax, ks, field = payload
    cx = swiatkowski.Complex(g)
    t = hilbert_table(g)
    lines = []
    for k in ks:
        for i in range(imax + 1):
            oracle = cx.betti(i, k, field)
            expect = t.value(i, k)
            status = "PASS" if oracle == expect else "FAIL"
            lines.append(f"{status} oracle i={i} k={k} betti={oracle} formula={expect}")
    return lines


def cmd_verify(args) -> int:
    field = _parse_field(args.field)
    failed = False
    for path in _graph_files(args):
        g = load_grape(path)
        print(f"# verify {path}")
        ess = essential_vertices(g)
        imax = args.imax if args.imax is not None else len(ess) + 1
        lines: list[str] = []
        if args.jobs > 1:
            columns = [(g, imax, [k], field) for k in range(args.kmax + 1)]
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                for chunk in pool.map(_verify_column, columns):
                    lines.extend(chunk)
        else:
            lines.extend(_verify_column((g, imax, range(args.kmax + 1), field)))
        # basis certificate where whole-graph configurations are defined
        if g.n > 1 and ess:
            for i in range(min(imax, len(ess)) + 1):
                for k in range(min(args.kmax, args.basis_kmax) + 1):
                    count, rk, equal = swiatkowski.basis_rank_check(g, i, k, field)
                    status = "PASS" if equal else "FAIL"
                    lines.append(f"{status} basis i={i} k={k} count={count} rank={rk}")
            from .hilbert import betti_recurrence_check

            for e in g.stem_edges:
                for i in range(imax + 1):
                    for k in range(args.kmax + 1):
                        ok = betti_recurrence_check(g, e, i, k)
                        status = "PASS" if ok else "FAIL"
                        lines.append(f"{status} recurrence e=({e[0]},{e[1]}) i={i} k={k}")
        for line in lines:
            print(line)
        bad = sum(1 for line in lines if line.startswith("FAIL"))
        print(f"# {len(lines) - bad} passed, {bad} failed")
        failed = failed or bad > 0
    return EXIT_FAIL if failed else EXIT_OK


def cmd_enumerate(args) -> int:
    for path in _graph_files(args):
        g = load_grape(path)
        if args.j is not None:
            items = configs.enum_she_grape(g, args.i, args.j)
            if args.count_only:
                print(configs.count_she_grape(g, args.i, args.j))
            else:
                for it in items:
                    print(configs.render_grape_she(it))
        else:
            if args.count_only:
                print(configs.count_he_grape(g, args.i, args.k))
            else:
                for it in configs.enum_he_grape(g, args.i, args.k, args.cap):
                    print(configs.render_grape_he(it))
    return EXIT_OK


def cmd_recover(args) -> int:
    with open(args.polyfile, encoding="utf-8") as fh:
        lines = [line.strip() for line in fh if line.strip()]
    polys = [binpoly.parse(line) for line in lines]
    try:
        data = recover_local_data(polys, allow_bouquet=args.allow_bouquet)
    except (NonIntegerRoot, InconsistentDegrees, RoundTripMismatch) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVERSE
    body = ", ".join(f"({ell},{m}) x {count}" for (ell, m), count in sorted(data.items()))
    print("{" + body + "}")
    return EXIT_OK


def cmd_cycles(args) -> int:
    field = _parse_field(args.field)
    ok = True
    for path in _graph_files(args):
        g = load_grape(path)
        count, rk, equal = swiatkowski.basis_rank_check(g, args.i, args.k, field, args.cap)
        print(f"configurations={count} rank_in_homology={rk} "
              f"betti={swiatkowski.betti(g, args.i, args.k, field)} basis={equal}")
        if args.show:
            from .graphs import canonical_labeling

            labeling = canonical_labeling(g)
            for x in configs.enum_he_grape(g, args.i, args.k, args.cap):
                chain = swiatkowski.he_to_chain(g, x, labeling)
                print(f"{configs.render_grape_he(x)} -> {len(chain.data)} chain terms")
        ok = ok and equal
    return EXIT_OK if ok else EXIT_FAIL


def cmd_series(args) -> int:
    t1 = hilbert_table(load_grape(args.file1))
    t2 = hilbert_table(load_grape(args.file2))
    combined = disjoint_union_table(t1, t2) if args.op == "union" else one_bridge_table(t1, t2)
    if args.json:
        print(json.dumps(table_json_dict(combined), sort_keys=True))
    else:
        print(table_text(combined))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grapeconf",
        description="Exact homology of configuration spaces of graphs with "
                    "circumference at most one.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_graph_arg(p):
        p.add_argument("file", nargs="?", help="graph file (.grape or .json)")
        p.add_argument("--corpus", help="run over every .grape file in a directory")

    p = sub.add_parser("hilbert", help="print the polynomial table")
    add_graph_arg(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("betti", help="Betti numbers from the chain complex")
    add_graph_arg(p)
    p.add_argument("--imax", type=int, default=None)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--field", default="q", help="q or p:<prime>")
    p.add_argument("--dump-matrix", metavar="DIR", help="write MatrixMarket files")
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("verify", help="cross-check the complex against the formulas")
    add_graph_arg(p)
    p.add_argument("--imax", type=int, default=None)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--basis-kmax", type=int, default=3)
    p.add_argument("--field", default="q")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list or count marked configurations")
    add_graph_arg(p)
    p.add_argument("--i", type=int, required=True, help="number of marks")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--j", type=int, help="standard configurations of this size")
    group.add_argument("--k", type=int, help="weighted configurations of this size")
    p.add_argument("--count-only", action="store_true")
    p.add_argument("--cap", type=int, default=100_000)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("recover", help="local data from a polynomial file")
    p.add_argument("polyfile")
    p.add_argument("--allow-bouquet", action="store_true")
    p.set_defaults(func=cmd_recover)

    p = sub.add_parser("cycles", help="basis certificate for explicit cycles")
    add_graph_arg(p)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--field", default="q")
    p.add_argument("--cap", type=int, default=100_000)
    p.add_argument("--show", action="store_true", help="print each configuration")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("series", help="combine two tables (disjoint union / gluing)")
    p.add_argument("op", choices=["union", "bridge"])
    p.add_argument("file1")
    p.add_argument("file2")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"error: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ParseError, ValidationError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GrapeError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
