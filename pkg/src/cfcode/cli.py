"""Command line surface: report parameters, generate matrix files, verify
them, query single entries, and construct witness rows.

Exit codes: 0 success (verify: property holds), 1 verify found a
counterexample, 2 invalid parameters or malformed input, 3 memory budget
exceeded, 4 witness search proved no witness exists. Data and reports go to
stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import warnings
from typing import Sequence

from .combinatorics import KSubset
from .code_core import (
    BudgetError,
    CodeParams,
    MATERIALIZE_BIT_BUDGET,
    ParameterError,
    RowLabel,
    asymptotic_estimates,
    best_k,
    column_from_rank,
    column_rank,
    dimensions,
    entry,
    materialize,
    row_label_from_rank,
    row_rank_from_label,
    validate,
)
from .matrix_io import MatrixFormatError, read_matrix, write_matrix
from .verification import (
    Verdict,
    WitnessSearchError,
    verify_cover_free,
    witness_counts,
    witness_row,
)

EXIT_OK = 0
EXIT_PROPERTY_FAILS = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

_SET_LITERAL = re.compile(r"\{[^{}]*\}")


def _parse_set(text: str, ground: int) -> KSubset:
    text = text.strip()
    if not (text.startswith("{") and text.endswith("}")):
        raise ValueError(f"expected a set literal like {{1,2,3}}, got {text!r}")
    body = text[1:-1].strip()
    if not body:
        raise ValueError("empty set literal")
    try:
        values = [int(part) for part in body.split(",")]
    except ValueError:
        raise ValueError(f"non-integer element in {text!r}") from None
    return KSubset.from_elements(values, ground)


def _parse_family(text: str, ground: int) -> list[KSubset]:
    """Parse one or more set literals separated by ',' or ';'."""
    literals = _SET_LITERAL.findall(text)
    leftover = _SET_LITERAL.sub("", text)
    if leftover.replace(";", "").replace(",", "").strip():
        raise ValueError(f"unexpected text outside set literals: {text!r}")
    if not literals:
        raise ValueError(f"expected set literals like {{1,2,3}}, got {text!r}")
    return [_parse_set(lit, ground) for lit in literals]


def _format_positions(cols: Sequence[int]) -> str:
    return "{" + ",".join(str(c) for c in cols) + "}"


def _cmd_params(args: argparse.Namespace) -> int:
    if args.best_k:
        k_star, t_star = best_k(args.n, args.s, args.l)
        params = CodeParams(args.n, k_star, args.s, args.l)
        extra = {"k_star": k_star, "t_star": t_star}
    else:
        params = CodeParams(args.n, args.k, args.s, args.l)
        extra = {}
    dims = dimensions(params)
    _, rows_estimate = asymptotic_estimates(params.n, params.s, params.ell)
    if args.json:
        payload = {
            "n": params.n, "k": params.k, "s": params.s, "l": params.ell,
            "num_rows": dims.num_rows, "num_cols": dims.num_cols,
            "column_weight": dims.column_weight, "rate": dims.rate,
            "rows_estimate": rows_estimate, **extra,
        }
        print(json.dumps(payload))
    else:
        parts = [f"n={params.n}", f"k={params.k}", f"s={params.s}", f"l={params.ell}",
                 f"N={dims.num_rows}", f"t={dims.num_cols}",
                 f"w={dims.column_weight}", f"rate={dims.rate:.6g}",
                 f"N_estimate={rows_estimate:.6g}"]
        if extra:
            parts.append(f"k_star={extra['k_star']}")
            parts.append(f"t_star={extra['t_star']}")
        print(" ".join(parts))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    params = CodeParams(args.n, args.k, args.s, args.l)
    matrix = materialize(params, max_bits=args.max_bits)
    write_matrix(matrix, args.out, params=params)
    print(f"{args.out}: {matrix.num_rows}x{matrix.num_cols}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    matrix, _ = read_matrix(args.file)
    threads = args.threads if args.threads is not None else (os.cpu_count() or 1)
    if args.count_witnesses:
        verdict, min_count, min_query = _verify_counting(matrix, args.s, args.l)
    else:
        verdict = verify_cover_free(matrix, args.s, args.l, threads=threads)
        min_count = min_query = None
    if args.json:
        counter = None
        if verdict.counterexample is not None:
            counter = {"neg": list(verdict.counterexample.neg_cols),
                       "pos": list(verdict.counterexample.pos_cols)}
        payload = {"holds": verdict.holds, "s": args.s, "l": args.l,
                   "rows": matrix.num_rows, "cols": matrix.num_cols,
                   "counterexample": counter,
                   "witness_count": verdict.witness_count}
        if min_count is not None:
            payload["min_witnesses"] = min_count
        print(json.dumps(payload))
    else:
        if verdict.holds:
            print(f"COVER-FREE ({args.s},{args.l})")
        else:
            print(f"NOT COVER-FREE ({args.s},{args.l})")
            assert verdict.counterexample is not None
            print(f"neg {_format_positions(verdict.counterexample.neg_cols)}")
            print(f"pos {_format_positions(verdict.counterexample.pos_cols)}")
        if min_count is not None and min_query is not None:
            print(f"min witnesses {min_count} at neg {_format_positions(min_query.neg_cols)} "
                  f"pos {_format_positions(min_query.pos_cols)}")
    return EXIT_OK if verdict.holds else EXIT_PROPERTY_FAILS


def _verify_counting(matrix, s: int, ell: int):
    """Full-count pass: verdict plus the minimum witness multiplicity."""
    first_fail = None
    last_count = 0
    min_count = None
    min_query = None
    for query, count in witness_counts(matrix, s, ell):
        if count == 0 and first_fail is None:
            first_fail = query
        if min_count is None or count < min_count:
            min_count, min_query = count, query
        last_count = count
    if first_fail is not None:
        return Verdict(False, first_fail, 0), min_count, min_query
    return Verdict(True, None, last_count), min_count, min_query


def _cmd_entry(args: argparse.Namespace) -> int:
    params = validate(CodeParams(args.n, args.k, args.s, args.l))
    if args.row is not None:
        row = RowLabel(tuple(_parse_family(args.row, params.n)))
        row_rank = row_rank_from_label(params, row)
    else:
        row = row_label_from_rank(params, args.row_rank)
        row_rank = args.row_rank
    if args.col is not None:
        col = _parse_family(args.col, params.n)
        if len(col) != 1:
            raise ValueError(f"--col takes a single set literal, got {args.col!r}")
        col = col[0]
        col_rank = column_rank(params, col)
    else:
        col = column_from_rank(params, args.col_rank)
        col_rank = args.col_rank
    bit = entry(params, row, col)
    print(bit)
    print(f"row rank={row_rank} label={row}")
    print(f"col rank={col_rank} set={col}")
    return EXIT_OK


def _cmd_witness(args: argparse.Namespace) -> int:
    params = validate(CodeParams(args.n, args.k, args.s, args.l))
    neg = _parse_family(args.neg, params.n)
    pos = _parse_family(args.pos, params.n)
    label = witness_row(params, neg, pos)
    rank = row_rank_from_label(params, label)
    confirmed = (all(entry(params, label, col) == 1 for col in pos)
                 and all(entry(params, label, col) == 0 for col in neg))
    if not confirmed:
        raise WitnessSearchError("constructed witness failed entry validation")
    print(str(label))
    print(f"rank={rank}")
    print(f"verified: 1 on all {len(pos)} positive and 0 on all {len(neg)} negative columns")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfcode",
        description="Constant-weight cover-free codes: generate, verify, query.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_params_args(p: argparse.ArgumentParser) -> None:
        p.add_argument("n", type=int, help="ground set size")
        p.add_argument("k", type=int, help="column subset size")
        p.add_argument("s", type=int, help="row member subset size")
        p.add_argument("l", type=int, help="subsets per row label")

    p = sub.add_parser("params", help="report exact and asymptotic dimensions")
    add_params_args(p)
    p.add_argument("--best-k", action="store_true",
                   help="ignore k and use the admissible k maximizing the column count")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_params)

    p = sub.add_parser("gen", help="materialize the matrix into a text file")
    add_params_args(p)
    p.add_argument("--out", required=True, help="output file path")
    p.add_argument("--max-bits", type=int, default=MATERIALIZE_BIT_BUDGET,
                   help="memory budget for the dense matrix, in bits")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("verify", help="exhaustively check the cover-free condition")
    p.add_argument("file", help="matrix file to check")
    p.add_argument("--s", type=int, required=True, help="negative family size")
    p.add_argument("--l", type=int, required=True, help="positive family size")
    p.add_argument("--threads", type=int, default=None,
                   help="worker threads (default: available parallelism)")
    p.add_argument("--count-witnesses", action="store_true",
                   help="disable early exit and report witness multiplicity")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("entry", help="compute one matrix entry by rank or label")
    add_params_args(p)
    row_group = p.add_mutually_exclusive_group(required=True)
    row_group.add_argument("--row-rank", type=int, help="0-based row rank")
    row_group.add_argument("--row", help='row label, e.g. "{1,2},{4,5}"')
    col_group = p.add_mutually_exclusive_group(required=True)
    col_group.add_argument("--col-rank", type=int, help="0-based column rank")
    col_group.add_argument("--col", help='column subset, e.g. "{1,2,3}"')
    p.set_defaults(func=_cmd_entry)

    p = sub.add_parser("witness", help="construct a row separating column families")
    add_params_args(p)
    p.add_argument("--neg", required=True,
                   help='columns the witness must avoid, e.g. "{1,2,3};{1,2,4}"')
    p.add_argument("--pos", required=True,
                   help='columns the witness must hit, e.g. "{3,4,5};{1,4,5}"')
    p.set_defaults(func=_cmd_witness)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            code = args.func(args)
        seen = set()
        for w in caught:
            text = str(w.message)
            if text not in seen:
                seen.add(text)
                print(f"warning: {text}", file=sys.stderr)
        return code
    except ParameterError as exc:
        print(f"error: violated constraint {exc.constraint}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except WitnessSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
