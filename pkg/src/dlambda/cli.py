"""Command-line front end: ``dlambda <command> [options]``.

Exit status: 0 clean, 1 theorem violation or domain error, 2 usage error,
3 conjecture counterexample found.
"""

from __future__ import annotations

import argparse
import io
import json
import os
import sys
from typing import Sequence, TextIO

from . import reports
from .errors import CapExceeded, DLambdaError
from .genset import GenSet, classify, validate_symmetric
from .group import DIHEDRAL, cyclic, dihedral, parse_element
from .morphisms import (
    check_length_transfer,
    find_relation_preserving_map,
    relation_signature,
)
from .presentations import (
    DEFAULT_SWEEP_CAP,
    FAMILIES,
    record_dict,
    summarize,
    sweep_conjecture1,
    sweep_conjecture2,
    verify_family,
)
from .wordlen import compute_lengths, export_cayley, lambda_report

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3
DEFAULT_SINGLE_CAP = 4096
CAP_ENV = "DLAMBDA_HARD_CAP"


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _caps() -> tuple[int, int]:
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_SINGLE_CAP, DEFAULT_SWEEP_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise CapExceeded(f"{CAP_ENV}={raw!r} is not an integer") from None
    return cap, cap


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dlambda",
        description="Word-length perturbation constants of dihedral groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def single(p, formats):
        p.add_argument("--n", type=_positive, required=True, help="group parameter")
        p.add_argument("--gen", action="append", required=True, metavar="ELEMENT",
                       help="generator, e.g. f, r^1*f, r^3 (repeat for each)")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output here instead of standard output")

    p = sub.add_parser("lambda", help="lambda1, lambda2 and diameter of one generating set")
    single(p, ["text", "csv", "json"])
    p.add_argument("--cyclic", action="store_true", help="work in the cyclic group C_n")

    p = sub.add_parser("classify", help="presentation class of one generating set")
    single(p, ["text", "json"])

    p = sub.add_parser("export", help="Cayley graph as DOT")
    single(p, ["dot"])
    p.add_argument("--cyclic", action="store_true", help="work in the cyclic group C_n")

    p = sub.add_parser("automorphism", help="relation-preserving map between two generating sets")
    single(p, ["text", "json"])
    p.add_argument("--to", action="append", required=True, metavar="ELEMENT",
                   help="target generator (repeat for each)")
    p.add_argument("--all", action="store_true", help="list every valid generator bijection")

    def ranged(p, formats):
        p.add_argument("--n-min", type=_positive, default=3)
        p.add_argument("--n-max", type=_positive, required=True)
        p.add_argument("--jobs", type=_positive, default=None,
                       help="worker processes (default: logical CPU count)")
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--out", help="write output here instead of standard output")

    p = sub.add_parser("verify", help="compare predictions with the oracle over a range of n")
    p.add_argument("--family", choices=sorted(FAMILIES), default="all")
    ranged(p, ["text", "csv", "json"])

    p = sub.add_parser("sweep", help="exhaustive conjecture sweeps over three-reflection sets")
    p.add_argument("--conjecture", choices=["1", "2", "all"], default="all")
    ranged(p, ["text", "json"])
    return parser


def _genset(n: int, texts: Sequence[str], cyclic_group: bool = False) -> GenSet:
    G = cyclic(n) if cyclic_group else dihedral(n)
    return validate_symmetric(n, [parse_element(t, G) for t in texts], group=G)


def _class_name(S: GenSet) -> str:
    if S.group.kind != DIHEDRAL or len(S) > 3:
        return ""
    return str(classify(S).kind)


def _cmd_lambda(args) -> tuple[str, int]:
    S = _genset(args.n, args.gen, args.cyclic)
    rep = lambda_report(S)
    cls = _class_name(S)
    if args.format == "csv":
        return reports.lambda_csv([(rep, cls)]), EXIT_OK
    if args.format == "json":
        return reports.to_json(reports.lambda_dict(rep, cls)), EXIT_OK
    head = f"class = {cls}\n" if cls else ""
    return f"{rep}\n{head}", EXIT_OK


def _cmd_classify(args) -> tuple[str, int]:
    S = _genset(args.n, args.gen)
    c = classify(S)
    info = {"genset": str(S), "class": str(c.kind)}
    if c.exponents is not None:
        info["translation"] = c.translation
        info["exponents"] = list(c.exponents)
    if c.subgroups is not None:
        h1, h2, h3, h12 = c.subgroups.as_tuple()
        info["subgroup_orders"] = {"H1": h1, "H2": h2, "H3": h3, "H1H2": h12}
        info["generating_pairs"] = [list(p) for p in c.generating_pairs]
    if args.format == "json":
        return reports.to_json(info), EXIT_OK
    lines = [str(S), f"class: {c.kind}"]
    if "exponents" in info:
        a, b = c.exponents
        lines.append(f"normalized: translation {c.translation}, a = {a}, b = {b}")
    if "subgroup_orders" in info:
        lines.append("subgroup orders: " + ", ".join(
            f"|{k}| = {v}" for k, v in info["subgroup_orders"].items()))
        pairs = " ".join(f"({i},{j})" for i, j in c.generating_pairs) or "none"
        lines.append(f"generating pairs: {pairs}")
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_export(args) -> tuple[str, int]:
    S = _genset(args.n, args.gen, args.cyclic)
    buf = io.BytesIO()
    export_cayley(S, compute_lengths(S), buf)
    return buf.getvalue().decode("utf-8"), EXIT_OK


def _cmd_automorphism(args) -> tuple[str, int]:
    S1 = _genset(args.n, args.gen)
    S2 = _genset(args.n, args.to)
    found = find_relation_preserving_map(S1, S2, all=args.all)
    tables = found if args.all else ([found] if found is not None else [])
    same_signature = relation_signature(S1) == relation_signature(S2)
    transfers = [check_length_transfer(S1, S2, A) for A in tables]
    if args.format == "json":
        out = {
            "source": str(S1),
            "target": str(S2),
            "signatures_equal": same_signature,
            "found": bool(tables),
            "maps": [
                {
                    "generators": [[str(s), str(t)] for s, t in A.generator_map],
                    "elements": [[str(g), str(h)] for g, h in A.rows()],
                    "diameters": list(T.diameters),
                    "lambda1": list(T.lambda1),
                    "lambda2": list(T.lambda2),
                }
                for A, T in zip(tables, transfers)
            ],
        }
        return reports.to_json(out), EXIT_OK
    lines = [f"source: {S1}", f"target: {S2}",
             f"signatures: {'equal' if same_signature else 'differ'}"]
    if not tables:
        lines.append("NoneFound")
    for A, T in zip(tables, transfers):
        lines += ["", f"map: {A.generator_text()}", str(A), f"transfer: {T}"]
    if args.all:
        lines.append(f"{len(tables)} valid map(s)")
    return "\n".join(lines) + "\n", EXIT_OK


def _cmd_verify(args, sweep_cap: int) -> tuple[str, int]:
    records = verify_family(args.family, args.n_min, args.n_max, jobs=args.jobs, cap=sweep_cap)
    theorem = [r for r in records if r.theorem_violation]
    conjecture = [r for r in records if r.conjecture_violation]
    status = EXIT_VIOLATION if theorem else EXIT_COUNTEREXAMPLE if conjecture else EXIT_OK
    if args.format == "csv":
        return reports.verify_csv(records), status
    if args.format == "json":
        return reports.to_json(summarize(records, args.family, args.n_min, args.n_max)), status
    lines = [
        f"family {args.family}, n in [{args.n_min}, {args.n_max}]: {len(records)} sets checked",
        f"{len(theorem) + len(conjecture)} violations",
    ]
    for r in theorem + conjecture:
        d = record_dict(r)
        tag = "THEOREM" if r.theorem_violation else "conjecture"
        lines.append(
            f"  {tag}: n={r.n}; S={d['genset']} class {d['class']} observed "
            f"({d['lambda1']}, {d['lambda2']}) predicted ({d['predicted_l1']}, {d['predicted_l2']}) "
            f"failed {','.join(r.failures)}"
        )
    return "\n".join(lines) + "\n", status


def _cmd_sweep(args, sweep_cap: int, err: TextIO) -> tuple[str, int]:
    which = [1, 2] if args.conjecture == "all" else [int(args.conjecture)]
    fns = {1: sweep_conjecture1, 2: sweep_conjecture2}
    results = [fns[c](args.n_max, n_min=args.n_min, jobs=args.jobs, cap=sweep_cap) for c in which]
    status = EXIT_OK
    for rep in results:
        if rep.counterexamples:
            status = EXIT_COUNTEREXAMPLE
            first = json.dumps(rep.counterexamples[0], sort_keys=True)
            more = len(rep.counterexamples) - 1
            err.write(f"conjecture {rep.conjecture} counterexample: {first}\n")
            if more:
                err.write(f"conjecture {rep.conjecture}: {more} more (full list with --format json)\n")
    if args.format == "json":
        return reports.to_json([rep.as_dict() for rep in results]), status
    lines = [
        f"conjecture {rep.conjecture}: n in [{rep.n_min}, {rep.n_max}], "
        f"{rep.checked} sets checked, {len(rep.counterexamples)} counterexamples"
        for rep in results
    ]
    return "\n".join(lines) + "\n", status


def run(args: argparse.Namespace, out: TextIO, err: TextIO) -> int:
    """Dispatch a parsed command; returns the process status."""
    try:
        single_cap, sweep_cap = _caps()
        if getattr(args, "n", None) is not None and args.n > single_cap:
            raise CapExceeded(f"n={args.n} is above the cap {single_cap} (set {CAP_ENV} to raise it)")
        if args.command == "lambda":
            text, status = _cmd_lambda(args)
        elif args.command == "classify":
            text, status = _cmd_classify(args)
        elif args.command == "export":
            text, status = _cmd_export(args)
        elif args.command == "automorphism":
            text, status = _cmd_automorphism(args)
        elif args.command == "verify":
            text, status = _cmd_verify(args, sweep_cap)
        else:
            text, status = _cmd_sweep(args, sweep_cap, err)
    except CapExceeded as exc:
        err.write(f"dlambda: error: CapExceeded: {exc}\n")
        return EXIT_USAGE
    except DLambdaError as exc:
        err.write(f"{type(exc).__name__}: {exc}\n")
        return EXIT_VIOLATION
    except ValueError as exc:
        err.write(f"dlambda: error: {exc}\n")
        return EXIT_USAGE
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        except OSError as exc:
            err.write(f"SinkWriteFailure: {exc}\n")
            return EXIT_VIOLATION
    else:
        out.write(text)
    return status


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(args, sys.stdout, sys.stderr)


if __name__ == "__main__":
    sys.exit(main())
