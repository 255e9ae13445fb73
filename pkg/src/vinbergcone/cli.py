"""Command-line front end.

Exit codes: 0 success or positive verdict, 1 negative verdict, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from . import classifier, t_cone
from .clifford_core import A_TABLE, B_TABLE, module_count
from .families import family_from_uri
from .nil_algebra import (
    AlgebraError,
    FormatError,
    QuasiNilAlgebra,
    check_associative,
    check_isometric,
    check_vinberg,
    from_json,
    nilpotency_index,
)
from .nil_graph import MAX_VERTICES, count_nilgraphs, enumerate_nilgraphs, max_path_length

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc


def _load_json(source: str, what: str):
    text = _read_text(source)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{what} {source}: invalid JSON at line {exc.lineno} column {exc.colno}") from exc


def load_algebra(spec: str) -> QuasiNilAlgebra:
    if spec.startswith("family:"):
        return family_from_uri(spec)
    return from_json(_load_json(spec, "algebra"))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# commands


def cmd_graphs(args) -> int:
    graphs = enumerate_nilgraphs(args.n, args.connected, args.quotient) \
        if not (args.quotient == "labeled" and args.n > 6) else None
    if graphs is None:
        print(f"count {count_nilgraphs(args.n, args.connected, args.quotient)}")
        return EXIT_OK
    for g in graphs:
        edges = " ".join(f"{i}{j}" for i, j in g.edges()) or "-"
        print(f"ML={max_path_length(g)}  {edges}")
    print(f"count {len(graphs)}")
    return EXIT_OK


def cmd_check(args) -> int:
    N = load_algebra(args.algebra)
    iso = check_isometric(N)
    assoc = check_associative(N)
    vin = check_vinberg(N, samples=args.samples, seed=args.seed) if N.n == 4 else None
    vinberg_ok = True if vin is None else vin.ok
    nil = iso.ok and assoc.ok and vinberg_ok
    out = {
        "n": N.n,
        "index": nilpotency_index(N),
        "isometric": iso.ok,
        "associative": assoc.ok,
        "vinberg": vinberg_ok if vin is not None else None,
        "nil": nil,
    }
    for name, res in (("isometric", iso), ("associative", assoc), ("vinberg", vin)):
        if res is not None and not res.ok:
            out["witness"] = {"check": name, "residual": res.residual, **(res.witness or {})}
            break
    if args.json:
        print(_dump(out))
    else:
        for k in ("isometric", "associative", "vinberg", "nil"):
            v = out[k]
            print(f"{k:12s} {'n/a' if v is None else str(v).lower()}")
        if "witness" in out:
            print("witness " + json.dumps(out["witness"], sort_keys=True))
    return EXIT_OK if nil else EXIT_NEGATIVE


def _load_point(N: QuasiNilAlgebra, source: str, cls):
    if source == "identity":
        return cls.identity(N)
    return cls.from_json(N, _load_json(source, "point"))


def cmd_cone(args) -> int:
    N = load_algebra(args.algebra)
    if args.action == "herm":
        A = _load_point(N, args.point, t_cone.GroupElement)
        print(_dump(t_cone.herm_from_group(N, A).to_json()))
        return EXIT_OK
    X = _load_point(N, args.point, t_cone.HermElement)
    weights = None
    if args.weights:
        try:
            weights = [float(w) for w in args.weights.split(",")]
        except ValueError as exc:
            raise UsageError("weights must be comma-separated numbers") from exc
        if len(weights) != N.n:
            raise UsageError(f"need {N.n} weights")
    A = t_cone.generalized_cholesky(N, X)
    if isinstance(A, t_cone.NotInCone):
        if args.action == "membership":
            print("false")
        print(f"not in cone: pivot {A.pivot} ({A.value:.6g})", file=sys.stderr)
        return EXIT_NEGATIVE
    if args.action == "factorize":
        print(_dump(A.to_json()))
    elif args.action == "membership":
        print("true")
    elif args.action == "det":
        print(repr(t_cone.determinant_function(N, X)))
    elif args.action == "barrier":
        print(repr(t_cone.barrier(N, X, weights)))
    return EXIT_OK


def cmd_classify(args) -> int:
    seed = args.seed
    if os.environ.get("SEED"):
        try:
            seed = int(os.environ["SEED"])
        except ValueError as exc:
            raise UsageError("SEED must be an integer") from exc
    report = classifier.classify_rank4(args.max_dim, seed=seed, samples=args.samples)
    text = json.dumps(report, indent=1, sort_keys=True) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise UsageError(f"cannot write {args.out}: {exc.strerror}") from exc
    if args.json:
        sys.stdout.write(text)
    else:
        print(classifier.format_report(report))
    return EXIT_NEGATIVE if report["deviations"] else EXIT_OK


def _grid(table, row_labels, col_labels) -> str:
    width = max(len(str(x)) for row in table for x in row) + 1
    width = max(width, max(len(c) for c in col_labels) + 1)
    lines = [" " * 4 + "".join(f"{c:>{width}s}" for c in col_labels)]
    for lab, row in zip(row_labels, table):
        lines.append(f"{lab:4s}" + "".join(f"{x:>{width}}" for x in row))
    return "\n".join(lines)


def cmd_tables(args) -> int:
    if args.which == "a":
        labels = [f"C{k}" for k in range(8)]
        print(_grid(A_TABLE, labels, labels))
    elif args.which == "b":
        labels = [f"C{k}" for k in range(1, 9)]
        print(_grid(B_TABLE, labels, labels))
    else:
        labels = [f"C{k}" for k in range(1, 9)]
        print("ungraded")
        print(_grid([[module_count(p, q) for q in range(1, 9)] for p in range(1, 9)], labels, labels))
        print("bigraded")
        print(_grid([[module_count(p, q, graded=True) for q in range(1, 9)] for p in range(1, 9)],
                    labels, labels))
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vinbergcone", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("graphs", help="enumerate Nil-graphs")
    p.add_argument("n", type=int, choices=range(2, MAX_VERTICES + 1), metavar="N")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--quotient", choices=["labeled", "iso", "dual"], default="iso")
    p.set_defaults(func=cmd_graphs)

    p = sub.add_parser("check", help="gate checks on an algebra file or family:ID?k=v")
    p.add_argument("algebra")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cone", help="factorization, membership, barrier, determinant")
    p.add_argument("action", choices=["factorize", "membership", "barrier", "det", "herm"])
    p.add_argument("algebra")
    p.add_argument("point", help="JSON file, '-' for stdin, or 'identity'")
    p.add_argument("--weights", help="comma-separated barrier weights")
    p.set_defaults(func=cmd_cone)

    p = sub.add_parser("classify", help="rank-4 classification report")
    p.add_argument("--max-dim", type=int, default=4, choices=range(1, classifier.MAX_CLASSIFY_DIM + 1),
                   metavar="D")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tables", help="dimension and count tables")
    p.add_argument("which", choices=["a", "b", "counts"])
    p.set_defaults(func=cmd_tables)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, FormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AlgebraError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
