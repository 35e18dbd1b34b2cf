"""Command-line interface: validate / compute / check / oracle.

Exit codes: 0 success, 1 invariant or check failure, 2 parse error,
3 scope error (E2-model route on a partial graph).
"""

from __future__ import annotations

import argparse
import os
import sys

from . import __version__, complexes, duality, io, kriz, motivic
from .arrangement import DiagonalGraph
from .errors import ConfHodgeError, ConsistencyError, ParseError, ScopeError, ValidationError

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PARSE = 2
EXIT_SCOPE = 3

ROUTES = ("relative", "open", "kriz", "all")


def _load(args):
    alg = io.load_algebra(args.algebra)
    graph = DiagonalGraph.parse(args.graph, args.n)
    return alg, graph


def cmd_validate(args) -> int:
    alg = io.load_algebra(args.path)
    violations = alg.validation()
    if violations:
        print(f"{alg.name}: INVALID")
        for v in violations:
            print(f"  - {v}")
        return EXIT_FAIL
    print(f"{alg.name}: valid (d={alg.complex_dim}, {alg.dim} basis classes)")
    return EXIT_OK


def _compute_route(alg, graph, route, jobs):
    if route == "relative":
        return complexes.relative_cohomology(alg, graph, jobs=jobs)
    if route == "open":
        rel = complexes.relative_cohomology(alg, graph, jobs=jobs)
        return duality.lefschetz_dual(rel)
    if route == "kriz":
        if not graph.is_complete():
            raise ScopeError(
                "the E2-model route supports the complete graph only; "
                "use --route relative or open for partial graphs"
            )
        return kriz.e3_table(alg, graph.n, jobs=jobs)
    raise ValueError(f"unknown route {route!r}")


def _write(path: str, payload: str, force: bool) -> None:
    if os.path.exists(path) and not force:
        raise ConfHodgeError(
            f"refusing to overwrite {path} (pass --force to regenerate)"
        )
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(payload)


def cmd_compute(args) -> int:
    alg, graph = _load(args)
    alg.require_valid()
    routes = [args.route] if args.route != "all" else ["relative", "open", "kriz"]
    if args.route == "all" and not graph.is_complete():
        routes.remove("kriz")  # out of scope for partial graphs; not an error here
    outputs = {}
    for route in routes:
        table = _compute_route(alg, graph, route, args.jobs)
        outputs[route] = io.dump_result(table, alg.name, args.n, graph.spec_string(), route)
    if len(routes) == 1:
        _write(args.output, outputs[routes[0]], args.force)
        print(f"wrote {args.output}")
    else:
        base, ext = os.path.splitext(args.output)
        for route in routes:
            path = f"{base}.{route}{ext or '.json'}"
            _write(path, outputs[route], args.force)
            print(f"wrote {path}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    alg, graph = _load(args)
    alg.require_valid()
    expected = motivic.expected_ec(alg, graph)
    rel = complexes.relative_cohomology(alg, graph, jobs=args.jobs)
    actual = motivic.table_ec(rel)
    print(f"expected E_c = {expected}")
    print(f"table    E_c = {actual}")
    if expected == actual:
        print("oracle: equal")
        return EXIT_OK
    print("oracle: MISMATCH")
    return EXIT_FAIL


def _run_checks(alg, graph, jobs):
    """Yield (name, list-of-failure-strings) pairs for every check."""
    dcx = complexes.build_double_complex(alg, graph)
    failures = dcx.verify_differentials()
    yield "differential consistency (delta^2, anticommutation)", failures
    if failures:
        return  # nothing downstream is trustworthy

    rel = complexes.relative_cohomology(alg, graph, jobs=jobs)
    failures = rel.purity_violations() + rel.hodge_symmetry_violations()
    failures += rel.relative_bound_violations()
    yield "relative table invariants (purity, symmetry, weight bounds)", failures

    expected = motivic.expected_ec(alg, graph)
    actual = motivic.table_ec(rel)
    yield "motivic oracle identity", (
        [] if expected == actual
        else [f"expected {expected}", f"computed {actual}"]
    )

    opened = duality.lefschetz_dual(rel)
    failures = opened.purity_violations() + opened.hodge_symmetry_violations()
    failures += opened.open_bound_violations()
    yield "open table invariants (purity, symmetry, weight bounds, connectedness)", failures

    if graph.is_complete():
        try:
            e3 = kriz.e3_table(alg, graph.n, jobs=jobs)
        except ConsistencyError as e:
            yield "E2-model consistency (d2 well-defined, d2^2 = 0)", [str(e)]
            return
        yield "E2-model consistency (d2 well-defined, d2^2 = 0)", []
        yield "cross-route table equality (duality vs E2-model)", opened.diff(e3)


def cmd_check(args) -> int:
    alg, graph = _load(args)
    bad = alg.validation()
    if bad:
        print("algebra: INVALID")
        for v in bad:
            print(f"  - {v}")
        return EXIT_FAIL
    status = EXIT_OK
    for name, failures in _run_checks(alg, graph, args.jobs):
        if failures:
            status = EXIT_FAIL
            print(f"FAIL {name}")
            for f in failures:
                print(f"  - {f}")
        else:
            print(f"ok   {name}")
    return status


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confhodge",
        description=(
            "Exact weight- and Hodge-graded cohomology of (partial) "
            "configuration spaces of smooth compact complex varieties."
        ),
    )
    parser.add_argument("--version", action="version", version=f"confhodge {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate an algebra document")
    p.add_argument("path")
    p.set_defaults(fn=cmd_validate)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", required=True, help="path to an algebra document")
    common.add_argument("--n", type=int, required=True, help="number of points")
    common.add_argument(
        "--graph", required=True,
        help='diagonal graph: "complete", an edge list like "1-2,2-3", or "" for none',
    )
    common.add_argument(
        "--jobs", type=int, default=1,
        help="worker processes for block-level parallelism (default: serial)",
    )

    p = sub.add_parser("compute", parents=[common], help="compute a Hodge table")
    p.add_argument("--route", choices=ROUTES, default="open")
    p.add_argument("--output", required=True, help="result file (route suffix added for --route all)")
    p.add_argument("--force", action="store_true", help="overwrite existing output files")
    p.set_defaults(fn=cmd_compute)

    p = sub.add_parser("check", parents=[common],
                       help="run the consistency and oracle checks")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("oracle", parents=[common],
                       help="print expected vs computed E-polynomials")
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except ScopeError as e:
        print(f"scope error: {e}", file=sys.stderr)
        return EXIT_SCOPE
    except (ValidationError, ConsistencyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    except ConfHodgeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
