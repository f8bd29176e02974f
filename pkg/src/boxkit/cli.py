"""``boxkit`` command line: generate graphs, compute profiles and bounds, build and
check interval covers, and run the exact boxicity search.

Exit codes: 0 success, 1 verification or property failure, 2 invalid input,
3 search budget exhausted.  ``BOXKIT_BUDGET_NODES`` replaces the default node
budget of ``exact`` and ``bounds --exact``; an explicit ``--max-nodes`` wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from . import bounds as bnd
from . import exactbox, intervals
from .errors import BoxkitError, BudgetExceeded, InconsistencyError
from .graphcore import (STANDARD_NAMES, Graph, KneserParams, complement, extended_double_cover,
                        kneser_graph, line_graph, random_graph, read_graph, standard_graph,
                        write_graph)
from .profile import (DEFAULT_PROFILE_CAP, Exact, area_identity_check, c_closed_form_kneser,
                      check_neighbor_implication, check_young_symmetry, profile, write_profile,
                      young_diagram)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3
BUDGET_ENV = "BOXKIT_BUDGET_NODES"


class _UsageError(Exception):
    pass


def _emit(data: bytes, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(data.decode())
        sys.stdout.flush()
    else:
        Path(path).write_bytes(data)


def _load_graph(path: str) -> Graph:
    data = sys.stdin.buffer.read() if path == "-" else Path(path).read_bytes()
    return read_graph(data)


def _node_budget(explicit: int | None) -> int:
    if explicit is not None:
        return explicit
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise _UsageError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
        if value < 1:
            raise _UsageError(f"{BUDGET_ENV} must be positive, got {value}")
        return value
    return exactbox.DEFAULT_MAX_NODES


def _budget(args) -> exactbox.SearchBudget:
    return exactbox.SearchBudget(_node_budget(args.max_nodes), args.max_dim)


def _int_list(text: str) -> list[int]:
    """``"5..8"``, ``"5,7,9"`` or a mix such as ``"5..7,10"``."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                a, b = part.split("..")
                out.extend(range(int(a), int(b) + 1))
            elif part.strip():
                out.append(int(part))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected integers like 5..8 or 5,7,9, got {text!r}") from None
    return out


# -- subcommands ------------------------------------------------------------

def cmd_gen(args) -> int:
    if args.family == "kneser":
        g = kneser_graph(args.k, args.n)
    elif args.family == "standard":
        g = standard_graph(args.name, args.n)
    else:
        src = _load_graph(args.graph)
        g = {"linegraph": line_graph, "complement": complement,
             "double-cover": extended_double_cover}[args.family](src)
    _emit(write_graph(g, args.format), args.output)
    return EXIT_OK


def cmd_profile(args) -> int:
    g = _load_graph(args.graph)
    if args.complement:
        g = complement(g)
    if g.n < 2:
        raise _UsageError("profile needs a graph with at least 2 vertices")
    p = profile(g, args.max_i, jobs=args.jobs, cap=args.cap)
    _emit(write_profile(p, args.format), args.output)
    if args.young:
        sys.stderr.write(young_diagram(p))
    return EXIT_OK


def cmd_bounds(args) -> int:
    if args.k is not None or args.n is not None:
        if args.k is None or args.n is None or args.graph or args.linegraph_of:
            raise _UsageError("give either --k and --n, a graph file, or --linegraph-of")
        report = bnd.bound_report(KneserParams(args.k, args.n), acs=args.acs, exact=args.exact,
                                  budget=_budget(args), profile_cap=args.cap, jobs=args.jobs)
    elif args.linegraph_of:
        if args.graph:
            raise _UsageError("give either a graph file or --linegraph-of, not both")
        report = bnd.linegraph_complement_bounds(_load_graph(args.linegraph_of))
    elif args.graph:
        report = bnd.bound_report(_load_graph(args.graph), acs=args.acs, exact=args.exact,
                                  budget=_budget(args), profile_cap=args.cap, jobs=args.jobs)
    else:
        raise _UsageError("give either --k and --n, a graph file, or --linegraph-of")
    _emit(bnd.write_bound_report(report), args.output)
    return EXIT_OK


def cmd_cover(args) -> int:
    if args.action == "build":
        _emit(intervals.write_cover(intervals.build_upper_cover(args.k, args.n)), args.output)
        return EXIT_OK
    g = _load_graph(args.graph)
    cover = intervals.read_cover(Path(args.cover).read_bytes())
    report = intervals.verify_cover(g, cover)
    _emit(intervals.write_verification(report), args.output)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_exact(args) -> int:
    g = _load_graph(args.graph)
    budget = _budget(args)
    start = time.perf_counter()
    if args.decide is not None:
        result = exactbox.decide_boxicity_leq(g, args.decide, budget, jobs=args.jobs)
    else:
        result = exactbox.exact_boxicity(g, budget, jobs=args.jobs)
    wall = time.perf_counter() - start
    cert = getattr(result, "certificate", None)
    if args.certificate and cert is not None:
        Path(args.certificate).write_bytes(exactbox.write_certificate(cert))
    if args.json:
        _emit(exactbox.write_result(result, wall), args.output)
    else:
        if args.output:
            _emit(exactbox.write_result(result, wall), args.output)
        if isinstance(result, exactbox.Decision):
            print(f"box <= {args.decide}: {result.status}")
        elif isinstance(result, exactbox.ExactBoxicity):
            print(result.value)
        else:
            print(f">= {result.value} (budget exhausted)")
        print(f"nodes: {result.nodes}")
        print(f"wall time: {wall:.3f}s")
    unknown = (isinstance(result, exactbox.LowerBounded)
               or (isinstance(result, exactbox.Decision) and result.status == "unknown"))
    return EXIT_BUDGET if unknown else EXIT_OK


def _sweep_cover(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for k in args.k:
        for n in args.n or range(2 * k + 1, 13):
            if n < 2 * k + 1:
                continue
            cover = intervals.build_upper_cover(k, n)
            rep = intervals.verify_cover(kneser_graph(k, n), cover)
            good = rep.ok and cover.dimension == n - 2
            ok &= good
            rows.append({"k": k, "n": n, "dimension": cover.dimension, "ok": good})
    return rows, ok


def _sweep_bounds(args) -> tuple[list[dict], bool]:
    rows = []
    for k in args.k:
        for n in args.n or range(2 * k, 2 * k + 11):
            if n < 2 * k:
                continue
            r = bnd.bound_report(KneserParams(k, n))
            rows.append({"k": k, "n": n, "best_lower": r.best_lower, "best_upper": r.best_upper})
    return rows, True


def _sweep_profiles(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for idx in range(args.count):
        n = 2 + idx % (args.max_vertices - 1)
        g = random_graph(n, args.density, args.seed * 1_000_003 + idx)
        p = profile(g, cap=args.cap)
        sym = check_young_symmetry(p)
        impl = check_neighbor_implication(p)
        area = sym and area_identity_check(p)
        good = sym and impl and area
        ok &= good
        rows.append({"index": idx, "n": n, "graph_sha": g.sha, "profile": list(p.values),
                     "self_conjugate": sym, "implication": impl, "area_identity": area})
    return rows, ok


def _sweep_closed_form(args) -> tuple[list[dict], bool]:
    rows, ok = [], True
    for k in args.k:
        for n in args.n or [2 * k**3 - 2 * k**2 + 1]:
            g = complement(kneser_graph(k, n))
            p = profile(g, cap=args.cap)
            for i in range(1, g.n):
                cf = c_closed_form_kneser(k, n, i)
                if isinstance(cf, Exact):
                    good = cf.value == p[i]
                    ok &= good
                    rows.append({"k": k, "n": n, "i": i, "brute_force": p[i],
                                 "closed_form": cf.value, "ok": good})
    return rows, ok


_SWEEPS = {"cover": _sweep_cover, "bounds": _sweep_bounds, "profiles": _sweep_profiles,
           "closed-form": _sweep_closed_form}


def cmd_sweep(args) -> int:
    rows, ok = _SWEEPS[args.grid](args)
    out = {"grid": args.grid, "ok": ok, "rows": rows}
    if args.grid == "profiles":
        out["seed"] = args.seed
    _emit((json.dumps(out) + "\n").encode(), args.output)
    return EXIT_OK if ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------

def _add_output(p):
    p.add_argument("-o", "--output", help="output path (default: standard output)")


def _add_search(p):
    p.add_argument("--max-nodes", type=int, default=None,
                   help=f"search-node budget (default {exactbox.DEFAULT_MAX_NODES}, or ${BUDGET_ENV})")
    p.add_argument("--max-dim", type=int, default=exactbox.DEFAULT_MAX_DIMENSION,
                   help="largest dimension tried (default %(default)s)")


def _add_jobs(p):
    p.add_argument("--jobs", type=int, default=1, help="worker processes (default 1)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boxkit", description=__doc__.split("\n\n")[0],
        epilog=f"Exit codes: 0 ok, 1 verification failure, 2 invalid input, 3 budget exhausted. "
               f"{BUDGET_ENV} overrides the default node budget.")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    gen = sub.add_parser("gen", help="generate a graph")
    gsub = gen.add_subparsers(dest="family", metavar="FAMILY")
    gsub.required = True
    p = gsub.add_parser("kneser", help="Kneser graph Kn(k, n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    for name, text in (("linegraph", "line graph of a graph file"),
                       ("complement", "complement of a graph file"),
                       ("double-cover", "extended double cover of a graph file")):
        q = gsub.add_parser(name, help=text)
        q.add_argument("graph", help="graph JSON path, or - for standard input")
    p = gsub.add_parser("standard", help="named graph: " + ", ".join(STANDARD_NAMES))
    p.add_argument("name", choices=STANDARD_NAMES)
    p.add_argument("--n", type=int, default=None)
    for q in gsub.choices.values():
        q.add_argument("--format", choices=("json", "dot"), default="json")
        _add_output(q)
    gen.set_defaults(func=cmd_gen)

    p = sub.add_parser("profile", help="common-neighbourhood profile c(1..max_i)")
    p.add_argument("graph")
    p.add_argument("--max-i", type=int, default=None)
    p.add_argument("--complement", action="store_true", help="profile the complement of the graph")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--young", action="store_true", help="draw the Young diagram on standard error")
    p.add_argument("--cap", type=int, default=DEFAULT_PROFILE_CAP, help="vertex cap (default %(default)s)")
    _add_jobs(p)
    _add_output(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("bounds", help="bound report for Kneser parameters or a graph")
    p.add_argument("graph", nargs="?", help="graph JSON path")
    p.add_argument("--k", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--linegraph-of", metavar="GRAPH",
                   help="bounds for the complement of the line graph of this graph")
    p.add_argument("--acs", action="store_true", help="add the common-neighbour ratio bound")
    p.add_argument("--exact", action="store_true", help="run the exact search as well")
    p.add_argument("--cap", type=int, default=DEFAULT_PROFILE_CAP, help="profile vertex cap")
    _add_search(p)
    _add_jobs(p)
    _add_output(p)
    p.set_defaults(func=cmd_bounds)

    cover = sub.add_parser("cover", help="build or verify interval covers")
    csub = cover.add_subparsers(dest="action", metavar="ACTION")
    csub.required = True
    p = csub.add_parser("build", help="explicit n-2 interval cover of Kn(k, n)")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    _add_output(p)
    p = csub.add_parser("verify", help="check a cover or certificate against a graph")
    p.add_argument("graph")
    p.add_argument("cover")
    _add_output(p)
    cover.set_defaults(func=cmd_cover)

    p = sub.add_parser("exact", help="exact boxicity by exhaustive search")
    p.add_argument("graph")
    p.add_argument("--decide", type=int, metavar="D", help="only decide box <= D")
    p.add_argument("--certificate", metavar="PATH", help="write the certificate here")
    p.add_argument("--json", action="store_true", help="print the JSON result instead of a summary")
    _add_search(p)
    _add_jobs(p)
    _add_output(p)
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("sweep", help="run a parameter grid and report pass/fail per row")
    p.add_argument("grid", choices=sorted(_SWEEPS))
    p.add_argument("--k", type=_int_list, default=[2])
    p.add_argument("--n", type=_int_list, default=None)
    p.add_argument("--count", type=int, default=200, help="random graphs (profiles grid)")
    p.add_argument("--max-vertices", type=int, default=12, help="largest random graph (profiles grid)")
    p.add_argument("--density", type=float, default=0.5, help="edge probability (profiles grid)")
    p.add_argument("--seed", type=int, default=0, help="seed for the profiles grid (default 0)")
    p.add_argument("--cap", type=int, default=64, help="profile vertex cap")
    _add_output(p)
    p.set_defaults(func=cmd_sweep)
    return parser


def _validate(args) -> None:
    for name in ("jobs", "max_nodes", "max_dim", "cap", "count", "max_i"):
        value = getattr(args, name, None)
        if value is not None and value < 1:
            raise _UsageError(f"--{name.replace('_', '-')} must be positive, got {value}")
    if getattr(args, "max_vertices", 2) < 2:
        raise _UsageError("--max-vertices must be at least 2")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        _validate(args)
        return args.func(args)
    except _UsageError as exc:
        print(f"boxkit: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"boxkit: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InconsistencyError as exc:
        print(f"boxkit: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (BoxkitError, OSError, UnicodeDecodeError) as exc:
        print(f"boxkit: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
