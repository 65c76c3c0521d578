#!/usr/bin/env python3
"""
Command-line frontend: build M^t(G), solve chi_c exactly, verify colourings,
analyse the root digraphs and run the bound checks.

Exit codes:
    0  success
    1  a requested check failed
    2  usage error, unreadable or malformed input
    3  a size guard was exceeded
"""

import argparse
import json
import os
import sys

from pydantic import BaseModel, ValidationError

from circular_coloring import (
    NORMAL_FORMS,
    KdColoring,
    KdPair,
    check_lemma1,
    check_normal_form,
    circular_chromatic_number,
    certificate_document,
    coloring_to_partition,
    edge_violations,
    vertex_labels,
)
from graph_core import complete_graph, graph_hash, read_edge_list, write_edge_list
from mycielski import (
    iterated_mycielskian,
    named_graph_from_names,
    named_graph_to_dot,
    read_name_table,
    write_name_table,
)
from root_forest import (
    build_F,
    canonical_3cut,
    component,
    component_sizes,
    corollary1_scan,
    iso_g,
    lemma6_check,
    min_3cut_bruteforce,
    to_dot,
)
from settings import load_settings
from theorem_harness import (
    FAILS,
    conjecture_check,
    lemma2_check,
    lemma8_containment_check,
    lemma9_optimal_scan,
    minimal_n_crossover,
    mycielski_order,
    rational_crossover,
    solve_mycielski_complete,
    threshold_table,
)
from toolkit_errors import GraphFormatError, GuardExceededError, ToolkitError

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_GUARD = 3

HARNESS_SUITES = ("lemma2", "conjecture", "lemma9", "thresholds", "lemma8")


class Console:
    """Status lines for people, one JSON document per line with ``--json``."""

    def __init__(self, as_json):
        self.as_json = as_json

    def say(self, text):
        if not self.as_json:
            print(text)

    def result(self, text):
        """Fixed-grammar result line; printed in human mode only."""
        if not self.as_json:
            print(text)

    def emit(self, document):
        if not self.as_json:
            return
        if isinstance(document, BaseModel):
            print(document.model_dump_json())
        else:
            print(json.dumps(document, separators=(",", ":")))


class ColoringDocument(BaseModel):
    """The parts of a certificate that ``verify`` reads."""

    optimal: KdPair
    witness: dict[str, int]


def names_sidecar(path):
    return f"{path}.names.json"


def load_named(graph, graph_path, names_path=None):
    """Attach the name table sidecar if one exists (or was given)."""
    path = names_path or names_sidecar(graph_path)
    if not os.path.exists(path):
        if names_path:
            raise GraphFormatError(f"name table {names_path} not found")
        return None
    table = read_name_table(path)
    return named_graph_from_names(graph, table.names)


def parse_base(spec):
    kind, _, value = spec.partition(":")
    if kind == "complete":
        try:
            return complete_graph(int(value))
        except ValueError as e:
            raise GraphFormatError(f"bad base spec {spec!r}: {e}") from e
    if kind == "edgelist" and value:
        return read_edge_list(value)
    raise GraphFormatError(f"base must be complete:<n> or edgelist:<path>, got {spec!r}")


# ----------------------------------------------------------------------------
# Subcommands
# ----------------------------------------------------------------------------

def cmd_build(args, settings, console):
    base = parse_base(args.base)
    named = iterated_mycielskian(base, args.t)
    write_edge_list(named.graph, args.out)
    write_name_table(named, names_sidecar(args.out))
    console.say(f"✅ M^{args.t}: {named.graph.order} vertices, {named.graph.size} edges")
    console.say(f"💾 Graph saved to {args.out} (names in {names_sidecar(args.out)})")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(named_graph_to_dot(named))
        console.say(f"💾 DOT written to {args.dot}")
    console.emit({
        "command": "build",
        "graph": graph_hash(named.graph),
        "order": named.graph.order,
        "size": named.graph.size,
        "t": args.t,
        "out": args.out,
    })
    return EXIT_OK


def cmd_solve(args, settings, console):
    graph = read_edge_list(args.graph)
    named = load_named(graph, args.graph, args.names)
    if graph.order > settings.solver_guard:
        raise GuardExceededError(
            f"{graph.order} vertices exceed the solver guard of {settings.solver_guard} (raise --guard)"
        )
    console.say(f"🔍 Solving {args.graph} ({graph.order} vertices, {graph.size} edges)...")
    certificate = circular_chromatic_number(graph, workers=settings.workers)
    document = certificate_document(certificate, graph, named.names if named else None)

    out = args.out
    if out is None:
        os.makedirs(settings.output_dir, exist_ok=True)
        out = os.path.join(settings.output_dir, f"{document.graph}.json")
    with open(out, "w", encoding="utf-8") as f:
        f.write(document.model_dump_json(indent=2))
        f.write("\n")

    console.result(f"chi_c = {certificate.optimal_k}/{certificate.optimal_d}")
    console.say(f"📊 {len(certificate.rejected)} smaller candidates rejected")
    console.say(f"💾 Certificate saved to {out}")
    console.emit(document)
    return EXIT_OK


def _read_coloring(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return ColoringDocument.model_validate(json.load(f))
    except (OSError, ValueError) as e:
        raise GraphFormatError(f"cannot read colouring {path}: {e}") from e


def cmd_verify(args, settings, console):
    graph = read_edge_list(args.graph)
    named = load_named(graph, args.graph, args.names)
    document = _read_coloring(args.coloring)
    k, d = document.optimal.k, document.optimal.d
    if k < 1 or d < 1:
        raise GraphFormatError(f"k and d must be positive, got ({k},{d})")

    labels = vertex_labels(graph, named.names if named else None)
    unknown = sorted(set(document.witness) - set(labels))
    missing = [label for label in labels if label not in document.witness]
    if unknown or missing:
        raise GraphFormatError(f"witness does not match the graph: unknown {unknown[:5]}, missing {missing[:5]}")
    assignment = [document.witness[label] for label in labels]

    report = {"command": "verify", "k": k, "d": d, "checks": {}}
    problems = []
    out_of_range = [labels[v] for v, color in enumerate(assignment) if not 0 <= color < k]
    if out_of_range:
        problems.append(f"colours outside Z_{k} at {out_of_range[:5]}")
    if k < 2 * d and not (k == 1 and d == 1):
        problems.append(f"({k},{d}) violates k >= 2d")
    violations = edge_violations(graph, k, d, assignment)
    if violations:
        listed = ", ".join(f"{labels[u]}-{labels[v]}" for u, v in violations[:10])
        problems.append(f"{len(violations)} edge violations: {listed}")
    report["checks"]["coloring"] = not problems
    report["edge_violations"] = [[labels[u], labels[v]] for u, v in violations]

    if not problems and (args.normal_form or args.lemma1):
        partition = coloring_to_partition(graph, KdColoring(k, d, tuple(assignment)))
        if args.lemma1:
            lemma1 = check_lemma1(partition, graph)
            report["checks"]["lemma1"] = lemma1.clean
            report["lemma1"] = lemma1.model_dump()
            if not lemma1.clean:
                problems.append(
                    f"Lemma 1: empty classes {lemma1.empty_classes}, missing links {lemma1.missing_links}"
                )
        if args.normal_form:
            if named is None:
                raise GraphFormatError("--normal-form needs the vertex-name table (use --names)")
            normal = check_normal_form(partition, named, form=args.form)
            report["checks"]["normal_form"] = normal.holds
            report["normal_form"] = normal.model_dump()
            if not normal.holds:
                problems.append(
                    f"normal form ({args.form}): condition 1 {normal.condition1} ({normal.condition1_detail}), "
                    f"condition 2 {normal.condition2}"
                )

    report["ok"] = not problems
    if problems:
        for problem in problems:
            console.say(f"❌ {problem}")
    else:
        console.say(f"✅ valid ({k},{d})-colouring; {', '.join(report['checks'])} passed")
    console.emit(report)
    return EXIT_OK if not problems else EXIT_CHECK_FAILED


def cmd_forest(args, settings, console):
    t = args.t
    if t > settings.forest_max_t:
        raise GuardExceededError(
            f"F_{t} has 2^{t - 1} - 1 vertices; forest commands are limited to t <= {settings.forest_max_t}"
        )
    forest = build_F(t)
    status = EXIT_OK

    if args.sizes:
        sizes = component_sizes(t)
        console.result(" ".join(f"|F({i})|={size}" for i, size in sizes.items()))
        console.emit({"command": "forest", "t": t, "sizes": {str(i): s for i, s in sizes.items()}})

    elif args.mincut:
        payload = {"command": "forest", "t": t}
        brute = canonical = None
        if args.mincut in ("canonical", "both"):
            canonical = canonical_3cut(t)
            payload["canonical"] = canonical.to_json()
        if args.mincut in ("brute", "both"):
            if t > settings.brute_mincut_max_t:
                raise GuardExceededError(
                    f"brute-force minimum cut is limited to t <= {settings.brute_mincut_max_t}; use --mincut canonical"
                )
            console.say(f"🔍 Enumerating cut sets of F_{t} by size...")
            brute = min_3cut_bruteforce(forest)
            payload["brute"] = brute.to_json()
        if args.mincut == "both":
            agree = len(brute) == len(canonical)
            payload["agree"] = agree
            console.result(f"brute={len(brute)} canonical={len(canonical)} {'OK' if agree else 'MISMATCH'}")
            status = EXIT_OK if agree else EXIT_CHECK_FAILED
        else:
            cut = brute if brute is not None else canonical
            console.result(f"{args.mincut}={len(cut)}")
            console.say("   " + " ".join(cut.to_json()))
        console.emit(payload)

    elif args.corollary1:
        report = corollary1_scan(
            t,
            exhaustive_limit=settings.corollary1_exhaustive_limit,
            samples=settings.corollary1_samples,
            seed=settings.sample_seed,
        )
        mode = "exhaustive" if report.exhaustive else f"sampled, seed {settings.sample_seed}"
        icon = "✅" if report.holds else "❌"
        console.say(
            f"{icon} t={t}: {report.examined} sets with |U| > {report.threshold} checked "
            f"({mode}), {len(report.counterexamples)} without a directed triple"
        )
        console.emit(report)
        status = EXIT_OK if report.holds else EXIT_CHECK_FAILED

    elif args.iso is not None:
        i = args.iso
        mapping = iso_g(i, t)
        verified = lemma6_check(t, i)
        console.result(f"F({i}) ≅ F({i + 1}) ⊔ F'({i + 1}): {'verified' if verified else 'FAILED'}")
        console.emit({
            "command": "forest",
            "t": t,
            "iso": i,
            "verified": verified,
            "mapping": {str(a): str(b) for a, b in sorted(mapping.items())},
        })
        status = EXIT_OK if verified else EXIT_CHECK_FAILED

    if args.dot:
        target = component(forest, args.component) if args.component else forest
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(to_dot(target))
        console.say(f"💾 DOT written to {args.dot}")
    return status


def _grid(max_t, max_n, min_t=1, min_n=2):
    for t in range(min_t, max_t + 1):
        for n in range(min_n, max_n + 1):
            yield t, n


def _harness_reports(args, settings, console):
    guard = settings.solver_guard
    workers = settings.workers

    def within_guard(t, n):
        if mycielski_order(t, n) <= guard:
            return True
        console.say(f"⚠️  skipping t={t} n={n}: {mycielski_order(t, n)} vertices exceed the guard of {guard}")
        return False

    if args.suite == "lemma2":
        for t, n in _grid(args.max_t, args.max_n):
            if within_guard(t, n):
                _, certificate = solve_mycielski_complete(t, n, guard=guard, workers=workers)
                yield lemma2_check(t, n, certificate.optimal_k, certificate.optimal_d)
    elif args.suite == "conjecture":
        for t, n in _grid(args.max_t, args.max_n):
            if within_guard(t, n):
                yield conjecture_check(t, n, guard=guard, workers=workers)
    elif args.suite == "lemma9":
        for t, n in _grid(args.max_t, args.max_n, min_t=3):
            if not within_guard(t, n):
                continue
            yield lemma9_optimal_scan(t, n, guard=guard)
    elif args.suite == "lemma8":
        for t, n in _grid(args.max_t, args.max_n, min_n=1):
            yield lemma8_containment_check(t, n)


def cmd_harness(args, settings, console):
    if args.suite == "thresholds":
        rows = threshold_table(args.max_t)
        for row in rows:
            console.result(
                f"t={row.t} theorem1={row.theorem1} n>={row.theorem1_min_n} liu n>={row.liu_min_n}"
            )
            console.emit(row)
        crossover = {"rational": rational_crossover(), "minimal_n": minimal_n_crossover()}
        console.say(
            f"📊 theorem1 threshold is strictly lower from t={crossover['rational']} "
            f"(minimal integer n from t={crossover['minimal_n']})"
        )
        console.emit({"command": "harness", "suite": "thresholds", "crossover": crossover})
        return EXIT_OK

    failures = 0
    for report in _harness_reports(args, settings, console):
        icon = {"holds": "✅", "fails": "❌", "vacuous": "⚪"}[report.verdict]
        instance = " ".join(f"{key}={value}" for key, value in report.instance.items())
        console.say(f"{icon} {report.lemma} {instance}: {report.verdict}")
        console.emit(report)
        if report.verdict == FAILS:
            failures += 1
    if failures:
        console.say(f"❌ {failures} failing verdicts")
        return EXIT_CHECK_FAILED
    return EXIT_OK


# ----------------------------------------------------------------------------
# Entry point
# ----------------------------------------------------------------------------

def build_parser():
    parser = argparse.ArgumentParser(
        description="Exact circular colourings of iterated Mycielski graphs",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python mycielski_toolkit.py build --base complete:3 --t 1 --out m1k3.txt
  python mycielski_toolkit.py solve --graph m1k3.txt --out m1k3.cert.json
  python mycielski_toolkit.py verify --graph m1k3.txt --coloring m1k3.cert.json --lemma1
  python mycielski_toolkit.py forest --t 5 --mincut both
  python mycielski_toolkit.py harness --suite conjecture --max-t 2 --max-n 4
        """,
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="Machine-readable output, one JSON document per line")
    common.add_argument("--config", help="Settings file in dotenv format (default: .env if present)")

    subparsers = parser.add_subparsers(dest="command", required=True)

    build = subparsers.add_parser("build", parents=[common], help="Build M^t(G) with vertex names")
    build.add_argument("--base", required=True, help="complete:<n> or edgelist:<path>")
    build.add_argument("--t", type=int, required=True, help="Number of Mycielski steps")
    build.add_argument("--out", required=True, help="Edge-list output path")
    build.add_argument("--dot", help="Also write DOT")
    build.set_defaults(handler=cmd_build)

    solve = subparsers.add_parser("solve", parents=[common], help="Compute chi_c with a certificate")
    solve.add_argument("--graph", required=True, help="Edge-list file")
    solve.add_argument("--names", help="Name table (default: <graph>.names.json if present)")
    solve.add_argument("--out", help="Certificate path (default: <output_dir>/<graph hash>.json)")
    solve.add_argument("--guard", type=int, help="Largest graph to solve, in vertices (default: 25)")
    solve.add_argument("--workers", type=int, help="Parallel candidate searches (default: 1)")
    solve.set_defaults(handler=cmd_solve)

    verify = subparsers.add_parser("verify", parents=[common], help="Check a colouring or certificate")
    verify.add_argument("--graph", required=True, help="Edge-list file")
    verify.add_argument("--coloring", required=True, help="Certificate JSON (optimal.k, optimal.d, witness)")
    verify.add_argument("--names", help="Name table (default: <graph>.names.json if present)")
    verify.add_argument("--normal-form", action="store_true", help="Also check the normal form")
    verify.add_argument("--form", choices=NORMAL_FORMS, default="lemma10", help="Normal form to check")
    verify.add_argument("--lemma1", action="store_true", help="Also check classes are nonempty and linked")
    verify.set_defaults(handler=cmd_verify)

    forest = subparsers.add_parser("forest", parents=[common], help="Analyse the root digraph F_t")
    forest.add_argument("--t", type=int, required=True, help="Iteration parameter t")
    mode = forest.add_mutually_exclusive_group(required=True)
    mode.add_argument("--sizes", action="store_true", help="Print |F(i)| for every component")
    mode.add_argument("--mincut", choices=("brute", "canonical", "both"), help="Minimum 3-cut set")
    mode.add_argument("--corollary1", action="store_true", help="Check large subsets contain a directed triple")
    mode.add_argument("--iso", type=int, metavar="I", help="Verify F(I) ≅ F(I+1) ⊔ F'(I+1)")
    forest.add_argument("--dot", help="Write F_t (or one component) in DOT format")
    forest.add_argument("--component", type=int, metavar="I", help="Restrict --dot to F(I)")
    forest.add_argument("--brute-max-t", type=int, help="Largest t for the brute-force cut (default: 6)")
    forest.set_defaults(handler=cmd_forest)

    harness = subparsers.add_parser("harness", parents=[common], help="Run a bound-check suite over a (t, n) grid")
    harness.add_argument("--suite", choices=HARNESS_SUITES, required=True)
    harness.add_argument("--max-t", type=int, default=2, help="Largest t (default: 2)")
    harness.add_argument("--max-n", type=int, default=4, help="Largest n (default: 4)")
    harness.add_argument("--guard", type=int, help="Largest graph to solve, in vertices (default: 25)")
    harness.add_argument("--workers", type=int, help="Parallel candidate searches (default: 1)")
    harness.set_defaults(handler=cmd_harness)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    console = Console(args.json)

    try:
        settings = load_settings(
            args.config,
            solver_guard=getattr(args, "guard", None),
            workers=getattr(args, "workers", None),
            brute_mincut_max_t=getattr(args, "brute_max_t", None),
        )
    except ValidationError as e:
        print(f"❌ invalid settings: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ToolkitError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return args.handler(args, settings, console)
    except GuardExceededError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_GUARD
    except ToolkitError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
