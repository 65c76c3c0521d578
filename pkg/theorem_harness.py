#!/usr/bin/env python3
"""
Mechanical checks of the inequalities and hypotheses behind the bound
chi_c(M^t(K_n)) = n + t.

Every check returns a ``BoundReport`` whose verdict is one of ``holds``,
``fails`` or ``vacuous`` (the hypothesis of the statement is not met).
Threshold arithmetic is done in exact fractions.
"""

import argparse
from fractions import Fraction
from math import ceil, gcd
from typing import Any

import networkx as nx
from pydantic import BaseModel

from circular_coloring import (
    ChiCCertificate,
    KdPartition,
    check_lemma1,
    candidate_fractions,
    check_normal_form,
    circular_chromatic_number,
    coloring_to_partition,
    d_field,
    find_normal_form,
    is_kd_colorable,
)
from graph_core import independence_number, neighborhood
from mycielski import derived_of_initials, format_name, h_inverse, mycielski_of_complete, root, root_set
from root_forest import build_F_circle, find_directed_triple
from toolkit_errors import GuardExceededError, PreconditionError

HOLDS = "holds"
FAILS = "fails"
VACUOUS = "vacuous"


class BoundReport(BaseModel):
    lemma: str
    instance: dict[str, Any]
    values: dict[str, Any]
    verdict: str

    @property
    def ok(self):
        return self.verdict != FAILS


def _verdict(holds):
    return HOLDS if holds else FAILS


def mycielski_order(t, n):
    return 2**t * (n + 1) - 1


def solve_mycielski_complete(t, n, guard=25, workers=1):
    """Build M^t(K_n) and solve it exactly, refusing graphs above ``guard`` vertices."""
    order = mycielski_order(t, n)
    if order > guard:
        raise GuardExceededError(
            f"M^{t}(K_{n}) has {order} vertices, above the solver guard of {guard}"
        )
    named = mycielski_of_complete(n, t)
    return named, circular_chromatic_number(named.graph, workers=workers)


def lemma2_check(t, n, k, d):
    """(n - 3)(d - 1) <= 2^t - 2 for the reduced optimum k/d of M^t(K_n)."""
    if n < 2:
        raise PreconditionError(f"n must be at least 2, got {n}")
    if gcd(k, d) != 1:
        raise PreconditionError(f"({k},{d}) is not reduced")
    lhs = (n - 3) * (d - 1)
    rhs = 2**t - 2
    return BoundReport(
        lemma="lemma2",
        instance={"t": t, "n": n},
        values={"k": k, "d": d, "lhs": lhs, "rhs": rhs},
        verdict=_verdict(lhs <= rhs),
    )


def lemma1_check(certificate, graph):
    """The optimal witness has no empty class and every X_i sees X_{i+d}."""
    report = check_lemma1(coloring_to_partition(graph, certificate.witness), graph)
    return BoundReport(
        lemma="lemma1",
        instance={"order": graph.order},
        values=report.model_dump(),
        verdict=_verdict(report.clean),
    )


# ----------------------------------------------------------------------------
# Thresholds
# ----------------------------------------------------------------------------

def theorem1_threshold(t):
    return Fraction(11, 12) * 2 ** (t - 1) + 2 * t + Fraction(1, 3)


def liu_threshold(t):
    return 2 ** (t - 1) + 2 * t - 2


def theorem1_minimal_n(t):
    return ceil(theorem1_threshold(t))


def liu_minimal_n(t):
    return liu_threshold(t)


class ThresholdRow(BaseModel):
    t: int
    theorem1: str
    theorem1_min_n: int
    liu: int
    liu_min_n: int
    rational_improvement: bool
    integer_improvement: bool


def threshold_table(max_t, min_t=1):
    rows = []
    for t in range(min_t, max_t + 1):
        bound = theorem1_threshold(t)
        rows.append(
            ThresholdRow(
                t=t,
                theorem1=str(bound),
                theorem1_min_n=theorem1_minimal_n(t),
                liu=liu_threshold(t),
                liu_min_n=liu_minimal_n(t),
                rational_improvement=bound < liu_threshold(t),
                integer_improvement=theorem1_minimal_n(t) < liu_minimal_n(t),
            )
        )
    return rows


def _first_lasting(predicate, horizon):
    """Smallest t in 1..horizon from which ``predicate`` holds up to the horizon."""
    answer = None
    for t in range(horizon, 0, -1):
        if not predicate(t):
            break
        answer = t
    return answer


def rational_crossover(horizon=64):
    """First t with theorem1_threshold(t) < liu_threshold(t) from then on."""
    return _first_lasting(lambda t: theorem1_threshold(t) < liu_threshold(t), horizon)


def minimal_n_crossover(horizon=64):
    """First t from which the smallest admissible integer n is strictly lower."""
    return _first_lasting(lambda t: theorem1_minimal_n(t) < liu_minimal_n(t), horizon)


# ----------------------------------------------------------------------------
# Conjecture and Lemma 8
# ----------------------------------------------------------------------------

def conjecture_check(t, n, guard=25, workers=1):
    """
    Compare the exact chi_c(M^t(K_n)) with n + t.

    The statement is only claimed for n >= t + 2; smaller n still get
    solved and reported, with a vacuous verdict.
    """
    named, certificate = solve_mycielski_complete(t, n, guard=guard, workers=workers)
    expected = n + t
    equal = certificate.ratio == expected
    values = {
        "chi_c": f"{certificate.optimal_k}/{certificate.optimal_d}",
        "chi": certificate.chi,
        "expected": expected,
        "equal": equal,
    }
    verdict = VACUOUS if n < t + 2 else _verdict(equal)
    return BoundReport(lemma="conjecture", instance={"t": t, "n": n}, values=values, verdict=verdict)


def lemma8_containment_check(t, n):
    """
    For level-t roots v1, v2 with a directed F°_t path v1 -> v2:
    N(v2) ∩ T(V(K_n)) ⊆ N(v1) and
    N({v2, h^-1(v2)}) ∩ T(V(K_n)) ⊆ N({v1, h^-1(v1)}).
    """
    named = mycielski_of_complete(n, t)
    graph = named.graph
    derived = derived_of_initials(named)
    f_circle = build_F_circle(t)
    pairs = 0
    violations = []
    for first in f_circle.vertices:
        v1 = named.vertex(first)
        p1 = named.vertex(h_inverse(first))
        for second in sorted(nx.descendants(f_circle.digraph, first)):
            pairs += 1
            v2 = named.vertex(second)
            p2 = named.vertex(h_inverse(second))
            single = neighborhood(graph, [v2]) & derived <= neighborhood(graph, [v1])
            paired = neighborhood(graph, [v2, p2]) & derived <= neighborhood(graph, [v1, p1])
            if not (single and paired):
                violations.append(f"{format_name(first)} -> {format_name(second)}")
    return BoundReport(
        lemma="lemma8",
        instance={"t": t, "n": n},
        values={"pairs": pairs, "violations": violations},
        verdict=VACUOUS if pairs == 0 else _verdict(not violations),
    )


# ----------------------------------------------------------------------------
# Lemma 9 hypothesis scan
# ----------------------------------------------------------------------------

def lemma9_hypothesis_scan(named, partition, form="lemma10"):
    """
    Collect the level-t roots v != u_t with C(v) ⊆ δ(v) ∩ R ⊆ {v, h^-1(v)}
    and look for a directed triple of F°_t among them.

    ``partition`` may be a KdPartition or a ChiCCertificate (its witness is
    used). The scan is vacuous unless d = 2, t >= 3 and the partition is in
    the requested normal form; it is a diagnostic and never raises on a
    found triple.
    """
    graph = named.graph
    if isinstance(partition, ChiCCertificate):
        partition = coloring_to_partition(graph, partition.witness)
    if not isinstance(partition, KdPartition):
        raise PreconditionError("lemma9 scan needs a KdPartition or a ChiCCertificate")
    instance = {"t": named.t, "n": named.base_n, "k": partition.k, "d": partition.d, "form": form}

    if partition.d != 2:
        return BoundReport(lemma="lemma9", instance=instance, values={"reason": "d != 2"}, verdict=VACUOUS)
    if named.t < 3:
        return BoundReport(lemma="lemma9", instance=instance, values={"reason": "t < 3"}, verdict=VACUOUS)
    normal = check_normal_form(partition, named, form=form)
    if not normal.holds:
        return BoundReport(
            lemma="lemma9",
            instance=instance,
            values={"reason": "partition not in normal form", "normal_form": normal.model_dump()},
            verdict=VACUOUS,
        )

    roots = root_set(named)
    qualifying = []
    for v, name in enumerate(named.names):
        if not name.is_root or name.total != named.t or name == root(named.t):
            continue
        color_class = partition.classes[partition.class_of(v)]
        field_roots = d_field(partition, v) & roots
        allowed = {v, named.vertex(h_inverse(name))}
        if color_class <= field_roots and field_roots <= allowed:
            qualifying.append(name)

    values = {"qualifying": [format_name(name) for name in qualifying], "triple": None}
    if len(qualifying) < 3:
        values["reason"] = "fewer than 3 qualifying roots"
        return BoundReport(lemma="lemma9", instance=instance, values=values, verdict=VACUOUS)
    triple = find_directed_triple(build_F_circle(named.t), qualifying)
    if triple is not None:
        values["triple"] = [format_name(name) for name in triple]
    return BoundReport(lemma="lemma9", instance=instance, values=values, verdict=_verdict(triple is None))


def half_integer_optimum(named):
    """
    k when chi_c(M^t(K_n)) = k/2, else None with the reason.

    chi(M^t(K_n)) = n + t and chi - 1 < chi_c <= chi, so the only reduced
    ratio with d = 2 in range is (2chi - 1)/2. It is the optimum iff the
    graph is (2chi - 1, 2)-colourable and no candidate strictly between
    chi - 1 and (2chi - 1)/2 is feasible.

    Returns:
        tuple: (k or None, reason or None)
    """
    graph = named.graph
    chi = named.base_n + named.t
    k = 2 * chi - 1
    if is_kd_colorable(graph, k, 2) is None:
        return None, f"no ({k},2)-colouring, so chi_c > {k}/2"
    alpha = independence_number(graph)
    for kk, dd in candidate_fractions(graph.order, alpha):
        ratio = Fraction(kk, dd)
        if ratio <= chi - 1 or kk * alpha < dd * graph.order:
            continue
        if ratio >= Fraction(k, 2):
            break
        if is_kd_colorable(graph, kk, dd) is not None:
            return None, f"chi_c <= {kk}/{dd} < {k}/2"
    return k, None


def lemma9_optimal_scan(t, n, guard=25):
    """
    Run the Lemma 9 scan on a normal-form partition of M^t(K_n) at its
    optimum, when that optimum has d = 2.

    Only the d = 2 candidate and the few ratios below it are searched, not
    the whole candidate list. A (k,2) optimum without a normal-form
    partition is reported as a failure.
    """
    order = mycielski_order(t, n)
    if order > guard:
        raise GuardExceededError(f"M^{t}(K_{n}) has {order} vertices, above the solver guard of {guard}")
    if t < 3:
        raise PreconditionError(f"the scan needs t >= 3, got {t}")
    named = mycielski_of_complete(n, t)
    k, reason = half_integer_optimum(named)
    if k is None:
        return BoundReport(lemma="lemma9", instance={"t": t, "n": n}, values={"reason": reason}, verdict=VACUOUS)
    partition = find_normal_form(named, k, 2)
    if partition is None:
        return BoundReport(
            lemma="lemma9",
            instance={"t": t, "n": n, "k": k, "d": 2, "form": "lemma10"},
            values={"reason": "optimal partition without a normal form"},
            verdict=FAILS,
        )
    return lemma9_hypothesis_scan(named, partition)


def main():
    parser = argparse.ArgumentParser(
        description="Threshold table and quick checks for chi_c(M^t(K_n))",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python theorem_harness.py --max-t 10
        """,
    )
    parser.add_argument("--max-t", type=int, default=10, help="Largest t in the table (default: 10)")
    args = parser.parse_args()

    print(f"📊 Thresholds for t = 1..{args.max_t}")
    for row in threshold_table(args.max_t):
        marker = "✅" if row.integer_improvement else "  "
        print(f"   {marker} t={row.t:<3} theorem1={row.theorem1:<10} n>={row.theorem1_min_n:<6} liu n>={row.liu}")
    print(f"   rational crossover t={rational_crossover()}, integer crossover t={minimal_n_crossover()}")


if __name__ == "__main__":
    main()
