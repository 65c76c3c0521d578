#!/usr/bin/env python3
"""
(k,d)-colourings, (k,d)-partitions and an exact circular chromatic number solver.

A (k,d)-colouring maps V(G) into Z_k so that adjacent vertices get colours
at circular distance at least d, i.e. it is a homomorphism into the
circulant target on Z_k with difference set [d, k-d]. The solver walks the
finite candidate set {k/d : k <= |V|, d <= alpha(G), gcd(k,d) = 1} in
ascending order and returns the first feasible ratio, together with the
rejected prefix as a certificate.
"""

import argparse
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from more_itertools import chunked
from pydantic import BaseModel

from graph_core import (
    Graph,
    _bits,
    chromatic_number,
    clique_number,
    graph_hash,
    independence_number,
    maximum_clique,
    neighborhood,
    read_edge_list,
)
from toolkit_errors import ColoringError, PreconditionError

CLIQUE_BOUND = "clique-bound"
INDEPENDENCE_BOUND = "independence-bound"
EXHAUSTIVE_SEARCH = "exhaustive-search"


@dataclass(frozen=True)
class KdColoring:
    k: int
    d: int
    assignment: tuple

    def __post_init__(self):
        _check_parameters(self.k, self.d)
        for v, color in enumerate(self.assignment):
            if not isinstance(color, int) or not 0 <= color < self.k:
                raise ColoringError(f"vertex {v} has colour {color!r} outside Z_{self.k}")

    @property
    def ratio(self):
        return Fraction(self.k, self.d)

    def color(self, v):
        return self.assignment[v]


@dataclass(frozen=True)
class KdPartition:
    k: int
    d: int
    classes: tuple

    def __post_init__(self):
        _check_parameters(self.k, self.d)
        if len(self.classes) != self.k:
            raise ColoringError(f"a ({self.k},{self.d})-partition needs {self.k} classes, got {len(self.classes)}")
        seen = set()
        for j, members in enumerate(self.classes):
            overlap = seen & members
            if overlap:
                raise ColoringError(f"class X_{j} repeats vertices {sorted(overlap)}")
            seen |= members

    def class_of(self, v):
        for j, members in enumerate(self.classes):
            if v in members:
                return j
        raise ColoringError(f"vertex {v} is not covered by the partition")

    def window(self, start, width):
        """X_start ∪ ... ∪ X_{start+width-1}, indices mod k."""
        members = set()
        for offset in range(width):
            members |= self.classes[(start + offset) % self.k]
        return frozenset(members)

    def covered(self):
        return frozenset().union(*self.classes)


def _check_parameters(k, d):
    if k < 1 or d < 1:
        raise ColoringError(f"k and d must be positive, got ({k},{d})")
    if k < 2 * d and not (k == 1 and d == 1):
        raise ColoringError(f"({k},{d}) violates k >= 2d")


def circular_distance_ok(a, b, k, d):
    return d <= abs(a - b) <= k - d


def circulant_target(k, d):
    """The graph on Z_k with i ~ j iff d <= |i - j| <= k - d."""
    if d < 1 or k < 2 * d:
        raise PreconditionError(f"circulant target needs k >= 2d >= 2, got ({k},{d})")
    edges = [(i, j) for i in range(k) for j in range(i + 1, k) if circular_distance_ok(i, j, k, d)]
    return Graph.from_edges(k, edges)


def coloring_from_mapping(graph, k, d, mapping):
    """Build a KdColoring from a vertex -> colour mapping; partial maps are rejected."""
    missing = [v for v in graph.vertices if v not in mapping]
    if missing:
        raise ColoringError(f"colouring is partial: {len(missing)} vertices uncoloured, first {missing[:5]}")
    return KdColoring(k, d, tuple(mapping[v] for v in graph.vertices))


def edge_violations(graph, k, d, assignment):
    """Edges breaking d <= |f(u) - f(v)| <= k - d, for any raw (k, d, f)."""
    return [
        (u, v)
        for u, v in graph.sorted_edges()
        if not circular_distance_ok(assignment[u], assignment[v], k, d)
    ]


def verify_coloring(graph, coloring):
    if len(coloring.assignment) != graph.order:
        raise ColoringError(
            f"colouring covers {len(coloring.assignment)} vertices, graph has {graph.order}"
        )
    return not edge_violations(graph, coloring.k, coloring.d, coloring.assignment)


def window_violations(graph, partition):
    """Start indices j whose window X_j ∪ ... ∪ X_{j+d-1} is not independent."""
    violations = []
    for j in range(partition.k):
        mask = graph.mask_of(partition.window(j, partition.d))
        if any(graph.adjacency[v] & mask for v in _bits(mask)):
            violations.append(j)
    return violations


def coloring_to_partition(graph, coloring):
    if not verify_coloring(graph, coloring):
        raise ColoringError(f"not a valid ({coloring.k},{coloring.d})-colouring")
    classes = [set() for _ in range(coloring.k)]
    for v, color in enumerate(coloring.assignment):
        classes[color].add(v)
    return KdPartition(coloring.k, coloring.d, tuple(frozenset(c) for c in classes))


def partition_to_coloring(graph, partition):
    if partition.covered() != frozenset(graph.vertices):
        raise ColoringError("partition does not cover exactly the vertex set")
    bad = window_violations(graph, partition)
    if bad:
        raise ColoringError(f"windows starting at {bad} are not independent")
    assignment = [0] * graph.order
    for j, members in enumerate(partition.classes):
        for v in members:
            assignment[v] = j
    return KdColoring(partition.k, partition.d, tuple(assignment))


def rotate_coloring(coloring, shift):
    return KdColoring(
        coloring.k, coloring.d, tuple((c + shift) % coloring.k for c in coloring.assignment)
    )


# ----------------------------------------------------------------------------
# Homomorphism search into the circulant target
# ----------------------------------------------------------------------------

class CircularColoringSearch:
    """
    Backtracking homomorphism search with forward checking.

    Domains are colour bitmasks. After colouring v with c, each uncoloured
    neighbour keeps only the colours at circular distance >= d from c. The
    next vertex is the one with the smallest domain (ties: most uncoloured
    neighbours, then smallest id).

    Extra constraints used by the normal-form search:
        pinned: vertex -> allowed colour mask
        implications: (x, y, i) meaning f(x) = i implies f(y) = i
    """

    def __init__(self, graph, k, d, pinned=None, implications=(), seed_clique=True):
        _check_parameters(k, d)
        self.graph = graph
        self.k = k
        self.d = d
        self.nodes = 0
        full = (1 << k) - 1
        self.allowed_next_to = []
        for c in range(k):
            near = 0
            for offset in range(-(d - 1), d):
                near |= 1 << ((c + offset) % k)
            self.allowed_next_to.append(full & ~near)

        self.domains = [full] * graph.order
        for v, mask in (pinned or {}).items():
            self.domains[v] &= mask
        self.triggers = {}
        self.blockers = {}
        for x, y, i in implications:
            self.triggers.setdefault(x, []).append((y, i))
            self.blockers.setdefault(y, []).append((x, i))

        # Only rotation and reflection of Z_k are assumed as symmetries.
        if seed_clique and not pinned and not implications and graph.edges:
            clique = sorted(maximum_clique(graph))
            self.domains[clique[0]] = 1
            reflection_half = 0
            for c in range(k // 2 + 1):
                reflection_half |= 1 << c
            self.domains[clique[1]] &= reflection_half

    def run(self):
        """Return a colour tuple, or None when no colouring exists."""
        if any(mask == 0 for mask in self.domains):
            return None
        colors = [-1] * self.graph.order
        if self._extend(colors, list(self.domains), self.graph.order):
            return tuple(colors)
        return None

    def _extend(self, colors, domains, remaining):
        self.nodes += 1
        if remaining == 0:
            return True
        adjacency = self.graph.adjacency
        v = -1
        best = None
        for w in range(self.graph.order):
            if colors[w] >= 0:
                continue
            uncolored = sum(1 for x in _bits(adjacency[w]) if colors[x] < 0)
            key = (domains[w].bit_count(), -uncolored)
            if best is None or key < best:
                best, v = key, w
                if key[0] == 1 and uncolored == 0:
                    break

        for c in _bits(domains[v]):
            narrowed = self._narrow(v, c, colors, domains)
            if narrowed is None:
                continue
            colors[v] = c
            if self._extend(colors, narrowed, remaining - 1):
                return True
            colors[v] = -1
        return False

    def _narrow(self, v, c, colors, domains):
        allowed = self.allowed_next_to[c]
        narrowed = list(domains)
        narrowed[v] = 1 << c
        for w in _bits(self.graph.adjacency[v]):
            if colors[w] < 0:
                narrowed[w] &= allowed
                if not narrowed[w]:
                    return None
        for y, i in self.triggers.get(v, ()):
            if c == i:
                if colors[y] >= 0 and colors[y] != i:
                    return None
                narrowed[y] &= 1 << i
                if not narrowed[y]:
                    return None
        for x, i in self.blockers.get(v, ()):
            if c != i:
                if colors[x] == i:
                    return None
                narrowed[x] &= ~(1 << i)
                if colors[x] < 0 and not narrowed[x]:
                    return None
        return narrowed


def is_kd_colorable(graph, k, d, pinned=None, implications=()):
    """A (k,d)-colouring of G if one exists, else None (exact)."""
    found, _ = _search(graph, k, d, pinned, implications)
    return found


def _search(graph, k, d, pinned=None, implications=()):
    search = CircularColoringSearch(graph, k, d, pinned=pinned, implications=implications)
    assignment = search.run()
    if assignment is None:
        return None, search.nodes
    return KdColoring(k, d, assignment), search.nodes


def _search_candidate(task):
    graph, k, d = task
    return _search(graph, k, d)


# ----------------------------------------------------------------------------
# Circular chromatic number
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RejectedCandidate:
    k: int
    d: int
    attestation: str
    nodes: int = 0


@dataclass(frozen=True)
class ChiCCertificate:
    optimal_k: int
    optimal_d: int
    witness: KdColoring
    rejected: tuple
    alpha: int
    omega: int
    chi: int
    order: int
    edgeless_convention: bool = False

    @property
    def ratio(self):
        return Fraction(self.optimal_k, self.optimal_d)


def candidate_fractions(order, alpha):
    """Reduced (k,d) with 2d <= k <= order and d <= alpha, ascending by k/d then k."""
    candidates = [
        (k, d)
        for d in range(1, alpha + 1)
        for k in range(2 * d, order + 1)
        if gcd(k, d) == 1
    ]
    return sorted(candidates, key=lambda kd: (Fraction(*kd), kd[0]))


def _bound_attestation(k, d, order, alpha, omega):
    if Fraction(k, d) < omega:
        return CLIQUE_BOUND
    if k * alpha < d * order:
        return INDEPENDENCE_BOUND
    return None


def circular_chromatic_number(graph, workers=1):
    """
    Exact chi_c(G) with a certificate.

    Candidates below the clique number or below |V|/alpha are rejected by
    those bounds; every other candidate below the optimum is refuted by a
    complete search. With ``workers > 1`` independent searches run in a
    process pool; the answer is still the first feasible candidate in
    ascending order.
    """
    if graph.order == 0:
        raise PreconditionError("the circular chromatic number of the empty graph is undefined")
    alpha = independence_number(graph)
    if not graph.edges:
        witness = KdColoring(1, 1, (0,) * graph.order)
        return ChiCCertificate(1, 1, witness, (), alpha, 1, 1, graph.order, edgeless_convention=True)

    omega = clique_number(graph)
    chi = chromatic_number(graph)
    rejected = []
    pending = []
    for k, d in candidate_fractions(graph.order, alpha):
        reason = _bound_attestation(k, d, graph.order, alpha, omega)
        if reason is not None:
            rejected.append(RejectedCandidate(k, d, reason))
        else:
            pending.append((k, d))

    def finish(k, d, witness):
        return ChiCCertificate(k, d, witness, tuple(rejected), alpha, omega, chi, graph.order)

    if workers <= 1:
        for k, d in pending:
            witness, nodes = _search(graph, k, d)
            if witness is not None:
                return finish(k, d, witness)
            rejected.append(RejectedCandidate(k, d, EXHAUSTIVE_SEARCH, nodes))
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for batch in chunked(pending, workers):
                results = list(pool.map(_search_candidate, [(graph, k, d) for k, d in batch]))
                for (k, d), (witness, nodes) in zip(batch, results):
                    if witness is not None:
                        return finish(k, d, witness)
                    rejected.append(RejectedCandidate(k, d, EXHAUSTIVE_SEARCH, nodes))
    raise AssertionError("(|V|,1) is always feasible for a graph with edges")


# ----------------------------------------------------------------------------
# d-fields and the optimal-partition diagnostics
# ----------------------------------------------------------------------------

def d_field(partition, v):
    """delta(x) = X_{j-d+1} ∪ ... ∪ X_{j+d-1} where x ∈ X_j."""
    j = partition.class_of(v)
    return partition.window(j - partition.d + 1, 2 * partition.d - 1)


class Lemma1Report(BaseModel):
    k: int
    d: int
    reduced: bool
    empty_classes: list[int]
    missing_links: list[int]
    clean: bool


def check_lemma1(partition, graph):
    """
    Report empty classes and indices i with N(X_i) ∩ X_{i+d} = ∅.

    For a partition realising chi_c = k/d with gcd(k,d) = 1 both lists are
    empty; on other partitions the report is purely diagnostic.
    """
    k, d = partition.k, partition.d
    empty = [i for i in range(k) if not partition.classes[i]]
    missing = [
        i
        for i in range(k)
        if not (neighborhood(graph, partition.classes[i]) & partition.classes[(i + d) % k])
    ]
    return Lemma1Report(
        k=k,
        d=d,
        reduced=gcd(k, d) == 1,
        empty_classes=empty,
        missing_links=missing,
        clean=not empty and not missing,
    )


class NormalFormReport(BaseModel):
    form: str
    condition1: bool
    condition1_detail: str
    condition2: bool
    twin_classes: list[int]
    holds: bool


NORMAL_FORMS = ("lemma10", "lemma3")


def check_normal_form(partition, named, form="lemma10"):
    """
    Check the normal form of a (k,d)-partition of M^t(G).

    Condition 1 is X_0 = {u_t} (form "lemma10") or u_t ∈ X_0 (form "lemma3").
    Condition 2 asks for one index i with d <= i <= k - d such that every
    M^{t-1} vertex in X_i has its twin in X_i; ``twin_classes`` lists all
    such i.
    """
    if form not in NORMAL_FORMS:
        raise PreconditionError(f"unknown normal form {form!r}, expected one of {NORMAL_FORMS}")
    u = named.top_root
    x0 = partition.classes[0]
    if form == "lemma10":
        condition1 = x0 == frozenset({u})
        detail = "X_0 = {u_t}" if condition1 else f"X_0 has {len(x0)} vertices, u_t {'in' if u in x0 else 'not in'} X_0"
    else:
        condition1 = u in x0
        detail = "u_t in X_0" if condition1 else "u_t not in X_0"

    old = named.old_vertices()
    twin_classes = []
    for i in range(partition.d, partition.k - partition.d + 1):
        members = partition.classes[i]
        if all(named.twin_of(x) in members for x in members & old):
            twin_classes.append(i)
    condition2 = bool(twin_classes)
    return NormalFormReport(
        form=form,
        condition1=condition1,
        condition1_detail=detail,
        condition2=condition2,
        twin_classes=twin_classes,
        holds=condition1 and condition2,
    )


def find_normal_form(named, k, d):
    """
    A (k,d)-partition of M^t(G) in Lemma-10 normal form, by constrained search.

    u_t is pinned alone in X_0; for each middle index i in [d, k-d] the
    search adds "x in X_i implies twin(x) in X_i" and stops at the first
    success. Returns None if every i is exhausted.
    """
    if named.t < 1:
        raise PreconditionError("normal forms need t >= 1")
    graph = named.graph
    if is_kd_colorable(graph, k, d) is None:
        raise PreconditionError(f"M^{named.t} has no ({k},{d})-colouring")
    u = named.top_root
    without_zero = ((1 << k) - 1) & ~1
    pinned = {v: without_zero for v in graph.vertices}
    pinned[u] = 1
    old = sorted(named.old_vertices())
    for i in range(d, k - d + 1):
        implications = [(x, named.twin_of(x), i) for x in old]
        coloring = is_kd_colorable(graph, k, d, pinned=pinned, implications=implications)
        if coloring is not None:
            return coloring_to_partition(graph, coloring)
    return None


# ----------------------------------------------------------------------------
# Certificate documents
# ----------------------------------------------------------------------------

class KdPair(BaseModel):
    k: int
    d: int


class RejectedEntry(BaseModel):
    k: int
    d: int
    attestation: str
    nodes: int


class CertificateDocument(BaseModel):
    graph: str
    order: int
    alpha: int
    omega: int
    chi: int
    optimal: KdPair
    ratio: str
    edgeless_convention: bool
    witness: dict[str, int]
    rejected: list[RejectedEntry]


def vertex_labels(graph, names=None):
    """Witness keys: vertex names when known, else 1-based ids."""
    if names is None:
        return [str(v + 1) for v in graph.vertices]
    return [str(name) for name in names]


def certificate_document(certificate, graph, names=None):
    labels = vertex_labels(graph, names)
    return CertificateDocument(
        graph=graph_hash(graph),
        order=certificate.order,
        alpha=certificate.alpha,
        omega=certificate.omega,
        chi=certificate.chi,
        optimal=KdPair(k=certificate.optimal_k, d=certificate.optimal_d),
        ratio=f"{certificate.optimal_k}/{certificate.optimal_d}",
        edgeless_convention=certificate.edgeless_convention,
        witness={labels[v]: color for v, color in enumerate(certificate.witness.assignment)},
        rejected=[
            RejectedEntry(k=r.k, d=r.d, attestation=r.attestation, nodes=r.nodes)
            for r in certificate.rejected
        ],
    )


def main():
    parser = argparse.ArgumentParser(
        description="Compute the circular chromatic number of an edge-list graph",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python circular_coloring.py graph.txt
  python circular_coloring.py graph.txt --workers 4
        """,
    )
    parser.add_argument("graph", help="Edge-list file")
    parser.add_argument("--workers", type=int, default=1, help="Parallel candidate searches (default: 1)")
    args = parser.parse_args()

    graph = read_edge_list(args.graph)
    print(f"🔍 Solving {args.graph} ({graph.order} vertices, {graph.size} edges)...")
    certificate = circular_chromatic_number(graph, workers=args.workers)
    print(f"chi_c = {certificate.optimal_k}/{certificate.optimal_d}")
    print(json.dumps(certificate_document(certificate, graph).model_dump(), indent=2))


if __name__ == "__main__":
    main()
