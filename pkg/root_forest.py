#!/usr/bin/env python3
"""
The root digraphs F°_t and F_t, their outtree components and 3-cut sets.

F°_t lives on the level-t roots of M^t(G) other than u_t. Its arcs split
the last suffix entry: u_i^{...a} -> u_i^{...j(a-j)} for 1 <= j <= a-1.
F_t is the same digraph with the last suffix entry dropped from every
name; its weak components F(1), ..., F(t-1) are outtrees rooted at u_i.

A directed triple (u, v, w) is a directed path from u to w through v as
an inner vertex; a 3-cut set is a vertex set whose removal leaves no
directed triple. Triples are detected on bitmask reachability: in an
acyclic digraph (u, v, w) exists iff v is reachable from u and w from v.
"""

import argparse
import random
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import combinations
from math import comb

import networkx as nx
from pydantic import BaseModel

from mycielski import format_name, mirror, root
from toolkit_errors import GraphError, GuardExceededError, PreconditionError

BRUTE_FORCE_MAX_VERTICES = 31


class Flavor(str, Enum):
    ORIGINAL = "F-circle"
    RELABELED = "F"
    UNION = "F-union-mirror"


def compositions(total):
    """All tuples of positive integers summing to ``total``, lexicographic."""
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in compositions(total - first):
            yield (first,) + rest


def compositions_up_to(limit):
    for total in range(limit + 1):
        yield from compositions(total)


@dataclass(frozen=True)
class RootDigraph:
    digraph: nx.DiGraph
    t: int
    flavor: Flavor

    @classmethod
    def build(cls, vertices, arcs, t, flavor):
        digraph = nx.DiGraph()
        digraph.add_nodes_from(sorted(vertices))
        digraph.add_edges_from(sorted(arcs))
        return cls(nx.freeze(digraph), t, flavor)

    @property
    def vertices(self):
        return sorted(self.digraph.nodes)

    @property
    def arcs(self):
        return sorted(self.digraph.edges)

    def __len__(self):
        return self.digraph.number_of_nodes()

    def __contains__(self, name):
        return name in self.digraph

    @cached_property
    def index(self):
        return {name: position for position, name in enumerate(self.vertices)}

    @cached_property
    def descendant_masks(self):
        return [self._mask(nx.descendants(self.digraph, v)) for v in self.vertices]

    @cached_property
    def ancestor_masks(self):
        return [self._mask(nx.ancestors(self.digraph, v)) for v in self.vertices]

    @cached_property
    def inner_candidates(self):
        """(bit, ancestors, descendants) for vertices that can be a middle vertex."""
        return tuple(
            (1 << position, anc, desc)
            for position, (anc, desc) in enumerate(zip(self.ancestor_masks, self.descendant_masks))
            if anc and desc
        )

    def _mask(self, names):
        mask = 0
        for name in names:
            mask |= 1 << self.index[name]
        return mask

    def mask_of(self, names):
        for name in names:
            if name not in self.digraph:
                raise GraphError(f"{format_name(name)} is not a vertex of this {self.flavor.value}_{self.t}")
        return self._mask(names)

    def names_of(self, mask):
        vertices = self.vertices
        return [vertices[p] for p in range(len(vertices)) if mask >> p & 1]

    def has_triple_in(self, mask):
        for bit, anc, desc in self.inner_candidates:
            if mask & bit and mask & anc and mask & desc:
                return True
        return False


@dataclass(frozen=True)
class CutSet:
    members: frozenset

    def __len__(self):
        return len(self.members)

    def names(self):
        return sorted(self.members)

    def to_json(self):
        return [format_name(name) for name in self.names()]


# ----------------------------------------------------------------------------
# Construction
# ----------------------------------------------------------------------------

def build_F_circle(t):
    """F°_t on R_t(M^t(G)) - {u_t} with the index-splitting arcs."""
    if t < 1:
        raise PreconditionError(f"F°_t needs t >= 1, got {t}")
    vertices = []
    arcs = []
    for level in range(1, t):
        for suffix in compositions(t - level):
            name = root(level, *suffix)
            vertices.append(name)
            last = suffix[-1]
            for j in range(1, last):
                arcs.append((name, root(level, *suffix[:-1], j, last - j)))
    return RootDigraph.build(vertices, arcs, t, Flavor.ORIGINAL)


def relabel_to_F(f_circle):
    """Drop the final suffix entry of every vertex of F°_t."""
    if f_circle.flavor is not Flavor.ORIGINAL:
        raise PreconditionError(f"relabel expects F°_t, got {f_circle.flavor.value}")
    mapping = {name: name.parent() for name in f_circle.vertices}
    vertices = list(mapping.values())
    arcs = [(mapping[a], mapping[b]) for a, b in f_circle.arcs]
    return RootDigraph.build(vertices, arcs, f_circle.t, Flavor.RELABELED)


def build_F(t):
    return relabel_to_F(build_F_circle(t))


def component(forest, i):
    """F(i): the weak component of F_t containing u_i."""
    if forest.flavor is not Flavor.RELABELED:
        raise PreconditionError(f"components are taken in F_t, got {forest.flavor.value}")
    if not 1 <= i <= forest.t - 1:
        raise PreconditionError(f"component index must lie in 1..{forest.t - 1}, got {i}")
    members = nx.node_connected_component(forest.digraph.to_undirected(as_view=True), root(i))
    subgraph = forest.digraph.subgraph(members)
    return RootDigraph.build(subgraph.nodes, subgraph.edges, forest.t, Flavor.RELABELED)


def component_sizes(t):
    forest = build_F(t)
    return {i: len(component(forest, i)) for i in range(1, t)}


def outtree_diagnostic(digraph):
    """
    Check the outtree characterisation: weakly connected, exactly one
    vertex of indegree 0 and all others of indegree 1.

    Returns:
        tuple: (is_outtree, reason)
    """
    graph = digraph.digraph
    if graph.number_of_nodes() == 0:
        return False, "empty digraph"
    if not nx.is_weakly_connected(graph):
        return False, f"not weakly connected ({nx.number_weakly_connected_components(graph)} components)"
    sources = [v for v in digraph.vertices if graph.in_degree(v) == 0]
    heavy = [v for v in digraph.vertices if graph.in_degree(v) > 1]
    if len(sources) != 1:
        return False, f"{len(sources)} vertices with indegree 0"
    if heavy:
        return False, f"{format_name(heavy[0])} has indegree {graph.in_degree(heavy[0])}"
    return True, f"outtree rooted at {format_name(sources[0])}"


def is_outtree(digraph):
    return outtree_diagnostic(digraph)[0]


def reaches_all_from_root(digraph):
    """Every vertex is reachable from the indegree-0 root."""
    graph = digraph.digraph
    sources = [v for v in digraph.vertices if graph.in_degree(v) == 0]
    if len(sources) != 1:
        return False
    return nx.descendants(graph, sources[0]) | {sources[0]} == set(graph.nodes)


# ----------------------------------------------------------------------------
# The recursive isomorphism F(i) ≅ F(i+1) ⊔ F'(i+1)
# ----------------------------------------------------------------------------

def iso_g(i, t):
    """
    The map g: V(F(i)) -> V(F(i+1) ⊔ F'(i+1)).

    u_i -> u_{i+1}; u_i^{a...} with a >= 2 -> u_{i+1}^{(a-1)...};
    u_i^1 -> v_{i+1}; u_i^{1...} -> v_{i+1}^{...}.
    """
    if not 1 <= i <= t - 2:
        raise PreconditionError(f"g is defined for 1 <= i <= t-2 = {t - 2}, got {i}")
    mapping = {}
    for suffix in compositions_up_to(t - 1 - i):
        name = root(i, *suffix)
        if not suffix:
            image = root(i + 1)
        elif suffix[0] >= 2:
            image = root(i + 1, suffix[0] - 1, *suffix[1:])
        else:
            image = mirror(i + 1, *suffix[1:])
        mapping[name] = image
    return mapping


def union_with_mirror(part):
    """F(i) ⊔ F'(i): F(i), a mirror copy on v-names, and the arc (u_i, v_i)."""
    sources = [v for v in part.vertices if part.digraph.in_degree(v) == 0]
    if len(sources) != 1 or sources[0].suffix:
        raise PreconditionError("the union is formed from a component F(i)")
    top = sources[0]

    def to_mirror(name):
        return mirror(name.index, *name.suffix)

    vertices = part.vertices + [to_mirror(v) for v in part.vertices]
    arcs = part.arcs + [(to_mirror(a), to_mirror(b)) for a, b in part.arcs]
    arcs.append((top, to_mirror(top)))
    return RootDigraph.build(vertices, arcs, part.t, Flavor.UNION)


def verify_iso(first, second, mapping):
    """True iff ``mapping`` is a bijection V(first) -> V(second) preserving arcs both ways."""
    if set(mapping) != set(first.digraph.nodes):
        return False
    images = set(mapping.values())
    if len(images) != len(mapping) or images != set(second.digraph.nodes):
        return False
    mapped_arcs = {(mapping[a], mapping[b]) for a, b in first.digraph.edges}
    return mapped_arcs == set(second.digraph.edges)


def lemma6_check(t, i):
    forest = build_F(t)
    return verify_iso(
        component(forest, i),
        union_with_mirror(component(forest, i + 1)),
        iso_g(i, t),
    )


# ----------------------------------------------------------------------------
# Directed triples and 3-cut sets
# ----------------------------------------------------------------------------

def find_directed_triple(digraph, names):
    """
    Some (u, v, w) with u, v, w in ``names``, v reachable from u and w from v.

    Only u, v, w are required to lie in the set; the connecting path may
    leave it. Middle vertices are tried in canonical order and u, w are the
    first suitable vertices in that order.
    """
    mask = digraph.mask_of(names)
    vertices = digraph.vertices
    for bit, anc, desc in digraph.inner_candidates:
        if mask & bit and mask & anc and mask & desc:
            middle = bit.bit_length() - 1
            first = (mask & anc) & -(mask & anc)
            last = (mask & desc) & -(mask & desc)
            return vertices[first.bit_length() - 1], vertices[middle], vertices[last.bit_length() - 1]
    return None


def is_3cut(digraph, cut):
    members = cut.members if isinstance(cut, CutSet) else frozenset(cut)
    digraph.mask_of(members)
    rest = [name for name in digraph.vertices if name not in members]
    return find_directed_triple(digraph, rest) is None


def min_3cut_bruteforce(digraph, max_size=None):
    """
    A minimum 3-cut by enumerating subsets in order of size.

    Within a size, subsets are visited in lexicographic canonical order,
    so the first hit is the lexicographically least minimum cut. With
    ``max_size`` the search stops after that size and returns None if no
    cut was found.
    """
    n = len(digraph)
    if n > BRUTE_FORCE_MAX_VERTICES:
        raise GuardExceededError(
            f"{n} vertices exceed the brute-force limit of {BRUTE_FORCE_MAX_VERTICES}; use canonical_3cut"
        )
    full = (1 << n) - 1
    inner = digraph.inner_candidates
    bits = [1 << p for p in range(n)]
    limit = n if max_size is None else min(max_size, n)
    for size in range(limit + 1):
        for chosen in combinations(bits, size):
            rest = full ^ sum(chosen)
            if not any(rest & bit and rest & anc and rest & desc for bit, anc, desc in inner):
                return CutSet(frozenset(digraph.names_of(sum(chosen))))
    return None


def canonical_3cut(t):
    """S = {u_i^{...} in F_t : i + sum(suffix) <= t - 3}, of size 2^{t-3} - 1."""
    if t < 3:
        raise PreconditionError(f"the canonical 3-cut needs t >= 3, got {t}")
    members = set()
    for level in range(1, t - 2):
        for suffix in compositions_up_to(t - 3 - level):
            members.add(root(level, *suffix))
    return CutSet(frozenset(members))


class Corollary1Report(BaseModel):
    t: int
    threshold: int
    vertices: int
    qualifying_total: int
    examined: int
    exhaustive: bool
    counterexamples: list[list[str]]
    holds: bool


def corollary1_scan(t, exhaustive_limit=200_000, samples=20_000, seed=0):
    """
    Every U ⊆ V(F°_t) with |U| > 3·2^{t-3} should contain a directed triple.

    Enumerates all such U when there are at most ``exhaustive_limit`` of
    them, otherwise checks ``samples`` random ones drawn with a fixed seed.
    """
    if t < 4:
        raise PreconditionError(f"the corollary is stated for t >= 4, got {t}")
    f_circle = build_F_circle(t)
    n = len(f_circle)
    threshold = 3 * 2 ** (t - 3)
    full = (1 << n) - 1
    bits = [1 << p for p in range(n)]
    # complements of qualifying U have fewer than n - threshold vertices
    removable = list(range(n - threshold))
    qualifying_total = sum(comb(n, removed) for removed in removable)
    exhaustive = qualifying_total <= exhaustive_limit

    def complements():
        if exhaustive:
            for removed in removable:
                yield from combinations(bits, removed)
            return
        rng = random.Random(seed)
        weights = [comb(n, removed) for removed in removable]
        for _ in range(samples):
            removed = rng.choices(removable, weights=weights)[0]
            yield rng.sample(bits, removed)

    examined = 0
    counterexamples = []
    for chosen in complements():
        examined += 1
        kept = full ^ sum(chosen)
        if not f_circle.has_triple_in(kept):
            if len(counterexamples) < 10:
                counterexamples.append([format_name(v) for v in f_circle.names_of(kept)])
    return Corollary1Report(
        t=t,
        threshold=threshold,
        vertices=n,
        qualifying_total=qualifying_total,
        examined=examined,
        exhaustive=exhaustive,
        counterexamples=counterexamples,
        holds=not counterexamples,
    )


def to_dot(digraph, graph_name=None):
    graph_name = graph_name or f"{digraph.flavor.name.lower()}_{digraph.t}"
    position = digraph.index
    lines = [f"digraph {graph_name} {{"]
    for name in digraph.vertices:
        lines.append(f'  {position[name]} [label="{format_name(name)}"];')
    for a, b in digraph.arcs:
        lines.append(f"  {position[a]} -> {position[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def main():
    parser = argparse.ArgumentParser(
        description="Inspect the root digraphs F°_t / F_t",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python root_forest.py --t 5
  python root_forest.py --t 6 --dot f6.dot
        """,
    )
    parser.add_argument("--t", type=int, required=True, help="Iteration parameter t")
    parser.add_argument("--dot", help="Write F_t in DOT format")
    args = parser.parse_args()

    forest = build_F(args.t)
    print(f"📊 F_{args.t}: {len(forest)} vertices, {len(forest.arcs)} arcs")
    for i, size in component_sizes(args.t).items():
        ok, reason = outtree_diagnostic(component(forest, i))
        print(f"   {'✅' if ok else '❌'} |F({i})|={size}  {reason}")
    if args.t >= 3:
        cut = canonical_3cut(args.t)
        print(f"   canonical 3-cut: {len(cut)} vertices, valid={is_3cut(forest, cut)}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(to_dot(forest))
        print(f"💾 DOT written to {args.dot}")


if __name__ == "__main__":
    main()
