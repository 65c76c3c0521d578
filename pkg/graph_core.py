#!/usr/bin/env python3
"""
Finite simple undirected graphs for the Mycielski toolkit.

Vertices are the integers 0..order-1 (the vertex id). Names live in
mycielski.py; nothing here interprets them. Adjacency is kept as one
bitmask per vertex so the search kernels can intersect neighbourhoods
with a single ``&``.

Edge-list files use the DIMACS-style format

    p <num_vertices> <num_edges>
    e <u> <v>

with 1-based vertex ids. ``c`` lines are comments.
"""

import argparse
import hashlib
from dataclasses import dataclass, field
from itertools import combinations

import networkx as nx

from toolkit_errors import GraphError, GraphFormatError


@dataclass(frozen=True)
class Graph:
    """Immutable simple graph on vertex ids ``0..order-1``."""

    order: int
    edges: frozenset
    adjacency: tuple = field(repr=False, compare=False)

    @classmethod
    def from_edges(cls, order, edges):
        """
        Build a graph, rejecting self-loops, duplicates and unknown endpoints.

        Args:
            order (int): number of vertices
            edges (iterable): pairs of vertex ids

        Returns:
            Graph
        """
        if order < 0:
            raise GraphError(f"order must be non-negative, got {order}")
        normalized = set()
        adjacency = [0] * order
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{order - 1}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            pair = (u, v) if u < v else (v, u)
            if pair in normalized:
                raise GraphError(f"duplicate edge {pair}")
            normalized.add(pair)
            adjacency[u] |= 1 << v
            adjacency[v] |= 1 << u
        return cls(order, frozenset(normalized), tuple(adjacency))

    @property
    def vertices(self):
        return range(self.order)

    @property
    def size(self):
        return len(self.edges)

    def sorted_edges(self):
        return sorted(self.edges)

    def neighbors(self, v):
        self._check_vertex(v)
        return frozenset(_bits(self.adjacency[v]))

    def degree(self, v):
        self._check_vertex(v)
        return self.adjacency[v].bit_count()

    def has_edge(self, u, v):
        self._check_vertex(u)
        self._check_vertex(v)
        return bool(self.adjacency[u] >> v & 1)

    def mask_of(self, vertex_set):
        """Bitmask of a vertex set, rejecting members outside the graph."""
        mask = 0
        for v in vertex_set:
            self._check_vertex(v)
            mask |= 1 << v
        return mask

    def _check_vertex(self, v):
        if not (isinstance(v, int) and 0 <= v < self.order):
            raise GraphError(f"vertex {v!r} is not in the graph (order {self.order})")


def _bits(mask):
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def complete_graph(n):
    if n < 1:
        raise GraphError(f"complete graph needs n >= 1, got {n}")
    return Graph.from_edges(n, combinations(range(n), 2))


def cycle_graph(n):
    if n < 3:
        raise GraphError(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n):
    return Graph.from_edges(n, [])


def neighborhood(graph, vertex_set):
    """N(S): union of the neighbours of the members of S (may meet S)."""
    mask = 0
    for v in vertex_set:
        graph._check_vertex(v)
        mask |= graph.adjacency[v]
    return frozenset(_bits(mask))


def is_independent(graph, vertex_set):
    mask = graph.mask_of(vertex_set)
    return all(not (graph.adjacency[v] & mask) for v in _bits(mask))


def independence_number(graph):
    """
    Exact alpha(G) by branch and bound.

    Vertices of degree <= 1 inside the candidate set are taken greedily
    (some maximum independent set always contains them); otherwise the
    search branches on a vertex of maximum candidate degree.
    """
    if graph.order == 0:
        raise GraphError("independence number of the empty graph is undefined")
    return len(maximum_independent_set(graph))


def maximum_independent_set(graph):
    adjacency = graph.adjacency
    best = [0, 0]  # size, mask

    def branch(candidates, chosen, size):
        while candidates:
            # greedy reductions
            forced = None
            for v in _bits(candidates):
                if (adjacency[v] & candidates).bit_count() <= 1:
                    forced = v
                    break
            if forced is None:
                break
            chosen |= 1 << forced
            size += 1
            candidates &= ~(adjacency[forced] | (1 << forced))
        if not candidates:
            if size > best[0]:
                best[0], best[1] = size, chosen
            return
        if size + candidates.bit_count() <= best[0]:
            return
        pivot = max(_bits(candidates), key=lambda v: (adjacency[v] & candidates).bit_count())
        branch(candidates & ~(adjacency[pivot] | 1 << pivot), chosen | 1 << pivot, size + 1)
        branch(candidates & ~(1 << pivot), chosen, size)

    branch((1 << graph.order) - 1, 0, 0)
    return frozenset(_bits(best[1]))


def to_networkx(graph):
    nx_graph = nx.Graph()
    nx_graph.add_nodes_from(graph.vertices)
    nx_graph.add_edges_from(graph.sorted_edges())
    return nx_graph


def maximum_clique(graph):
    """A maximum clique; ties broken by the lexicographically least vertex tuple."""
    if graph.order == 0:
        return frozenset()
    cliques = nx.find_cliques(to_networkx(graph))
    best = min((tuple(sorted(c)) for c in cliques), key=lambda c: (-len(c), c))
    return frozenset(best)


def clique_number(graph):
    return len(maximum_clique(graph))


def chromatic_number(graph):
    """
    Exact chi(G) by backtracking over ordinary colourings.

    Independent of the circular solver: colours are plain labels, a vertex
    may open at most one new colour, and the search starts at the clique
    number.
    """
    if graph.order == 0:
        return 0
    if not graph.edges:
        return 1
    adjacency = graph.adjacency
    clique = sorted(maximum_clique(graph))
    rest = sorted(
        (v for v in graph.vertices if v not in clique),
        key=lambda v: (-graph.degree(v), v),
    )
    order = clique + rest
    for k in range(len(clique), graph.order + 1):
        colors = [-1] * graph.order
        for position, v in enumerate(clique):
            colors[v] = position
        if _extend_proper_coloring(adjacency, order, len(clique), colors, k, len(clique)):
            return k
    return graph.order


def _extend_proper_coloring(adjacency, order, position, colors, k, used):
    if position == len(order):
        return True
    v = order[position]
    blocked = {colors[w] for w in _bits(adjacency[v]) if colors[w] >= 0}
    for c in range(min(k, used + 1)):
        if c in blocked:
            continue
        colors[v] = c
        if _extend_proper_coloring(adjacency, order, position + 1, colors, k, max(used, c + 1)):
            return True
    colors[v] = -1
    return False


# ----------------------------------------------------------------------------
# Edge-list format
# ----------------------------------------------------------------------------

def edge_list_text(graph):
    lines = [f"p {graph.order} {graph.size}"]
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.sorted_edges())
    return "\n".join(lines) + "\n"


def parse_edge_list(text):
    """Parse the DIMACS-style edge list; also accepts ``p edge <n> <m>``."""
    order = None
    declared_edges = None
    edges = []
    for line_number, raw in enumerate(text.splitlines(), 1):
        fields = raw.split()
        if not fields or fields[0] == "c":
            continue
        try:
            if fields[0] == "p":
                if order is not None:
                    raise GraphFormatError(f"line {line_number}: second header line")
                numbers = fields[2:] if len(fields) == 4 else fields[1:]
                if len(numbers) != 2:
                    raise GraphFormatError(f"line {line_number}: header must be 'p <n> <m>'")
                order, declared_edges = int(numbers[0]), int(numbers[1])
            elif fields[0] == "e":
                if order is None:
                    raise GraphFormatError(f"line {line_number}: edge before header")
                if len(fields) != 3:
                    raise GraphFormatError(f"line {line_number}: edge must be 'e <u> <v>'")
                edges.append((int(fields[1]) - 1, int(fields[2]) - 1))
            else:
                raise GraphFormatError(f"line {line_number}: unknown record {fields[0]!r}")
        except ValueError as e:
            if isinstance(e, GraphFormatError):
                raise
            raise GraphFormatError(f"line {line_number}: {e}") from e
    if order is None:
        raise GraphFormatError("missing 'p <n> <m>' header")
    if declared_edges != len(edges):
        raise GraphFormatError(f"header declares {declared_edges} edges, found {len(edges)}")
    try:
        return Graph.from_edges(order, edges)
    except GraphError as e:
        raise GraphFormatError(str(e)) from e


def read_edge_list(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except (OSError, UnicodeDecodeError) as e:
        raise GraphFormatError(f"cannot read {path}: {e}") from e
    return parse_edge_list(text)


def write_edge_list(graph, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(edge_list_text(graph))


def graph_hash(graph):
    return hashlib.sha256(edge_list_text(graph).encode("utf-8")).hexdigest()[:16]


def main():
    parser = argparse.ArgumentParser(
        description="Summarize a DIMACS-style edge-list graph",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python graph_core.py graph.txt
        """,
    )
    parser.add_argument("graph", help="Edge-list file (p <n> <m> / e <u> <v>)")
    args = parser.parse_args()

    graph = read_edge_list(args.graph)
    print(f"📊 {args.graph}: {graph.order} vertices, {graph.size} edges")
    print(f"   alpha = {independence_number(graph)}")
    print(f"   omega = {clique_number(graph)}")
    print(f"   chi   = {chromatic_number(graph)}")


if __name__ == "__main__":
    main()
