#!/usr/bin/env python3
"""
Mycielski construction with structured vertex names.

Every vertex of M^t(G) carries a name:

    x<b>^i1.i2...   initial vertex x_b of G and its derived vertices
    u<l>^i1.i2...   the root u_l added at step l and its derived vertices
    v<l>^i1.i2...   mirror copy used for the disjoint union F(i) ⊔ F'(i)

The twin created at step s of a vertex whose total index is sigma is named
by appending (s - sigma) to its suffix, so the twin of x is x^s and the
twin of x^i is x^{i(s-i)}.
"""

import argparse
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from functools import total_ordering

from pydantic import BaseModel

from graph_core import Graph, complete_graph
from toolkit_errors import GraphError, GraphFormatError, NameGrammarError, PreconditionError


class NameKind(str, Enum):
    INITIAL = "x"
    ROOT = "u"
    MIRROR = "v"


_KIND_RANK = {NameKind.INITIAL: 0, NameKind.ROOT: 1, NameKind.MIRROR: 2}
_NAME_PATTERN = re.compile(r"^([xuv])([1-9]\d*)(?:\^([1-9]\d*(?:\.[1-9]\d*)*))?$")


@total_ordering
@dataclass(frozen=True)
class VertexName:
    kind: NameKind
    index: int
    suffix: tuple = ()

    def __post_init__(self):
        if self.index < 1:
            raise NameGrammarError(f"name index must be positive, got {self.index}")
        if any(entry < 1 for entry in self.suffix):
            raise NameGrammarError(f"suffix entries must be positive, got {self.suffix}")

    @property
    def total(self):
        """Step at which this vertex was created (0 for initial vertices of G)."""
        if self.kind is NameKind.INITIAL:
            return sum(self.suffix)
        return self.index + sum(self.suffix)

    @property
    def is_root(self):
        return self.kind is NameKind.ROOT

    def twin(self, step):
        """Twin created at Mycielski step ``step``."""
        if step <= self.total:
            raise PreconditionError(f"{self} already exists at step {step}")
        return VertexName(self.kind, self.index, self.suffix + (step - self.total,))

    def extend(self, *entries):
        return VertexName(self.kind, self.index, self.suffix + tuple(entries))

    def parent(self):
        """Drop the last suffix entry (inverse of ``twin``)."""
        if not self.suffix:
            raise PreconditionError(f"{self} has no suffix to drop")
        return VertexName(self.kind, self.index, self.suffix[:-1])

    def is_derived_from(self, other):
        return (
            self.kind is other.kind
            and self.index == other.index
            and len(self.suffix) > len(other.suffix)
            and self.suffix[: len(other.suffix)] == other.suffix
        )

    def sort_key(self):
        return (_KIND_RANK[self.kind], self.index, self.suffix)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return format_name(self)


def initial(base, *suffix):
    return VertexName(NameKind.INITIAL, base, tuple(suffix))


def root(level, *suffix):
    return VertexName(NameKind.ROOT, level, tuple(suffix))


def mirror(level, *suffix):
    return VertexName(NameKind.MIRROR, level, tuple(suffix))


def format_name(name):
    text = f"{name.kind.value}{name.index}"
    if name.suffix:
        text += "^" + ".".join(str(entry) for entry in name.suffix)
    return text


def parse_name(text):
    match = _NAME_PATTERN.match(text.strip())
    if not match:
        raise NameGrammarError(f"not a vertex name: {text!r}")
    kind, index, suffix = match.groups()
    entries = tuple(int(entry) for entry in suffix.split(".")) if suffix else ()
    return VertexName(NameKind(kind), int(index), entries)


@dataclass(frozen=True)
class NamedGraph:
    """M^t(G) together with its name table (``names[v]`` is the name of id v)."""

    graph: Graph
    names: tuple
    t: int
    base_n: int
    _ids: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) != self.graph.order:
            raise GraphError(f"{len(self.names)} names for {self.graph.order} vertices")
        ids = {name: v for v, name in enumerate(self.names)}
        if len(ids) != len(self.names):
            raise GraphError("vertex names are not unique")
        object.__setattr__(self, "_ids", ids)

    def vertex(self, name):
        try:
            return self._ids[name]
        except KeyError:
            raise GraphError(f"{name} is not a vertex of M^{self.t}") from None

    def __contains__(self, name):
        return name in self._ids

    def name(self, v):
        return self.names[v]

    def names_of(self, vertex_set):
        return sorted(self.names[v] for v in vertex_set)

    @property
    def top_root(self):
        """u_t, the root added by the last step."""
        if self.t < 1:
            raise PreconditionError("M^0(G) has no root")
        return self.vertex(root(self.t))

    def old_vertices(self):
        """Vertices of M^{t-1}(G) inside M^t(G)."""
        return frozenset(v for v, name in enumerate(self.names) if name.total < self.t)

    def twin_of(self, v):
        """Twin of an M^{t-1} vertex created by the last step."""
        return self.vertex(self.names[v].twin(self.t))


def _canonical(order_names, edges):
    """Relabel vertices into canonical name order."""
    permutation = sorted(range(len(order_names)), key=lambda i: order_names[i].sort_key())
    new_id = {old: new for new, old in enumerate(permutation)}
    names = tuple(order_names[old] for old in permutation)
    graph = Graph.from_edges(len(names), [(new_id[a], new_id[b]) for a, b in edges])
    return graph, names


def base_named_graph(graph):
    """M^0(G): initial names x_1..x_n in vertex-id order."""
    names = tuple(initial(v + 1) for v in graph.vertices)
    return NamedGraph(graph, names, 0, graph.order)


def mycielskian(named):
    """
    One Mycielski step: H = M^s(G) to M^{s+1}(G).

    Every old vertex gains a twin adjacent to the old neighbours of its
    original; the new root u_{s+1} is adjacent to exactly the twins.
    """
    step = named.t + 1
    n = named.graph.order
    twins = [name.twin(step) for name in named.names]
    all_names = list(named.names) + twins + [root(step)]

    edges = list(named.graph.edges)
    for a, b in named.graph.edges:
        edges.append((n + a, b))
        edges.append((n + b, a))
    edges.extend((n + v, 2 * n) for v in range(n))

    graph, names = _canonical(all_names, edges)
    return NamedGraph(graph, names, step, named.base_n)


def iterated_mycielskian(graph, t):
    if t < 0:
        raise PreconditionError(f"t must be non-negative, got {t}")
    named = base_named_graph(graph)
    for _ in range(t):
        named = mycielskian(named)
    return named


def mycielski_of_complete(n, t):
    return iterated_mycielskian(complete_graph(n), t)


def derived_set(name, named):
    """T(x): every vertex whose name extends x's by a nonempty suffix."""
    named.vertex(name)
    return frozenset(v for v, other in enumerate(named.names) if other.is_derived_from(name))


def derived_of_initials(named):
    """T(V(G)): all derived vertices of all initial vertices."""
    return frozenset(
        v for v, name in enumerate(named.names) if name.kind is NameKind.INITIAL and name.suffix
    )


def initial_vertices(named):
    return frozenset(
        v for v, name in enumerate(named.names) if name.kind is NameKind.INITIAL and not name.suffix
    )


def roots_at_level(named, s):
    """R_s(M^t(G)): roots u_i^{...} with i + sum(suffix) = s."""
    if not 1 <= s <= named.t:
        raise PreconditionError(f"level s must lie in 1..{named.t}, got {s}")
    return frozenset(v for v, name in enumerate(named.names) if name.is_root and name.total == s)


def root_set(named):
    """R(M^t(G)): every root and derived root."""
    return frozenset(v for v, name in enumerate(named.names) if name.is_root)


def twin_bijection_h(named):
    """
    h: R(M^{t-1}(G)) -> R_t(M^t(G)) - {u_t}, mapping each old root to its twin.

    Returns:
        dict: VertexName -> VertexName
    """
    if named.t < 1:
        raise PreconditionError("h needs t >= 1")
    mapping = {}
    for name in named.names:
        if name.is_root and name.total < named.t:
            image = name.twin(named.t)
            named.vertex(image)
            mapping[name] = image
    return mapping


def h_inverse(name):
    return name.parent()


def name_violations(named):
    """Names breaking the validity rules for M^t(G) (expected: none)."""
    problems = []
    for name in named.names:
        if name.kind is NameKind.MIRROR:
            problems.append(f"{name}: mirror names do not belong to M^t")
        elif name.total > named.t:
            problems.append(f"{name}: total index {name.total} exceeds t={named.t}")
        elif name.kind is NameKind.INITIAL and name.index > named.base_n:
            problems.append(f"{name}: base index exceeds n={named.base_n}")
    expected = 2 ** named.t * (named.base_n + 1) - 1
    if named.graph.order != expected:
        problems.append(f"order {named.graph.order} != 2^t(n+1)-1 = {expected}")
    if named.t >= 1:
        top = [name for name in named.names if name == root(named.t)]
        if len(top) != 1:
            problems.append(f"expected exactly one u_{named.t}")
    return problems


# ----------------------------------------------------------------------------
# Name tables and DOT
# ----------------------------------------------------------------------------

class NameTable(BaseModel):
    t: int
    base_n: int
    names: list[str]


def name_table(named):
    return NameTable(t=named.t, base_n=named.base_n, names=[format_name(n) for n in named.names])


def write_name_table(named, path):
    with open(path, "w", encoding="utf-8") as f:
        f.write(name_table(named).model_dump_json(indent=2))
        f.write("\n")


def read_name_table(path):
    try:
        with open(path, "r", encoding="utf-8") as f:
            return NameTable.model_validate(json.load(f))
    except (OSError, ValueError) as e:
        raise GraphFormatError(f"cannot read name table {path}: {e}") from e


def named_graph_from_names(graph, names):
    """
    Attach a list of names to a plain graph, inferring t and base_n.

    Args:
        graph (Graph): the graph, ids in the same order as ``names``
        names (list): VertexName or name text per vertex id

    Returns:
        NamedGraph
    """
    parsed = tuple(parse_name(n) if isinstance(n, str) else n for n in names)
    t = max((name.total for name in parsed), default=0)
    base_n = sum(1 for name in parsed if name.kind is NameKind.INITIAL and not name.suffix)
    named = NamedGraph(graph, parsed, t, base_n)
    problems = name_violations(named)
    if problems:
        raise GraphFormatError("inconsistent name table: " + "; ".join(problems[:5]))
    return named


def named_graph_to_dot(named, graph_name="M"):
    lines = [f"graph {graph_name} {{"]
    for v, name in enumerate(named.names):
        lines.append(f'  {v} [label="{format_name(name)}"];')
    for a, b in named.graph.sorted_edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def name_class_summary(named):
    """Count vertices per (kind, index-pattern) class, e.g. ``x^1.1`` or ``u1``."""
    counter = Counter()
    for name in named.names:
        if name.kind is NameKind.INITIAL:
            label = "x" + ("^" + ".".join(map(str, name.suffix)) if name.suffix else "")
        else:
            label = format_name(name)
        counter[label] += 1
    return dict(sorted(counter.items()))


def main():
    parser = argparse.ArgumentParser(
        description="Build M^t(K_n) and list its vertex-name classes",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python mycielski.py --n 3 --t 2
  python mycielski.py --n 4 --t 2 --dot m2k4.dot
        """,
    )
    parser.add_argument("--n", type=int, required=True, help="Order of the complete base graph")
    parser.add_argument("--t", type=int, required=True, help="Number of Mycielski steps")
    parser.add_argument("--dot", help="Write the graph in DOT format")
    args = parser.parse_args()

    named = mycielski_of_complete(args.n, args.t)
    print(f"📊 M^{args.t}(K_{args.n}): {named.graph.order} vertices, {named.graph.size} edges")
    for label, count in name_class_summary(named).items():
        print(f"   {label}: {count}")
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as f:
            f.write(named_graph_to_dot(named))
        print(f"💾 DOT written to {args.dot}")


if __name__ == "__main__":
    main()
