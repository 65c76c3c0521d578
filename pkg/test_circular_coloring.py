#!/usr/bin/env python3
"""
Tests for (k,d)-colourings, partitions, the exact chi_c solver and normal forms.
"""

from fractions import Fraction
from math import ceil, gcd

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from circular_coloring import (
    CLIQUE_BOUND,
    EXHAUSTIVE_SEARCH,
    INDEPENDENCE_BOUND,
    CircularColoringSearch,
    KdColoring,
    KdPartition,
    candidate_fractions,
    certificate_document,
    check_lemma1,
    check_normal_form,
    circulant_target,
    circular_chromatic_number,
    coloring_from_mapping,
    coloring_to_partition,
    d_field,
    edge_violations,
    find_normal_form,
    is_kd_colorable,
    partition_to_coloring,
    rotate_coloring,
    verify_coloring,
    window_violations,
)
from conftest import small_graphs
from graph_core import Graph, complete_graph, cycle_graph, empty_graph, neighborhood, to_networkx
from mycielski import format_name, mycielski_of_complete, root
from toolkit_errors import ColoringError, PreconditionError

C5_COLORING = (0, 2, 4, 1, 3)


def test_coloring_parameters_are_checked():
    with pytest.raises(ColoringError):
        KdColoring(5, 3, (0,))
    with pytest.raises(ColoringError):
        KdColoring(5, 0, (0,))
    with pytest.raises(ColoringError):
        KdColoring(5, 2, (5,))
    assert KdColoring(1, 1, (0, 0)).ratio == 1


def test_partition_rejects_overlap_and_wrong_length():
    with pytest.raises(ColoringError):
        KdPartition(4, 1, (frozenset({0}), frozenset({0}), frozenset(), frozenset()))
    with pytest.raises(ColoringError):
        KdPartition(4, 1, (frozenset({0}),))


def test_circulant_targets():
    assert nx.is_isomorphic(to_networkx(circulant_target(5, 2)), to_networkx(cycle_graph(5)))
    assert circulant_target(6, 1).edges == complete_graph(6).edges
    assert circulant_target(6, 3).size == 3
    with pytest.raises(PreconditionError):
        circulant_target(5, 3)


def test_five_cycle_coloring():
    graph = cycle_graph(5)
    coloring = KdColoring(5, 2, C5_COLORING)
    assert verify_coloring(graph, coloring)
    assert edge_violations(graph, 5, 3, C5_COLORING) == graph.sorted_edges()
    assert not verify_coloring(graph, KdColoring(5, 2, (0, 1, 2, 3, 4)))
    with pytest.raises(ColoringError):
        verify_coloring(graph, KdColoring(5, 2, (0, 2)))


def test_coloring_from_mapping_rejects_partial_maps():
    graph = cycle_graph(5)
    assert coloring_from_mapping(graph, 5, 2, dict(enumerate(C5_COLORING))).assignment == C5_COLORING
    with pytest.raises(ColoringError):
        coloring_from_mapping(graph, 5, 2, {0: 0, 1: 2})


def test_partition_views():
    graph = cycle_graph(5)
    partition = coloring_to_partition(graph, KdColoring(5, 2, C5_COLORING))
    assert partition.classes[2] == frozenset({1})
    assert partition.class_of(3) == 1
    assert partition.window(4, 2) == frozenset({2, 0})
    assert d_field(partition, 0) == frozenset({0, 2, 3})
    with pytest.raises(ColoringError):
        partition.class_of(9)
    with pytest.raises(ColoringError):
        coloring_to_partition(graph, KdColoring(5, 2, (0, 1, 2, 3, 4)))


def test_partition_to_coloring_needs_full_cover():
    graph = cycle_graph(5)
    partial = KdPartition(5, 2, (frozenset({0}),) + (frozenset(),) * 4)
    with pytest.raises(ColoringError):
        partition_to_coloring(graph, partial)


@st.composite
def graphs_with_assignments(draw):
    graph = draw(small_graphs(min_order=1, max_order=12))
    d = draw(st.integers(1, 3))
    k = draw(st.integers(2 * d, 2 * d + 6))
    assignment = tuple(draw(st.lists(st.integers(0, k - 1), min_size=graph.order, max_size=graph.order)))
    return graph, KdColoring(k, d, assignment)


@settings(max_examples=1000)
@given(graphs_with_assignments())
def test_coloring_partition_duality(case):
    graph, coloring = case
    classes = [set() for _ in range(coloring.k)]
    for v, color in enumerate(coloring.assignment):
        classes[color].add(v)
    partition = KdPartition(coloring.k, coloring.d, tuple(frozenset(c) for c in classes))

    valid = verify_coloring(graph, coloring)
    assert valid == (not window_violations(graph, partition))
    if valid:
        assert partition_to_coloring(graph, partition) == coloring
        assert coloring_to_partition(graph, coloring) == partition
    else:
        with pytest.raises(ColoringError):
            partition_to_coloring(graph, partition)


@st.composite
def colored_graphs(draw):
    """A (k,d)-colouring and a graph whose edges all respect it."""
    d = draw(st.integers(1, 3))
    k = draw(st.integers(2 * d, 2 * d + 6))
    order = draw(st.integers(1, 12))
    assignment = tuple(draw(st.lists(st.integers(0, k - 1), min_size=order, max_size=order)))
    allowed = [
        (u, v)
        for u in range(order)
        for v in range(u + 1, order)
        if min((assignment[u] - assignment[v]) % k, (assignment[v] - assignment[u]) % k) >= d
    ]
    edges = draw(st.lists(st.sampled_from(allowed), unique=True)) if allowed else []
    return Graph.from_edges(order, edges), KdColoring(k, d, assignment)


@settings(max_examples=300)
@given(colored_graphs())
def test_d_field_misses_the_neighbourhood(case):
    graph, coloring = case
    partition = coloring_to_partition(graph, coloring)
    for v in graph.vertices:
        assert not d_field(partition, v) & neighborhood(graph, [v])


def test_rotation_preserves_validity():
    graph = cycle_graph(5)
    coloring = KdColoring(5, 2, C5_COLORING)
    for shift in range(5):
        assert verify_coloring(graph, rotate_coloring(coloring, shift))


def test_pins_and_implications():
    graph = complete_graph(2)
    found = is_kd_colorable(graph, 2, 1, pinned={0: 0b10})
    assert found.assignment == (1, 0)
    assert is_kd_colorable(graph, 2, 1, pinned={0: 0b01, 1: 0b01}) is None
    # in C_5, f(0) = f(2) = 0 leaves no room for vertices 3 and 4
    forced = is_kd_colorable(cycle_graph(5), 5, 2, pinned={0: 0b1}, implications=[(0, 2, 0)])
    assert forced is None


def test_search_counts_nodes():
    search = CircularColoringSearch(complete_graph(3), 3, 1)
    assert search.run() is not None
    assert search.nodes >= 3


def test_candidate_fractions_are_sorted_and_reduced():
    candidates = candidate_fractions(7, 3)
    ratios = [Fraction(k, d) for k, d in candidates]
    assert ratios == sorted(ratios)
    assert all(gcd(k, d) == 1 and 2 * d <= k <= 7 and d <= 3 for k, d in candidates)
    assert (7, 3) in candidates and (6, 3) not in candidates


@pytest.mark.parametrize(
    "graph, expected",
    [
        (complete_graph(2), Fraction(2)),
        (complete_graph(4), Fraction(4)),
        (cycle_graph(5), Fraction(5, 2)),
        (cycle_graph(7), Fraction(7, 3)),
        (cycle_graph(8), Fraction(2)),
    ],
)
def test_small_graphs(graph, expected):
    assert circular_chromatic_number(graph).ratio == expected


@pytest.mark.parametrize(
    "n, k, d",
    [(2, 5, 2), (3, 4, 1), (4, 5, 1), (5, 6, 1)],
)
def test_single_step_mycielskians(n, k, d):
    named = mycielski_of_complete(n, 1)
    certificate = circular_chromatic_number(named.graph)
    assert (certificate.optimal_k, certificate.optimal_d) == (k, d)
    assert verify_coloring(named.graph, certificate.witness)

    # every reduced candidate below the optimum is refuted, and nothing else
    below = [
        (kk, dd)
        for kk, dd in candidate_fractions(named.graph.order, certificate.alpha)
        if Fraction(kk, dd) < certificate.ratio
    ]
    assert [(r.k, r.d) for r in certificate.rejected] == below
    for rejected in certificate.rejected:
        if rejected.attestation == CLIQUE_BOUND:
            assert Fraction(rejected.k, rejected.d) < certificate.omega
        elif rejected.attestation == INDEPENDENCE_BOUND:
            assert rejected.k * certificate.alpha < rejected.d * named.graph.order
        else:
            assert rejected.attestation == EXHAUSTIVE_SEARCH
            assert is_kd_colorable(named.graph, rejected.k, rejected.d) is None


@pytest.mark.parametrize(
    "graph", [cycle_graph(5), cycle_graph(7), complete_graph(3), mycielski_of_complete(3, 1).graph]
)
def test_colourability_is_monotone_in_the_ratio(graph):
    optimum = circular_chromatic_number(graph).ratio
    for k in range(2, graph.order + 3):
        for d in range(1, k // 2 + 1):
            feasible = is_kd_colorable(graph, k, d) is not None
            assert feasible == (Fraction(k, d) >= optimum), (k, d)


def test_five_cycle_certificate_attestations():
    certificate = circular_chromatic_number(cycle_graph(5))
    assert [(r.k, r.d, r.attestation) for r in certificate.rejected] == [(2, 1, INDEPENDENCE_BOUND)]
    assert (certificate.alpha, certificate.omega, certificate.chi) == (2, 2, 3)


def test_groetzsch_graph():
    certificate = circular_chromatic_number(mycielski_of_complete(2, 2).graph)
    assert certificate.ratio == 4


def test_edgeless_convention():
    certificate = circular_chromatic_number(empty_graph(3))
    assert certificate.edgeless_convention
    assert certificate.ratio == 1
    assert certificate.rejected == ()
    with pytest.raises(PreconditionError):
        circular_chromatic_number(empty_graph(0))


@settings(max_examples=40)
@given(small_graphs(max_order=7))
def test_solver_sandwich(graph):
    certificate = circular_chromatic_number(graph)
    if certificate.edgeless_convention:
        return
    assert certificate.omega <= certificate.ratio <= certificate.chi
    assert ceil(certificate.ratio) == certificate.chi
    assert verify_coloring(graph, certificate.witness)
    assert gcd(certificate.optimal_k, certificate.optimal_d) == 1


def test_parallel_candidates_agree():
    graph = mycielski_of_complete(2, 1).graph
    serial = circular_chromatic_number(graph)
    parallel = circular_chromatic_number(graph, workers=2)
    assert (parallel.optimal_k, parallel.optimal_d) == (serial.optimal_k, serial.optimal_d)
    assert [(r.k, r.d) for r in parallel.rejected] == [(r.k, r.d) for r in serial.rejected]


@pytest.mark.parametrize("n, t", [(2, 1), (3, 1), (4, 1), (2, 2)])
def test_optimal_witness_has_linked_classes(n, t):
    named = mycielski_of_complete(n, t)
    certificate = circular_chromatic_number(named.graph)
    report = check_lemma1(coloring_to_partition(named.graph, certificate.witness), named.graph)
    assert report.reduced
    assert report.clean


def test_lemma1_report_flags_empty_classes():
    graph = cycle_graph(5)
    partition = coloring_to_partition(graph, KdColoring(6, 2, (0, 2, 4, 1, 3)))
    report = check_lemma1(partition, graph)
    assert not report.reduced
    assert report.empty_classes == [5]
    assert not report.clean


@pytest.mark.parametrize("n, t, k, d", [(3, 1, 4, 1), (2, 1, 5, 2), (2, 2, 4, 1)])
def test_find_normal_form(n, t, k, d):
    named = mycielski_of_complete(n, t)
    partition = find_normal_form(named, k, d)
    assert partition is not None
    assert not window_violations(named.graph, partition)
    report = check_normal_form(partition, named)
    assert report.holds
    assert partition.classes[0] == frozenset({named.top_root})
    assert check_normal_form(partition, named, form="lemma3").holds


def test_find_normal_form_requires_a_coloring():
    with pytest.raises(PreconditionError):
        find_normal_form(mycielski_of_complete(3, 1), 3, 1)


def test_normal_form_failure_report():
    named = mycielski_of_complete(3, 1)
    partition = find_normal_form(named, 4, 1)
    coloring = partition_to_coloring(named.graph, partition)
    moved = coloring_to_partition(named.graph, rotate_coloring(coloring, 1))
    report = check_normal_form(moved, named)
    assert not report.condition1
    assert not report.holds
    with pytest.raises(PreconditionError):
        check_normal_form(moved, named, form="lemma11")


def test_certificate_document():
    named = mycielski_of_complete(2, 1)
    certificate = circular_chromatic_number(named.graph)
    document = certificate_document(certificate, named.graph, named.names)
    assert document.ratio == "5/2"
    assert (document.optimal.k, document.optimal.d) == (5, 2)
    assert set(document.witness) == {format_name(name) for name in named.names}
    assert format_name(root(1)) in document.witness
    assert document.model_dump_json() == certificate_document(certificate, named.graph, named.names).model_dump_json()
    plain = certificate_document(certificate, named.graph)
    assert set(plain.witness) == {"1", "2", "3", "4", "5"}


@pytest.mark.slow
def test_second_mycielskian_of_k4():
    named = mycielski_of_complete(4, 2)
    certificate = circular_chromatic_number(named.graph)
    assert certificate.ratio == 6
    assert verify_coloring(named.graph, certificate.witness)
