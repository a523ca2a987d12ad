import itertools
import math
import time

import networkx as nx
import numpy as np
from django.test import SimpleTestCase, tag

from .exceptions import DisconnectedGraph, InvalidGraph, TooSmall
from .graph import Graph
from .measures import (
    TransitivityMode,
    average_path_length,
    connected_components,
    degree_sequence,
    giant_component,
    transitivity,
)
from .pajek import format_pajek


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves):
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def brute_force_transitivity(graph):
    adj = [set(a) for a in graph.adjacency]
    triangles = sum(
        1 for u, v, w in itertools.combinations(range(graph.n), 3)
        if v in adj[u] and w in adj[u] and w in adj[v]
    )
    triples = sum(len(a) * (len(a) - 1) // 2 for a in adj)
    global_t = 3 * triangles / triples if triples else 0.0
    local = []
    for u in range(graph.n):
        k = len(adj[u])
        if k < 2:
            local.append(0.0)
            continue
        links = sum(1 for v, w in itertools.combinations(sorted(adj[u]), 2) if w in adj[v])
        local.append(links / (k * (k - 1) / 2))
    return global_t, sum(local) / len(local)


class GraphModelTest(SimpleTestCase):
    def test_from_edges_collapses_duplicates(self):
        graph = Graph.from_edges(3, [(0, 1), (1, 0), (1, 2)])
        self.assertEqual(graph.m, 2)
        self.assertEqual(graph.sorted_edges(), [(0, 1), (1, 2)])

    def test_self_loop_rejected(self):
        with self.assertRaises(InvalidGraph):
            Graph.from_edges(2, [(1, 1)])

    def test_out_of_range_edge_rejected(self):
        with self.assertRaises(InvalidGraph):
            Graph.from_edges(2, [(0, 2)])

    def test_adjacency_is_sorted_and_symmetric(self):
        graph = Graph.from_edges(4, [(3, 0), (0, 1), (2, 0), (1, 2)])
        self.assertEqual(graph.adjacency[0], (1, 2, 3))
        for u, neighbors in enumerate(graph.adjacency):
            for v in neighbors:
                self.assertIn(u, graph.adjacency[v])

    def test_density(self):
        self.assertEqual(complete(5).density, 1.0)
        self.assertEqual(Graph.from_edges(1, []).density, 0.0)

    def test_graph_is_hashable_and_comparable(self):
        self.assertEqual(path(3), Graph.from_edges(3, [(1, 0), (2, 1)]))
        self.assertEqual(len({path(3), path(3)}), 1)

    def test_from_networkx_relabels_in_sorted_order(self):
        g = nx.Graph([('b', 'c'), ('a', 'b')])
        self.assertEqual(Graph.from_networkx(g).sorted_edges(), [(0, 1), (1, 2)])


class AveragePathLengthTest(SimpleTestCase):
    def test_complete_graph(self):
        self.assertEqual(average_path_length(complete(4)), 1.0)
        for n in range(2, 8):
            self.assertEqual(average_path_length(complete(n)), 1.0)

    def test_path_of_three(self):
        self.assertAlmostEqual(average_path_length(path(3)), 4 / 3, places=12)

    def test_disconnected_raises(self):
        with self.assertRaises(DisconnectedGraph):
            average_path_length(Graph.from_edges(4, [(0, 1), (2, 3)]))

    def test_too_small_raises(self):
        with self.assertRaises(TooSmall):
            average_path_length(Graph.from_edges(1, []))

    def test_matches_floyd_warshall(self):
        rng = np.random.default_rng(7)
        checked = 0
        while checked < 50:
            n = int(rng.integers(2, 51))
            g = nx.gnp_random_graph(n, float(rng.uniform(0.05, 0.6)), seed=int(rng.integers(1 << 30)))
            if not nx.is_connected(g):
                continue
            graph = Graph.from_networkx(g)
            dist = nx.floyd_warshall_numpy(graph.nx_graph)
            expected = dist[np.triu_indices(n, k=1)].mean()
            self.assertAlmostEqual(average_path_length(graph), expected, places=12)
            checked += 1


class TransitivityTest(SimpleTestCase):
    def test_triangle(self):
        for mode in TransitivityMode.values:
            self.assertEqual(transitivity(complete(3), mode), 1.0)

    def test_star(self):
        for mode in TransitivityMode.values:
            self.assertEqual(transitivity(star(3), mode), 0.0)

    def test_square_with_diagonal(self):
        graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)])
        self.assertAlmostEqual(transitivity(graph, TransitivityMode.GLOBAL), 0.75)
        self.assertAlmostEqual(transitivity(graph, TransitivityMode.MEAN_LOCAL), 5 / 6)

    def test_trees_have_zero_transitivity(self):
        tree = Graph.from_networkx(nx.balanced_tree(2, 4))
        for mode in TransitivityMode.values:
            self.assertEqual(transitivity(tree, mode), 0.0)

    def test_empty_graph(self):
        self.assertEqual(transitivity(Graph.from_edges(0, [])), 0.0)

    def test_unknown_mode_rejected(self):
        with self.assertRaises(ValueError):
            transitivity(complete(3), 'sideways')

    def test_matches_brute_force_enumeration(self):
        rng = np.random.default_rng(11)
        for _ in range(50):
            n = int(rng.integers(3, 51))
            g = nx.gnp_random_graph(n, float(rng.uniform(0.05, 0.7)), seed=int(rng.integers(1 << 30)))
            graph = Graph.from_networkx(g)
            expected_global, expected_local = brute_force_transitivity(graph)
            self.assertAlmostEqual(transitivity(graph, 'global'), expected_global, places=12)
            self.assertAlmostEqual(transitivity(graph, 'mean-local'), expected_local, places=12)

    @tag('slow')
    def test_runtime_grows_at_most_quadratically_in_mean_degree(self):
        def best_time(graph):
            timings = []
            for _ in range(3):
                start = time.perf_counter()
                transitivity(graph)
                timings.append(time.perf_counter() - start)
            return min(timings)

        n = 3000
        low = Graph.from_networkx(nx.circulant_graph(n, range(1, 6)))
        high = Graph.from_networkx(nx.circulant_graph(n, range(1, 11)))
        _ = (low.nx_graph, high.nx_graph)  # built outside the timed region
        ratio = best_time(high) / best_time(low)
        self.assertLessEqual(ratio, 2 * 4)


class ComponentsTest(SimpleTestCase):
    def test_complete_graph_single_component(self):
        self.assertEqual(connected_components(complete(4)), [[0, 1, 2, 3]])

    def test_two_disjoint_edges(self):
        self.assertEqual(
            connected_components(Graph.from_edges(4, [(0, 1), (2, 3)])),
            [[0, 1], [2, 3]],
        )

    def test_empty_graph(self):
        self.assertEqual(connected_components(Graph.from_edges(0, [])), [])

    def test_giant_component_is_relabeled(self):
        graph = Graph.from_edges(6, [(0, 5), (1, 2), (2, 3), (3, 1)])
        giant, flagged = giant_component(graph)
        self.assertTrue(flagged)
        self.assertEqual(giant.n, 3)
        self.assertEqual(giant.sorted_edges(), [(0, 1), (0, 2), (1, 2)])

    def test_connected_graph_is_left_alone(self):
        graph = path(5)
        giant, flagged = giant_component(graph)
        self.assertFalse(flagged)
        self.assertIs(giant, graph)


class DegreeSequenceTest(SimpleTestCase):
    def test_examples(self):
        self.assertEqual(degree_sequence(complete(4)).values, (3, 3, 3, 3))
        self.assertEqual(degree_sequence(star(3)).values, (3, 1, 1, 1))
        self.assertEqual(degree_sequence(path(3)).values, (1, 2, 1))

    def test_sum_is_twice_edge_count(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            g = nx.gnp_random_graph(30, 0.2, seed=int(rng.integers(1 << 30)))
            graph = Graph.from_networkx(g)
            self.assertEqual(degree_sequence(graph).total, 2 * graph.m)

    def test_mean_degree(self):
        self.assertTrue(math.isclose(degree_sequence(star(3)).mean, 1.5))


class PajekWriterTest(SimpleTestCase):
    def test_format(self):
        text = format_pajek(path(3))
        self.assertEqual(text, '*Vertices 3\n*Edges\n1 2\n2 3\n')

    def test_format_with_labels(self):
        text = format_pajek(path(2), labels=['a', 'b'])
        self.assertIn('1 "a"', text)
        self.assertIn('2 "b"', text)
