import itertools

import networkx as nx
from django.test import SimpleTestCase

from graphs.exceptions import InvalidParam, TooSmall
from graphs.graph import Graph
from graphs.measures import degree_sequence, is_connected, transitivity

from .plan import RewireMode, RewirePlan
from .references import bfs_relabel, latticize, randomize, rewire
from .swap import SwapState, attempt_swap, lattice_cost


def complete(n):
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def ring(n, k=2):
    """Ring lattice with k neighbours on each side."""
    return Graph.from_edges(n, [(i, (i + j) % n) for i in range(n) for j in range(1, k + 1)])


def gnp(n, p, seed):
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


class RewirePlanTest(SimpleTestCase):
    def test_mode_defaults(self):
        self.assertEqual(RewirePlan(mode=RewireMode.RANDOMIZE).effective_swaps_per_edge, 10)
        self.assertEqual(RewirePlan(mode=RewireMode.LATTICIZE).effective_swaps_per_edge, 20)
        self.assertEqual(RewirePlan(swaps_per_edge=3).attempts(7), 21)

    def test_invalid_budget(self):
        with self.assertRaises(InvalidParam):
            RewirePlan(swaps_per_edge=0)
        with self.assertRaises(InvalidParam):
            RewirePlan(mode='shuffle')


class AttemptSwapTest(SimpleTestCase):
    def test_lattice_tie_accepted(self):
        graph = Graph.from_edges(6, [(1, 5), (2, 3)])
        accepted, result = attempt_swap(graph, (1, 5), (2, 3), RewireMode.LATTICIZE)
        self.assertTrue(accepted)
        self.assertEqual(result.sorted_edges(), [(1, 3), (2, 5)])
        self.assertEqual(lattice_cost(result.edges), lattice_cost(graph.edges))

    def test_lattice_rejects_moving_away_from_diagonal(self):
        graph = Graph.from_edges(6, [(0, 1), (4, 5)])
        accepted, result = attempt_swap(graph, (0, 1), (4, 5), RewireMode.LATTICIZE)
        self.assertFalse(accepted)
        self.assertEqual(result, graph)
        accepted, _ = attempt_swap(graph, (0, 1), (4, 5), RewireMode.RANDOMIZE)
        self.assertTrue(accepted)

    def test_shared_endpoint_rejected(self):
        graph = Graph.from_edges(3, [(0, 1), (0, 2)])
        accepted, result = attempt_swap(graph, (0, 1), (0, 2), RewireMode.RANDOMIZE)
        self.assertFalse(accepted)
        self.assertEqual(result, graph)

    def test_complete_graph_admits_no_swap(self):
        k4 = complete(4)
        for (a, b), (c, d) in itertools.permutations(k4.sorted_edges(), 2):
            for e1, e2 in (((a, b), (c, d)), ((b, a), (c, d)), ((a, b), (d, c)), ((b, a), (d, c))):
                accepted, _ = attempt_swap(k4, e1, e2, RewireMode.RANDOMIZE)
                self.assertFalse(accepted)

    def test_guard_reverts_disconnecting_swap(self):
        hexagon = ring(6, 1)
        # (0,1),(3,4) -> (0,4),(3,1) splits the cycle into two triangles
        accepted, result = attempt_swap(hexagon, (0, 1), (3, 4), RewireMode.RANDOMIZE, connectivity_guard=True)
        self.assertFalse(accepted)
        self.assertEqual(result, hexagon)
        accepted, result = attempt_swap(hexagon, (0, 1), (3, 4), RewireMode.RANDOMIZE)
        self.assertTrue(accepted)
        self.assertFalse(is_connected(result))
        accepted, result = attempt_swap(hexagon, (0, 1), (4, 3), RewireMode.RANDOMIZE, connectivity_guard=True)
        self.assertTrue(accepted)
        self.assertTrue(is_connected(result))

    def test_state_keeps_edge_index(self):
        state = SwapState(ring(10))
        self.assertTrue(state.attempt_swap((0, 1), (5, 6), RewireMode.RANDOMIZE))
        self.assertEqual(set(state.edges), {tuple(sorted(e)) for e in state.graph.edges()})
        for edge, index in state.position.items():
            self.assertEqual(state.edges[index], edge)


class RewireTest(SimpleTestCase):
    def test_complete_graph_unchanged(self):
        k4 = complete(4)
        self.assertEqual(randomize(k4, RewirePlan(seed=3)), k4)
        self.assertEqual(latticize(k4, RewirePlan(seed=3)), k4)

    def test_too_small(self):
        with self.assertRaises(TooSmall):
            randomize(Graph.from_edges(2, [(0, 1)]), RewirePlan())

    def test_seed_determinism(self):
        graph = ring(100, 1)
        plan = RewirePlan(swaps_per_edge=10, seed=42)
        self.assertEqual(randomize(graph, plan), randomize(graph, plan))
        self.assertEqual(latticize(graph, plan), latticize(graph, plan))

    def test_degree_and_simplicity_preserved(self):
        for seed in range(5):
            graph = gnp(60, 0.1, seed)
            for mode in RewireMode.values:
                result = rewire(graph, RewirePlan(mode=mode, seed=seed, connectivity_guard=False))
                self.assertEqual(degree_sequence(result), degree_sequence(graph))
                self.assertEqual(result.m, graph.m)

    def test_guard_keeps_connectivity(self):
        graph = ring(100, 1)
        for seed in range(3):
            result = randomize(graph, RewirePlan(seed=seed))
            self.assertTrue(is_connected(result))
            self.assertEqual(degree_sequence(result), degree_sequence(graph))

    def test_lattice_cost_non_increasing(self):
        graph = gnp(80, 0.08, 7)
        state = SwapState(graph)
        costs = [state.cost]
        plan = RewirePlan(mode=RewireMode.LATTICIZE, seed=1)
        for i, j in itertools.islice(itertools.product(range(graph.m), repeat=2), 20000):
            if state.attempt_swap(state.edges[i], state.edges[j], plan.mode):
                costs.append(state.cost)
                self.assertEqual(state.cost, lattice_cost(state.edges))
        self.assertGreater(len(costs), 1)
        self.assertTrue(all(x >= y for x, y in zip(costs, costs[1:])))
        self.assertLessEqual(lattice_cost(latticize(graph, plan).edges), lattice_cost(graph.edges))

    def test_ordered_ring_cost_does_not_grow(self):
        graph = ring(50, 2)
        result = latticize(graph, RewirePlan(seed=5))
        self.assertLessEqual(lattice_cost(result.edges), lattice_cost(graph.edges))

    def test_randomized_ring_loses_transitivity(self):
        graph = ring(1000, 2)
        self.assertAlmostEqual(transitivity(graph), 0.5)
        result = randomize(graph, RewirePlan(swaps_per_edge=10, seed=11))
        self.assertLess(transitivity(result), 0.1)

    def test_latticized_random_graph_gains_transitivity(self):
        graph = gnp(200, 8 / 199, 3)
        result = latticize(graph, RewirePlan(seed=9, connectivity_guard=False))
        self.assertGreater(transitivity(result), transitivity(graph))

    def test_latticized_small_world_recovers_ring_structure(self):
        graph = Graph.from_networkx(nx.watts_strogatz_graph(300, 6, 0.1, seed=1))
        result = latticize(graph, RewirePlan(seed=2))
        self.assertEqual(degree_sequence(result), degree_sequence(graph))
        self.assertTrue(is_connected(result))
        self.assertLess(lattice_cost(result.edges), 0.5 * lattice_cost(graph.edges))
        self.assertGreater(transitivity(result), transitivity(graph))

    def test_small_budget_is_extended_while_cost_drops(self):
        graph = Graph.from_networkx(nx.watts_strogatz_graph(300, 6, 0.1, seed=4))
        result = latticize(graph, RewirePlan(swaps_per_edge=1, seed=2))
        self.assertLess(lattice_cost(result.edges), 0.5 * lattice_cost(graph.edges))


class BfsRelabelTest(SimpleTestCase):
    def test_breadth_first_numbering(self):
        star = Graph.from_edges(5, [(0, 4), (4, 1), (4, 2), (4, 3)])
        relabeled = bfs_relabel(star)
        self.assertEqual(relabeled.sorted_edges(), [(0, 1), (1, 2), (1, 3), (1, 4)])
        self.assertEqual(degree_sequence(relabeled).values, (1, 4, 1, 1, 1))
