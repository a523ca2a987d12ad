import io
import itertools
import shutil
import tempfile
from pathlib import Path

import networkx as nx
import numpy as np
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, tag

from graphs.exceptions import DisconnectedGraph, TooSmall
from graphs.graph import Graph
from graphs.measures import giant_component, is_connected
from graphs.pajek import write_pajek
from rewire.plan import RewirePlan
from synth.generators import erdos_renyi, ring_lattice, watts_strogatz

from .exceptions import DegenerateTransitivity
from .omega import _ratio_t, omega
from .report import OmegaThresholds, SmallWorldClass, SmallWorldReport, classify_omega


def report_with(omega_value, ratio_l, ratio_t):
    return SmallWorldReport(
        path_length=1.0, transitivity=0.0, random_path_length=ratio_l, lattice_transitivity=1.0,
        ratio_l=ratio_l, ratio_t=ratio_t, omega=omega_value, realizations=1, seed=0,
    )


class ClassifyOmegaTest(SimpleTestCase):
    def test_band(self):
        self.assertEqual(classify_omega(report_with(0.0, 1.0, 1.0)), SmallWorldClass.SMALL_WORLD)
        self.assertEqual(classify_omega(report_with(-0.8, 0.2, 1.0)), SmallWorldClass.LATTICE_LIKE)
        self.assertEqual(classify_omega(report_with(0.9, 1.0, 0.1)), SmallWorldClass.RANDOM_LIKE)

    def test_band_edges_are_small_world(self):
        self.assertEqual(classify_omega(report_with(-0.5, 0.5, 1.0)), SmallWorldClass.SMALL_WORLD)
        self.assertEqual(classify_omega(report_with(0.5, 1.0, 0.5)), SmallWorldClass.SMALL_WORLD)

    def test_grid_like_ratios_are_degenerate(self):
        self.assertEqual(classify_omega(report_with(0.05, 0.05, 0.0)), SmallWorldClass.DEGENERATE)

    def test_custom_thresholds(self):
        strict = OmegaThresholds(band=0.2, degenerate_ratio_l=0.1, degenerate_ratio_t=0.1)
        self.assertEqual(classify_omega(report_with(0.3, 0.3, 0.0), strict), SmallWorldClass.RANDOM_LIKE)
        self.assertEqual(classify_omega(report_with(0.15, 0.15, 0.0), strict), SmallWorldClass.SMALL_WORLD)


class OmegaTest(SimpleTestCase):
    def test_complete_graph_is_exactly_zero(self):
        k10 = Graph.from_edges(10, itertools.combinations(range(10), 2))
        report = omega(k10, RewirePlan(seed=1), realizations=2)
        self.assertEqual(report.path_length, 1.0)
        self.assertEqual(report.random_path_length, 1.0)
        self.assertEqual(report.lattice_transitivity, 1.0)
        self.assertEqual(report.omega, 0.0)
        self.assertEqual(report.classification, SmallWorldClass.SMALL_WORLD)

    def test_tree_has_zero_transitivity_ratio(self):
        tree = Graph.from_networkx(nx.balanced_tree(2, 5))
        report = omega(tree, RewirePlan(seed=2), realizations=2)
        self.assertEqual(report.transitivity, 0.0)
        self.assertEqual(report.lattice_transitivity, 0.0)
        self.assertEqual(report.ratio_t, 0.0)
        self.assertEqual(report.omega, report.ratio_l)

    def test_ring_is_lattice_like(self):
        report = omega(ring_lattice(100, 4), RewirePlan(seed=3), realizations=2)
        self.assertLess(report.omega, -0.3)

    def test_report_arithmetic(self):
        graph = watts_strogatz(60, 4, 0.2, seed=4)
        graph, _ = giant_component(graph)
        report = omega(graph, RewirePlan(seed=4), realizations=3)
        self.assertTrue(report.is_consistent())
        self.assertEqual(len(report.random_path_lengths), 3)
        self.assertEqual(len(report.lattice_transitivities), 3)
        self.assertAlmostEqual(report.random_path_length, float(np.mean(report.random_path_lengths)))

    def test_seed_determinism_across_workers(self):
        graph = ring_lattice(40, 4)
        serial = omega(graph, RewirePlan(seed=8), realizations=3)
        parallel = omega(graph, RewirePlan(seed=8), realizations=3, workers=2)
        self.assertEqual(serial.to_dict(), parallel.to_dict())

    def test_label_diagnostic(self):
        report = omega(ring_lattice(30, 4), RewirePlan(seed=5), realizations=2, label_diagnostic=True)
        self.assertIn('T_T_bfs', report.diagnostics)
        self.assertIn('omega_bfs', report.diagnostics)

    def test_preconditions(self):
        with self.assertRaises(TooSmall):
            omega(ring_lattice(3, 2))
        with self.assertRaises(DisconnectedGraph):
            omega(Graph.from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]))

    def test_degenerate_transitivity(self):
        self.assertEqual(_ratio_t(0.0, 0.0), 0.0)
        with self.assertRaises(DegenerateTransitivity):
            _ratio_t(0.2, 0.0)


@tag('slow')
class OmegaDirectionTest(SimpleTestCase):
    def test_ring_lattice(self):
        report = omega(ring_lattice(500, 4), RewirePlan(seed=10), realizations=4)
        self.assertLess(report.omega, -0.3)

    def test_random_graph(self):
        checked = 0
        for seed in range(20):
            graph = erdos_renyi(500, 10 / 499, seed=seed)
            if not is_connected(graph):
                continue
            report = omega(graph, RewirePlan(seed=seed), realizations=4)
            self.assertGreater(report.omega, 0.3)
            checked += 1
            if checked == 3:
                break
        self.assertEqual(checked, 3)

    def test_watts_strogatz_in_band(self):
        inside = 0
        for seed in range(5):
            graph, _ = giant_component(watts_strogatz(500, 6, 0.1, seed=seed))
            report = omega(graph, RewirePlan(seed=seed), realizations=4)
            inside += -0.5 <= report.omega <= 0.5
        self.assertGreaterEqual(inside, 4)

    def test_grid_is_degenerate(self):
        grid = Graph.from_networkx(nx.grid_2d_graph(30, 30))
        report = omega(grid, RewirePlan(seed=12), realizations=2)
        self.assertEqual(report.classification, SmallWorldClass.DEGENERATE)

    def test_omega_grows_with_rewiring_probability(self):
        means = []
        for beta in (0.0, 0.01, 0.1, 1.0):
            values = []
            for seed in range(5):
                graph, _ = giant_component(watts_strogatz(200, 6, beta, seed=seed))
                values.append(omega(graph, RewirePlan(seed=100 + seed), realizations=2).omega)
            means.append(np.mean(values))
        self.assertEqual(means, sorted(means))

    def test_more_realizations_shrink_spread(self):
        graph, _ = giant_component(erdos_renyi(60, 0.1, seed=21))
        spread = {}
        for realizations in (4, 16):
            estimates = [
                omega(graph, RewirePlan(seed=10_000 * k), realizations=realizations).random_path_length
                for k in range(12)
            ]
            spread[realizations] = np.var(estimates, ddof=1)
        self.assertLess(spread[16], spread[4])


class OmegaCommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def test_prints_classification(self):
        path = write_pajek(ring_lattice(30, 4), self.tmp / 'ring.net')
        out = io.StringIO()
        call_command('omega', str(path), '--realizations', '2', '--seed', '1', stdout=out)
        self.assertIn('omega =', out.getvalue())

    def test_parse_error_is_command_error(self):
        path = self.tmp / 'broken.net'
        path.write_text('*Vertices 2\n*Edges\n1 9\n')
        with self.assertRaises(CommandError):
            call_command('omega', str(path), stdout=io.StringIO())
