import io
import itertools
import shutil
import tempfile
from pathlib import Path

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from graphs.exceptions import InvalidParam
from graphs.graph import Graph
from graphs.measures import degree_sequence, transitivity
from ingest.loader import load_network

from .generators import barabasi_albert, erdos_renyi, mean_degree_probability, ring_lattice, watts_strogatz


class RingLatticeTest(SimpleTestCase):
    def test_cycle(self):
        self.assertEqual(ring_lattice(6, 2), Graph.from_edges(6, [(i, (i + 1) % 6) for i in range(6)]))

    def test_saturated(self):
        self.assertEqual(ring_lattice(5, 4), Graph.from_edges(5, itertools.combinations(range(5), 2)))

    def test_regular_with_known_transitivity(self):
        ring = ring_lattice(1000, 4)
        self.assertEqual(set(degree_sequence(ring).values), {4})
        self.assertAlmostEqual(transitivity(ring), 0.5, places=12)

    def test_invalid(self):
        for n, k in ((10, 3), (4, 4), (10, 0)):
            with self.assertRaises(InvalidParam):
                ring_lattice(n, k)


class ErdosRenyiTest(SimpleTestCase):
    def test_extremes(self):
        self.assertEqual(erdos_renyi(20, 0.0, seed=1).m, 0)
        self.assertEqual(erdos_renyi(20, 1.0, seed=1).m, 190)

    def test_edge_count(self):
        m = erdos_renyi(1000, 0.01, seed=7).m
        mean = 499500 * 0.01
        sd = (499500 * 0.01 * 0.99) ** 0.5
        self.assertLess(abs(m - mean), 4 * sd)

    def test_seeded(self):
        self.assertEqual(erdos_renyi(100, 0.05, seed=3), erdos_renyi(100, 0.05, seed=3))

    def test_invalid_probability(self):
        with self.assertRaises(InvalidParam):
            erdos_renyi(10, 1.5)

    def test_mean_degree_probability(self):
        self.assertAlmostEqual(mean_degree_probability(11, 5), 0.5)
        self.assertEqual(mean_degree_probability(1, 5), 0.0)


class WattsStrogatzTest(SimpleTestCase):
    def test_no_rewiring_is_the_ring(self):
        self.assertEqual(watts_strogatz(50, 4, 0.0, seed=2), ring_lattice(50, 4))

    def test_edge_count_preserved(self):
        for beta in (0.0, 0.1, 0.5, 1.0):
            self.assertEqual(2 * watts_strogatz(100, 6, beta, seed=5).m, 100 * 6)

    def test_full_rewiring_destroys_triangles(self):
        for seed in range(5):
            self.assertLess(transitivity(watts_strogatz(1000, 4, 1.0, seed=seed)), 0.05)

    def test_invalid(self):
        with self.assertRaises(InvalidParam):
            watts_strogatz(10, 4, -0.1)


class BarabasiAlbertTest(SimpleTestCase):
    def test_clique_only(self):
        self.assertEqual(barabasi_albert(5, 5, 2, seed=1).m, 10)

    def test_edge_count(self):
        graph = barabasi_albert(500, 5, 3, seed=4)
        self.assertEqual(graph.n, 500)
        self.assertEqual(graph.m, 5 * 4 // 2 + (500 - 5) * 3)

    def test_seeded(self):
        self.assertEqual(barabasi_albert(300, 4, 2, seed=9), barabasi_albert(300, 4, 2, seed=9))

    def test_invalid(self):
        with self.assertRaises(InvalidParam):
            barabasi_albert(10, 2, 3)


class SynthCommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def test_writes_loadable_pajek(self):
        out = self.tmp / 'ba.net'
        stdout = io.StringIO()
        call_command('synth', 'ba', '--n', '60', '--m0', '3', '--m-per-step', '2', '--seed', '1', '--out', str(out), stdout=stdout)
        self.assertIn('Wrote ba network', stdout.getvalue())
        graph, _ = load_network(out)
        self.assertEqual(graph, barabasi_albert(60, 3, 2, seed=1))

    def test_er_needs_probability(self):
        with self.assertRaises(CommandError):
            call_command('synth', 'er', '--n', '10', '--out', str(self.tmp / 'er.net'), stdout=io.StringIO())

    def test_invalid_parameters(self):
        with self.assertRaises(CommandError):
            call_command('synth', 'ring', '--n', '10', '--k', '3', '--out', str(self.tmp / 'r.net'), stdout=io.StringIO())
