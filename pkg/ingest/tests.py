import shutil
import tempfile
from pathlib import Path

import networkx as nx
from django.test import SimpleTestCase

from graphs.exceptions import TooSmall
from graphs.graph import Graph
from graphs.measures import giant_component
from graphs.pajek import format_pajek

from .exceptions import EmptyResult, MissingSideDeclaration, NotBipartite, ParseError, UnsupportedFormat
from .loader import load_network, read_network
from .normalize import project_bipartite, select_multiplex_layer, simplify
from .parsers import parse_edgelist, parse_graphml, parse_pajek
from .raw import PreprocessLog, RawEdge, RawNetwork


GRAPHML_HEAD = '<?xml version="1.0" encoding="UTF-8"?>\n<graphml xmlns="http://graphml.graphdrawing.org/xmlns">\n'


def bipartite_raw(top, bottom, pairs):
    labels = list(top) + list(bottom)
    index = {label: i for i, label in enumerate(labels)}
    sides = {i: 0 if i < len(top) else 1 for i in range(len(labels))}
    edges = [RawEdge(index[u], index[v]) for u, v in pairs]
    return RawNetwork(labels=labels, edges=edges, sides=sides)


def layered_raw(n, layers):
    edges = [RawEdge(u, v, layer=tag) for tag, pairs in layers.items() for u, v in pairs]
    return RawNetwork(labels=[str(i) for i in range(n)], edges=edges)


class PajekParserTest(SimpleTestCase):
    def test_edges_section(self):
        raw = parse_pajek(b'*Vertices 3\n*Edges\n1 2')
        self.assertEqual(raw.n, 3)
        self.assertEqual(raw.edges, [RawEdge(0, 1)])

    def test_arcs_are_directed(self):
        raw = parse_pajek(b'*Vertices 2\n*Arcs\n1 2')
        self.assertEqual(len(raw.edges), 1)
        self.assertTrue(raw.edges[0].directed)
        self.assertEqual((raw.edges[0].u, raw.edges[0].v), (0, 1))

    def test_out_of_range_index(self):
        with self.assertRaises(ParseError) as ctx:
            parse_pajek(b'*Vertices 2\n*Edges\n1 5')
        self.assertEqual(ctx.exception.line, 3)

    def test_non_numeric_token(self):
        with self.assertRaises(ParseError) as ctx:
            parse_pajek(b'*Vertices 2\n*Edges\n1 x')
        self.assertIn('non-numeric', str(ctx.exception))

    def test_malformed_header(self):
        with self.assertRaises(ParseError):
            parse_pajek(b'*Vertices many\n*Edges\n')
        with self.assertRaises(ParseError):
            parse_pajek(b'*Vertices 2\n*Matrix\n0 1\n1 0')

    def test_labels_and_weights(self):
        raw = parse_pajek(b'% comment\n*Vertices 2\n1 "node one"\n2 two\n*Edges\n1 2 2.5\n')
        self.assertEqual(raw.labels, ['node one', 'two'])
        self.assertEqual(raw.edges[0].weight, 2.5)

    def test_adjacency_list_variants(self):
        raw = parse_pajek(b'*Vertices 4\n*Edgeslist\n1 2 3 4\n*Arcslist\n2 3\n')
        self.assertEqual([(e.u, e.v) for e in raw.edges], [(0, 1), (0, 2), (0, 3), (1, 2)])
        self.assertEqual([e.directed for e in raw.edges], [False, False, False, True])

    def test_two_mode_declaration(self):
        raw = parse_pajek(b'*Vertices 3 1\n*Edges\n1 2\n1 3\n')
        self.assertEqual(raw.sides, {0: 0, 1: 1, 2: 1})
        self.assertTrue(raw.is_bipartite)

    def test_relation_headers_set_layers(self):
        raw = parse_pajek(b'*Vertices 3\n*Edges :1 "friend"\n1 2\n*Edges :2 "work"\n2 3\n')
        self.assertEqual(raw.layers, ['friend', 'work'])
        self.assertTrue(raw.is_multiplex)

    def test_apostrophe_in_bare_label(self):
        raw = parse_pajek(b"*Vertices 2\n1 O'Brien\n2 Smith\n*Edges\n1 2\n")
        self.assertEqual(raw.labels, ["O'Brien", 'Smith'])
        self.assertEqual(raw.edges, [RawEdge(0, 1)])

    def test_apostrophe_inside_quoted_label(self):
        raw = parse_pajek(b'*Vertices 2\n1 "Dunkin\' Donuts" 0.1 0.2\n2 x\n*Edges\n1 2\n')
        self.assertEqual(raw.labels[0], "Dunkin' Donuts")


class GraphmlParserTest(SimpleTestCase):
    def test_undirected_edge(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<graph edgedefault="undirected"><node id="a"/><node id="b"/>'
            '<edge source="a" target="b"/></graph></graphml>'
        )
        self.assertEqual(raw.labels, ['a', 'b'])
        self.assertEqual(raw.edges, [RawEdge(0, 1)])

    def test_directed_default_and_weight(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<key id="w" for="edge" attr.name="weight" attr.type="double"/>'
            '<key id="c" for="edge" attr.name="color" attr.type="string"/>'
            '<graph edgedefault="directed"><node id="a"/><node id="b"/>'
            '<edge source="a" target="b"><data key="w">1.5</data><data key="c">red</data></edge>'
            '</graph></graphml>'
        )
        self.assertTrue(raw.edges[0].directed)
        self.assertEqual(raw.edges[0].weight, 1.5)
        self.assertIsNone(raw.edges[0].layer)

    def test_dangling_endpoint(self):
        with self.assertRaises(ParseError):
            parse_graphml(
                GRAPHML_HEAD
                + '<graph edgedefault="undirected"><node id="a"/><edge source="a" target="z"/></graph></graphml>'
            )

    def test_document_without_namespace(self):
        raw = parse_graphml(
            '<graphml><graph edgedefault="undirected"><node id="a"/><node id="b"/>'
            '<edge source="a" target="b"/></graph></graphml>'
        )
        self.assertEqual(raw.edges, [RawEdge(0, 1)])

    def test_mixed_edge_direction(self):
        with self.assertRaises(ParseError):
            parse_graphml(
                GRAPHML_HEAD
                + '<graph edgedefault="undirected"><node id="a"/><node id="b"/>'
                '<edge source="a" target="b" directed="true"/></graph></graphml>'
            )

    def test_parallel_edges_are_kept(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<graph edgedefault="undirected"><node id="a"/><node id="b"/>'
            '<edge source="a" target="b"/><edge source="a" target="b"/></graph></graphml>'
        )
        self.assertEqual(raw.edges, [RawEdge(0, 1), RawEdge(0, 1)])

    def test_node_type_is_not_a_side(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<key id="t" for="node" attr.name="type" attr.type="string"/>'
            '<graph edgedefault="undirected">'
            '<node id="g"><data key="t">gene</data></node>'
            '<node id="p"><data key="t">protein</data></node>'
            '<node id="m"><data key="t">metabolite</data></node>'
            '<edge source="g" target="p"/><edge source="p" target="m"/>'
            '</graph></graphml>'
        )
        self.assertFalse(raw.is_bipartite)
        self.assertEqual(raw.n, 3)

    def test_side_default_applies_to_unmarked_nodes(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<key id="s" for="node" attr.name="side" attr.type="int"><default>0</default></key>'
            '<graph edgedefault="undirected">'
            '<node id="p"/><node id="x"><data key="s">1</data></node>'
            '<edge source="p" target="x"/></graph></graphml>'
        )
        self.assertEqual(raw.sides, {0: 0, 1: 1})

    def test_malformed_xml(self):
        with self.assertRaises(ParseError):
            parse_graphml(b'<graphml><graph>')

    def test_empty_graph(self):
        raw = parse_graphml(GRAPHML_HEAD + '<graph edgedefault="undirected"/></graphml>')
        self.assertEqual(raw.n, 0)
        self.assertEqual(raw.edges, [])

    def test_side_and_layer_keys(self):
        raw = parse_graphml(
            GRAPHML_HEAD
            + '<key id="s" for="node" attr.name="bipartite"/>'
            '<key id="l" for="edge" attr.name="layer"/>'
            '<graph edgedefault="undirected">'
            '<node id="p"><data key="s">0</data></node>'
            '<node id="x"><data key="s">1</data></node>'
            '<edge source="p" target="x"><data key="l">A</data></edge>'
            '</graph></graphml>'
        )
        self.assertEqual(raw.sides, {0: 0, 1: 1})
        self.assertEqual(raw.edges[0].layer, 'A')


class EdgelistParserTest(SimpleTestCase):
    def test_first_appearance_order(self):
        raw = parse_edgelist(b'a b\nb c')
        self.assertEqual(raw.labels, ['a', 'b', 'c'])
        self.assertEqual([(e.u, e.v) for e in raw.edges], [(0, 1), (1, 2)])
        self.assertFalse(any(e.directed for e in raw.edges))

    def test_weight(self):
        raw = parse_edgelist(b'# header\na b 2.5\n')
        self.assertEqual(raw.edges[0].weight, 2.5)

    def test_single_token(self):
        with self.assertRaises(ParseError):
            parse_edgelist(b'a')

    def test_too_many_tokens(self):
        with self.assertRaises(ParseError):
            parse_edgelist(b'a b 1 2')

    def test_comma_separated(self):
        raw = parse_edgelist(b'source,target,weight\na,b,2.5\nb, c\n')
        self.assertEqual(raw.labels, ['a', 'b', 'c'])
        self.assertEqual(raw.edges, [RawEdge(0, 1, weight=2.5), RawEdge(1, 2)])


class SimplifyTest(SimpleTestCase):
    def test_removals_are_counted(self):
        # a=0 b=1 c=2 d=3
        raw = RawNetwork(
            labels=['a', 'b', 'c', 'd'],
            edges=[RawEdge(0, 0), RawEdge(0, 1), RawEdge(1, 0), RawEdge(1, 2)],
        )
        graph, log = simplify(raw)
        self.assertEqual(graph.n, 3)
        self.assertEqual(graph.sorted_edges(), [(0, 1), (1, 2)])
        self.assertEqual(log.labels, ['a', 'b', 'c'])
        self.assertEqual(log.count('remove-loops'), 1)
        self.assertEqual(log.count('remove-multiedges'), 1)
        self.assertEqual(log.count('remove-isolates'), 1)

    def test_simple_graph_unchanged(self):
        graph = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        result, log = simplify(RawNetwork.from_graph(graph))
        self.assertEqual(result, graph)
        for step in ('remove-loops', 'remove-multiedges', 'remove-isolates'):
            self.assertEqual(log.count(step), 0)

    def test_only_loops(self):
        raw = RawNetwork(labels=['a', 'b'], edges=[RawEdge(0, 0), RawEdge(1, 1)])
        with self.assertRaises(EmptyResult):
            simplify(raw)

    def test_direction_and_weights_dropped(self):
        raw = RawNetwork(labels=['a', 'b'], edges=[RawEdge(0, 1, directed=True, weight=3.0), RawEdge(1, 0, directed=True)])
        graph, log = simplify(raw)
        self.assertEqual(graph.sorted_edges(), [(0, 1)])
        self.assertTrue(log.has('drop-direction'))
        self.assertTrue(log.has('drop-weights'))
        self.assertEqual(log.count('remove-multiedges'), 1)

    def test_idempotent(self):
        for seed in range(10):
            g = nx.gnm_random_graph(30, 40, seed=seed)
            g.add_edges_from([(0, 0), (3, 3)])
            raw = RawNetwork(
                labels=[f'v{i}' for i in range(30)],
                edges=[RawEdge(u, v) for u, v in g.edges()] + [RawEdge(v, u) for u, v in list(g.edges())[:5]],
            )
            once, log = simplify(raw)
            twice, again = simplify(RawNetwork.from_graph(once, log.labels))
            self.assertEqual(once, twice)
            self.assertEqual(again.labels, log.labels)


class PajekRoundTripTest(SimpleTestCase):
    def test_round_trip_identity(self):
        for seed in range(20):
            generated = Graph.from_networkx(nx.gnm_random_graph(25, 45, seed=seed))
            graph, _ = giant_component(generated)
            parsed, _ = simplify(parse_pajek(format_pajek(graph)))
            self.assertEqual(parsed, graph)


class ProjectBipartiteTest(SimpleTestCase):
    def test_sparser_projection_kept(self):
        raw = bipartite_raw(['1', '2'], ['a', 'b', 'c'], [('1', 'a'), ('1', 'b'), ('2', 'b'), ('2', 'c')])
        graph, log = project_bipartite(raw)
        self.assertEqual(log.labels, ['a', 'b', 'c'])
        self.assertEqual(graph.sorted_edges(), [(0, 1), (1, 2)])
        step = next(s for s in log.steps if s['step'] == 'bipartite-projection')
        self.assertEqual(step['side'], 'bottom')
        self.assertAlmostEqual(step['density'], 2 / 3)

    def test_star_keeps_single_node(self):
        raw = bipartite_raw(['t'], ['x', 'y', 'z'], [('t', 'x'), ('t', 'y'), ('t', 'z')])
        graph, log = project_bipartite(raw)
        self.assertEqual(graph.n, 1)
        self.assertEqual(log.labels, ['t'])

    def test_edge_within_side(self):
        raw = bipartite_raw(['1', '2'], ['a'], [('1', '2'), ('1', 'a')])
        with self.assertRaises(NotBipartite):
            project_bipartite(raw)

    def test_missing_sides(self):
        with self.assertRaises(MissingSideDeclaration):
            project_bipartite(RawNetwork(labels=['a', 'b'], edges=[RawEdge(0, 1)]))

    def test_projection_only_uses_side_nodes(self):
        raw = bipartite_raw(['1', '2', '3'], ['a', 'b'], [('1', 'a'), ('2', 'a'), ('3', 'b'), ('2', 'b')])
        graph, log = project_bipartite(raw)
        self.assertTrue(set(log.labels) <= {'1', '2', '3'} or set(log.labels) <= {'a', 'b'})
        self.assertEqual(graph.n, len(log.labels))


class SelectMultiplexLayerTest(SimpleTestCase):
    def test_sparsest_connected_layer(self):
        ring = [(i, (i + 1) % 6) for i in range(6)]
        k6 = [(i, j) for i in range(6) for j in range(i + 1, 6)]
        graph, log = select_multiplex_layer(layered_raw(6, {'A': ring, 'B': k6}))
        self.assertEqual(graph.m, 6)
        step = next(s for s in log.steps if s['step'] == 'multiplex-layer')
        self.assertEqual(step['layer'], 'A')
        self.assertTrue(step['connected'])

    def test_single_layer(self):
        pairs = [(0, 1), (1, 2)]
        graph, log = select_multiplex_layer(layered_raw(3, {'only': pairs}))
        self.assertEqual(graph.sorted_edges(), pairs)

    def test_no_connected_layer(self):
        # A: 3+2 nodes in two pieces; B: two pairs
        raw = layered_raw(6, {'A': [(0, 1), (1, 2), (3, 4)], 'B': [(0, 1), (2, 3)]})
        graph, log = select_multiplex_layer(raw)
        step = next(s for s in log.steps if s['step'] == 'multiplex-layer')
        self.assertEqual(step['layer'], 'A')
        self.assertFalse(step['connected'])
        self.assertAlmostEqual(step['giant_fraction'], 3 / 5)


class PreprocessLogTest(SimpleTestCase):
    def test_non_removal_steps_once(self):
        log = PreprocessLog()
        log.add('drop-weights')
        with self.assertRaises(ValueError):
            log.add('drop-weights')
        log.add('remove-loops', count=1)
        log.add('remove-loops', count=2)
        self.assertEqual(log.count('remove-loops'), 3)

    def test_negative_count_rejected(self):
        with self.assertRaises(ValueError):
            PreprocessLog().add('remove-isolates', count=-1)

    def test_dict_round_trip(self):
        log = PreprocessLog()
        log.add('remove-loops', count=2)
        log.labels = ['a']
        self.assertEqual(PreprocessLog.from_dict(log.to_dict()), log)
        self.assertEqual(log.summary(), 'remove-loops(count=2)')


class LoadNetworkTest(SimpleTestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def write(self, name, content):
        path = self.tmp / name
        path.write_text(content)
        return path

    def test_edgelist_dispatch(self):
        graph, log = load_network(self.write('chain.txt', 'a b\nb c\nc c\n'))
        self.assertEqual(graph.m, 2)
        self.assertEqual(log.count('remove-loops'), 1)

    def test_csv_edgelist(self):
        graph, log = load_network(self.write('chain.csv', 'source,target\na,b\nb,c\nc,d\n'))
        self.assertEqual(graph.m, 3)
        self.assertEqual(log.labels, ['a', 'b', 'c', 'd'])

    def test_sidecar_declares_sides(self):
        path = self.write('bip.edges', '1 a\n1 b\n2 b\n2 c\n')
        self.write('bip.sides', '1 top\n2 top\na bottom\nb bottom\nc bottom\n')
        self.assertTrue(read_network(path).is_bipartite)
        graph, log = load_network(path)
        self.assertEqual(log.labels, ['a', 'b', 'c'])
        self.assertEqual(graph.m, 2)

    def test_single_node_projection_rejected(self):
        path = self.write('star.net', '*Vertices 4 1\n*Edges\n1 2\n1 3\n1 4\n')
        with self.assertRaises(TooSmall):
            load_network(path)

    def test_unknown_extension(self):
        with self.assertRaises(UnsupportedFormat):
            load_network(self.write('graph.gexf', '<gexf/>'))
