"""Readers for the Pajek, GraphML and edgelist formats.

Every parser is a pure function of the file content and returns a
RawNetwork; nothing is normalized here.
"""
import logging
import re
from typing import Any
from xml.etree.ElementTree import ParseError as XMLParseError

import networkx as nx
from networkx.readwrite.graphml import GraphMLReader

from .exceptions import ParseError
from .raw import RawEdge, RawNetwork

logger = logging.getLogger(__name__)

PAJEK_EDGE_SECTIONS = {'*edges', '*arcs', '*edgeslist', '*arcslist'}
# a double-quoted label or a bare token; apostrophes are ordinary characters
PAJEK_TOKEN = re.compile(r'"([^"]*)"|(\S+)')

GRAPHML_WEIGHT_KEYS = {'weight'}
GRAPHML_LAYER_KEYS = {'layer', 'type', 'relation', 'edgetype'}
GRAPHML_SIDE_KEYS = {'bipartite', 'side'}
GRAPHML_ROOT = '<graphml xmlns="http://graphml.graphdrawing.org/xmlns">'

EDGELIST_SEPARATOR = re.compile(r'[,\s]+')
EDGELIST_HEADER = {'source', 'target', 'from', 'to', 'weight'}


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode('utf-8-sig')
    except UnicodeDecodeError:
        return data.decode('latin-1')


def _to_int(token: str, lineno: int, what: str = 'node index') -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f'non-numeric {what} {token!r}', lineno) from None


def _to_float(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f'non-numeric weight {token!r}', lineno) from None


def _pajek_tokens(text: str) -> list[str]:
    return [quoted if bare == '' else bare for quoted, bare in PAJEK_TOKEN.findall(text)]


def parse_pajek(data: bytes | str) -> RawNetwork:
    text = _decode(data)
    n: int | None = None
    labels: list[str] = []
    sides: dict[int, int] | None = None
    section: str | None = None
    layer: str | None = None
    edge_sections = 0
    edges: list[RawEdge] = []

    def node(token: str, lineno: int) -> int:
        index = _to_int(token, lineno)
        if not 1 <= index <= n:
            raise ParseError(f'node index {index} out of range 1..{n}', lineno)
        return index - 1

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('%'):
            continue

        if stripped.startswith('*'):
            keyword, _, rest = stripped.partition(' ')
            keyword = keyword.lower()
            tokens = rest.split()
            if keyword == '*network':
                section = None
            elif keyword == '*vertices':
                if n is not None:
                    raise ParseError('duplicate *Vertices section', lineno)
                if not tokens:
                    raise ParseError('*Vertices without a node count', lineno)
                n = _to_int(tokens[0], lineno, 'node count')
                if n < 0:
                    raise ParseError(f'negative node count {n}', lineno)
                labels = [str(i) for i in range(1, n + 1)]
                if len(tokens) > 1:
                    # two-mode network: the first n1 vertices form one side
                    n1 = _to_int(tokens[1], lineno, 'partition size')
                    if not 0 <= n1 <= n:
                        raise ParseError(f'partition size {n1} out of range 0..{n}', lineno)
                    sides = {i: 0 if i < n1 else 1 for i in range(n)}
                section = 'vertices'
            elif keyword in PAJEK_EDGE_SECTIONS:
                if n is None:
                    raise ParseError(f'{keyword} before *Vertices', lineno)
                section = keyword
                edge_sections += 1
                layer = None
                if rest.strip().startswith(':'):
                    relation = _pajek_tokens(rest)
                    layer = relation[1] if len(relation) > 1 else relation[0].lstrip(':')
            else:
                raise ParseError(f'unsupported section {keyword}', lineno)
            continue

        if section is None:
            raise ParseError('data line outside of any section', lineno)

        if section == 'vertices':
            tokens = _pajek_tokens(stripped)
            index = node(tokens[0], lineno)
            if len(tokens) > 1:
                labels[index] = tokens[1]
            continue

        tokens = stripped.split()
        directed = section in ('*arcs', '*arcslist')
        if section in ('*edgeslist', '*arcslist'):
            source = node(tokens[0], lineno)
            for token in tokens[1:]:
                edges.append(RawEdge(source, node(token, lineno), directed=directed, layer=layer))
            continue

        if len(tokens) < 2:
            raise ParseError('edge line needs two node indices', lineno)
        weight = _to_float(tokens[2], lineno) if len(tokens) > 2 else None
        edges.append(RawEdge(
            node(tokens[0], lineno), node(tokens[1], lineno),
            directed=directed, weight=weight, layer=layer,
        ))

    if n is None:
        raise ParseError('missing *Vertices section', 1)
    if edge_sections == 0:
        raise ParseError('no *Edges, *Arcs, *Edgeslist or *Arcslist section')
    logger.debug('parsed Pajek network: %d nodes, %d edges', n, len(edges))
    return RawNetwork(labels=labels, edges=edges, sides=sides, source_format='pajek')


class StrictGraphMLReader(GraphMLReader):
    """networkx reader that refuses edges to undeclared nodes."""

    def add_edge(self, G: nx.Graph, edge_element: Any, graphml_keys: dict[str, Any]) -> None:
        # nodes of a graph element are all added before its edges
        for end in ('source', 'target'):
            node_id = self.node_type(edge_element.get(end))
            if node_id not in G:
                raise ParseError(f'edge endpoint {node_id!r} is not a declared node')
        super().add_edge(G, edge_element, graphml_keys)


def _read_graphml(data: bytes | str) -> nx.Graph:
    reader = StrictGraphMLReader(node_type=str, force_multigraph=True)
    graphs = list(reader(string=data))
    if not graphs:
        # documents without the GraphML namespace
        text = _decode(data)
        graphs = list(reader(string=text.replace('<graphml>', GRAPHML_ROOT, 1)))
    if not graphs:
        raise ParseError('no <graph> element')
    return graphs[0]


def _attribute(data: dict[str, Any], names: set[str]) -> Any:
    for name, value in data.items():
        if name.lower() in names:
            return value
    return None


def parse_graphml(data: bytes | str) -> RawNetwork:
    """Read the first graph of a GraphML document through networkx.

    Parallel edges are kept.
    """
    try:
        graph = _read_graphml(data)
    except ParseError:
        raise
    except XMLParseError as exc:
        raise ParseError(f'malformed XML: {exc}', exc.position[0]) from None
    except (nx.NetworkXError, ValueError) as exc:
        raise ParseError(f'bad GraphML: {exc}') from None

    node_default = graph.graph.get('node_default', {})
    edge_default = graph.graph.get('edge_default', {})
    directed = graph.is_directed()

    index: dict[str, int] = {}
    labels: list[str] = []
    side_values: list[Any] = []
    for node_id, attrs in graph.nodes(data=True):
        index[node_id] = len(labels)
        labels.append(str(node_id))
        side_values.append(_attribute({**node_default, **attrs}, GRAPHML_SIDE_KEYS))

    edges: list[RawEdge] = []
    for source, target, attrs in graph.edges(data=True):
        attrs = {**edge_default, **attrs}
        weight = _attribute(attrs, GRAPHML_WEIGHT_KEYS)
        if weight is not None and weight != '':
            try:
                weight = float(weight)
            except ValueError:
                raise ParseError(f'non-numeric weight {weight!r}') from None
        else:
            weight = None
        layer = _attribute(attrs, GRAPHML_LAYER_KEYS)
        edges.append(RawEdge(
            index[source], index[target], directed=directed, weight=weight,
            layer=str(layer) if layer not in (None, '') else None,
        ))

    sides = None
    declared = [value for value in side_values if value is not None]
    if declared:
        if len(declared) != len(side_values):
            raise ParseError('bipartite side declared for some nodes only')
        distinct = list(dict.fromkeys(declared))
        if len(distinct) > 2:
            raise ParseError(f'bipartite side takes {len(distinct)} values, expected 2')
        sides = {i: distinct.index(value) for i, value in enumerate(side_values)}

    logger.debug('parsed GraphML network: %d nodes, %d edges', len(labels), len(edges))
    return RawNetwork(labels=labels, edges=edges, sides=sides, source_format='graphml')


def parse_edgelist(data: bytes | str) -> RawNetwork:
    """Whitespace- or comma-separated `u v [weight]` lines.

    A leading `source,target` style header line is skipped.
    """
    text = _decode(data)
    index: dict[str, int] = {}
    edges: list[RawEdge] = []

    def node(label: str) -> int:
        if label not in index:
            index[label] = len(index)
        return index[label]

    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = [token for token in EDGELIST_SEPARATOR.split(stripped) if token]
        if not index and len(tokens) > 1 and {token.lower() for token in tokens} <= EDGELIST_HEADER:
            continue
        if len(tokens) not in (2, 3):
            raise ParseError(f'expected 2 or 3 tokens, got {len(tokens)}', lineno)
        weight = _to_float(tokens[2], lineno) if len(tokens) == 3 else None
        edges.append(RawEdge(node(tokens[0]), node(tokens[1]), weight=weight))

    logger.debug('parsed edgelist: %d nodes, %d edges', len(index), len(edges))
    return RawNetwork(labels=list(index), edges=edges, source_format='edgelist')


def parse_sides(data: bytes | str, raw: RawNetwork) -> dict[int, int]:
    """Read a `label side` sidecar declaring the two sides of a network."""
    text = _decode(data)
    index = {label: i for i, label in enumerate(raw.labels)}
    values: dict[int, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith('#'):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise ParseError('expected `label side`', lineno)
        if tokens[0] not in index:
            raise ParseError(f'unknown node {tokens[0]!r}', lineno)
        values[index[tokens[0]]] = tokens[1]
    if len(values) != raw.n:
        raise ParseError(f'sides declared for {len(values)} of {raw.n} nodes')
    distinct = list(dict.fromkeys(values[i] for i in range(raw.n)))
    if len(distinct) > 2:
        raise ParseError(f'side takes {len(distinct)} values, expected 2')
    return {i: distinct.index(value) for i, value in values.items()}
