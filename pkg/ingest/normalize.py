import logging
from dataclasses import dataclass

import networkx as nx

from graphs.graph import Graph
from graphs.measures import connected_components

from .exceptions import EmptyResult, MissingSideDeclaration, NotBipartite
from .raw import PreprocessLog, RawNetwork

logger = logging.getLogger(__name__)

SIDE_NAMES = ('top', 'bottom')


def _drop_attributes(raw: RawNetwork, log: PreprocessLog) -> None:
    if any(edge.directed for edge in raw.edges):
        log.add('drop-direction')
    if any(edge.weight is not None for edge in raw.edges):
        log.add('drop-weights')


def _collapse(raw: RawNetwork, pairs: list[tuple[int, int]], log: PreprocessLog) -> tuple[Graph, PreprocessLog]:
    """Remove loops, parallel edges and isolates, then re-index densely."""
    loops = multi = 0
    kept: set[tuple[int, int]] = set()
    for u, v in pairs:
        if u == v:
            loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in kept:
            multi += 1
            continue
        kept.add(key)

    used = sorted({node for edge in kept for node in edge})
    log.add('remove-loops', count=loops)
    log.add('remove-multiedges', count=multi)
    log.add('remove-isolates', count=raw.n - len(used))
    if not used:
        raise EmptyResult('no node left after removing loops and isolates')

    index = {old: new for new, old in enumerate(used)}
    graph = Graph.from_edges(len(used), ((index[u], index[v]) for u, v in kept))
    log.labels = [raw.labels[old] for old in used]
    return graph, log


def simplify(raw: RawNetwork) -> tuple[Graph, PreprocessLog]:
    """Drop orientation and weights, loops, multi-edges and isolated nodes."""
    log = PreprocessLog()
    _drop_attributes(raw, log)
    graph, log = _collapse(raw, [(edge.u, edge.v) for edge in raw.edges], log)
    logger.debug('simplified network: %s (%s)', graph, log.summary())
    return graph, log


def project_bipartite(raw: RawNetwork) -> tuple[Graph, PreprocessLog]:
    """Keep the sparser of the two one-mode projections.

    Ties on density go to the side with more nodes. Nodes of the kept side
    without any co-member stay in the projection as isolates.
    """
    if raw.sides is None:
        raise MissingSideDeclaration('bipartite projection needs a side for every node')
    for edge in raw.edges:
        if raw.sides[edge.u] == raw.sides[edge.v]:
            raise NotBipartite(
                f'edge {raw.labels[edge.u]!r}-{raw.labels[edge.v]!r} lies within side '
                f'{SIDE_NAMES[raw.sides[edge.u]]}'
            )

    log = PreprocessLog()
    _drop_attributes(raw, log)

    bipartite = nx.Graph()
    bipartite.add_nodes_from(range(raw.n))
    bipartite.add_edges_from((edge.u, edge.v) for edge in raw.edges)

    projections = []
    for side in (0, 1):
        members = [i for i in range(raw.n) if raw.sides[i] == side]
        projected = nx.bipartite.projected_graph(bipartite, members)
        index = {old: new for new, old in enumerate(members)}
        graph = Graph.from_edges(len(members), ((index[u], index[v]) for u, v in projected.edges()))
        projections.append((graph, side, members))

    graph, side, members = min(projections, key=lambda p: (p[0].density, -p[0].n, p[1]))
    other = projections[1 - side][0]
    log.add(
        'bipartite-projection',
        side=SIDE_NAMES[side],
        nodes=graph.n,
        density=graph.density,
        other_nodes=other.n,
        other_density=other.density,
    )
    log.labels = [raw.labels[i] for i in members]
    logger.debug('kept %s projection (density %.4g vs %.4g)', SIDE_NAMES[side], graph.density, other.density)
    return graph, log


@dataclass
class _LayerCandidate:
    position: int
    tag: str | None
    graph: Graph
    log: PreprocessLog
    connected: bool
    coverage: float


def select_multiplex_layer(raw: RawNetwork) -> tuple[Graph, PreprocessLog]:
    """Keep the sparsest connected layer.

    When no layer is connected, the layer whose giant component covers the
    largest fraction of its nodes is kept and the log says so.
    """
    tags = list(dict.fromkeys(edge.layer for edge in raw.edges)) or [None]
    candidates = []
    for position, tag in enumerate(tags):
        pairs = [(edge.u, edge.v) for edge in raw.edges if edge.layer == tag]
        try:
            graph, layer_log = _collapse(raw, pairs, PreprocessLog())
        except EmptyResult:
            logger.debug('layer %r holds only loops, skipped', tag)
            continue
        components = connected_components(graph)
        candidates.append(_LayerCandidate(
            position=position,
            tag=tag,
            graph=graph,
            log=layer_log,
            connected=len(components) == 1,
            coverage=len(components[0]) / graph.n,
        ))
    if not candidates:
        raise EmptyResult('every layer is empty once loops are removed')

    connected = [c for c in candidates if c.connected]
    if connected:
        best = min(connected, key=lambda c: (c.graph.density, c.position))
    else:
        best = max(candidates, key=lambda c: (c.coverage, -c.position))
        logger.info('no connected layer; kept %r covering %.1f%% of its nodes', best.tag, 100 * best.coverage)

    log = PreprocessLog()
    _drop_attributes(raw, log)
    log.add(
        'multiplex-layer',
        layer=best.tag,
        layers=len(tags),
        connected=best.connected,
        density=best.graph.density,
        giant_fraction=best.coverage,
    )
    log.extend(best.log)
    return best.graph, log
