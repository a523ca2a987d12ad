import logging

import networkx as nx
from django.db import models

from .exceptions import DisconnectedGraph, TooSmall
from .graph import DegreeSequence, Graph

logger = logging.getLogger(__name__)


class TransitivityMode(models.TextChoices):
    GLOBAL = 'global', 'Global (triangles / connected triples)'
    MEAN_LOCAL = 'mean-local', 'Mean local clustering'


def average_path_length(graph: Graph) -> float:
    """Mean geodesic distance over unordered pairs of distinct nodes.

    Runs one BFS per source node, O(mn) overall.
    """
    if graph.n < 2:
        raise TooSmall(f'average path length needs at least 2 nodes, got {graph.n}')
    g = graph.nx_graph
    if not nx.is_connected(g):
        raise DisconnectedGraph(
            f'graph has {nx.number_connected_components(g)} components'
        )
    return float(nx.average_shortest_path_length(g))


def transitivity(graph: Graph, mode: str = TransitivityMode.MEAN_LOCAL) -> float:
    mode = TransitivityMode(mode)
    if graph.n == 0:
        return 0.0
    g = graph.nx_graph
    if mode == TransitivityMode.GLOBAL:
        return float(nx.transitivity(g))
    # nodes of degree < 2 count as 0
    return float(nx.average_clustering(g))


def connected_components(graph: Graph) -> list[list[int]]:
    """Components as sorted node lists, largest first, ties by smallest node."""
    components = [sorted(c) for c in nx.connected_components(graph.nx_graph)]
    components.sort(key=lambda c: (-len(c), c[0]))
    return components


def is_connected(graph: Graph) -> bool:
    return graph.n > 0 and nx.is_connected(graph.nx_graph)


def degree_sequence(graph: Graph) -> DegreeSequence:
    return DegreeSequence(tuple(len(adj) for adj in graph.adjacency))


def induced_subgraph(graph: Graph, nodes: list[int]) -> Graph:
    """Subgraph on `nodes`, relabeled densely in ascending node order."""
    keep = sorted(nodes)
    index = {node: i for i, node in enumerate(keep)}
    pairs = [(index[u], index[v]) for u, v in graph.edges if u in index and v in index]
    return Graph.from_edges(len(keep), pairs)


def giant_component(graph: Graph) -> tuple[Graph, bool]:
    """Largest connected component and whether anything was dropped."""
    components = connected_components(graph)
    if len(components) <= 1:
        return graph, False
    giant = components[0]
    logger.debug('keeping giant component of %d/%d nodes', len(giant), graph.n)
    return induced_subgraph(graph, giant), True
