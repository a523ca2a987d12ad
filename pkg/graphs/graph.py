from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import networkx as nx
import numpy as np

from .exceptions import InvalidGraph


Edge = tuple[int, int]


def _normalized(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..n-1.

    Edges are stored as (u, v) pairs with u < v. Instances are immutable and
    safe to share between worker processes.
    """
    n: int
    edges: frozenset[Edge]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise InvalidGraph(f'node count must be non-negative, got {self.n}')
        for u, v in self.edges:
            if u == v:
                raise InvalidGraph(f'self-loop on node {u}')
            if not (0 <= u < v < self.n):
                raise InvalidGraph(f'edge ({u}, {v}) is not a normalized pair of nodes in 0..{self.n - 1}')

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> 'Graph':
        """Build a graph from unordered pairs; duplicates collapse, loops are rejected."""
        edges = set()
        for u, v in pairs:
            u, v = int(u), int(v)
            if u == v:
                raise InvalidGraph(f'self-loop on node {u}')
            edges.add(_normalized(u, v))
        return cls(n=n, edges=frozenset(edges))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> 'Graph':
        """Relabel an undirected networkx graph to 0..n-1 in sorted node order."""
        relabeled = nx.convert_node_labels_to_integers(graph, ordering='sorted')
        return cls.from_edges(relabeled.number_of_nodes(), relabeled.edges())

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def density(self) -> float:
        if self.n < 2:
            return 0.0
        return 2 * self.m / (self.n * (self.n - 1))

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        neighbors: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].append(v)
            neighbors[v].append(u)
        return tuple(tuple(sorted(adj)) for adj in neighbors)

    @cached_property
    def nx_graph(self) -> nx.Graph:
        """Frozen networkx view used by the measures."""
        graph = nx.Graph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.sorted_edges())
        return nx.freeze(graph)

    def __getstate__(self) -> dict:
        # cached networkx views are rebuilt in the receiving process
        return {'n': self.n, 'edges': self.edges}

    def has_edge(self, u: int, v: int) -> bool:
        return _normalized(u, v) in self.edges

    def __repr__(self) -> str:
        return f'Graph(n={self.n}, m={self.m})'


@dataclass(frozen=True)
class DegreeSequence:
    """Degrees k_i in node order."""
    values: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def total(self) -> int:
        return sum(self.values)

    @property
    def mean(self) -> float:
        if not self.values:
            return 0.0
        return self.total / len(self.values)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=np.int64)
