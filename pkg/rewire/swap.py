import networkx as nx

from graphs.graph import Edge, Graph

from .plan import RewireMode


def _normalized(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def lattice_cost(edges) -> int:
    """Total distance of the edges from the diagonal of the adjacency matrix."""
    return sum(abs(u - v) for u, v in edges)


class SwapState:
    """Private mutable copy of a graph undergoing double-edge swaps.

    Keeps the edge list indexable so edges can be drawn uniformly, and
    tracks the lattice cost incrementally.
    """

    def __init__(self, graph: Graph) -> None:
        self.n = graph.n
        self.graph = nx.Graph(graph.nx_graph)
        self.edges: list[Edge] = graph.sorted_edges()
        self.position = {edge: i for i, edge in enumerate(self.edges)}
        self.cost = lattice_cost(self.edges)
        self.accepted = 0

    def _replace(self, old: Edge, new: Edge) -> None:
        old, new = _normalized(*old), _normalized(*new)
        index = self.position.pop(old)
        self.edges[index] = new
        self.position[new] = index
        self.graph.remove_edge(*old)
        self.graph.add_edge(*new)

    def _swap(self, a: int, b: int, c: int, d: int) -> None:
        # (a,b),(c,d) -> (a,d),(c,b)
        self._replace((a, b), (a, d))
        self._replace((c, d), (c, b))

    def attempt_swap(self, e1: Edge, e2: Edge, mode: str, connectivity_guard: bool = False) -> bool:
        a, b = e1
        c, d = e2
        if len({a, b, c, d}) < 4:
            return False
        if self.graph.has_edge(a, d) or self.graph.has_edge(c, b):
            return False
        delta = abs(a - d) + abs(c - b) - abs(a - b) - abs(c - d)
        if mode == RewireMode.LATTICIZE and delta > 0:
            return False
        self._swap(a, b, c, d)
        if connectivity_guard and not (nx.has_path(self.graph, a, b) and nx.has_path(self.graph, c, d)):
            self._swap(a, d, c, b)
            return False
        self.cost += delta
        self.accepted += 1
        return True

    def to_graph(self) -> Graph:
        return Graph(n=self.n, edges=frozenset(self.edges))


def attempt_swap(
    graph: Graph, e1: Edge, e2: Edge, mode: str, connectivity_guard: bool = False
) -> tuple[bool, Graph]:
    """Try the swap (a,b),(c,d) -> (a,d),(c,b) on a copy of `graph`."""
    state = SwapState(graph)
    accepted = state.attempt_swap(e1, e2, mode, connectivity_guard)
    return accepted, state.to_graph()
