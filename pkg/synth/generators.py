"""Seeded reference graphs used as fixtures and oracles."""
import networkx as nx

from graphs.exceptions import InvalidParam
from graphs.graph import Graph


def _check_ring(n: int, k: int) -> None:
    if k % 2 or not 0 < k < n:
        raise InvalidParam(f'ring lattice needs an even k with 0 < k < n, got n={n}, k={k}')


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise InvalidParam(f'{name} must lie in [0, 1], got {value}')


def ring_lattice(n: int, k: int) -> Graph:
    """Node i linked to i±1 .. i±k/2 (mod n)."""
    _check_ring(n, k)
    return Graph.from_networkx(nx.circulant_graph(n, range(1, k // 2 + 1)))


def erdos_renyi(n: int, p: float, seed: int | None = None) -> Graph:
    if n < 0:
        raise InvalidParam(f'node count must be non-negative, got {n}')
    _check_probability('p', p)
    return Graph.from_networkx(nx.gnp_random_graph(n, p, seed=seed))


def watts_strogatz(n: int, k: int, beta: float, seed: int | None = None) -> Graph:
    """Ring lattice whose edges each move one endpoint with probability beta."""
    _check_ring(n, k)
    _check_probability('beta', beta)
    return Graph.from_networkx(nx.watts_strogatz_graph(n, k, beta, seed=seed))


def barabasi_albert(n: int, m0: int, m_per_step: int, seed: int | None = None) -> Graph:
    """Preferential attachment grown from a clique on m0 nodes."""
    if not 1 <= m_per_step <= m0 <= n:
        raise InvalidParam(
            f'barabasi-albert needs 1 <= m_per_step <= m0 <= n, got n={n}, m0={m0}, m_per_step={m_per_step}'
        )
    clique = nx.complete_graph(m0)
    if n == m0:
        return Graph.from_networkx(clique)
    return Graph.from_networkx(nx.barabasi_albert_graph(n, m_per_step, seed=seed, initial_graph=clique))


def mean_degree_probability(n: int, mean_degree: float) -> float:
    """Edge probability of G(n, p) with the given expected degree."""
    if n < 2:
        return 0.0
    return min(1.0, mean_degree / (n - 1))
