import logging
import math
from typing import Iterator

import networkx as nx
import numpy as np

from graphs.exceptions import TooSmall
from graphs.graph import Edge, Graph

from .plan import RewireMode, RewirePlan
from .swap import SwapState

logger = logging.getLogger(__name__)

DRAW_CHUNK = 4096
# candidate edges drawn per latticization attempt; the longest is moved
LOCAL_SAMPLES = 8
# every fourth latticization attempt is a uniform pair
UNIFORM_EVERY = 4
# extra rounds of m attempts continue while a round lowers the cost by more than this share
STALL_TOLERANCE = 0.01
MAX_BUDGET_FACTOR = 10


def _draws(rng: np.random.Generator, m: int, attempts: int) -> Iterator[tuple[int, int, bool, bool]]:
    """Edge-index pairs and orientation flips, drawn in chunks."""
    remaining = attempts
    while remaining > 0:
        size = min(DRAW_CHUNK, remaining)
        picks = rng.integers(0, m, size=(size, 2)).tolist()
        flips = (rng.random((size, 2)) < 0.5).tolist()
        for (i, j), (flip_i, flip_j) in zip(picks, flips):
            yield i, j, flip_i, flip_j
        remaining -= size


def _lattice_draws(rng: np.random.Generator, m: int, attempts: int) -> Iterator[tuple[list, list, list]]:
    remaining = attempts
    while remaining > 0:
        size = min(DRAW_CHUNK, remaining)
        picks = rng.integers(0, m, size=(size, LOCAL_SAMPLES)).tolist()
        flips = (rng.random((size, 2)) < 0.5).tolist()
        uniforms = rng.random((size, 2)).tolist()
        yield from zip(picks, flips, uniforms)
        remaining -= size


def _uniform_attempt(state: SwapState, plan: RewirePlan, i: int, j: int, flip_i: bool, flip_j: bool) -> None:
    a, b = state.edges[i]
    c, d = state.edges[j]
    if flip_i:
        a, b = b, a
    if flip_j:
        c, d = d, c
    state.attempt_swap((a, b), (c, d), plan.mode, plan.connectivity_guard)


def _local_pair(
    state: SwapState, picks: list[int], flip: bool, u_slot: float, u_neighbor: float, window: int
) -> tuple[Edge, Edge] | None:
    """A long edge (a,b) and an edge (c,d) hanging off a free slot d near a.

    Swapping gives a the short edge (a,d) and hands the long end to c, a
    neighbor of d, so long edges shrink a few steps at a time.
    """
    u, v = max((state.edges[k] for k in picks), key=lambda edge: edge[1] - edge[0])
    ends = ((v, u), (u, v)) if flip else ((u, v), (v, u))
    for a, b in ends:
        lo, hi = max(0, a - window), min(state.n, a + window + 1)
        free = [x for x in range(lo, hi) if x != a and x != b and not state.graph.has_edge(a, x)]
        if free:
            break
    else:
        return None
    d = free[int(u_slot * len(free))]
    neighbors = list(state.graph.adj[d])
    if not neighbors:
        return None
    c = neighbors[int(u_neighbor * len(neighbors))]
    return (a, b), (c, d)


def _latticize_state(state: SwapState, plan: RewirePlan, rng: np.random.Generator) -> int:
    m = len(state.edges)
    window = max(2, math.ceil(m / state.n))
    budget = plan.attempts(m)
    cap = budget * MAX_BUDGET_FACTOR
    done, round_size = 0, budget
    while True:
        before = state.cost
        for step, (picks, flips, uniforms) in enumerate(_lattice_draws(rng, m, round_size), start=done):
            if step % UNIFORM_EVERY == UNIFORM_EVERY - 1:
                _uniform_attempt(state, plan, picks[0], picks[1], *flips)
                continue
            pair = _local_pair(state, picks, flips[0], uniforms[0], uniforms[1], window)
            if pair is not None:
                state.attempt_swap(*pair, plan.mode, plan.connectivity_guard)
        done += round_size
        if done >= cap or before - state.cost <= STALL_TOLERANCE * before:
            return done
        round_size = m


def rewire(graph: Graph, plan: RewirePlan) -> Graph:
    if graph.m < 2:
        raise TooSmall(f'rewiring needs at least 2 edges, got {graph.m}')
    state = SwapState(graph)
    rng = np.random.default_rng(plan.seed)
    if plan.mode == RewireMode.LATTICIZE:
        attempts = _latticize_state(state, plan, rng)
    else:
        attempts = plan.attempts(graph.m)
        for i, j, flip_i, flip_j in _draws(rng, graph.m, attempts):
            _uniform_attempt(state, plan, i, j, flip_i, flip_j)
    logger.debug(
        '%s %r: %d/%d swaps accepted, lattice cost %d (seed %d)',
        plan.mode, graph, state.accepted, attempts, state.cost, plan.seed,
    )
    return state.to_graph()


def randomize(graph: Graph, plan: RewirePlan) -> Graph:
    """Randomized reference with the degree sequence of `graph`."""
    return rewire(graph, plan.with_mode(RewireMode.RANDOMIZE))


def latticize(graph: Graph, plan: RewirePlan) -> Graph:
    """Latticized reference: swaps only move edges toward the diagonal.

    Runs the planned number of attempts, then further rounds of m attempts
    until a round no longer lowers the lattice cost noticeably.
    """
    return rewire(graph, plan.with_mode(RewireMode.LATTICIZE))


def bfs_relabel(graph: Graph) -> Graph:
    """Renumber nodes in breadth-first order from node 0.

    Unreached nodes keep their relative order after the reached ones.
    """
    if graph.n == 0:
        return graph
    order = [0] + [v for _, v in nx.bfs_edges(graph.nx_graph, 0)]
    seen = set(order)
    order.extend(node for node in range(graph.n) if node not in seen)
    index = {old: new for new, old in enumerate(order)}
    return Graph.from_edges(graph.n, ((index[u], index[v]) for u, v in graph.edges))
