"""The omega small-world measure.

omega = L_A / L - T / T_T, where L_A is the mean path length of randomized
references and T_T the mean transitivity of latticized references, both
obtained by degree-preserving rewiring of the graph itself.
"""
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

from graphs.exceptions import DisconnectedGraph, InvalidParam, TooSmall
from graphs.graph import Graph
from graphs.measures import TransitivityMode, average_path_length, giant_component, is_connected, transitivity
from rewire.plan import RewireMode, RewirePlan
from rewire.references import bfs_relabel, latticize, randomize

from .exceptions import DegenerateTransitivity
from .report import OmegaThresholds, SmallWorldReport, classify_omega

logger = logging.getLogger(__name__)


def random_path_length(graph: Graph, plan: RewirePlan, mode: str = TransitivityMode.MEAN_LOCAL) -> float:
    reference = randomize(graph, plan)
    if not plan.connectivity_guard and not is_connected(reference):
        reference, _ = giant_component(reference)
    return average_path_length(reference)


def lattice_transitivity(graph: Graph, plan: RewirePlan, mode: str = TransitivityMode.MEAN_LOCAL) -> float:
    return transitivity(latticize(graph, plan), mode)


def _run_references(
    measure: Callable[[Graph, RewirePlan, str], float],
    graph: Graph,
    plans: list[RewirePlan],
    mode: str,
    workers: int,
) -> list[float]:
    if workers <= 1 or len(plans) == 1:
        return [measure(graph, plan, mode) for plan in plans]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(measure, [graph] * len(plans), plans, [mode] * len(plans)))


def _ratio_t(t: float, t_t: float) -> float:
    if t_t == 0:
        if t == 0:
            return 0.0
        raise DegenerateTransitivity(f'latticized references have T_T = 0 while T = {t:.6g}')
    return t / t_t


def omega(
    graph: Graph,
    plan: RewirePlan | None = None,
    realizations: int = 8,
    *,
    lattice_plan: RewirePlan | None = None,
    transitivity_mode: str = TransitivityMode.MEAN_LOCAL,
    thresholds: OmegaThresholds = OmegaThresholds(),
    workers: int = 1,
    label_diagnostic: bool = False,
) -> SmallWorldReport:
    """Measure omega against `realizations` references of each kind.

    Randomized run i uses seed `plan.seed + i`, latticized run i uses
    `plan.seed + realizations + i`. `lattice_plan` overrides the swap budget
    and guard of the latticized runs; its seed is ignored.
    """
    if realizations < 1:
        raise InvalidParam(f'realizations must be >= 1, got {realizations}')
    if graph.n < 4:
        raise TooSmall(f'omega needs at least 4 nodes, got {graph.n}')
    if graph.m < 2:
        raise TooSmall(f'omega needs at least 2 edges, got {graph.m}')
    if not is_connected(graph):
        raise DisconnectedGraph('omega needs a connected graph')

    plan = plan or RewirePlan()
    lattice_plan = (lattice_plan or plan).with_mode(RewireMode.LATTICIZE)
    transitivity_mode = TransitivityMode(transitivity_mode)
    started = time.monotonic()

    path_length = average_path_length(graph)
    t = transitivity(graph, transitivity_mode)

    random_plans = [plan.with_mode(RewireMode.RANDOMIZE).with_seed(plan.seed + i) for i in range(realizations)]
    lattice_plans = [lattice_plan.with_seed(plan.seed + realizations + i) for i in range(realizations)]
    random_lengths = _run_references(random_path_length, graph, random_plans, transitivity_mode, workers)
    lattice_values = _run_references(lattice_transitivity, graph, lattice_plans, transitivity_mode, workers)

    l_a = float(np.mean(random_lengths))
    t_t = float(np.mean(lattice_values))
    ratio_l = l_a / path_length
    ratio_t = _ratio_t(t, t_t)

    report = SmallWorldReport(
        path_length=path_length,
        transitivity=t,
        random_path_length=l_a,
        lattice_transitivity=t_t,
        ratio_l=ratio_l,
        ratio_t=ratio_t,
        omega=ratio_l - ratio_t,
        realizations=realizations,
        seed=plan.seed,
        transitivity_mode=transitivity_mode,
        random_path_lengths=random_lengths,
        lattice_transitivities=lattice_values,
    )

    if label_diagnostic:
        relabeled = bfs_relabel(graph)
        bfs_values = _run_references(lattice_transitivity, relabeled, lattice_plans, transitivity_mode, workers)
        t_t_bfs = float(np.mean(bfs_values))
        report.diagnostics['T_T_bfs'] = t_t_bfs
        try:
            report.diagnostics['omega_bfs'] = ratio_l - _ratio_t(t, t_t_bfs)
        except DegenerateTransitivity:
            report.diagnostics['omega_bfs'] = None

    report.classification = classify_omega(report, thresholds)
    logger.debug(
        'omega %r: L=%.4g T=%.4g L_A=%.4g T_T=%.4g omega=%.4g (%s) in %.2fs',
        graph, path_length, t, l_a, t_t, report.omega, report.classification, time.monotonic() - started,
    )
    return report
