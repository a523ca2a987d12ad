import logging
import time
from typing import Any, Iterable

import numpy as np

from graphs.graph import DegreeSequence

from .alternatives import compare_alternatives
from .classify import classify
from .gof import gof_pvalue
from .powerlaw import as_degrees, fit_powerlaw, powerlaw_sf
from .results import DegreeAnalysis, PowerLawFit

logger = logging.getLogger(__name__)


def analyze_degrees(
    degrees: DegreeSequence | Iterable[int] | np.ndarray,
    *,
    bootstraps: int = 1000,
    seed: int = 0,
    gof_threshold: float = 0.1,
    significance: float = 0.1,
    tail_floor: int = 10,
    workers: int = 1,
) -> DegreeAnalysis:
    """Fit, bootstrap, compare against the alternatives and classify."""
    started = time.monotonic()
    values = as_degrees(degrees)
    fit = fit_powerlaw(values, tail_floor=tail_floor)
    gof = gof_pvalue(values, fit, bootstraps, seed, tail_floor=tail_floor, workers=workers)
    comparisons = compare_alternatives(values, fit, significance)
    analysis = DegreeAnalysis(
        fit=fit,
        gof=gof,
        comparisons=comparisons,
        classification=str(classify(gof, comparisons, gof_threshold)),
    )
    logger.debug(
        'degree analysis: alpha=%.3f xmin=%d p=%.3f -> %s in %.2fs',
        fit.alpha, fit.xmin, gof.pvalue, analysis.classification, time.monotonic() - started,
    )
    return analysis


def ccdf_table(degrees: DegreeSequence | Iterable[int] | np.ndarray, fit: PowerLawFit | None = None) -> list[dict[str, Any]]:
    """Empirical P(K >= k) per distinct degree, with the fitted tail scaled by its share of the sample."""
    values = np.sort(as_degrees(degrees))
    observed = np.unique(values)
    empirical = 1.0 - np.searchsorted(values, observed, side='left') / values.size
    rows = []
    for degree, ccdf in zip(observed.tolist(), empirical.tolist()):
        fitted = None
        if fit is not None and degree >= fit.xmin:
            fitted = float(fit.tail_fraction * powerlaw_sf(degree, fit.alpha, fit.xmin))
        rows.append({'degree': int(degree), 'ccdf': ccdf, 'fitted_ccdf': fitted})
    return rows
