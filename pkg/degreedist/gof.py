import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Iterable

import numpy as np

from graphs.graph import DegreeSequence

from .exceptions import DegenerateSample, InvalidB
from .powerlaw import as_degrees, draw_powerlaw, fit_powerlaw
from .results import GofResult, PowerLawFit

logger = logging.getLogger(__name__)


def synthetic_ks(seed: int, below: np.ndarray, n: int, fit: PowerLawFit, tail_floor: int) -> float:
    """KS distance of one semi-parametric replicate, refit from scratch.

    Each observation comes from the fitted tail with probability ntail/n,
    otherwise it is resampled from the empirical values below xmin.
    """
    rng = np.random.default_rng(seed)
    ntail = int(rng.binomial(n, fit.ntail / n)) if below.size else n
    synthetic = np.concatenate([
        draw_powerlaw(rng, fit.alpha, fit.xmin, ntail),
        rng.choice(below, size=n - ntail) if n > ntail else np.empty(0, dtype=np.int64),
    ])
    try:
        return fit_powerlaw(synthetic, tail_floor=tail_floor).ks
    except DegenerateSample:
        return 0.0


def gof_pvalue(
    degrees: DegreeSequence | Iterable[int] | np.ndarray,
    fit: PowerLawFit,
    bootstraps: int = 1000,
    seed: int = 0,
    *,
    tail_floor: int = 10,
    workers: int = 1,
) -> GofResult:
    """Fraction of bootstrap replicates whose KS distance strictly exceeds the observed one.

    Replicate i uses seed `seed + i`.
    """
    if bootstraps < 1:
        raise InvalidB(f'bootstrap count must be >= 1, got {bootstraps}')
    values = as_degrees(degrees)
    below = values[values < fit.xmin]
    replicate = partial(synthetic_ks, below=below, n=int(values.size), fit=fit, tail_floor=tail_floor)
    seeds = [seed + i for i in range(bootstraps)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            distances = list(pool.map(replicate, seeds, chunksize=max(1, bootstraps // (4 * workers))))
    else:
        distances = [replicate(s) for s in seeds]
    exceeding = sum(1 for d in distances if d > fit.ks)
    logger.debug('gof: %d/%d replicates above D=%.4g', exceeding, bootstraps, fit.ks)
    return GofResult(pvalue=exceeding / bootstraps, bootstraps=bootstraps, observed_ks=fit.ks)
