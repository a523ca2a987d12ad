"""Discrete power law P(x) = x^-alpha / zeta(alpha, xmin) on x >= xmin."""
import logging
from typing import Iterable

import numpy as np
from scipy.optimize import minimize
from scipy.special import zeta

from graphs.exceptions import InvalidParam
from graphs.graph import DegreeSequence

from .exceptions import DegenerateSample
from .results import PowerLawFit

logger = logging.getLogger(__name__)

ALPHA_BOUNDS = (1.0001, 20.0)
# largest value the sampler will return; doubles stay exact below 2^53
MAX_DRAW = 2.0 ** 53


def as_degrees(degrees: DegreeSequence | Iterable[int] | np.ndarray) -> np.ndarray:
    if isinstance(degrees, DegreeSequence):
        return degrees.as_array()
    if isinstance(degrees, np.ndarray):
        return degrees.astype(np.int64, copy=False)
    return np.fromiter(degrees, dtype=np.int64)


def powerlaw_logpmf(x: np.ndarray, alpha: float, xmin: int) -> np.ndarray:
    return -alpha * np.log(x) - np.log(zeta(alpha, xmin))


def powerlaw_loglik(tail: np.ndarray, alpha: float, xmin: int) -> float:
    return float(-alpha * np.log(tail).sum() - tail.size * np.log(zeta(alpha, xmin)))


def powerlaw_cdf(x: np.ndarray, alpha: float, xmin: int) -> np.ndarray:
    """P(X <= x) for x >= xmin."""
    return 1.0 - zeta(alpha, np.asarray(x, dtype=float) + 1.0) / zeta(alpha, xmin)


def powerlaw_sf(x: np.ndarray, alpha: float, xmin: int) -> np.ndarray:
    """P(X >= x) for x >= xmin."""
    return zeta(alpha, np.asarray(x, dtype=float)) / zeta(alpha, xmin)


def estimate_alpha(tail: np.ndarray, xmin: int) -> tuple[float, float]:
    """Maximum likelihood exponent for a fixed xmin.

    Starts from the continuous approximation 1 + n / sum(ln(x / (xmin - 1/2))).
    """
    n = tail.size
    log_sum = float(np.log(tail).sum())
    start = 1.0 + n / float(np.log(tail / (xmin - 0.5)).sum())
    start = min(max(start, ALPHA_BOUNDS[0]), ALPHA_BOUNDS[1])

    def negative_loglik(params: np.ndarray) -> float:
        alpha = params[0]
        return alpha * log_sum + n * np.log(zeta(alpha, xmin))

    result = minimize(
        negative_loglik, [start], method='L-BFGS-B', bounds=[ALPHA_BOUNDS],
        options={'ftol': 1e-13, 'gtol': 1e-9},
    )
    return float(result.x[0]), -float(result.fun)


def ks_distance(tail: np.ndarray, alpha: float, xmin: int) -> float:
    """Largest gap between the empirical and fitted CDFs over the tail.

    Both CDFs are step functions on the integers; between two observed
    values the empirical CDF is flat, so the gap peaks at an observed value
    or just before the next one.
    """
    x = np.sort(tail)
    observed = np.unique(x)
    points = np.union1d(observed, observed[1:] - 1)
    empirical = np.searchsorted(x, points, side='right') / x.size
    model = powerlaw_cdf(points, alpha, xmin)
    return float(np.max(np.abs(empirical - model)))


def _candidates(values: np.ndarray, distinct: np.ndarray, min_tail: int) -> list[int]:
    # the largest value is never a candidate: its tail has one distinct value
    counts = values.size - np.searchsorted(np.sort(values), distinct[:-1], side='left')
    return [int(v) for v, count in zip(distinct[:-1], counts) if count >= min_tail]


def fit_powerlaw(
    degrees: DegreeSequence | Iterable[int] | np.ndarray,
    tail_floor: int = 10,
    xmin: int | None = None,
) -> PowerLawFit:
    """Fit alpha and xmin, picking the xmin whose fit has the smallest KS distance.

    Candidate xmin values are distinct degrees whose tail holds at least
    `tail_floor` values. When none qualifies every xmin with a tail of two
    or more is scanned and the fit is flagged low-confidence.
    """
    values = as_degrees(degrees)
    if values.size and values.min() < 1:
        raise InvalidParam('degrees must be >= 1')
    distinct = np.unique(values)
    if distinct.size < 2:
        raise DegenerateSample(f'{values.size} degrees with {distinct.size} distinct value(s)')

    if xmin is not None:
        candidates = [int(xmin)]
    else:
        candidates = _candidates(values, distinct, tail_floor) or _candidates(values, distinct, 2)

    best: PowerLawFit | None = None
    for candidate in candidates:
        tail = values[values >= candidate].astype(float)
        if tail.size < 2:
            raise InvalidParam(f'xmin {candidate} leaves {tail.size} value(s) in the tail')
        alpha, loglik = estimate_alpha(tail, candidate)
        ks = ks_distance(tail, alpha, candidate)
        if best is None or ks < best.ks:
            best = PowerLawFit(
                alpha=alpha,
                xmin=candidate,
                ntail=int(tail.size),
                ks=min(max(ks, 0.0), 1.0),
                loglik=loglik,
                n=int(values.size),
                low_confidence=bool(tail.size < tail_floor),
            )
    logger.debug('power-law fit over %d candidate xmin: %s', len(candidates), best)
    return best


def draw_powerlaw(rng: np.random.Generator, alpha: float, xmin: int, size: int) -> np.ndarray:
    """Inverse-CDF draws: the smallest x >= xmin with CDF(x) >= r."""
    if size == 0:
        return np.empty(0, dtype=np.int64)
    target = (1.0 - rng.random(size)) * zeta(alpha, xmin)

    def reached(x: np.ndarray, index: np.ndarray) -> np.ndarray:
        return zeta(alpha, x + 1.0) <= target[index]

    low = np.full(size, xmin - 1.0)
    high = np.full(size, float(xmin))
    pending = ~reached(high, np.arange(size))
    while pending.any():
        low[pending] = high[pending]
        high[pending] = np.minimum(high[pending] * 2.0, MAX_DRAW)
        pending &= high < MAX_DRAW
        index = np.flatnonzero(pending)
        pending[index] = ~reached(high[index], index)

    while True:
        open_ = high - low > 1
        if not open_.any():
            break
        mid = np.floor((low[open_] + high[open_]) / 2.0)
        index = np.flatnonzero(open_)
        hit = reached(mid, index)
        high[index[hit]] = mid[hit]
        low[index[~hit]] = mid[~hit]
    return high.astype(np.int64)


def sample_powerlaw(alpha: float, xmin: int, n: int, seed: int | None = None) -> DegreeSequence:
    if alpha <= 1:
        raise InvalidParam(f'alpha must exceed 1, got {alpha}')
    if xmin < 1:
        raise InvalidParam(f'xmin must be >= 1, got {xmin}')
    if n < 0:
        raise InvalidParam(f'sample size must be non-negative, got {n}')
    rng = np.random.default_rng(seed)
    return DegreeSequence(tuple(int(v) for v in draw_powerlaw(rng, alpha, xmin, n)))
