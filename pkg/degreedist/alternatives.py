"""Discrete alternatives to the power law, fit on the same tail x >= xmin."""
import logging
import math
from abc import ABC, abstractmethod
from typing import Iterable

import mpmath
import numpy as np
from scipy import stats
from scipy.optimize import minimize, minimize_scalar

from graphs.graph import DegreeSequence

from .exceptions import FitFailure
from .powerlaw import as_degrees, powerlaw_logpmf
from .results import NESTED_ALTERNATIVES, Alternative, AlternativeComparison, PowerLawFit, Verdict

logger = logging.getLogger(__name__)

RESTARTS = 3


class TailModel(ABC):
    alternative: str

    def __init__(self, xmin: int) -> None:
        self.xmin = xmin

    @abstractmethod
    def logpmf(self, x: np.ndarray) -> np.ndarray:
        ...

    @property
    @abstractmethod
    def params(self) -> dict[str, float]:
        ...

    @classmethod
    @abstractmethod
    def fit(cls, tail: np.ndarray, xmin: int, **hints) -> 'TailModel':
        ...

    @property
    def nested(self) -> bool:
        return self.alternative in NESTED_ALTERNATIVES

    def loglik(self, tail: np.ndarray) -> float:
        return float(self.logpmf(tail).sum())


def _best_of(objective, starts, bounds) -> np.ndarray:
    """Run bounded L-BFGS-B from each start and keep the lowest finite optimum."""
    best = None
    for start in starts:
        with np.errstate(all='ignore'):
            result = minimize(objective, start, method='L-BFGS-B', bounds=bounds)
        if np.isfinite(result.fun) and (best is None or result.fun < best.fun):
            best = result
    if best is None:
        raise FitFailure('no restart reached a finite likelihood')
    return best.x


class Exponential(TailModel):
    """Geometric law P(x) = (1 - e^-rate) e^(-rate (x - xmin))."""
    alternative = Alternative.EXPONENTIAL

    def __init__(self, xmin: int, rate: float) -> None:
        super().__init__(xmin)
        self.rate = rate

    def logpmf(self, x: np.ndarray) -> np.ndarray:
        return np.log(-np.expm1(-self.rate)) - self.rate * (x - self.xmin)

    @property
    def params(self) -> dict[str, float]:
        return {'rate': self.rate}

    @classmethod
    def fit(cls, tail: np.ndarray, xmin: int, **hints) -> 'Exponential':
        excess = float(np.mean(tail - xmin))
        if excess <= 0:
            raise FitFailure('every tail value equals xmin')
        return cls(xmin, math.log1p(1.0 / excess))


class Poisson(TailModel):
    """Poisson law conditioned on x >= xmin."""
    alternative = Alternative.POISSON

    def __init__(self, xmin: int, mu: float) -> None:
        super().__init__(xmin)
        self.mu = mu

    def logpmf(self, x: np.ndarray) -> np.ndarray:
        return stats.poisson.logpmf(x, self.mu) - stats.poisson.logsf(self.xmin - 1, self.mu)

    @property
    def params(self) -> dict[str, float]:
        return {'mu': self.mu}

    @classmethod
    def fit(cls, tail: np.ndarray, xmin: int, **hints) -> 'Poisson':
        # the conditioned mean exceeds mu, so mu lies below the sample mean
        upper = float(np.mean(tail))
        result = minimize_scalar(
            lambda mu: -cls(xmin, mu).loglik(tail), bounds=(1e-8, upper), method='bounded',
        )
        if not np.isfinite(result.fun):
            raise FitFailure('Poisson likelihood is not finite')
        return cls(xmin, float(result.x))


def _log_normal_mass(lo: np.ndarray, hi: np.ndarray) -> np.ndarray:
    """log(Phi(hi) - Phi(lo)), computed from the nearer tail."""
    with np.errstate(divide='ignore', invalid='ignore'):
        log_sf_lo, log_sf_hi = stats.norm.logsf(lo), stats.norm.logsf(hi)
        right = log_sf_lo + np.log(-np.expm1(log_sf_hi - log_sf_lo))
        log_cdf_lo, log_cdf_hi = stats.norm.logcdf(lo), stats.norm.logcdf(hi)
        left = log_cdf_hi + np.log(-np.expm1(log_cdf_lo - log_cdf_hi))
    return np.where(lo > 0, right, left)


class LogNormal(TailModel):
    """Log-normal density integrated over [x, x+1), conditioned on x >= xmin."""
    alternative = Alternative.LOGNORMAL

    def __init__(self, xmin: int, mu: float, sigma: float) -> None:
        super().__init__(xmin)
        self.mu = mu
        self.sigma = sigma

    def _z(self, x) -> np.ndarray:
        return (np.log(x) - self.mu) / self.sigma

    def logpmf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return _log_normal_mass(self._z(x), self._z(x + 1.0)) - stats.norm.logsf(self._z(float(self.xmin)))

    @property
    def params(self) -> dict[str, float]:
        return {'mu': self.mu, 'sigma': self.sigma}

    @classmethod
    def fit(cls, tail: np.ndarray, xmin: int, **hints) -> 'LogNormal':
        logs = np.log(tail)
        mu0, sigma0 = float(logs.mean()), max(float(logs.std()), 0.1)
        starts = [(mu0, math.log(sigma0)), (mu0 - 2 * sigma0, math.log(2 * sigma0)), (0.0, 0.0)][:RESTARTS]

        def objective(params: np.ndarray) -> float:
            value = -cls(xmin, params[0], math.exp(params[1])).loglik(tail)
            return value if np.isfinite(value) else np.inf

        mu, log_sigma = _best_of(objective, starts, [(-50.0, 50.0), (math.log(0.01), math.log(50.0))])
        return cls(xmin, float(mu), math.exp(log_sigma))


class StretchedExponential(TailModel):
    """Discretized Weibull tail with survival exp(-rate x^beta)."""
    alternative = Alternative.STRETCHED_EXPONENTIAL

    def __init__(self, xmin: int, rate: float, beta: float) -> None:
        super().__init__(xmin)
        self.rate = rate
        self.beta = beta

    def logpmf(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        step = (x + 1.0) ** self.beta - x ** self.beta
        with np.errstate(divide='ignore'):
            return -self.rate * (x ** self.beta - float(self.xmin) ** self.beta) + np.log(-np.expm1(-self.rate * step))

    @property
    def params(self) -> dict[str, float]:
        return {'rate': self.rate, 'beta': self.beta}

    @classmethod
    def fit(cls, tail: np.ndarray, xmin: int, **hints) -> 'StretchedExponential':
        starts = []
        for beta in (0.3, 0.6, 0.9)[:RESTARTS]:
            spread = float(np.mean(tail ** beta - xmin ** beta))
            starts.append((math.log(1.0 / spread) if spread > 0 else 0.0, beta))

        def objective(params: np.ndarray) -> float:
            value = -cls(xmin, math.exp(params[0]), params[1]).loglik(tail)
            return value if np.isfinite(value) else np.inf

        log_rate, beta = _best_of(objective, starts, [(-30.0, 10.0), (0.01, 2.0)])
        return cls(xmin, math.exp(log_rate), float(beta))


class PowerLawCutoff(TailModel):
    """x^-alpha e^(-rate x) on x >= xmin; rate 0 is the plain power law."""
    alternative = Alternative.POWERLAW_CUTOFF

    def __init__(self, xmin: int, alpha: float, rate: float) -> None:
        super().__init__(xmin)
        self.alpha = alpha
        self.rate = rate

    def log_normalizer(self) -> float:
        # sum_{x >= xmin} x^-alpha e^(-rate x) = e^(-rate xmin) * Phi(e^-rate, alpha, xmin)
        phi = mpmath.lerchphi(mpmath.exp(-self.rate), self.alpha, self.xmin)
        return float(mpmath.log(phi)) - self.rate * self.xmin

    def logpmf(self, x: np.ndarray) -> np.ndarray:
        if self.rate == 0:
            return powerlaw_logpmf(x, self.alpha, self.xmin)
        return -self.alpha * np.log(x) - self.rate * x - self.log_normalizer()

    @property
    def params(self) -> dict[str, float]:
        return {'alpha': self.alpha, 'rate': self.rate}

    @classmethod
    def fit(cls, tail: np.ndarray, xmin: int, alpha: float | None = None, **hints) -> 'PowerLawCutoff':
        """Best of the fitted pure power law (rate 0) and a bounded search with rate > 0."""
        candidates = []
        if alpha is not None:
            candidates.append(cls(xmin, alpha, 0.0))
        alpha0 = alpha if alpha is not None else 1.5
        starts = [(alpha0, 1.0 / float(np.mean(tail))), (max(alpha0 - 0.5, 0.1), 1e-3)]

        def objective(params: np.ndarray) -> float:
            value = -cls(xmin, params[0], params[1]).loglik(tail)
            return value if np.isfinite(value) else np.inf

        try:
            found, rate = _best_of(objective, starts, [(0.0, 20.0), (1e-8, 5.0)])
            candidates.append(cls(xmin, float(found), float(rate)))
        except FitFailure:
            if not candidates:
                raise
        return max(candidates, key=lambda model: model.loglik(tail))


ALTERNATIVE_MODELS: dict[str, type[TailModel]] = {
    Alternative.EXPONENTIAL: Exponential,
    Alternative.LOGNORMAL: LogNormal,
    Alternative.STRETCHED_EXPONENTIAL: StretchedExponential,
    Alternative.POISSON: Poisson,
    Alternative.POWERLAW_CUTOFF: PowerLawCutoff,
}


def vuong(first: np.ndarray, second: np.ndarray) -> tuple[float, float]:
    """Normalized log-likelihood ratio and its two-sided normal p-value.

    Positive values favor `first`.
    """
    diff = np.asarray(first, dtype=float) - np.asarray(second, dtype=float)
    total = float(diff.sum())
    sigma = float(diff.std())
    if sigma == 0:
        return 0.0, 1.0
    normalized = total / (sigma * math.sqrt(diff.size))
    return normalized, float(2 * stats.norm.sf(abs(normalized)))


def nested_ratio(first: np.ndarray, second: np.ndarray) -> tuple[float, float]:
    """Raw log-likelihood ratio with the chi-squared(1) p-value of a nested pair."""
    total = float((np.asarray(first, dtype=float) - np.asarray(second, dtype=float)).sum())
    return total, float(stats.chi2.sf(2 * abs(total), 1))


def verdict_for(logratio: float, pvalue: float, significance: float) -> str:
    if pvalue > significance or logratio == 0:
        return Verdict.UNDECIDED.value
    return (Verdict.FAVORS_POWERLAW if logratio > 0 else Verdict.FAVORS_ALTERNATIVE).value


def compare_models(
    tail: np.ndarray, fit: PowerLawFit, model: TailModel, significance: float = 0.1
) -> AlternativeComparison:
    powerlaw = powerlaw_logpmf(tail, fit.alpha, fit.xmin)
    other = model.logpmf(tail)
    logratio, pvalue = (nested_ratio if model.nested else vuong)(powerlaw, other)
    return AlternativeComparison(
        alternative=str(model.alternative),
        logratio=logratio,
        pvalue=pvalue,
        verdict=verdict_for(logratio, pvalue, significance),
        nested=model.nested,
        params={key: float(value) for key, value in model.params.items()},
    )


def compare_alternatives(
    degrees: DegreeSequence | Iterable[int] | np.ndarray,
    fit: PowerLawFit,
    significance: float = 0.1,
    alternatives: Iterable[str] = tuple(Alternative.values),
) -> list[AlternativeComparison]:
    """One comparison row per alternative; a failed fit yields a row with `error` set."""
    values = as_degrees(degrees)
    tail = values[values >= fit.xmin].astype(float)
    rows = []
    for alternative in alternatives:
        model_class = ALTERNATIVE_MODELS[alternative]
        try:
            model = model_class.fit(tail, fit.xmin, alpha=fit.alpha)
            rows.append(compare_models(tail, fit, model, significance))
        except (FitFailure, ArithmeticError, ValueError) as exc:
            logger.warning('%s fit failed: %s', alternative, exc)
            rows.append(AlternativeComparison(
                alternative=str(alternative), logratio=None, pvalue=None, verdict=None,
                nested=alternative in NESTED_ALTERNATIVES, error=f'{type(exc).__name__}: {exc}',
            ))
    return rows
