from dataclasses import asdict, dataclass, field
from typing import Any

from django.db import models

from graphs.exceptions import InvalidParam


class Alternative(models.TextChoices):
    EXPONENTIAL = 'exponential', 'Exponential'
    LOGNORMAL = 'log-normal', 'Log-normal'
    STRETCHED_EXPONENTIAL = 'stretched-exponential', 'Stretched exponential'
    POISSON = 'poisson', 'Poisson'
    POWERLAW_CUTOFF = 'powerlaw-cutoff', 'Power law with exponential cutoff'


NESTED_ALTERNATIVES = {Alternative.POWERLAW_CUTOFF}


class Verdict(models.TextChoices):
    FAVORS_POWERLAW = 'favors-powerlaw', 'Favors power law'
    FAVORS_ALTERNATIVE = 'favors-alternative', 'Favors alternative'
    UNDECIDED = 'undecided', 'Undecided'


class DegreeClass(models.TextChoices):
    IMPROBABLE = 'Improbable', 'Improbable'
    MODERATE = 'Moderate', 'Moderate'
    PROBABLE = 'Probable', 'Probable'
    CUTOFF = 'Cutoff', 'Cutoff'


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    xmin: int
    ntail: int
    ks: float
    loglik: float
    n: int
    # tail smaller than the configured floor
    low_confidence: bool = False

    def __post_init__(self) -> None:
        if not self.alpha > 1:
            raise InvalidParam(f'alpha must exceed 1, got {self.alpha}')
        if self.xmin < 1:
            raise InvalidParam(f'xmin must be >= 1, got {self.xmin}')
        if self.ntail < 2:
            raise InvalidParam(f'tail must hold at least 2 values, got {self.ntail}')
        if not 0.0 <= self.ks <= 1.0:
            raise InvalidParam(f'KS distance must lie in [0, 1], got {self.ks}')

    @property
    def tail_fraction(self) -> float:
        return self.ntail / self.n


@dataclass(frozen=True)
class GofResult:
    pvalue: float
    bootstraps: int
    observed_ks: float


@dataclass(frozen=True)
class AlternativeComparison:
    alternative: str
    logratio: float | None
    pvalue: float | None
    verdict: str | None
    nested: bool = False
    params: dict[str, float] = field(default_factory=dict)
    error: str | None = None

    @property
    def failed(self) -> bool:
        return self.error is not None


@dataclass
class DegreeAnalysis:
    fit: PowerLawFit
    gof: GofResult
    comparisons: list[AlternativeComparison]
    classification: str

    def comparison(self, alternative: str) -> AlternativeComparison | None:
        return next((c for c in self.comparisons if c.alternative == alternative), None)

    def to_dict(self) -> dict[str, Any]:
        return {
            'fit': asdict(self.fit),
            'gof': asdict(self.gof),
            'comparisons': [asdict(c) for c in self.comparisons],
            'classification': str(self.classification),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'DegreeAnalysis':
        return cls(
            fit=PowerLawFit(**data['fit']),
            gof=GofResult(**data['gof']),
            comparisons=[AlternativeComparison(**c) for c in data['comparisons']],
            classification=data['classification'],
        )

    def to_row(self) -> dict[str, Any]:
        row = {
            'alpha': self.fit.alpha,
            'xmin': self.fit.xmin,
            'ntail': self.fit.ntail,
            'ks': self.fit.ks,
            'low_confidence': self.fit.low_confidence,
            'gof_pvalue': self.gof.pvalue,
        }
        for alternative in Alternative.values:
            comparison = self.comparison(alternative)
            row[f'{alternative}_logratio'] = comparison.logratio if comparison else None
            row[f'{alternative}_pvalue'] = comparison.pvalue if comparison else None
            row[f'{alternative}_verdict'] = comparison.verdict if comparison else None
        row['degree_class'] = str(self.classification)
        return row
