import math
from dataclasses import asdict, dataclass, field
from typing import Any

from django.db import models

from graphs.measures import TransitivityMode


class SmallWorldClass(models.TextChoices):
    LATTICE_LIKE = 'lattice-like', 'Lattice-like'
    SMALL_WORLD = 'small-world', 'Small-world'
    RANDOM_LIKE = 'random-like', 'Random-like'
    DEGENERATE = 'degenerate', 'Degenerate (grid-like)'


@dataclass(frozen=True)
class OmegaThresholds:
    band: float = 0.5
    degenerate_ratio_l: float = 0.5
    degenerate_ratio_t: float = 0.1


@dataclass
class SmallWorldReport:
    path_length: float
    transitivity: float
    random_path_length: float
    lattice_transitivity: float
    ratio_l: float
    ratio_t: float
    omega: float
    realizations: int
    seed: int
    transitivity_mode: str = TransitivityMode.MEAN_LOCAL
    classification: str = ''
    random_path_lengths: list[float] = field(default_factory=list)
    lattice_transitivities: list[float] = field(default_factory=list)
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        data = asdict(self)
        data['transitivity_mode'] = str(self.transitivity_mode)
        data['classification'] = str(self.classification)
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'SmallWorldReport':
        return cls(**data)

    def to_row(self) -> dict[str, Any]:
        """Flat columns for the per-network CSV."""
        return {
            'L': self.path_length,
            'T': self.transitivity,
            'L_A': self.random_path_length,
            'T_T': self.lattice_transitivity,
            'ratio_L': self.ratio_l,
            'ratio_T': self.ratio_t,
            'omega': self.omega,
            'classification': str(self.classification),
            'realizations': self.realizations,
            'seed': self.seed,
        }

    def is_consistent(self) -> bool:
        return math.isclose(self.omega, self.ratio_l - self.ratio_t, rel_tol=0.0, abs_tol=1e-12)


def classify_omega(report: SmallWorldReport, thresholds: OmegaThresholds = OmegaThresholds()) -> str:
    """Place a report in the lattice / small-world / random spectrum.

    Inside the small-world band, a report whose ratios are both small is
    grid-like rather than small-world.
    """
    if report.omega < -thresholds.band:
        return SmallWorldClass.LATTICE_LIKE
    if report.omega > thresholds.band:
        return SmallWorldClass.RANDOM_LIKE
    if report.ratio_l < thresholds.degenerate_ratio_l and report.ratio_t < thresholds.degenerate_ratio_t:
        return SmallWorldClass.DEGENERATE
    return SmallWorldClass.SMALL_WORLD
