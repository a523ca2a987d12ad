from dataclasses import dataclass, field
from typing import Any

from django.db import models

from degreedist.results import Alternative, DegreeAnalysis
from ingest.raw import PreprocessLog
from smallworld.report import SmallWorldReport


class SystemClass(models.TextChoices):
    BIOLOGICAL = 'biological', 'Biological'
    SOCIAL_INTERACTION = 'social-interaction', 'Social interaction'
    TROPHIC = 'trophic', 'Trophic'
    BIBLIOGRAPHIC = 'bibliographic', 'Bibliographic'
    INSTITUTIONAL = 'institutional', 'Institutional'
    PROGRAM = 'program', 'Program'
    OTHER = 'other', 'Other'


SMALLWORLD_COLUMNS = ['L', 'T', 'L_A', 'T_T', 'ratio_L', 'ratio_T', 'omega', 'smallworld_class', 'realizations']
DEGREE_COLUMNS = (
    ['alpha', 'xmin', 'ntail', 'ks', 'low_confidence', 'gof_pvalue']
    + [f'{alt}_{suffix}' for alt in Alternative.values for suffix in ('logratio', 'pvalue', 'verdict')]
    + ['degree_class']
)
RECORD_COLUMNS = (
    ['id', 'source', 'system_class', 'n', 'm', 'giant_component', 'seed', 'preprocess']
    + SMALLWORLD_COLUMNS
    + DEGREE_COLUMNS
    + ['skip_reasons']
)


@dataclass
class NetworkRecord:
    """Everything measured about one input file."""
    id: str
    source: str
    system_class: str = SystemClass.OTHER
    seed: int = 0
    n: int | None = None
    m: int | None = None
    giant_component: bool = False
    preprocess: PreprocessLog = field(default_factory=PreprocessLog)
    smallworld: SmallWorldReport | None = None
    degrees: DegreeAnalysis | None = None
    # (degree, node count) pairs of the analysed graph, for the CCDF tables
    degree_histogram: list[tuple[int, int]] = field(default_factory=list)
    skip_reasons: list[str] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.system_class not in SystemClass.values:
            raise ValueError(f'unknown system class {self.system_class!r}')

    def skip(self, reason: str) -> None:
        self.skip_reasons.append(reason)

    @property
    def completed(self) -> bool:
        return self.smallworld is not None or self.degrees is not None

    @property
    def is_valid(self) -> bool:
        return self.completed or bool(self.skip_reasons)

    def degree_values(self) -> list[int]:
        return [degree for degree, count in self.degree_histogram for _ in range(count)]

    def to_row(self) -> dict[str, Any]:
        row = {
            'id': self.id,
            'source': self.source,
            'system_class': str(self.system_class),
            'n': self.n,
            'm': self.m,
            'giant_component': self.giant_component,
            'seed': self.seed,
            'preprocess': self.preprocess.summary(),
        }
        row.update(dict.fromkeys(SMALLWORLD_COLUMNS + DEGREE_COLUMNS))
        if self.smallworld is not None:
            smallworld = self.smallworld.to_row()
            smallworld.pop('seed')
            smallworld['smallworld_class'] = smallworld.pop('classification')
            row.update(smallworld)
        if self.degrees is not None:
            row.update(self.degrees.to_row())
        row['skip_reasons'] = ' | '.join(self.skip_reasons)
        return row

    def to_dict(self) -> dict[str, Any]:
        return {
            'id': self.id,
            'source': self.source,
            'system_class': str(self.system_class),
            'seed': self.seed,
            'n': self.n,
            'm': self.m,
            'giant_component': self.giant_component,
            'preprocess': self.preprocess.to_dict(),
            'smallworld': self.smallworld.to_dict() if self.smallworld else None,
            'degrees': self.degrees.to_dict() if self.degrees else None,
            'degree_histogram': [list(pair) for pair in self.degree_histogram],
            'skip_reasons': list(self.skip_reasons),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'NetworkRecord':
        return cls(
            id=data['id'],
            source=data['source'],
            system_class=data.get('system_class', SystemClass.OTHER),
            seed=data.get('seed', 0),
            n=data.get('n'),
            m=data.get('m'),
            giant_component=data.get('giant_component', False),
            preprocess=PreprocessLog.from_dict(data.get('preprocess') or {}),
            smallworld=SmallWorldReport.from_dict(data['smallworld']) if data.get('smallworld') else None,
            degrees=DegreeAnalysis.from_dict(data['degrees']) if data.get('degrees') else None,
            degree_histogram=[(int(d), int(c)) for d, c in data.get('degree_histogram', [])],
            skip_reasons=list(data.get('skip_reasons', [])),
        )
