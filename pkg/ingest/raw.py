from dataclasses import dataclass, field
from typing import Any

from graphs.graph import Graph


@dataclass(frozen=True)
class RawEdge:
    u: int
    v: int
    directed: bool = False
    weight: float | None = None
    layer: str | None = None


@dataclass
class RawNetwork:
    """Network as read from a file, before any normalization."""
    labels: list[str]
    edges: list[RawEdge] = field(default_factory=list)
    # node index -> side (0 or 1), only for two-mode networks
    sides: dict[int, int] | None = None
    source_format: str = ''

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def layers(self) -> list[str]:
        """Distinct layer tags in first-appearance order."""
        seen: dict[str, None] = {}
        for edge in self.edges:
            if edge.layer is not None:
                seen.setdefault(edge.layer, None)
        return list(seen)

    @property
    def is_multiplex(self) -> bool:
        return len(self.layers) > 1

    @property
    def is_bipartite(self) -> bool:
        return self.sides is not None

    @classmethod
    def from_graph(cls, graph: Graph, labels: list[str] | None = None) -> 'RawNetwork':
        labels = labels if labels is not None else [str(i) for i in range(graph.n)]
        return cls(labels=list(labels), edges=[RawEdge(u, v) for u, v in graph.sorted_edges()])


REPEATABLE_STEPS = {'remove-loops', 'remove-multiedges', 'remove-isolates'}


@dataclass
class PreprocessLog:
    """Ordered record of the normalization applied to one network."""
    steps: list[dict[str, Any]] = field(default_factory=list)
    # original label of each node of the output graph, by index
    labels: list[str] = field(default_factory=list)

    def add(self, step: str, **details: Any) -> None:
        if step not in REPEATABLE_STEPS and any(s['step'] == step for s in self.steps):
            raise ValueError(f'step {step!r} already recorded')
        for key, value in details.items():
            if key == 'count' and value < 0:
                raise ValueError(f'negative count for {step!r}')
        self.steps.append({'step': step, **details})

    def count(self, step: str) -> int:
        return sum(s.get('count', 0) for s in self.steps if s['step'] == step)

    def has(self, step: str) -> bool:
        return any(s['step'] == step for s in self.steps)

    def extend(self, other: 'PreprocessLog') -> None:
        for step in other.steps:
            self.add(**step)
        self.labels = list(other.labels)

    def summary(self) -> str:
        """Compact `step:detail;...` form for CSV cells."""
        parts = []
        for s in self.steps:
            details = ','.join(f'{k}={v}' for k, v in s.items() if k != 'step')
            parts.append(f"{s['step']}({details})" if details else s['step'])
        return ';'.join(parts)

    def to_dict(self) -> dict[str, Any]:
        return {'steps': [dict(s) for s in self.steps], 'labels': list(self.labels)}

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> 'PreprocessLog':
        return cls(steps=[dict(s) for s in data.get('steps', [])], labels=list(data.get('labels', [])))
