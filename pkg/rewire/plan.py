from dataclasses import dataclass, replace

from django.db import models

from graphs.exceptions import InvalidParam


class RewireMode(models.TextChoices):
    RANDOMIZE = 'randomize', 'Randomize'
    LATTICIZE = 'latticize', 'Latticize'


DEFAULT_SWAPS_PER_EDGE = {
    RewireMode.RANDOMIZE: 10,
    RewireMode.LATTICIZE: 20,
}


@dataclass(frozen=True)
class RewirePlan:
    """How one rewiring run is performed.

    `swaps_per_edge=None` means the default for the mode; the run attempts
    `swaps_per_edge * m` swaps in total.
    """
    mode: str = RewireMode.RANDOMIZE
    swaps_per_edge: int | None = None
    seed: int = 0
    connectivity_guard: bool = True

    def __post_init__(self) -> None:
        if self.mode not in RewireMode.values:
            raise InvalidParam(f'unknown rewiring mode {self.mode!r}')
        if self.swaps_per_edge is not None and self.swaps_per_edge < 1:
            raise InvalidParam(f'swaps per edge must be >= 1, got {self.swaps_per_edge}')

    @property
    def effective_swaps_per_edge(self) -> int:
        if self.swaps_per_edge is None:
            return DEFAULT_SWAPS_PER_EDGE[RewireMode(self.mode)]
        return self.swaps_per_edge

    def attempts(self, m: int) -> int:
        return self.effective_swaps_per_edge * m

    def with_seed(self, seed: int) -> 'RewirePlan':
        return replace(self, seed=seed)

    def with_mode(self, mode: str) -> 'RewirePlan':
        return replace(self, mode=mode)
