import hashlib
import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any

from django.conf import settings

from graphs.measures import TransitivityMode
from rewire.plan import RewireMode, RewirePlan
from smallworld.report import OmegaThresholds

from .exceptions import InvalidConfig
from .forms import RunConfigForm


@dataclass(frozen=True)
class RunConfig:
    corpus: Path
    out: Path
    seed: int = 0
    workers: int = 1
    swaps_per_edge: int = 10
    lattice_swaps_per_edge: int = 20
    connectivity_guard: bool = True
    realizations: int = 8
    bootstrap: int = 1000
    gof_threshold: float = 0.1
    significance: float = 0.1
    omega_band: float = 0.5
    degenerate_ratio_l: float = 0.5
    degenerate_ratio_t: float = 0.1
    size_cap_nodes: int = 50_000
    size_cap_edges: int = 500_000
    transitivity_mode: str = TransitivityMode.MEAN_LOCAL
    tail_floor: int = 10
    label_diagnostic: bool = False
    classes_file: str = 'classes.json'

    def rewire_plan(self, seed: int) -> RewirePlan:
        return RewirePlan(
            mode=RewireMode.RANDOMIZE,
            swaps_per_edge=self.swaps_per_edge,
            seed=seed,
            connectivity_guard=self.connectivity_guard,
        )

    def lattice_plan(self) -> RewirePlan:
        return RewirePlan(
            mode=RewireMode.LATTICIZE,
            swaps_per_edge=self.lattice_swaps_per_edge,
            connectivity_guard=self.connectivity_guard,
        )

    @property
    def thresholds(self) -> OmegaThresholds:
        return OmegaThresholds(
            band=self.omega_band,
            degenerate_ratio_l=self.degenerate_ratio_l,
            degenerate_ratio_t=self.degenerate_ratio_t,
        )

    def metadata(self) -> dict[str, Any]:
        """Settings that shape the results, written next to them."""
        data = {key: value for key, value in asdict(self).items() if key not in ('corpus', 'out', 'workers')}
        data['transitivity_mode'] = str(self.transitivity_mode)
        data['alternatives_compared_on'] = 'tail (x >= xmin)'
        data['seed_derivation'] = 'seed + sha256(network id) mod 2^32'
        return data


CONFIG_KEYS = {f.name for f in fields(RunConfig)}


def settings_defaults() -> dict[str, Any]:
    return {key.lower(): value for key, value in settings.NETPROFILER.items()}


def read_config_file(path: Path | str) -> dict[str, Any]:
    """JSON object whose keys mirror the command-line flags."""
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidConfig(f'cannot read config file {path}: {exc}') from exc
    if not isinstance(data, dict):
        raise InvalidConfig(f'config file {path} must hold a JSON object')
    normalized = {key.replace('-', '_'): value for key, value in data.items()}
    unknown = sorted(set(normalized) - CONFIG_KEYS)
    if unknown:
        raise InvalidConfig(f'unknown config keys: {", ".join(unknown)}')
    return normalized


def build_run_config(overrides: dict[str, Any], config_file: Path | str | None = None) -> RunConfig:
    """Layer settings defaults, then the config file, then explicit values (None means unset)."""
    data = {key: value for key, value in settings_defaults().items() if key in CONFIG_KEYS}
    if config_file:
        data.update(read_config_file(config_file))
    data.update({key: value for key, value in overrides.items() if value is not None and key in CONFIG_KEYS})
    form = RunConfigForm(data)
    if not form.is_valid():
        problems = '; '.join(f'{field}: {" ".join(errors)}' for field, errors in form.errors.items())
        raise InvalidConfig(problems)
    return RunConfig(**form.cleaned_data)


def network_seed(base_seed: int, network_id: str) -> int:
    """Per-network seed independent of which other files are in the corpus."""
    digest = int.from_bytes(hashlib.sha256(network_id.encode('utf-8')).digest(), 'big')
    return (base_seed + digest % 2 ** 32) % 2 ** 63
