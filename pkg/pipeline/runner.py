"""Batch analysis of a corpus directory.

Each network is handled end-to-end by one worker; records are gathered and
sorted by id, so nothing depends on completion order.
"""
import json
import logging
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from degreedist.analysis import analyze_degrees
from graphs.exceptions import NetProfilerError
from graphs.measures import degree_sequence, giant_component
from ingest.loader import is_network_file, load_network
from smallworld.omega import omega

from .config import RunConfig, network_seed
from .exceptions import EmptyCorpus
from .records import NetworkRecord, SystemClass

logger = logging.getLogger(__name__)

SIZE_CAP_REASON = 'omega: size-cap'


@dataclass(frozen=True)
class NetworkJob:
    path: Path
    id: str
    source: str
    system_class: str


@dataclass
class CorpusReport:
    records: list[NetworkRecord]
    config: RunConfig

    @property
    def completed(self) -> int:
        return sum(record.completed for record in self.records)

    @property
    def skipped(self) -> int:
        return sum(bool(record.skip_reasons) for record in self.records)

    def counts_by_class(self) -> dict[str, int]:
        counts = Counter(str(record.system_class) for record in self.records)
        return {value: counts[value] for value in SystemClass.values if counts[value]}


def _reason(stage: str, exc: BaseException) -> str:
    return f'{stage}: {type(exc).__name__}: {exc}'


def _stage_failed(record: NetworkRecord, stage: str, exc: Exception) -> None:
    """Record a failed stage; the other stages of the network still run."""
    record.skip(_reason(stage, exc))
    if isinstance(exc, (NetProfilerError, OSError)):
        logger.warning('%s: %s', record.id, record.skip_reasons[-1])
    else:
        logger.exception('%s: unexpected failure in the %s stage', record.id, stage)


def discover(corpus: Path) -> list[Path]:
    return sorted(path for path in corpus.iterdir() if is_network_file(path))


def read_system_classes(path: Path) -> dict[str, str]:
    """id -> system class mapping; unknown classes fall back to 'other'."""
    if not path.exists():
        return {}
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except (OSError, json.JSONDecodeError) as exc:
        logger.warning('ignoring unreadable system-class file %s: %s', path, exc)
        return {}
    classes = {}
    for network_id, value in data.items():
        if value not in SystemClass.values:
            logger.warning('%s: unknown system class %r, using %r', network_id, value, SystemClass.OTHER.value)
            value = SystemClass.OTHER
        classes[str(network_id)] = value
    return classes


def plan_jobs(config: RunConfig) -> list[NetworkJob]:
    files = discover(config.corpus)
    if not files:
        raise EmptyCorpus(f'no network files in {config.corpus}')
    classes = read_system_classes(config.corpus / config.classes_file)
    stems = Counter(path.stem for path in files)
    jobs = []
    for path in files:
        # a.net next to a.graphml keeps both, under their file names
        network_id = path.stem if stems[path.stem] == 1 else path.name
        jobs.append(NetworkJob(
            path=path,
            id=network_id,
            source=path.relative_to(config.corpus).as_posix(),
            system_class=classes.get(network_id, SystemClass.OTHER),
        ))
    return jobs


def analyze_network(job: NetworkJob, config: RunConfig) -> NetworkRecord:
    record = NetworkRecord(
        id=job.id,
        source=job.source,
        system_class=job.system_class,
        seed=network_seed(config.seed, job.id),
    )
    started = time.monotonic()
    try:
        graph, log = load_network(job.path)
    except Exception as exc:
        _stage_failed(record, 'load', exc)
        return record

    graph, record.giant_component = giant_component(graph)
    record.preprocess = log
    record.n, record.m = graph.n, graph.m
    degrees = degree_sequence(graph)
    record.degree_histogram = sorted(Counter(degrees.values).items())

    try:
        record.degrees = analyze_degrees(
            degrees,
            bootstraps=config.bootstrap,
            seed=record.seed,
            gof_threshold=config.gof_threshold,
            significance=config.significance,
            tail_floor=config.tail_floor,
        )
    except Exception as exc:
        _stage_failed(record, 'degrees', exc)

    if graph.n > config.size_cap_nodes or graph.m > config.size_cap_edges:
        record.skip(SIZE_CAP_REASON)
        logger.warning('%s: omega skipped, %r exceeds the size cap', job.id, graph)
    else:
        try:
            record.smallworld = omega(
                graph,
                config.rewire_plan(record.seed),
                config.realizations,
                lattice_plan=config.lattice_plan(),
                transitivity_mode=config.transitivity_mode,
                thresholds=config.thresholds,
                label_diagnostic=config.label_diagnostic,
            )
        except Exception as exc:
            _stage_failed(record, 'omega', exc)

    logger.info(
        '%s: %r omega=%s degree class=%s in %.2fs',
        job.id, graph,
        record.smallworld.classification if record.smallworld else '-',
        record.degrees.classification if record.degrees else '-',
        time.monotonic() - started,
    )
    return record


def analyze_job(job: NetworkJob, config: RunConfig) -> NetworkRecord:
    """analyze_network that turns any failure into a skip reason."""
    try:
        return analyze_network(job, config)
    except Exception as exc:
        logger.exception('%s: unexpected failure', job.id)
        record = NetworkRecord(id=job.id, source=job.source, system_class=job.system_class,
                               seed=network_seed(config.seed, job.id))
        record.skip(_reason('error', exc))
        return record


def run_corpus(config: RunConfig) -> CorpusReport:
    jobs = plan_jobs(config)
    logger.info('analyzing %d network(s) from %s with %d worker(s)', len(jobs), config.corpus, config.workers)
    started = time.monotonic()
    if config.workers <= 1 or len(jobs) == 1:
        records = [analyze_job(job, config) for job in jobs]
    else:
        records = []
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = {job.id: pool.submit(analyze_job, job, config) for job in jobs}
            for job in jobs:
                try:
                    records.append(futures[job.id].result())
                except Exception as exc:
                    # the worker process itself died
                    logger.error('%s: worker failed: %s', job.id, exc)
                    record = NetworkRecord(id=job.id, source=job.source, system_class=job.system_class,
                                           seed=network_seed(config.seed, job.id))
                    record.skip(_reason('error', exc))
                    records.append(record)
    records.sort(key=lambda record: record.id)
    report = CorpusReport(records=records, config=config)
    logger.info(
        'corpus done: %d record(s), %d completed, %d with skip reasons in %.1fs',
        len(records), report.completed, report.skipped, time.monotonic() - started,
    )
    return report
