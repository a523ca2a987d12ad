"""Plot-ready tables and the corpus summary.

Rendering is left to external tools; every file here is CSV or JSON.
"""
import csv
import json
import logging
import math
from collections import Counter
from pathlib import Path
from typing import Any, Iterable

import numpy as np
from scipy import stats

from degreedist.analysis import ccdf_table
from degreedist.results import DegreeClass
from smallworld.report import SmallWorldClass

from .records import RECORD_COLUMNS, NetworkRecord, SystemClass

logger = logging.getLogger(__name__)

# omega histogram: 0.1-wide bins over [-2, 2]
HISTOGRAM_RANGE = 2.0
BINS_PER_UNIT = 10
ISO_OMEGA = (-0.5, 0.0, 0.5)
SCATTER_COLUMNS = (
    ['id', 'ratio_L', 'ratio_T', 'omega', 'smallworld_class', 'degree_class', 'system_class']
    + [f'iso_ratio_T_omega_{reference:+.1f}' for reference in ISO_OMEGA]
)
CLASS_COLUMNS = ['system_class', 'networks', 'omega_measured', 'small_world'] + DegreeClass.values


def _cell(value: Any) -> Any:
    if isinstance(value, np.generic):
        return value.item()
    return value


def _write_csv(path: Path, columns: list[str], rows: Iterable[dict[str, Any]]) -> Path:
    with path.open('w', newline='', encoding='utf-8') as handle:
        writer = csv.DictWriter(handle, fieldnames=columns, lineterminator='\n')
        writer.writeheader()
        for row in rows:
            writer.writerow({key: _cell(value) for key, value in row.items()})
    return path


def _fraction(count: int, total: int) -> float:
    return count / total if total else 0.0


def omega_histogram(omegas: list[float]) -> list[dict[str, Any]]:
    """Counts per 0.1-wide bin over [-2, 2]; bins are half-open except the last.

    Bins are picked by integer index so values on an edge, like 0.3, land in
    the bin that starts there.
    """
    values = np.asarray(omegas, dtype=float)
    values = values[(values >= -HISTOGRAM_RANGE) & (values <= HISTOGRAM_RANGE)]
    offset = int(HISTOGRAM_RANGE * BINS_PER_UNIT)
    bins = 2 * offset
    index = np.floor(np.round(values * BINS_PER_UNIT, 9)).astype(np.int64) + offset
    counts = np.bincount(np.minimum(index, bins - 1), minlength=bins)
    return [
        {
            'bin_start': f'{(i - offset) / BINS_PER_UNIT:.1f}',
            'bin_end': f'{(i + 1 - offset) / BINS_PER_UNIT:.1f}',
            'count': int(count),
        }
        for i, count in enumerate(counts.tolist())
    ]


def scatter_rows(records: list[NetworkRecord]) -> list[dict[str, Any]]:
    """One point per measured network in the (ratio_L, ratio_T) plane.

    The iso columns give the ratio_T a network with the same ratio_L would
    need to sit exactly on the omega = reference curve.
    """
    rows = []
    for record in records:
        if record.smallworld is None:
            continue
        report = record.smallworld
        row = {
            'id': record.id,
            'ratio_L': report.ratio_l,
            'ratio_T': report.ratio_t,
            'omega': report.omega,
            'smallworld_class': str(report.classification),
            'degree_class': str(record.degrees.classification) if record.degrees else None,
            'system_class': str(record.system_class),
        }
        for column, reference in zip(SCATTER_COLUMNS[-len(ISO_OMEGA):], ISO_OMEGA):
            row[column] = report.ratio_l - reference
        rows.append(row)
    return rows


def degree_class_proportions(records: list[NetworkRecord]) -> dict[str, float]:
    counts = Counter(str(r.degrees.classification) for r in records if r.degrees is not None)
    classified = sum(counts.values())
    return {value: _fraction(counts[value], classified) for value in DegreeClass.values}


def class_breakdown(records: list[NetworkRecord]) -> list[dict[str, Any]]:
    rows = []
    for system_class in SystemClass.values:
        members = [r for r in records if r.system_class == system_class]
        if not members:
            continue
        degree_counts = Counter(str(r.degrees.classification) for r in members if r.degrees is not None)
        row = {
            'system_class': system_class,
            'networks': len(members),
            'omega_measured': sum(r.smallworld is not None for r in members),
            'small_world': sum(
                r.smallworld is not None and r.smallworld.classification == SmallWorldClass.SMALL_WORLD
                for r in members
            ),
        }
        row.update({value: degree_counts[value] for value in DegreeClass.values})
        rows.append(row)
    return rows


def _shapiro_pvalue(values: np.ndarray) -> float | None:
    if values.size < 3 or np.ptp(values) == 0:
        return None
    pvalue = float(stats.shapiro(values).pvalue)
    return pvalue if math.isfinite(pvalue) else None


def summarize(records: list[NetworkRecord], omega_band: float = 0.5, metadata: dict[str, Any] | None = None) -> dict[str, Any]:
    measured = [r.smallworld for r in records if r.smallworld is not None]
    omegas = np.asarray([s.omega for s in measured], dtype=float)
    ratio_l = np.asarray([s.ratio_l for s in measured], dtype=float)
    ratio_t = np.asarray([s.ratio_t for s in measured], dtype=float)
    smallworld_counts = Counter(str(s.classification) for s in measured)
    degree_counts = Counter(str(r.degrees.classification) for r in records if r.degrees is not None)

    return {
        'networks': len(records),
        'completed': sum(r.completed for r in records),
        'with_skip_reasons': sum(bool(r.skip_reasons) for r in records),
        'giant_component_extracted': sum(r.giant_component for r in records),
        'smallworld': {
            'measured': len(measured),
            'omega_band': omega_band,
            'band_fraction': _fraction(int(np.sum(np.abs(omegas) <= omega_band)), len(measured)),
            'classes': {value: smallworld_counts[value] for value in SmallWorldClass.values},
            'omega_mean': float(omegas.mean()) if omegas.size else None,
            'omega_std': float(omegas.std()) if omegas.size else None,
            'omega_shapiro_pvalue': _shapiro_pvalue(omegas),
            'omega_outside_histogram': int(np.sum((omegas < -HISTOGRAM_RANGE) | (omegas > HISTOGRAM_RANGE))),
            'ratio_L_near_one_fraction': _fraction(int(np.sum((ratio_l >= 0.9) & (ratio_l <= 1.1))), len(measured)),
            'ratio_L_below_one_fraction': _fraction(int(np.sum(ratio_l < 1.0)), len(measured)),
            'ratio_T_near_one_fraction': _fraction(int(np.sum((ratio_t >= 0.5) & (ratio_t <= 1.5))), len(measured)),
        },
        'degrees': {
            'classified': sum(degree_counts.values()),
            'counts': {value: degree_counts[value] for value in DegreeClass.values},
            'proportions': degree_class_proportions(records),
        },
        'by_system_class': {row.pop('system_class'): row for row in class_breakdown(records)},
        'metadata': metadata or {},
    }


def emit_reports(
    records: list[NetworkRecord],
    out: Path | str,
    *,
    omega_band: float = 0.5,
    metadata: dict[str, Any] | None = None,
) -> list[Path]:
    """Write every report file under `out` and return their paths."""
    out = Path(out)
    out.mkdir(parents=True, exist_ok=True)
    records = sorted(records, key=lambda record: record.id)
    written = [
        _write_csv(out / 'records.csv', RECORD_COLUMNS, (r.to_row() for r in records)),
        _write_csv(
            out / 'omega_hist.csv',
            ['bin_start', 'bin_end', 'count'],
            omega_histogram([r.smallworld.omega for r in records if r.smallworld is not None]),
        ),
        _write_csv(out / 'scatter.csv', SCATTER_COLUMNS, scatter_rows(records)),
        _write_csv(out / 'classes.csv', CLASS_COLUMNS, class_breakdown(records)),
    ]

    jsonl = out / 'records.jsonl'
    with jsonl.open('w', encoding='utf-8') as handle:
        for record in records:
            handle.write(json.dumps(record.to_dict(), sort_keys=True) + '\n')
    written.append(jsonl)

    summary = out / 'summary.json'
    summary.write_text(
        json.dumps(summarize(records, omega_band, metadata), indent=2, sort_keys=True) + '\n',
        encoding='utf-8',
    )
    written.append(summary)

    ccdf_dir = out / 'ccdf'
    ccdf_dir.mkdir(exist_ok=True)
    for record in records:
        if not record.degree_histogram:
            continue
        fit = record.degrees.fit if record.degrees else None
        written.append(_write_csv(
            ccdf_dir / f'{record.id}.csv',
            ['degree', 'ccdf', 'fitted_ccdf'],
            ccdf_table(record.degree_values(), fit),
        ))

    logger.info('wrote %d report file(s) to %s', len(written), out)
    return written
