import io
import json
import logging
import shutil
import tempfile
from pathlib import Path
from unittest import mock

from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase, TestCase, tag

from core.logs import APP_LOGGERS, apply_verbosity
from degreedist.results import DegreeAnalysis, DegreeClass, GofResult, PowerLawFit
from graphs.graph import Graph
from graphs.pajek import write_pajek
from smallworld.report import SmallWorldClass, SmallWorldReport
from synth.generators import watts_strogatz

from .config import RunConfig, build_run_config, network_seed
from .exceptions import EmptyCorpus, InvalidConfig
from .models import AnalyzedNetwork
from .records import RECORD_COLUMNS, NetworkRecord, SystemClass
from .reports import degree_class_proportions, emit_reports, omega_histogram, scatter_rows, summarize
from .runner import SIZE_CAP_REASON, run_corpus
from .store import load_records, store_records

MALFORMED_PAJEK = '*Vertices 3\n*Edges\n1 7\n'


def smallworld_report(omega_value=0.0, ratio_l=1.0, ratio_t=1.0, classification=SmallWorldClass.SMALL_WORLD):
    return SmallWorldReport(
        path_length=2.0, transitivity=0.4, random_path_length=2.0 * ratio_l, lattice_transitivity=0.5,
        ratio_l=ratio_l, ratio_t=ratio_t, omega=omega_value, realizations=2, seed=7,
        classification=classification,
    )


def degree_analysis(classification=DegreeClass.PROBABLE):
    return DegreeAnalysis(
        fit=PowerLawFit(alpha=2.5, xmin=2, ntail=10, ks=0.1, loglik=-20.0, n=20),
        gof=GofResult(pvalue=0.5, bootstraps=100, observed_ks=0.1),
        comparisons=[],
        classification=classification,
    )


def make_record(network_id, omega_value=None, degree_class=None, system_class=SystemClass.OTHER, **kwargs):
    record = NetworkRecord(id=network_id, source=f'{network_id}.net', system_class=system_class, n=20, m=40)
    if omega_value is not None:
        record.smallworld = smallworld_report(omega_value, **kwargs)
    if degree_class is not None:
        record.degrees = degree_analysis(degree_class)
        record.degree_histogram = [(1, 4), (2, 10), (3, 6)]
    return record


def fast_config(corpus, out, **overrides):
    values = dict(
        corpus=Path(corpus), out=Path(out), seed=3, realizations=2, bootstrap=10,
        swaps_per_edge=2, lattice_swaps_per_edge=2,
    )
    values.update(overrides)
    return RunConfig(**values)


class CorpusMixin:
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())
        self.corpus = self.tmp / 'corpus'
        self.corpus.mkdir()
        self.out = self.tmp / 'out'

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def write_corpus(self, count=3, n=40):
        for i in range(count):
            write_pajek(watts_strogatz(n, 4, 0.3, seed=i), self.corpus / f'ws{i}.net')


class LoggingConfigTest(SimpleTestCase):
    def test_every_app_logs_through_its_own_logger(self):
        loggers = settings.LOGGING['loggers']
        apps = [app for app in settings.INSTALLED_APPS if not app.startswith('django.')]
        self.assertEqual(sorted(loggers), sorted(apps))
        for name in apps:
            self.assertEqual(loggers[name]['handlers'], ['console'])
            self.assertFalse(loggers[name]['propagate'])

    def test_verbosity_switches_app_loggers(self):
        runner_logger = logging.getLogger('pipeline.runner')
        try:
            apply_verbosity(2)
            self.assertTrue(runner_logger.isEnabledFor(logging.DEBUG))
            apply_verbosity(0)
            self.assertFalse(runner_logger.isEnabledFor(logging.WARNING))
        finally:
            for name in APP_LOGGERS:
                logging.getLogger(name).setLevel(settings.LOGGING['loggers'][name]['level'])


class NetworkSeedTest(SimpleTestCase):
    def test_stable_and_id_dependent(self):
        self.assertEqual(network_seed(0, 'karate'), network_seed(0, 'karate'))
        self.assertNotEqual(network_seed(0, 'karate'), network_seed(0, 'dolphins'))
        self.assertEqual(network_seed(5, 'karate') - network_seed(0, 'karate'), 5)

    def test_range(self):
        self.assertLess(network_seed(2 ** 63 - 1, 'x'), 2 ** 63)
        self.assertGreaterEqual(network_seed(0, ''), 0)


class BuildRunConfigTest(CorpusMixin, SimpleTestCase):
    def test_settings_defaults(self):
        config = build_run_config({'corpus': str(self.corpus), 'out': str(self.out)})
        self.assertEqual(config.swaps_per_edge, 10)
        self.assertEqual(config.lattice_swaps_per_edge, 20)
        self.assertEqual(config.realizations, 8)
        self.assertEqual(config.bootstrap, 1000)
        self.assertEqual(config.size_cap_nodes, 50_000)
        self.assertTrue(config.connectivity_guard)
        self.assertEqual(config.corpus, self.corpus)

    def test_flags_win_over_config_file(self):
        config_file = self.tmp / 'run.json'
        config_file.write_text(json.dumps({'corpus': str(self.corpus), 'out': str(self.out), 'seed': 4, 'omega-band': 0.3}))
        config = build_run_config({'seed': 9, 'workers': None}, config_file)
        self.assertEqual(config.seed, 9)
        self.assertEqual(config.omega_band, 0.3)
        self.assertEqual(config.workers, 1)

    def test_guard_can_be_switched_off(self):
        config = build_run_config({'corpus': str(self.corpus), 'out': str(self.out), 'connectivity_guard': False})
        self.assertFalse(config.connectivity_guard)
        self.assertFalse(config.rewire_plan(1).connectivity_guard)

    def test_invalid_values(self):
        base = {'corpus': str(self.corpus), 'out': str(self.out)}
        for bad in ({'gof_threshold': 1.0}, {'significance': 0.0}, {'size_cap_nodes': 3}, {'workers': 0}):
            with self.subTest(bad=bad), self.assertRaises(InvalidConfig):
                build_run_config({**base, **bad})

    def test_missing_corpus(self):
        with self.assertRaises(InvalidConfig):
            build_run_config({'corpus': str(self.tmp / 'nowhere'), 'out': str(self.out)})

    def test_unknown_config_key(self):
        config_file = self.tmp / 'run.json'
        config_file.write_text(json.dumps({'sead': 1}))
        with self.assertRaises(InvalidConfig):
            build_run_config({}, config_file)

    def test_metadata_records_the_settings(self):
        metadata = fast_config(self.corpus, self.out).metadata()
        self.assertEqual(metadata['bootstrap'], 10)
        self.assertEqual(metadata['transitivity_mode'], 'mean-local')
        self.assertIn('tail', metadata['alternatives_compared_on'])
        self.assertNotIn('corpus', metadata)


class NetworkRecordTest(SimpleTestCase):
    def test_row_has_every_column(self):
        row = make_record('a', 0.1, DegreeClass.CUTOFF).to_row()
        self.assertEqual(list(row), RECORD_COLUMNS)
        self.assertEqual(row['smallworld_class'], 'small-world')
        self.assertEqual(row['degree_class'], 'Cutoff')

    def test_skipped_record_row(self):
        record = make_record('b')
        record.skip('load: ParseError: line 3: bad')
        row = record.to_row()
        self.assertIsNone(row['omega'])
        self.assertIsNone(row['alpha'])
        self.assertTrue(record.is_valid)
        self.assertFalse(record.completed)

    def test_dict_form_restores_the_record(self):
        record = make_record('c', -0.2, DegreeClass.MODERATE, SystemClass.TROPHIC)
        self.assertEqual(NetworkRecord.from_dict(json.loads(json.dumps(record.to_dict()))), record)

    def test_closed_class_vocabulary(self):
        with self.assertRaises(ValueError):
            NetworkRecord(id='x', source='x.net', system_class='economic')


class ReportTablesTest(CorpusMixin, SimpleTestCase):
    def test_histogram_bin(self):
        rows = omega_histogram([0.03])
        self.assertEqual(len(rows), 40)
        hit = [row for row in rows if row['count']]
        self.assertEqual(hit, [{'bin_start': '0.0', 'bin_end': '0.1', 'count': 1}])

    def test_histogram_ignores_values_outside_range(self):
        self.assertEqual(sum(row['count'] for row in omega_histogram([-2.5, 3.0, 1.95])), 1)

    def test_values_on_an_edge_start_their_bin(self):
        rows = omega_histogram([0.1, -0.1, 0.3, 0.5, -2.0, 2.0])
        hit = {row['bin_start']: row['count'] for row in rows if row['count']}
        self.assertEqual(hit, {'-2.0': 1, '-0.1': 1, '0.1': 1, '0.3': 1, '0.5': 1, '1.9': 1})

    def test_scatter_point_on_zero_curve(self):
        row = scatter_rows([make_record('a', 0.0, ratio_l=1.0, ratio_t=1.0)])[0]
        self.assertEqual(row['iso_ratio_T_omega_+0.0'], row['ratio_T'])
        self.assertEqual(row['iso_ratio_T_omega_-0.5'], 1.5)
        self.assertEqual(row['iso_ratio_T_omega_+0.5'], 0.5)

    def test_degree_proportions(self):
        records = [make_record('a', degree_class=DegreeClass.PROBABLE), make_record('b', degree_class=DegreeClass.CUTOFF)]
        self.assertEqual(
            degree_class_proportions(records),
            {'Improbable': 0.0, 'Moderate': 0.0, 'Probable': 0.5, 'Cutoff': 0.5},
        )

    def test_proportions_sum_to_one(self):
        classes = [DegreeClass.IMPROBABLE, DegreeClass.MODERATE, DegreeClass.PROBABLE, DegreeClass.IMPROBABLE, None]
        records = [make_record(str(i), degree_class=c) for i, c in enumerate(classes)]
        self.assertAlmostEqual(sum(degree_class_proportions(records).values()), 1.0)

    def test_summary(self):
        records = [
            make_record('a', 0.1, DegreeClass.PROBABLE, SystemClass.BIOLOGICAL, ratio_l=1.0, ratio_t=0.9),
            make_record('b', -0.9, DegreeClass.IMPROBABLE, SystemClass.BIOLOGICAL,
                        ratio_l=0.3, ratio_t=1.2, classification=SmallWorldClass.LATTICE_LIKE),
            make_record('c', 0.4, None, SystemClass.SOCIAL_INTERACTION, ratio_l=1.05, ratio_t=0.65),
            make_record('d'),
        ]
        records[3].skip('omega: size-cap')
        summary = summarize(records, omega_band=0.5)
        self.assertEqual(summary['networks'], 4)
        self.assertEqual(summary['completed'], 3)
        self.assertAlmostEqual(summary['smallworld']['band_fraction'], 2 / 3)
        self.assertAlmostEqual(summary['smallworld']['ratio_L_near_one_fraction'], 2 / 3)
        self.assertAlmostEqual(summary['smallworld']['ratio_L_below_one_fraction'], 1 / 3)
        self.assertIsNotNone(summary['smallworld']['omega_shapiro_pvalue'])
        self.assertEqual(summary['degrees']['classified'], 2)
        self.assertEqual(summary['by_system_class']['biological']['networks'], 2)
        self.assertEqual(summary['by_system_class']['biological']['small_world'], 1)
        self.assertEqual(summary['by_system_class']['biological']['Improbable'], 1)
        self.assertNotIn('trophic', summary['by_system_class'])

    def test_shapiro_needs_three_values(self):
        summary = summarize([make_record('a', 0.1), make_record('b', 0.2)])
        self.assertIsNone(summary['smallworld']['omega_shapiro_pvalue'])

    def test_emit_reports_writes_every_table(self):
        records = [make_record('b', 0.03, DegreeClass.PROBABLE), make_record('a', 0.2, DegreeClass.CUTOFF)]
        written = emit_reports(records, self.out, metadata={'seed': 3})
        names = {path.relative_to(self.out).as_posix() for path in written}
        self.assertTrue({'records.csv', 'records.jsonl', 'omega_hist.csv', 'scatter.csv', 'summary.json',
                         'classes.csv', 'ccdf/a.csv', 'ccdf/b.csv'} <= names)
        lines = (self.out / 'records.csv').read_text().splitlines()
        self.assertEqual(lines[0].split(','), RECORD_COLUMNS)
        self.assertTrue(lines[1].startswith('a,'))
        summary = json.loads((self.out / 'summary.json').read_text())
        self.assertEqual(summary['metadata'], {'seed': 3})
        ccdf = (self.out / 'ccdf' / 'a.csv').read_text().splitlines()
        self.assertEqual(ccdf[0], 'degree,ccdf,fitted_ccdf')
        self.assertTrue(ccdf[1].startswith('1,1.0,'))


class RunCorpusTest(CorpusMixin, SimpleTestCase):
    def test_valid_corpus(self):
        self.write_corpus(3)
        report = run_corpus(fast_config(self.corpus, self.out))
        self.assertEqual([r.id for r in report.records], ['ws0', 'ws1', 'ws2'])
        self.assertEqual(report.completed, 3)
        for record in report.records:
            self.assertIsNotNone(record.smallworld)
            self.assertIsNotNone(record.degrees)
            self.assertEqual(record.n, 40)
            self.assertEqual(record.seed, network_seed(3, record.id))
        self.assertEqual(report.counts_by_class(), {'other': 3})

    def test_malformed_file_is_isolated(self):
        self.write_corpus(3)
        clean = {r.id: r.to_row() for r in run_corpus(fast_config(self.corpus, self.out)).records}
        (self.corpus / 'broken.net').write_text(MALFORMED_PAJEK)
        report = run_corpus(fast_config(self.corpus, self.out))
        self.assertEqual(len(report.records), 4)
        broken = report.records[0]
        self.assertEqual(broken.id, 'broken')
        self.assertFalse(broken.completed)
        self.assertIn('ParseError', broken.skip_reasons[0])
        for record in report.records[1:]:
            self.assertEqual(record.to_row(), clean[record.id])

    def test_size_cap_skips_omega_only(self):
        self.write_corpus(1)
        record = run_corpus(fast_config(self.corpus, self.out, size_cap_nodes=10)).records[0]
        self.assertIsNone(record.smallworld)
        self.assertIsNotNone(record.degrees)
        self.assertEqual(record.skip_reasons, [SIZE_CAP_REASON])

    def test_unexpected_degree_failure_keeps_omega(self):
        self.write_corpus(1)
        with mock.patch('pipeline.runner.analyze_degrees', side_effect=RuntimeError('boom')):
            record = run_corpus(fast_config(self.corpus, self.out)).records[0]
        self.assertIsNotNone(record.smallworld)
        self.assertIsNone(record.degrees)
        self.assertEqual(record.skip_reasons, ['degrees: RuntimeError: boom'])

    def test_unexpected_omega_failure_keeps_degrees(self):
        self.write_corpus(1)
        with mock.patch('pipeline.runner.omega', side_effect=ZeroDivisionError('float division by zero')):
            record = run_corpus(fast_config(self.corpus, self.out)).records[0]
        self.assertIsNotNone(record.degrees)
        self.assertIsNone(record.smallworld)
        self.assertEqual(record.skip_reasons, ['omega: ZeroDivisionError: float division by zero'])

    def test_disconnected_input_uses_giant_component(self):
        pairs = [(i, (i + 1) % 10) for i in range(10)] + [(i, (i + 2) % 10) for i in range(10)] + [(10, 11), (11, 12)]
        write_pajek(Graph.from_edges(13, pairs), self.corpus / 'split.net')
        record = run_corpus(fast_config(self.corpus, self.out)).records[0]
        self.assertTrue(record.giant_component)
        self.assertEqual(record.n, 10)

    def test_system_classes_from_sidecar(self):
        self.write_corpus(3)
        (self.corpus / 'classes.json').write_text(json.dumps({'ws0': 'biological', 'ws1': 'astrology'}))
        report = run_corpus(fast_config(self.corpus, self.out))
        self.assertEqual([r.system_class for r in report.records], ['biological', 'other', 'other'])

    def test_empty_corpus(self):
        (self.corpus / 'notes.md').write_text('nothing here')
        with self.assertRaises(EmptyCorpus):
            run_corpus(fast_config(self.corpus, self.out))

    def test_worker_count_does_not_change_records(self):
        self.write_corpus(3)
        emit_reports(run_corpus(fast_config(self.corpus, self.out / 'one')).records, self.out / 'one')
        emit_reports(run_corpus(fast_config(self.corpus, self.out / 'two', workers=2)).records, self.out / 'two')
        for name in ('records.csv', 'omega_hist.csv', 'scatter.csv', 'classes.csv'):
            self.assertEqual((self.out / 'one' / name).read_bytes(), (self.out / 'two' / name).read_bytes())

    @tag('slow')
    def test_ten_files_eight_workers_with_one_corrupted(self):
        self.write_corpus(10, n=120)
        config = fast_config(self.corpus, self.out, realizations=4, bootstrap=50)
        emit_reports(run_corpus(config).records, self.out / 'serial')
        emit_reports(run_corpus(fast_config(self.corpus, self.out, realizations=4, bootstrap=50, workers=8)).records,
                     self.out / 'parallel')
        serial = (self.out / 'serial' / 'records.csv').read_bytes()
        self.assertEqual(serial, (self.out / 'parallel' / 'records.csv').read_bytes())

        (self.corpus / 'ws4.net').write_text(MALFORMED_PAJEK)
        emit_reports(run_corpus(config).records, self.out / 'corrupted')
        before = serial.decode().splitlines()
        after = (self.out / 'corrupted' / 'records.csv').read_text().splitlines()
        changed = [i for i, (x, y) in enumerate(zip(before, after)) if x != y]
        self.assertEqual(len(before), len(after))
        self.assertEqual([after[i].split(',')[0] for i in changed], ['ws4'])


class StoreTest(TestCase):
    def test_upsert_by_network_id(self):
        self.assertEqual(store_records([make_record('a', 0.1, DegreeClass.PROBABLE)]), (1, 0))
        self.assertEqual(store_records([make_record('a', -0.7, DegreeClass.CUTOFF), make_record('b', 0.2)]), (1, 1))
        row = AnalyzedNetwork.objects.get(network_id='a')
        self.assertEqual(row.omega, -0.7)
        self.assertEqual(row.degree_class, 'Cutoff')
        self.assertEqual(row.alpha, 2.5)
        self.assertEqual(str(row), 'a')
        self.assertEqual(AnalyzedNetwork.objects.count(), 2)

    def test_load_records(self):
        store_records([
            make_record('b', 0.1, system_class=SystemClass.TROPHIC),
            make_record('a', 0.2, DegreeClass.MODERATE, SystemClass.PROGRAM),
        ])
        self.assertEqual([r.id for r in load_records()], ['a', 'b'])
        loaded = load_records(SystemClass.PROGRAM)
        self.assertEqual(len(loaded), 1)
        self.assertEqual(loaded[0].degrees.classification, 'Moderate')

    def test_skipped_record_has_blank_columns(self):
        record = make_record('z')
        record.skip('load: ParseError: bad')
        store_records([record])
        row = AnalyzedNetwork.objects.get(network_id='z')
        self.assertIsNone(row.omega)
        self.assertEqual(row.smallworld_class, '')
        self.assertEqual(row.to_record().skip_reasons, ['load: ParseError: bad'])


class PipelineCommandTest(CorpusMixin, TestCase):
    def analyze(self, *extra):
        stdout = io.StringIO()
        call_command(
            'analyze', '--corpus', str(self.corpus), '--out', str(self.out), '--seed', '3',
            '--realizations', '2', '--bootstrap', '10', '--swaps-per-edge', '2', '--lattice-swaps-per-edge', '2',
            *extra, stdout=stdout,
        )
        return stdout.getvalue()

    def test_analyze_and_store(self):
        self.write_corpus(2)
        (self.corpus / 'broken.net').write_text(MALFORMED_PAJEK)
        output = self.analyze('--store')
        self.assertIn('2/3 network(s) analyzed', output)
        self.assertIn('broken: load: ParseError', output)
        self.assertTrue((self.out / 'summary.json').exists())
        self.assertEqual(AnalyzedNetwork.objects.count(), 3)

        again = self.tmp / 'again'
        stdout = io.StringIO()
        call_command('report', '--out', str(again), stdout=stdout)
        self.assertIn('3 record(s)', stdout.getvalue())
        self.assertEqual((again / 'records.csv').read_bytes(), (self.out / 'records.csv').read_bytes())

    def test_nothing_completed_is_an_error(self):
        (self.corpus / 'broken.net').write_text(MALFORMED_PAJEK)
        with self.assertRaises(CommandError):
            self.analyze()
        self.assertTrue((self.out / 'records.csv').exists())

    def test_invalid_flag_value(self):
        self.write_corpus(1)
        with self.assertRaisesMessage(CommandError, 'gof_threshold'):
            self.analyze('--gof-threshold', '1.5')

    def test_empty_corpus(self):
        with self.assertRaisesMessage(CommandError, 'EmptyCorpus'):
            self.analyze()

    def test_report_without_stored_records(self):
        with self.assertRaises(CommandError):
            call_command('report', '--out', str(self.out), stdout=io.StringIO())
