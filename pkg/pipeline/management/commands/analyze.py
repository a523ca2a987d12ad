from django.core.management.base import BaseCommand, CommandError

from core.logs import apply_verbosity
from graphs.exceptions import NetProfilerError
from graphs.measures import TransitivityMode
from pipeline.config import build_run_config
from pipeline.reports import emit_reports
from pipeline.runner import run_corpus
from pipeline.store import store_records


class Command(BaseCommand):
    help = 'Analyzes every network file of a corpus directory and writes the report tables'

    def add_arguments(self, parser):
        # unset flags stay None so settings and --config values show through
        parser.add_argument('--corpus', help='directory of network files')
        parser.add_argument('--out', help='directory for the report files')
        parser.add_argument('--config', help='JSON file whose keys mirror these flags')
        parser.add_argument('--seed', type=int)
        parser.add_argument('--workers', type=int)
        parser.add_argument('--swaps-per-edge', type=int)
        parser.add_argument('--lattice-swaps-per-edge', type=int)
        parser.add_argument('--no-connectivity-guard', dest='connectivity_guard', action='store_const', const=False)
        parser.add_argument('--realizations', type=int)
        parser.add_argument('--bootstrap', type=int)
        parser.add_argument('--gof-threshold', type=float)
        parser.add_argument('--significance', type=float)
        parser.add_argument('--omega-band', type=float)
        parser.add_argument('--degenerate-ratio-l', type=float)
        parser.add_argument('--degenerate-ratio-t', type=float)
        parser.add_argument('--size-cap-nodes', type=int)
        parser.add_argument('--size-cap-edges', type=int)
        parser.add_argument('--transitivity-mode', choices=TransitivityMode.values)
        parser.add_argument('--tail-floor', type=int)
        parser.add_argument('--label-diagnostic', action='store_const', const=True)
        parser.add_argument('--classes-file', help='system-class sidecar inside the corpus directory')
        parser.add_argument('--store', action='store_true', help='also save the records in the database')

    def handle(self, *args, **options):
        apply_verbosity(options['verbosity'])
        try:
            config = build_run_config(options, options['config'])
            report = run_corpus(config)
        except NetProfilerError as exc:
            raise CommandError(f'{type(exc).__name__}: {exc}') from exc

        emit_reports(report.records, config.out, omega_band=config.omega_band, metadata=config.metadata())

        for record in report.records:
            for reason in record.skip_reasons:
                self.stdout.write(self.style.WARNING(f'{record.id}: {reason}'))
        if options['verbosity'] > 1:
            for system_class, count in report.counts_by_class().items():
                self.stdout.write(f'{system_class:>20}  {count}')
        if options['store']:
            created, updated = store_records(report.records)
            self.stdout.write(f'Stored {created} new and {updated} updated record(s).')

        if not report.completed:
            raise CommandError(f'No network of {config.corpus} could be analyzed.')
        self.stdout.write(self.style.SUCCESS(
            f'{report.completed}/{len(report.records)} network(s) analyzed; reports in {config.out}'
        ))
