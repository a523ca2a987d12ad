import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.logs import apply_verbosity
from degreedist.analysis import analyze_degrees, ccdf_table
from graphs.exceptions import NetProfilerError
from graphs.measures import degree_sequence
from ingest.loader import load_network


class Command(BaseCommand):
    help = 'Runs the power-law degree analysis on one network file'

    def add_arguments(self, parser):
        defaults = settings.NETPROFILER
        parser.add_argument('path', help='Pajek, GraphML or edgelist file')
        parser.add_argument('--bootstrap', type=int, default=defaults['BOOTSTRAP'])
        parser.add_argument('--seed', type=int, default=defaults['SEED'])
        parser.add_argument('--gof-threshold', type=float, default=defaults['GOF_THRESHOLD'])
        parser.add_argument('--significance', type=float, default=defaults['SIGNIFICANCE'])
        parser.add_argument('--tail-floor', type=int, default=defaults['TAIL_FLOOR'])
        parser.add_argument('--workers', type=int, default=defaults['WORKERS'])
        parser.add_argument('--json', action='store_true', help='print the full analysis as JSON')
        parser.add_argument('--ccdf', action='store_true', help='include the CCDF table')

    def handle(self, *args, **options):
        apply_verbosity(options['verbosity'])
        try:
            graph, _ = load_network(options['path'])
            degrees = degree_sequence(graph)
            analysis = analyze_degrees(
                degrees,
                bootstraps=options['bootstrap'],
                seed=options['seed'],
                gof_threshold=options['gof_threshold'],
                significance=options['significance'],
                tail_floor=options['tail_floor'],
                workers=options['workers'],
            )
        except (NetProfilerError, OSError) as exc:
            raise CommandError(f'{type(exc).__name__}: {exc}') from exc

        if options['json']:
            data = {'n': graph.n, 'm': graph.m, **analysis.to_dict()}
            if options['ccdf']:
                data['ccdf'] = ccdf_table(degrees, analysis.fit)
            self.stdout.write(json.dumps(data, indent=2))
            return

        fit = analysis.fit
        self.stdout.write(f'alpha = {fit.alpha:.4f}  xmin = {fit.xmin}  ntail = {fit.ntail}  D = {fit.ks:.4f}')
        if fit.low_confidence:
            self.stdout.write(self.style.WARNING(f'Tail holds fewer than {options["tail_floor"]} degrees.'))
        self.stdout.write(f'gof p = {analysis.gof.pvalue:.3f} ({analysis.gof.bootstraps} replicates)')
        for row in analysis.comparisons:
            if row.failed:
                self.stdout.write(self.style.ERROR(f'{row.alternative:>22}  {row.error}'))
            else:
                self.stdout.write(f'{row.alternative:>22}  R={row.logratio:+.3f}  p={row.pvalue:.3f}  {row.verdict}')
        if options['ccdf']:
            for row in ccdf_table(degrees, fit):
                self.stdout.write(f"{row['degree']:>8}  {row['ccdf']:.6f}  {row['fitted_ccdf']}")
        self.stdout.write(self.style.SUCCESS(f'{graph!r}: {analysis.classification}'))
