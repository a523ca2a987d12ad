import json

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from core.logs import apply_verbosity
from graphs.exceptions import NetProfilerError
from graphs.measures import TransitivityMode, giant_component
from ingest.loader import load_network
from rewire.plan import RewireMode, RewirePlan
from smallworld.omega import omega
from smallworld.report import OmegaThresholds


class Command(BaseCommand):
    help = 'Computes the omega small-world measure of one network file'

    def add_arguments(self, parser):
        defaults = settings.NETPROFILER
        parser.add_argument('path', help='Pajek, GraphML or edgelist file')
        parser.add_argument('--seed', type=int, default=defaults['SEED'])
        parser.add_argument('--realizations', type=int, default=defaults['REALIZATIONS'])
        parser.add_argument('--swaps-per-edge', type=int, default=defaults['SWAPS_PER_EDGE'])
        parser.add_argument('--lattice-swaps-per-edge', type=int, default=defaults['LATTICE_SWAPS_PER_EDGE'])
        parser.add_argument('--no-connectivity-guard', action='store_true')
        parser.add_argument(
            '--transitivity-mode', choices=TransitivityMode.values, default=defaults['TRANSITIVITY_MODE'],
        )
        parser.add_argument('--omega-band', type=float, default=defaults['OMEGA_BAND'])
        parser.add_argument('--workers', type=int, default=defaults['WORKERS'])
        parser.add_argument('--label-diagnostic', action='store_true')
        parser.add_argument('--json', action='store_true', help='print the full report as JSON')

    def handle(self, *args, **options):
        apply_verbosity(options['verbosity'])
        defaults = settings.NETPROFILER
        guard = not options['no_connectivity_guard'] and defaults['CONNECTIVITY_GUARD']
        try:
            graph, log = load_network(options['path'])
            graph, reduced = giant_component(graph)
            report = omega(
                graph,
                RewirePlan(
                    mode=RewireMode.RANDOMIZE,
                    swaps_per_edge=options['swaps_per_edge'],
                    seed=options['seed'],
                    connectivity_guard=guard,
                ),
                options['realizations'],
                lattice_plan=RewirePlan(
                    mode=RewireMode.LATTICIZE,
                    swaps_per_edge=options['lattice_swaps_per_edge'],
                    connectivity_guard=guard,
                ),
                transitivity_mode=options['transitivity_mode'],
                thresholds=OmegaThresholds(
                    band=options['omega_band'],
                    degenerate_ratio_l=defaults['DEGENERATE_RATIO_L'],
                    degenerate_ratio_t=defaults['DEGENERATE_RATIO_T'],
                ),
                workers=options['workers'],
                label_diagnostic=options['label_diagnostic'],
            )
        except (NetProfilerError, OSError) as exc:
            raise CommandError(f'{type(exc).__name__}: {exc}') from exc

        if options['json']:
            self.stdout.write(json.dumps({'n': graph.n, 'm': graph.m, **report.to_dict()}, indent=2))
            return
        if reduced:
            self.stdout.write(self.style.WARNING(f'Disconnected input: using giant component ({graph.n} nodes).'))
        if options['verbosity'] > 1:
            self.stdout.write(f'preprocessing: {log.summary()}')
        for key, value in report.to_row().items():
            self.stdout.write(f'{key:>14}  {value}')
        for key, value in report.diagnostics.items():
            self.stdout.write(f'{key:>14}  {value}')
        self.stdout.write(self.style.SUCCESS(f'{graph!r}: omega = {report.omega:.4f} ({report.classification})'))
