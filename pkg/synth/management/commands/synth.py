from pathlib import Path

from django.core.management.base import BaseCommand, CommandError

from graphs.exceptions import NetProfilerError
from graphs.pajek import write_pajek
from synth.generators import barabasi_albert, erdos_renyi, mean_degree_probability, ring_lattice, watts_strogatz

MODELS = ('ring', 'er', 'ws', 'ba')


class Command(BaseCommand):
    help = 'Writes a synthetic network as a Pajek .net file'

    def add_arguments(self, parser):
        parser.add_argument('model', choices=MODELS)
        parser.add_argument('--n', type=int, required=True, help='number of nodes')
        parser.add_argument('--k', type=int, default=4, help='ring degree (ring, ws)')
        parser.add_argument('--p', type=float, help='edge probability (er)')
        parser.add_argument('--mean-degree', type=float, help='expected degree, instead of --p (er)')
        parser.add_argument('--beta', type=float, default=0.1, help='rewiring probability (ws)')
        parser.add_argument('--m0', type=int, default=3, help='seed clique size (ba)')
        parser.add_argument('--m-per-step', type=int, default=2, help='edges per new node (ba)')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--out', required=True, help='output .net path')

    def handle(self, *args, **options):
        model, n, seed = options['model'], options['n'], options['seed']
        try:
            if model == 'ring':
                graph = ring_lattice(n, options['k'])
            elif model == 'er':
                p = options['p']
                if p is None:
                    if options['mean_degree'] is None:
                        raise CommandError('er needs --p or --mean-degree')
                    p = mean_degree_probability(n, options['mean_degree'])
                graph = erdos_renyi(n, p, seed=seed)
            elif model == 'ws':
                graph = watts_strogatz(n, options['k'], options['beta'], seed=seed)
            else:
                graph = barabasi_albert(n, options['m0'], options['m_per_step'], seed=seed)
        except NetProfilerError as exc:
            raise CommandError(str(exc)) from exc

        path = write_pajek(graph, Path(options['out']))
        self.stdout.write(self.style.SUCCESS(f'Wrote {model} network {graph!r} to {path}'))
