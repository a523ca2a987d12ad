from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from pipeline.records import SystemClass
from pipeline.reports import emit_reports
from pipeline.store import load_records


class Command(BaseCommand):
    help = 'Writes the report tables again from the stored records'

    def add_arguments(self, parser):
        parser.add_argument('--out', required=True)
        parser.add_argument('--system-class', choices=SystemClass.values)
        parser.add_argument('--omega-band', type=float, default=settings.NETPROFILER['OMEGA_BAND'])

    def handle(self, *args, **options):
        records = load_records(options['system_class'])
        if not records:
            raise CommandError('No stored records; run "analyze --store" first.')
        written = emit_reports(
            records,
            options['out'],
            omega_band=options['omega_band'],
            metadata={'source': 'database', 'system_class': options['system_class']},
        )
        self.stdout.write(self.style.SUCCESS(f'Wrote {len(written)} file(s) for {len(records)} record(s).'))
