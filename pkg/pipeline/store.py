from django.db import transaction

from .models import AnalyzedNetwork
from .records import NetworkRecord


@transaction.atomic
def store_records(records: list[NetworkRecord]) -> tuple[int, int]:
    """Upsert one row per record; returns (created, updated)."""
    created = updated = 0
    for record in records:
        _, was_created = AnalyzedNetwork.objects.update_or_create(
            network_id=record.id,
            defaults=AnalyzedNetwork.columns_for(record),
        )
        if was_created:
            created += 1
        else:
            updated += 1
    return created, updated


def load_records(system_class: str | None = None) -> list[NetworkRecord]:
    rows = AnalyzedNetwork.objects.all()
    if system_class:
        rows = rows.filter(system_class=system_class)
    return [row.to_record() for row in rows]
