from django.db import models

from degreedist.results import DegreeClass
from smallworld.report import SmallWorldClass

from .records import NetworkRecord, SystemClass


class AnalyzedNetwork(models.Model):
    """Latest stored analysis of one network"""
    network_id = models.CharField(max_length=255, unique=True)
    source = models.CharField(max_length=500)
    system_class = models.CharField(max_length=32, choices=SystemClass.choices, default=SystemClass.OTHER)
    n = models.IntegerField(null=True, blank=True)
    m = models.IntegerField(null=True, blank=True)
    omega = models.FloatField(null=True, blank=True)
    smallworld_class = models.CharField(max_length=16, choices=SmallWorldClass.choices, blank=True)
    alpha = models.FloatField(null=True, blank=True)
    xmin = models.IntegerField(null=True, blank=True)
    gof_pvalue = models.FloatField(null=True, blank=True)
    degree_class = models.CharField(max_length=16, choices=DegreeClass.choices, blank=True)
    payload = models.JSONField()
    analyzed_at = models.DateTimeField(auto_now=True)

    class Meta:
        ordering = ['network_id']

    def __str__(self):
        return self.network_id

    @staticmethod
    def columns_for(record: NetworkRecord) -> dict:
        smallworld, degrees = record.smallworld, record.degrees
        return {
            'source': record.source,
            'system_class': record.system_class,
            'n': record.n,
            'm': record.m,
            'omega': smallworld.omega if smallworld else None,
            'smallworld_class': str(smallworld.classification) if smallworld else '',
            'alpha': degrees.fit.alpha if degrees else None,
            'xmin': degrees.fit.xmin if degrees else None,
            'gof_pvalue': degrees.gof.pvalue if degrees else None,
            'degree_class': str(degrees.classification) if degrees else '',
            'payload': record.to_dict(),
        }

    def to_record(self) -> NetworkRecord:
        return NetworkRecord.from_dict(self.payload)
