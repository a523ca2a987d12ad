# Generated by Django 5.2.7 on 2026-10-19 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='AnalyzedNetwork',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('network_id', models.CharField(max_length=255, unique=True)),
                ('source', models.CharField(max_length=500)),
                ('system_class', models.CharField(choices=[('biological', 'Biological'), ('social-interaction', 'Social interaction'), ('trophic', 'Trophic'), ('bibliographic', 'Bibliographic'), ('institutional', 'Institutional'), ('program', 'Program'), ('other', 'Other')], default='other', max_length=32)),
                ('n', models.IntegerField(blank=True, null=True)),
                ('m', models.IntegerField(blank=True, null=True)),
                ('omega', models.FloatField(blank=True, null=True)),
                ('smallworld_class', models.CharField(blank=True, choices=[('lattice-like', 'Lattice-like'), ('small-world', 'Small-world'), ('random-like', 'Random-like'), ('degenerate', 'Degenerate (grid-like)')], max_length=16)),
                ('alpha', models.FloatField(blank=True, null=True)),
                ('xmin', models.IntegerField(blank=True, null=True)),
                ('gof_pvalue', models.FloatField(blank=True, null=True)),
                ('degree_class', models.CharField(blank=True, choices=[('Improbable', 'Improbable'), ('Moderate', 'Moderate'), ('Probable', 'Probable'), ('Cutoff', 'Cutoff')], max_length=16)),
                ('payload', models.JSONField()),
                ('analyzed_at', models.DateTimeField(auto_now=True)),
            ],
            options={
                'ordering': ['network_id'],
            },
        ),
    ]
