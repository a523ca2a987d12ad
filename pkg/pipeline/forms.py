from pathlib import Path

from django import forms
from django.core.exceptions import ValidationError

from graphs.measures import TransitivityMode


def validate_open_unit(value):
    if not 0.0 < value < 1.0:
        raise ValidationError('must lie strictly between 0 and 1')


class RunConfigForm(forms.Form):
    """Validates the merged settings, config file and command-line values."""
    corpus = forms.CharField()
    out = forms.CharField()
    seed = forms.IntegerField(min_value=0, max_value=2 ** 63 - 1)
    workers = forms.IntegerField(min_value=1)
    swaps_per_edge = forms.IntegerField(min_value=1)
    lattice_swaps_per_edge = forms.IntegerField(min_value=1)
    connectivity_guard = forms.BooleanField(required=False)
    realizations = forms.IntegerField(min_value=1)
    bootstrap = forms.IntegerField(min_value=1)
    gof_threshold = forms.FloatField(validators=[validate_open_unit])
    significance = forms.FloatField(validators=[validate_open_unit])
    omega_band = forms.FloatField(validators=[validate_open_unit])
    degenerate_ratio_l = forms.FloatField(min_value=0.0)
    degenerate_ratio_t = forms.FloatField(min_value=0.0)
    size_cap_nodes = forms.IntegerField(min_value=4)
    size_cap_edges = forms.IntegerField(min_value=4)
    transitivity_mode = forms.ChoiceField(choices=TransitivityMode.choices)
    tail_floor = forms.IntegerField(min_value=2)
    label_diagnostic = forms.BooleanField(required=False)
    classes_file = forms.CharField()

    def clean_corpus(self):
        corpus = Path(self.cleaned_data['corpus'])
        if not corpus.is_dir():
            raise ValidationError(f'{corpus} is not a directory')
        return corpus

    def clean_out(self):
        return Path(self.cleaned_data['out'])
