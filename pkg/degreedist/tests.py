import io
import shutil
import tempfile
from dataclasses import replace
from pathlib import Path

import numpy as np
from django.core.management import call_command
from django.test import SimpleTestCase, tag
from scipy.special import zeta

from graphs.exceptions import InvalidParam
from graphs.measures import degree_sequence
from graphs.pajek import write_pajek
from synth.generators import barabasi_albert, erdos_renyi

from .alternatives import (
    Exponential,
    LogNormal,
    PowerLawCutoff,
    compare_alternatives,
    compare_models,
    vuong,
)
from .analysis import analyze_degrees, ccdf_table
from .classify import classify
from .exceptions import DegenerateSample, InvalidB
from .gof import gof_pvalue
from .powerlaw import draw_powerlaw, fit_powerlaw, ks_distance, powerlaw_cdf, powerlaw_loglik, sample_powerlaw
from .results import Alternative, AlternativeComparison, DegreeClass, GofResult, PowerLawFit, Verdict


def brute_force_ks(tail, alpha, xmin):
    tail = np.sort(np.asarray(tail))
    points = np.arange(xmin, tail.max() + 1)
    empirical = np.array([(tail <= x).mean() for x in points])
    return float(np.max(np.abs(empirical - powerlaw_cdf(points, alpha, xmin))))


def geometric_sample(p, n, seed):
    return np.random.default_rng(seed).geometric(p, size=n)


def row(alternative, verdict, nested=False):
    return AlternativeComparison(alternative=alternative, logratio=0.0, pvalue=0.5, verdict=verdict, nested=nested)


class PowerLawFitTest(SimpleTestCase):
    def test_all_equal_is_degenerate(self):
        with self.assertRaises(DegenerateSample):
            fit_powerlaw([4] * 20)

    def test_zero_degree_rejected(self):
        with self.assertRaises(InvalidParam):
            fit_powerlaw([0, 1, 2, 3])

    def test_forced_xmin_matches_grid_argmax(self):
        sample = np.array([1, 1, 1, 1, 2, 2, 4, 8])
        fit = fit_powerlaw(sample, xmin=1)
        grid = np.arange(1.001, 6.0005, 0.001)
        logliks = -grid * np.log(sample).sum() - sample.size * np.log(zeta(grid, 1))
        self.assertAlmostEqual(fit.alpha, grid[np.argmax(logliks)], delta=1e-3)
        self.assertAlmostEqual(fit.loglik, powerlaw_loglik(sample.astype(float), fit.alpha, 1), places=6)
        self.assertTrue(fit.low_confidence)

    def test_recovers_exponent(self):
        fit = fit_powerlaw(sample_powerlaw(2.5, 5, 10_000, seed=1))
        self.assertGreaterEqual(fit.alpha, 2.40)
        self.assertLessEqual(fit.alpha, 2.60)
        self.assertIn(fit.xmin, range(3, 9))
        self.assertFalse(fit.low_confidence)

    def test_small_tail_falls_back(self):
        fit = fit_powerlaw([1, 2, 2, 3, 5, 8])
        self.assertTrue(fit.low_confidence)
        self.assertGreaterEqual(fit.ntail, 2)

    def test_ks_matches_brute_force(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            xmin = int(rng.integers(1, 4))
            alpha = float(rng.uniform(1.5, 3.5))
            tail = sample_powerlaw(alpha, xmin, int(rng.integers(5, 100)), seed=int(rng.integers(1 << 30))).as_array()
            self.assertAlmostEqual(ks_distance(tail.astype(float), alpha, xmin), brute_force_ks(tail, alpha, xmin), places=12)

    def test_fit_invariants(self):
        fit = fit_powerlaw(sample_powerlaw(2.2, 2, 500, seed=4))
        self.assertGreater(fit.alpha, 1)
        self.assertLessEqual(0, fit.ks)
        self.assertLessEqual(fit.ks, 1)
        self.assertEqual(fit.n, 500)


class SamplePowerLawTest(SimpleTestCase):
    def test_mass_at_one(self):
        k = np.arange(1, 1_000_001, dtype=float)
        # series plus the integral remainder beyond the last term
        series = float(np.sum(k ** -2.5)) + 1_000_000.5 ** -1.5 / 1.5
        draws = sample_powerlaw(2.5, 1, 100_000, seed=5).as_array()
        self.assertAlmostEqual(float(np.mean(draws == 1)), 1 / series, delta=0.01)

    def test_empty(self):
        self.assertEqual(len(sample_powerlaw(2.0, 3, 0, seed=1)), 0)

    def test_support(self):
        draws = sample_powerlaw(1.8, 7, 5000, seed=2).as_array()
        self.assertGreaterEqual(draws.min(), 7)

    def test_large_sample_mixes_short_and_long_searches(self):
        draws = sample_powerlaw(2.5, 1, 1000, seed=0).as_array()
        self.assertEqual(draws.size, 1000)
        self.assertGreaterEqual(draws.min(), 1)
        self.assertGreater(draws.max(), 1)

    def test_each_draw_is_the_smallest_reaching_value(self):
        alpha, xmin = 2.2, 3
        draws = draw_powerlaw(np.random.default_rng(4), alpha, xmin, 2000)
        targets = (1.0 - np.random.default_rng(4).random(2000)) * zeta(alpha, xmin)
        self.assertTrue(np.all(zeta(alpha, draws + 1.0) <= targets))
        above = draws > xmin
        self.assertTrue(np.all(zeta(alpha, draws[above].astype(float)) > targets[above]))

    def test_seeded(self):
        self.assertEqual(sample_powerlaw(2.5, 2, 100, seed=9), sample_powerlaw(2.5, 2, 100, seed=9))

    def test_invalid(self):
        for alpha, xmin, n in ((1.0, 1, 10), (2.0, 0, 10), (2.0, 1, -1)):
            with self.assertRaises(InvalidParam):
                sample_powerlaw(alpha, xmin, n)


@tag('slow')
class EstimatorRecoveryTest(SimpleTestCase):
    def test_mean_exponent_over_seeds(self):
        for alpha in (2.0, 2.5, 3.0):
            estimates = [fit_powerlaw(sample_powerlaw(alpha, 5, 10_000, seed=seed)).alpha for seed in range(20)]
            self.assertAlmostEqual(float(np.mean(estimates)), alpha, delta=0.05)


class GofTest(SimpleTestCase):
    def setUp(self):
        self.sample = sample_powerlaw(2.5, 1, 300, seed=6)
        self.fit = fit_powerlaw(self.sample)

    def test_invalid_count(self):
        with self.assertRaises(InvalidB):
            gof_pvalue(self.sample, self.fit, 0)

    def test_pvalue_resolution(self):
        result = gof_pvalue(self.sample, self.fit, 20, seed=1)
        self.assertEqual(result.bootstraps, 20)
        self.assertAlmostEqual(result.pvalue * 20, round(result.pvalue * 20))
        self.assertEqual(result.observed_ks, self.fit.ks)

    def test_seeded(self):
        self.assertEqual(gof_pvalue(self.sample, self.fit, 10, seed=4), gof_pvalue(self.sample, self.fit, 10, seed=4))

    def test_zero_observed_distance(self):
        result = gof_pvalue(self.sample, replace(self.fit, ks=0.0), 20, seed=2)
        self.assertGreaterEqual(result.pvalue, 0.9)

    def test_workers_do_not_change_result(self):
        serial = gof_pvalue(self.sample, self.fit, 12, seed=8)
        parallel = gof_pvalue(self.sample, self.fit, 12, seed=8, workers=2)
        self.assertEqual(serial, parallel)


@tag('slow')
class GofCalibrationTest(SimpleTestCase):
    def test_null_pvalues_roughly_uniform(self):
        small = 0
        for run in range(100):
            sample = sample_powerlaw(2.5, 1, 200, seed=50_000 + run)
            fit = fit_powerlaw(sample)
            small += gof_pvalue(sample, fit, 250, seed=1_000 * run).pvalue < 0.1
        self.assertGreaterEqual(small / 100, 0.03)
        self.assertLessEqual(small / 100, 0.20)


class AlternativesTest(SimpleTestCase):
    def setUp(self):
        self.sample = sample_powerlaw(2.5, 2, 2000, seed=11).as_array()
        self.fit = fit_powerlaw(self.sample)
        self.tail = self.sample[self.sample >= self.fit.xmin].astype(float)

    def test_self_comparison_is_exactly_zero(self):
        comparison = compare_models(self.tail, self.fit, PowerLawCutoff(self.fit.xmin, self.fit.alpha, 0.0))
        self.assertEqual(comparison.logratio, 0.0)
        self.assertEqual(comparison.verdict, Verdict.UNDECIDED)
        self.assertTrue(comparison.nested)

    def test_vuong_is_antisymmetric(self):
        first = LogNormal.fit(self.tail, self.fit.xmin).logpmf(self.tail)
        second = Exponential.fit(self.tail, self.fit.xmin).logpmf(self.tail)
        forward, p_forward = vuong(first, second)
        backward, p_backward = vuong(second, first)
        self.assertAlmostEqual(forward, -backward, places=12)
        self.assertAlmostEqual(p_forward, p_backward, places=12)

    def test_every_alternative_gets_a_row(self):
        rows = compare_alternatives(self.sample, self.fit)
        self.assertEqual([r.alternative for r in rows], list(Alternative.values))
        for comparison in rows:
            self.assertIsNone(comparison.error)
            self.assertTrue(np.isfinite(comparison.logratio))
            self.assertTrue(0.0 <= comparison.pvalue <= 1.0)
        cutoff = next(r for r in rows if r.alternative == Alternative.POWERLAW_CUTOFF)
        self.assertLessEqual(cutoff.logratio, 1e-9)

    def test_cutoff_normalizer_matches_direct_sum(self):
        model = PowerLawCutoff(3, 1.7, 0.05)
        x = np.arange(3, 5000, dtype=float)
        direct = np.log(np.sum(x ** -1.7 * np.exp(-0.05 * x)))
        self.assertAlmostEqual(model.log_normalizer(), direct, places=8)

    def test_failed_fit_is_recorded(self):
        fit = PowerLawFit(alpha=2.0, xmin=5, ntail=3, ks=0.5, loglik=-1.0, n=5)
        rows = compare_alternatives([1, 2, 5, 5, 5], fit, alternatives=[Alternative.EXPONENTIAL])
        self.assertIsNotNone(rows[0].error)
        self.assertIsNone(rows[0].verdict)


@tag('slow')
class LikelihoodRatioDiscriminationTest(SimpleTestCase):
    def test_exponential_samples(self):
        wins = 0
        for seed in range(20):
            sample = geometric_sample(0.1, 5000, seed=seed)
            rows = compare_alternatives(sample, fit_powerlaw(sample), alternatives=[Alternative.EXPONENTIAL])
            wins += rows[0].verdict == Verdict.FAVORS_ALTERNATIVE
        self.assertGreaterEqual(wins, 18)

    def test_powerlaw_samples(self):
        wins = 0
        for seed in range(20):
            sample = sample_powerlaw(2.5, 1, 10_000, seed=seed)
            rows = compare_alternatives(sample, fit_powerlaw(sample), alternatives=[Alternative.EXPONENTIAL])
            wins += rows[0].verdict == Verdict.FAVORS_POWERLAW
        self.assertGreaterEqual(wins, 18)


class ClassifyTest(SimpleTestCase):
    def test_poor_fit_is_improbable(self):
        rows = [row(Alternative.EXPONENTIAL, Verdict.FAVORS_POWERLAW)]
        self.assertEqual(classify(GofResult(0.01, 100, 0.2), rows), DegreeClass.IMPROBABLE)

    def test_cutoff(self):
        rows = [
            row(Alternative.EXPONENTIAL, Verdict.FAVORS_POWERLAW),
            row(Alternative.POWERLAW_CUTOFF, Verdict.FAVORS_ALTERNATIVE, nested=True),
        ]
        self.assertEqual(classify(GofResult(0.5, 100, 0.05), rows), DegreeClass.CUTOFF)

    def test_probable(self):
        rows = [row(a, Verdict.FAVORS_POWERLAW) for a in (Alternative.EXPONENTIAL, Alternative.LOGNORMAL,
                                                           Alternative.STRETCHED_EXPONENTIAL, Alternative.POISSON)]
        rows.append(row(Alternative.POWERLAW_CUTOFF, Verdict.UNDECIDED, nested=True))
        self.assertEqual(classify(GofResult(0.5, 100, 0.05), rows), DegreeClass.PROBABLE)

    def test_moderate_and_improbable(self):
        gof = GofResult(0.5, 100, 0.05)
        undecided = [row(Alternative.LOGNORMAL, Verdict.UNDECIDED), row(Alternative.EXPONENTIAL, Verdict.FAVORS_POWERLAW)]
        self.assertEqual(classify(gof, undecided), DegreeClass.MODERATE)
        favored = undecided + [row(Alternative.POISSON, Verdict.FAVORS_ALTERNATIVE)]
        self.assertEqual(classify(gof, favored), DegreeClass.IMPROBABLE)

    def test_failed_rows_ignored(self):
        failed = AlternativeComparison(Alternative.LOGNORMAL, None, None, None, error='FitFailure: x')
        self.assertEqual(classify(GofResult(0.5, 100, 0.05), [failed]), DegreeClass.PROBABLE)


class AnalysisTest(SimpleTestCase):
    def test_round_trip_and_row(self):
        degrees = degree_sequence(barabasi_albert(400, 3, 2, seed=1))
        analysis = analyze_degrees(degrees, bootstraps=10, seed=2)
        self.assertIn(analysis.classification, DegreeClass.values)
        self.assertEqual(type(analysis).from_dict(analysis.to_dict()), analysis)
        row_data = analysis.to_row()
        self.assertEqual(row_data['degree_class'], analysis.classification)
        self.assertIn('powerlaw-cutoff_verdict', row_data)

    def test_ccdf_table(self):
        sample = sample_powerlaw(2.3, 1, 1000, seed=3)
        fit = fit_powerlaw(sample)
        rows = ccdf_table(sample, fit)
        self.assertEqual(rows[0]['ccdf'], 1.0)
        self.assertTrue(all(a['ccdf'] > b['ccdf'] for a, b in zip(rows, rows[1:])))
        at_xmin = next(r for r in rows if r['degree'] == fit.xmin)
        self.assertAlmostEqual(at_xmin['fitted_ccdf'], fit.ntail / fit.n)
        self.assertTrue(all(r['fitted_ccdf'] is None for r in rows if r['degree'] < fit.xmin))


@tag('slow')
class EndToEndClassificationTest(SimpleTestCase):
    def test_preferential_attachment_is_not_improbable(self):
        for seed in range(10):
            degrees = degree_sequence(barabasi_albert(10_000, 5, 3, seed=seed))
            analysis = analyze_degrees(degrees, bootstraps=100, seed=seed)
            self.assertNotEqual(analysis.classification, DegreeClass.IMPROBABLE)

    def test_random_graph_is_improbable(self):
        improbable = 0
        for seed in range(10):
            degrees = [k for k in degree_sequence(erdos_renyi(10_000, 10 / 9_999, seed=seed)).values if k > 0]
            analysis = analyze_degrees(degrees, bootstraps=100, seed=seed)
            improbable += analysis.classification == DegreeClass.IMPROBABLE
        self.assertGreaterEqual(improbable, 8)


class FitCommandTest(SimpleTestCase):
    def setUp(self):
        self.tmp = Path(tempfile.mkdtemp())

    def tearDown(self):
        shutil.rmtree(self.tmp, ignore_errors=True)

    def test_prints_class(self):
        path = write_pajek(barabasi_albert(300, 3, 2, seed=2), self.tmp / 'ba.net')
        out = io.StringIO()
        call_command('fit', str(path), '--bootstrap', '5', '--ccdf', stdout=out)
        self.assertIn('alpha =', out.getvalue())
        self.assertRegex(out.getvalue(), r'(Improbable|Moderate|Probable|Cutoff)')
