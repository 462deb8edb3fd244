import cmath
import json
from unittest import mock

from django.test import SimpleTestCase

from core.services.errors import PreconditionError
from core.services.kernel import canonical_weight
from core.services.moebius import Automorphism, compose
from core.services.operator import CanonicalWeight, ForcedWeight, WCOSymbols
from core.services.series import TruncatedSeries, scale
from core.services import verdict as verdict_module
from core.services.verdict import (
    CheckParams, Numerical, Theoretical, dichotomy_report, numerical_verdict, random_probes,
    recognize_automorphism, recurrence_series_defect, theoretical_verdict,
)
from core.services.weights import classify, named_space

SHORT_LIST = [1.0, 0.5, 0.25, 0.125]


def predict(ws, symbols):
    return theoretical_verdict(classify(ws), symbols, ws=ws, N=128)


class RecognizeAutomorphismTests(SimpleTestCase):
    def test_taylor_series_of_an_automorphism(self):
        aut = Automorphism(1j, 0.3 - 0.1j)
        found = recognize_automorphism(aut.taylor(64), 1e-9)
        self.assertIsNotNone(found)
        self.assertLess(abs(found.lam - aut.lam), 1e-12)
        self.assertLess(abs(found.a - aut.a), 1e-12)

    def test_other_self_maps(self):
        self.assertIsNone(recognize_automorphism(TruncatedSeries([0.0, 0.5]), 1e-9))
        self.assertIsNone(recognize_automorphism(TruncatedSeries([0.0, 0.0, 1.0]), 1e-9))
        self.assertIsNone(recognize_automorphism(TruncatedSeries([0.2]), 1e-9))


class TheoreticalVerdictTests(SimpleTestCase):
    def test_canonical_weight_on_hgamma(self):
        ws = named_space("hgamma", gamma=2.0)
        outcome = predict(ws, WCOSymbols(F=CanonicalWeight(), phi=Automorphism(1.0, 0.3)))
        self.assertIs(outcome.verdict, Theoretical.UNITARY_EXPECTED)
        self.assertEqual(outcome.rationale.phi_shape, "automorphism")

    def test_forced_weight_on_hgamma_is_canonical(self):
        ws = named_space("hardy")
        outcome = predict(ws, WCOSymbols(F=ForcedWeight(), phi=Automorphism(1j, 0.4)))
        self.assertIs(outcome.verdict, Theoretical.UNITARY_EXPECTED)

    def test_wrong_weight_on_hgamma(self):
        ws = named_space("hgamma", gamma=2.0)
        outcome = predict(ws, WCOSymbols(F=TruncatedSeries([1.0]), phi=Automorphism(1.0, 0.3)))
        self.assertIs(outcome.verdict, Theoretical.NOT_COISOMETRIC_EXPECTED)
        self.assertEqual(outcome.rationale.F_shape, "mismatch")

    def test_rotation_with_unimodular_constant_outside_hgamma(self):
        for name in ("dirichlet", "bounded-log"):
            with self.subTest(space=name):
                symbols = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism.rotation_by(0.7))
                outcome = predict(named_space(name), symbols)
                self.assertIs(outcome.verdict, Theoretical.UNITARY_EXPECTED)
                self.assertEqual(outcome.rationale.phi_shape, "rotation")

    def test_only_trivial_operators_outside_hgamma(self):
        symbols = WCOSymbols(F=ForcedWeight(), phi=Automorphism(1.0, 0.5))
        outcome = predict(named_space("dirichlet"), symbols)
        self.assertIs(outcome.verdict, Theoretical.NOT_COISOMETRIC_EXPECTED)
        self.assertTrue(any("trivial-only" in reason for reason in outcome.rationale.reasons))

    def test_non_automorphic_map(self):
        symbols = WCOSymbols(F=TruncatedSeries([1.0]), phi=TruncatedSeries([0.0, 0.5]))
        outcome = predict(named_space("dirichlet"), symbols)
        self.assertIs(outcome.verdict, Theoretical.NOT_COISOMETRIC_EXPECTED)
        self.assertEqual(outcome.rationale.phi_shape, "non-automorphic series")

    def test_series_rotation_is_recognized(self):
        symbols = WCOSymbols(F=TruncatedSeries([1.0]), phi=TruncatedSeries([0.0, 1j]))
        outcome = predict(named_space("bounded-log"), symbols)
        self.assertIs(outcome.verdict, Theoretical.UNITARY_EXPECTED)
        self.assertEqual(outcome.rationale.phi_shape, "series-rotation")

    def test_unimodular_factor_in_the_weight_changes_nothing(self):
        ws = named_space("hgamma", gamma=2.0)
        aut = Automorphism(1.0, 0.3)
        F = canonical_weight(ws, aut, 1.0, 128)
        for weight in (F, scale(F, cmath.exp(0.4j)), scale(F, -1j)):
            with self.subTest(F0=weight.coeffs[0]):
                outcome = predict(ws, WCOSymbols(F=weight, phi=aut))
                self.assertIs(outcome.verdict, Theoretical.UNITARY_EXPECTED)
        for constant in (1.0, 1j):
            outcome = predict(ws, WCOSymbols(F=TruncatedSeries([constant]), phi=aut))
            self.assertIs(outcome.verdict, Theoretical.NOT_COISOMETRIC_EXPECTED)

    def test_rotated_automorphism_with_rebuilt_weight(self):
        ws = named_space("hgamma", gamma=2.0)
        aut = Automorphism(1.0, 0.3)
        for theta in (0.0, 0.9, 2.5):
            with self.subTest(theta=theta):
                rotated = compose(Automorphism.rotation_by(theta), aut)
                symbols = WCOSymbols(F=canonical_weight(ws, rotated, 1.0, 128), phi=rotated)
                self.assertIs(predict(ws, symbols).verdict, Theoretical.UNITARY_EXPECTED)

    def test_undetermined_space_gives_no_prediction(self):
        ws = named_space("explicit", values=SHORT_LIST)
        with self.assertLogs("core.services.weights", level="WARNING"):
            outcome = predict(ws, WCOSymbols(F=TruncatedSeries([1.0]), phi=Automorphism.identity()))
        self.assertIs(outcome.verdict, Theoretical.INDETERMINATE)


class NumericalVerdictTests(SimpleTestCase):
    def test_rotation_passes(self):
        symbols = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism(lam=-1j, a=0))
        outcome = numerical_verdict(named_space("dirichlet"), symbols, N=64, k=16)
        self.assertIs(outcome.verdict, Numerical.PASS_UNITARY)
        self.assertEqual(outcome.coisometry, 0.0)

    def test_constant_weight_fails_outside_hgamma(self):
        symbols = WCOSymbols(F=TruncatedSeries([1.0]), phi=Automorphism(1.0, 0.5))
        outcome = numerical_verdict(named_space("dirichlet"), symbols, N=64, k=16)
        self.assertIs(outcome.verdict, Numerical.FAIL_COISOMETRY)
        self.assertGreater(outcome.coisometry_doubled, 0.1)

    def test_shift_is_isometric_but_not_coisometric(self):
        # W f = z·f on the Hardy space
        symbols = WCOSymbols(F=TruncatedSeries([0.0, 1.0]), phi=Automorphism.identity())
        outcome = numerical_verdict(named_space("hardy"), symbols, N=32, k=8)
        self.assertEqual(outcome.isometry, 0.0)
        self.assertIs(outcome.verdict, Numerical.FAIL_COISOMETRY)


    def test_outcome_carries_the_matrix_at_n(self):
        symbols = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism(lam=-1j, a=0))
        outcome = numerical_verdict(named_space("hardy"), symbols, N=32, k=8)
        self.assertEqual(outcome.matrix.N, 32)


class RecurrenceSeriesTests(SimpleTestCase):
    def test_vanishes_on_hgamma(self):
        for gamma in (0.5, 1.0, 2.0, 3.0):
            with self.subTest(gamma=gamma):
                ws = named_space("hgamma", gamma=gamma)
                self.assertLess(recurrence_series_defect(ws, (0.1, 0.3, 0.5, 0.8)), 1e-12)

    def test_detects_dirichlet(self):
        self.assertGreater(recurrence_series_defect(named_space("dirichlet"), (0.5,)), 1e-3)

    def test_tiny_x_tends_to_the_leading_term_ratio(self):
        for x in (1e-100, 1e-160, 1e-170, 1e-300):
            with self.subTest(x=x):
                self.assertAlmostEqual(recurrence_series_defect(named_space("dirichlet"), (x,)), 0.125, places=12)
                self.assertLess(recurrence_series_defect(named_space("hardy"), (x,)), 1e-15)

    def test_grid_must_lie_in_range(self):
        with self.assertRaises(PreconditionError):
            recurrence_series_defect(named_space("hardy"), (0.9,))
        with self.assertRaises(PreconditionError):
            recurrence_series_defect(named_space("hardy"), ())

    def test_short_list_is_clamped(self):
        ws = named_space("explicit", values=SHORT_LIST)
        with self.assertLogs("core.services.verdict", level="WARNING"):
            recurrence_series_defect(ws, (0.5,))
        with self.assertRaises(PreconditionError):
            recurrence_series_defect(named_space("explicit", values=[1.0, 0.5]), (0.5,))


class DichotomyReportTests(SimpleTestCase):
    def test_unitary_family_report(self):
        ws = named_space("hgamma", gamma=2.0)
        symbols = WCOSymbols(F=CanonicalWeight(), phi=Automorphism(1.0, 0.3))
        report = dichotomy_report(ws, symbols, CheckParams(N=128, k=8), space_spec="hgamma:gamma=2")
        payload = report.to_json()
        self.assertEqual(set(payload), {
            "version", "space", "symbols", "N", "k", "defects", "diagnostics", "theoretical",
            "numerical", "agreement", "rationale", "tolerances", "hypothesis",
        })
        self.assertEqual(payload["space"]["spec"], "hgamma:gamma=2")
        self.assertEqual(payload["space"]["class"], "HGamma(2.0)")
        self.assertEqual(payload["space"]["diagonal_sum"], "inf")
        self.assertEqual(payload["theoretical"], "UnitaryExpected")
        self.assertEqual(payload["numerical"], "PassUnitary")
        self.assertIs(payload["agreement"], True)
        self.assertLess(payload["defects"]["functional_identity"], 1e-9)
        self.assertLess(payload["diagnostics"]["recurrence_series"], 1e-12)
        self.assertTrue(report.complete)
        json.dumps(payload, allow_nan=False)

    def test_matrix_at_n_comes_from_the_numerical_verdict(self):
        symbols = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism(lam=-1j, a=0))
        with mock.patch.object(verdict_module, "build_matrix", wraps=verdict_module.build_matrix) as build:
            report = dichotomy_report(named_space("hardy"), symbols, CheckParams(N=32, k=8))
        self.assertEqual([call.args[2] for call in build.call_args_list], [32, 64])
        self.assertAlmostEqual(report.diagnostics["matrix_norm"], 1.0, places=12)

    def test_short_explicit_list_degrades_gracefully(self):
        ws = named_space("explicit", values=SHORT_LIST)
        symbols = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism(lam=-1j, a=0))
        with self.assertLogs("core.services", level="WARNING"):
            report = dichotomy_report(ws, symbols, CheckParams(N=64, k=8))
        payload = report.to_json()
        self.assertEqual(payload["theoretical"], "Indeterminate")
        self.assertEqual(payload["numerical"], "Inconclusive")
        self.assertEqual(payload["agreement"], "n/a")
        self.assertIn("numerical_verdict", report.failures)
        self.assertIn("build_matrix", report.failures)
        self.assertFalse(report.complete)
        self.assertIsNone(payload["defects"]["coisometry"])

    def test_seeded_probes_are_reproducible(self):
        first, second = random_probes(7), random_probes(7)
        self.assertEqual(first, second)
        self.assertTrue(all(abs(p) < 0.5 for p in first))
        self.assertNotEqual(first, random_probes(8))
