import json
import tempfile
from pathlib import Path

from django.test import SimpleTestCase

from core.services.errors import SpecError
from core.services.literals import (
    load_series, load_weights, parse_automorphism, parse_complex, parse_space, parse_symbols,
    parse_weight,
)
from core.services.moebius import Automorphism
from core.services.operator import CanonicalWeight, ForcedWeight
from core.services.series import TruncatedSeries
from core.services.weights import Origin


class JsonFileMixin:
    def setUp(self):
        super().setUp()
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def write(self, name: str, payload) -> str:
        path = Path(self.tmp.name) / name
        path.write_text(payload if isinstance(payload, str) else json.dumps(payload), encoding="utf-8")
        return str(path)


class ComplexLiteralTests(SimpleTestCase):
    def test_valid_literals(self):
        self.assertEqual(parse_complex("1+0i"), 1 + 0j)
        self.assertEqual(parse_complex("0.5-0.25i"), 0.5 - 0.25j)
        self.assertEqual(parse_complex("-0.2-0.2i"), -0.2 - 0.2j)
        self.assertEqual(parse_complex("2"), 2 + 0j)
        self.assertEqual(parse_complex("1e-3+2e-1i"), 0.001 + 0.2j)

    def test_invalid_literals(self):
        for text in ("", "1 + 2i", "abc", "1+2k", "nan", "inf+0i"):
            with self.subTest(text=text), self.assertRaises(SpecError):
                parse_complex(text)


class SpaceLiteralTests(JsonFileMixin, SimpleTestCase):
    def test_named_spaces(self):
        self.assertIs(parse_space("hardy").origin, Origin.HARDY)
        self.assertEqual(parse_space("hgamma:gamma=2").label, "hgamma:gamma=2.0")
        self.assertEqual(parse_space("bergman:alpha=1").gamma(1), 3.0)
        self.assertIs(parse_space("dirichlet").origin, Origin.DIRICHLET)
        self.assertIs(parse_space("bounded-log").origin, Origin.BOUNDED_LOG)

    def test_bad_spaces(self):
        for text in ("foo", "hgamma", "hgamma:gamma=0", "bergman:alpha=-1", "hardy:x=1",
                     "hgamma:gamma=two", "seq:"):
            with self.subTest(text=text), self.assertRaises(SpecError):
                parse_space(text)

    def test_sequence_file(self):
        path = self.write("weights.json", {"gamma": [1.0, 0.5, 0.25], "comment": "halving"})
        ws = parse_space(f"seq:{path}")
        self.assertIs(ws.origin, Origin.EXPLICIT)
        self.assertEqual(ws.n_max, 2)

    def test_bad_sequence_files(self):
        cases = {
            "missing.json": None,
            "broken.json": "{not json",
            "list.json": [1.0, 0.5],
            "nogamma.json": {"comment": "x"},
            "zero.json": {"gamma": [0.0, 1.0]},
            "negative.json": {"gamma": [1.0, -0.5]},
            "comment.json": {"gamma": [1.0], "comment": 3},
        }
        for name, payload in cases.items():
            path = str(Path(self.tmp.name) / name) if payload is None else self.write(name, payload)
            with self.subTest(file=name), self.assertRaises(SpecError):
                load_weights(path)


class SymbolLiteralTests(JsonFileMixin, SimpleTestCase):
    def test_automorphisms(self):
        aut = parse_automorphism("aut:lambda=1+0i,a=0.5+0i")
        self.assertEqual((aut.lam, aut.a), (1 + 0j, 0.5 + 0j))
        rot = parse_automorphism("rot:theta=0")
        self.assertEqual(rot.apply(0.25), 0.25)
        self.assertEqual(parse_automorphism("aut:lambda=0+1i").a, 0)

    def test_bad_automorphisms(self):
        for text in ("aut:lambda=1+0i,a=1+0i", "aut:a=0.5+0i", "rot:", "rot:theta=x", "mobius:1", "aut:lambda=0"):
            with self.subTest(text=text), self.assertRaises(SpecError):
                parse_automorphism(text)

    def test_weights(self):
        self.assertEqual(parse_weight("auto-unitary"), CanonicalWeight(1.0))
        self.assertEqual(parse_weight("forced:nu=0+1i"), ForcedWeight(1j))
        const = parse_weight("const:0+1i")
        self.assertIsInstance(const, TruncatedSeries)
        self.assertEqual(const.coeffs[0], 1j)
        with self.assertRaises(SpecError):
            parse_weight("bogus")
        with self.assertRaises(SpecError):
            parse_weight("auto-unitary:mu=1")

    def test_series_files(self):
        path = self.write("phi.json", {"re": [0.0, 0.5], "im": [0.0, 0.0]})
        symbols = parse_symbols("const:1", f"series:{path}")
        self.assertIsInstance(symbols.phi, TruncatedSeries)
        self.assertEqual(symbols.describe(), {"F": "const:1", "phi": f"series:{path}"})
        for payload in ({"re": [0.1]}, {"re": [1.0], "im": [0.0, 1.0]}, {"re": [], "im": []}):
            with self.subTest(payload=payload), self.assertRaises(SpecError):
                load_series(self.write("bad.json", payload))

    def test_symbols_keep_their_literals(self):
        symbols = parse_symbols("auto-unitary", "aut:lambda=1+0i,a=0.5+0i")
        self.assertIsInstance(symbols.phi, Automorphism)
        self.assertEqual(symbols.describe()["phi"], "aut:lambda=1+0i,a=0.5+0i")

    def test_self_map_must_fix_the_disk(self):
        path = self.write("outside.json", {"re": [1.5, 0.0], "im": [0.0, 0.0]})
        with self.assertRaises(SpecError):
            parse_symbols("const:1", f"series:{path}")
