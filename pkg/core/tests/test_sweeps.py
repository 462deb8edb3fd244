import io

from django.test import SimpleTestCase
from openpyxl import load_workbook

from core.services.moebius import Automorphism
from core.services.operator import WCOSymbols
from core.services.series import TruncatedSeries
from core.services.sweeps import coisometry_ladder, ladder_csv, ladder_xlsx
from core.services.weights import named_space


class LadderTests(SimpleTestCase):
    def setUp(self):
        self.rotation = WCOSymbols(F=TruncatedSeries([1j]), phi=Automorphism(lam=-1j, a=0))
        self.constant = WCOSymbols(F=TruncatedSeries([1.0]), phi=Automorphism(1.0, 0.5))

    def test_ladder_frame(self):
        frame = coisometry_ladder(named_space("hardy"), self.rotation, [16, 32], k=8)
        self.assertEqual(list(frame.columns), ["N", "defect"])
        self.assertEqual(frame["N"].tolist(), [16, 32])
        self.assertEqual(frame["defect"].tolist(), [0.0, 0.0])

    def test_block_is_capped_by_the_truncation(self):
        frame = coisometry_ladder(named_space("dirichlet"), self.constant, [4, 64], k=16)
        self.assertEqual(len(frame), 2)
        self.assertGreater(frame["defect"].min(), 0.1)

    def test_csv(self):
        frame = coisometry_ladder(named_space("hardy"), self.rotation, [16, 32], k=8)
        self.assertEqual(ladder_csv(frame), "N,defect\n16,0\n32,0\n")

    def test_xlsx(self):
        frame = coisometry_ladder(named_space("dirichlet"), self.constant, [32, 64], k=8)
        wb = load_workbook(io.BytesIO(ladder_xlsx(frame, "dirichlet")))
        sheet = wb.active
        self.assertEqual(sheet.title, "dirichlet")
        rows = list(sheet.iter_rows(values_only=True))
        self.assertEqual(rows[0], ("N", "defect"))
        self.assertEqual([r[0] for r in rows[1:]], [32, 64])
        self.assertAlmostEqual(rows[1][1], frame["defect"].iloc[0], places=12)
