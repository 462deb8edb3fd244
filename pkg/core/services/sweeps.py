"""
Co-isometry defect ladders under N-doubling, with CSV and XLSX writers.
"""
import io
import logging

import pandas as pd
from openpyxl import Workbook

from core.conf import or_setting
from .operator import WCOSymbols, build_matrix, coisometry_defect
from .weights import WeightSequence

logger = logging.getLogger(__name__)

COLUMNS = ("N", "defect")


def coisometry_ladder(ws: WeightSequence, symbols: WCOSymbols, ladder=None, k: int | None = None) -> pd.DataFrame:
    """One row (N, ‖[AA* − I]_{k×k}‖_F) per truncation of the ladder."""
    ladder = [int(n) for n in or_setting(ladder, "SWEEP_LADDER")]
    k = or_setting(k, "BLOCK_K")
    rows = []
    for N in ladder:
        defect = coisometry_defect(build_matrix(ws, symbols, N), min(k, N))
        logger.debug("sweep %s N=%d defect=%.3e", ws.label, N, defect)
        rows.append((N, defect))
    return pd.DataFrame(rows, columns=list(COLUMNS))


def ladder_csv(frame: pd.DataFrame) -> str:
    """``N,defect`` header followed by one line per rung."""
    return frame.to_csv(index=False, lineterminator="\n", float_format="%.17g")


def ladder_xlsx(frame: pd.DataFrame, title: str = "coisometry") -> bytes:
    wb = Workbook()
    sheet = wb.active
    sheet.title = title[:31]
    sheet.append(list(COLUMNS))
    for N, defect in frame.itertuples(index=False):
        sheet.append([int(N), float(defect)])
    sheet.column_dimensions["B"].width = 24
    buf = io.BytesIO()
    wb.save(buf)
    return buf.getvalue()
