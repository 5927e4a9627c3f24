"""CSV and JSON emitters for lambda reports and verification runs.

CSV is UTF-8 with LF line endings and a mandatory header.  Gensets are
written as ``{f, r^1*f}`` and witnesses as ``(g, s)`` / ``(g, s, s')``, both in
the element grammar so every cell re-parses.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .group import format_element
from .presentations import VerificationRecord
from .wordlen import LambdaReport

LAMBDA_COLUMNS = ["n", "genset", "class", "lambda1", "lambda2", "diameter", "witness1", "witness2"]
VERIFY_COLUMNS = LAMBDA_COLUMNS + ["predicted_l1", "predicted_l2", "verdict"]


def format_witness(elements) -> str:
    return "(" + ", ".join(format_element(e) for e in elements) + ")"


def lambda_row(report: LambdaReport, cls: str = "") -> list:
    S = report.genset
    return [S.n, S.elements_text(), cls, report.lambda1, report.lambda2, report.diameter,
            format_witness(report.witness1), format_witness(report.witness2)]


def verify_row(r: VerificationRecord) -> list:
    return lambda_row(r.observed, str(r.family)) + [
        r.predicted.describe(1), r.predicted.describe(2), str(r.verdict)]


def _csv_text(header: list[str], rows: Iterable[list]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def lambda_csv(reports: Iterable[tuple[LambdaReport, str]]) -> str:
    return _csv_text(LAMBDA_COLUMNS, (lambda_row(rep, cls) for rep, cls in reports))


def verify_csv(records: Iterable[VerificationRecord]) -> str:
    return _csv_text(VERIFY_COLUMNS, (verify_row(r) for r in records))


def lambda_dict(report: LambdaReport, cls: str = "") -> dict:
    S = report.genset
    return {
        "n": S.n,
        "genset": S.elements_text(),
        "class": cls,
        "lambda1": report.lambda1,
        "lambda2": report.lambda2,
        "diameter": report.diameter,
        "witness1": [format_element(e) for e in report.witness1],
        "witness2": [format_element(e) for e in report.witness2],
    }


def to_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"

