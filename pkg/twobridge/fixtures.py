"""
Fixture table of named rational knots and links.

Reads data/fixtures.csv (columns name,q,p,braid,homfly), computes the braid
index and HOMFLY polynomial of every row and reports the differences.

Row format:
    figure-eight,5,2,3,a^-2 - 1 - z^2 + a^2

Empty braid / homfly cells are not compared.
"""

import csv
import io
from typing import List

from pydantic import ValidationError

from twobridge.braid import braid_index
from twobridge.errors import DomainError, TwoBridgeError
from twobridge.homfly import homfly
from twobridge.models import FixtureResult, FixtureRow
from twobridge.polynomial import LaurentPoly2
from twobridge.sweep import status
from twobridge.utils import read_text

COLUMNS = ("name", "q", "p", "braid", "homfly")


# ==============================
# Ingestion
# ==============================

def parse_fixtures(text: str, source: str = "<fixtures>") -> List[FixtureRow]:
    reader = csv.DictReader(io.StringIO(text))
    missing = [c for c in COLUMNS if c not in (reader.fieldnames or [])]
    if missing:
        raise DomainError(f"{source}: missing columns {', '.join(missing)}")

    rows: List[FixtureRow] = []
    for line_no, raw in enumerate(reader, start=2):
        cells = {k: (v or "").strip() for k, v in raw.items() if k in COLUMNS}
        if not cells["name"] or cells["name"].startswith("#"):
            continue
        try:
            rows.append(FixtureRow(
                name=cells["name"],
                q=int(cells["q"]),
                p=int(cells["p"]),
                braid=int(cells["braid"]) if cells["braid"] else None,
                homfly=cells["homfly"] or None,
            ))
        except (ValueError, ValidationError) as e:
            raise DomainError(f"{source}, line {line_no}: {e}") from e
    return rows


def load_fixtures(path) -> List[FixtureRow]:
    rows = parse_fixtures(read_text(path), str(path))
    status(f"🔧 Loaded {len(rows)} fixture rows from {path}")
    return rows


# ==============================
# Comparison
# ==============================

def check_fixture(row: FixtureRow) -> FixtureResult:
    diffs: List[str] = []
    computed_braid = None
    computed_text = None
    try:
        poly, _ = homfly(row.q, row.p)
        computed_text = poly.to_text()
        computed_braid = braid_index(row.q, row.p).value

        if row.braid is not None and row.braid != computed_braid:
            diffs.append(f"braid: expected {row.braid}, computed {computed_braid}")
        if row.homfly is not None:
            expected = LaurentPoly2.parse(row.homfly)
            if expected != poly:
                diffs.append(f"homfly: expected {expected.to_text()}, computed {computed_text}")
    except TwoBridgeError as e:
        diffs.append(f"error: {e}")

    return FixtureResult(
        name=row.name,
        q=row.q,
        p=row.p,
        passed=not diffs,
        braid=computed_braid,
        homfly=computed_text,
        diffs=diffs,
    )


def run_fixtures(rows: List[FixtureRow]) -> List[FixtureResult]:
    results = []
    for row in rows:
        result = check_fixture(row)
        if result.passed:
            status(f"✅ {row.name} b({row.q},{row.p})")
        else:
            status(f"❌ {row.name} b({row.q},{row.p}): {'; '.join(result.diffs)}", always=True)
        results.append(result)
    return results


def format_table(results: List[FixtureResult]) -> str:
    width = max([len(r.name) for r in results] + [4])
    lines = [f"{'name':<{width}}  {'q':>6}  {'p':>6}  {'braid':>5}  result"]
    for r in results:
        verdict = "pass" if r.passed else "FAIL " + "; ".join(r.diffs)
        braid = "" if r.braid is None else str(r.braid)
        lines.append(f"{r.name:<{width}}  {r.q:>6}  {r.p:>6}  {braid:>5}  {verdict}")
    return "\n".join(lines)
