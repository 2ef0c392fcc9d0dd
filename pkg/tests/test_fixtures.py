import unittest
from pathlib import Path
from unittest.mock import patch

from twobridge.errors import DomainError, ReportIOError
from twobridge.fixtures import check_fixture, format_table, load_fixtures, parse_fixtures, run_fixtures
from twobridge.models import FixtureRow

FIXTURES_PATH = Path(__file__).resolve().parent.parent / "data" / "fixtures.csv"

HEADER = "name,q,p,braid,homfly\n"


class ParseFixturesTests(unittest.TestCase):
    def test_rows_and_optional_cells(self):
        rows = parse_fixtures(HEADER + "figure-eight,5,2,3,a^-2 - 1 - z^2 + a^2\nwhitehead,8,3,3,\n")
        self.assertEqual(len(rows), 2)
        self.assertEqual(rows[0], FixtureRow(name="figure-eight", q=5, p=2, braid=3, homfly="a^-2 - 1 - z^2 + a^2"))
        self.assertIsNone(rows[1].homfly)

    def test_missing_column(self):
        with self.assertRaises(DomainError):
            parse_fixtures("name,q,p\nhopf,2,1\n")

    def test_non_coprime_row(self):
        with self.assertRaises(DomainError):
            parse_fixtures(HEADER + "bad,6,4,,\n")

    def test_non_integer_cell(self):
        with self.assertRaises(DomainError):
            parse_fixtures(HEADER + "bad,five,2,,\n")

    @patch("twobridge.utils.Path.read_text")
    def test_unreadable_file(self, mock_read_text):
        mock_read_text.side_effect = OSError("permission denied")
        with self.assertRaises(ReportIOError):
            load_fixtures("data/fixtures.csv")


class CheckFixtureTests(unittest.TestCase):
    def test_trefoil_mirror_pair(self):
        left = check_fixture(FixtureRow(name="trefoil-left", q=3, p=1, braid=2, homfly="-a^-4 + 2 a^-2 + a^-2 z^2"))
        right = check_fixture(FixtureRow(name="trefoil-right", q=3, p=2, braid=2, homfly="2 a^2 + a^2 z^2 - a^4"))
        self.assertTrue(left.passed, left.diffs)
        self.assertTrue(right.passed, right.diffs)

    def test_corrupted_row_reports_diff(self):
        result = check_fixture(FixtureRow(name="figure-eight", q=5, p=2, braid=4, homfly="a^2 + a^-2 - z^2 + 1"))
        self.assertFalse(result.passed)
        self.assertEqual(len(result.diffs), 2)
        self.assertIn("braid: expected 4, computed 3", result.diffs[0])
        self.assertTrue(result.diffs[1].startswith("homfly:"))

    def test_bad_polynomial_text(self):
        result = check_fixture(FixtureRow(name="hopf", q=2, p=1, homfly="a^2 +"))
        self.assertFalse(result.passed)
        self.assertTrue(result.diffs[0].startswith("error:"))

    def test_shipped_table_passes(self):
        results = run_fixtures(load_fixtures(FIXTURES_PATH))
        self.assertGreaterEqual(len(results), 10)
        failures = [(r.name, r.diffs) for r in results if not r.passed]
        self.assertEqual(failures, [])

    def test_format_table(self):
        results = [check_fixture(FixtureRow(name="hopf", q=2, p=1, braid=3))]
        table = format_table(results).splitlines()
        self.assertEqual(len(table), 2)
        self.assertIn("FAIL braid: expected 3, computed 2", table[1])
