import json
import os
import tempfile
import unittest
from pathlib import Path
from unittest.mock import patch

from pydantic import ValidationError

from twobridge import sweep
from twobridge.errors import ReportIOError, UsageError
from twobridge.models import LinkRecord, SweepParameters, SweepReport, SweepSummary
from twobridge.sweep import CHECKS, check_link, link_pairs, parse_checks, run_sweep, write_report


class CheckLinkTests(unittest.TestCase):
    def test_preferred_link_passes_everything(self):
        record = check_link(53, 30)
        self.assertEqual(record.errors, [])
        self.assertEqual(set(record.checks), set(CHECKS))
        self.assertTrue(record.passed)
        self.assertEqual(set(record.braid.values()), {5})
        self.assertEqual(record.mfw_bound, 5)
        self.assertEqual(len(record.homfly_digest), 16)

    def test_knot_uses_mirror(self):
        record = check_link(5, 1)
        self.assertTrue(record.passed, record.errors)
        self.assertIn("signed_vector_direct", record.braid)

    def test_two_component_links_pass_mirror_and_braid(self):
        for q, p in [(2, 1), (4, 1), (4, 3), (8, 3), (10, 3)]:
            record = check_link(q, p, ["mirror", "braid"])
            self.assertTrue(record.passed, record.errors)

    def test_failing_check_is_recorded(self):
        def boom(q, p, record):
            raise RuntimeError("disagreement injected")

        with patch.dict(sweep._CHECK_FUNCTIONS, {"mfw": boom}):
            record = check_link(5, 2, ["contfrac", "mfw"])
        self.assertTrue(record.checks["contfrac"])
        self.assertFalse(record.checks["mfw"])
        self.assertEqual(record.errors, ["mfw: RuntimeError: disagreement injected"])


class RunSweepTests(unittest.TestCase):
    def test_small_sweep(self):
        report = run_sweep(12, jobs=1)
        self.assertTrue(report.ok)
        self.assertEqual(report.summary.links, 45)
        self.assertEqual(report.summary.failed, 0)
        keys = [(r.q, r.p) for r in report.records]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(keys, list(link_pairs(12)))

    def test_wider_sweep_of_core_checks(self):
        report = run_sweep(60, checks=["braid", "homfly", "mfw", "schubert"], jobs=1)
        self.assertTrue(report.ok, report.summary.failures_by_check)

    def test_failures_are_tallied(self):
        def boom(q, p, record):
            if q == 5:
                raise RuntimeError("bad")

        with patch.dict(sweep._CHECK_FUNCTIONS, {"mfw": boom}):
            report = run_sweep(6, checks=["mfw"], jobs=1)
        self.assertFalse(report.ok)
        self.assertEqual(report.summary.failed, 4)
        self.assertEqual(report.summary.failures_by_check, {"mfw": 4})

    def test_usage_errors(self):
        with self.assertRaises(UsageError):
            run_sweep(1)
        with self.assertRaises(UsageError):
            run_sweep(5, checks=["nope"])
        with self.assertRaises(UsageError):
            parse_checks("mfw,nope")
        self.assertEqual(parse_checks(None), list(CHECKS))
        self.assertEqual(parse_checks(" mfw , braid "), ["mfw", "braid"])


@unittest.skipUnless(os.getenv("TWOBRIDGE_SLOW_TESTS") == "1", "set TWOBRIDGE_SLOW_TESTS=1 for acceptance-scale sweeps")
class AcceptanceSweepTests(unittest.TestCase):
    def test_every_check_up_to_300(self):
        report = run_sweep(300, jobs=0)
        self.assertEqual(report.summary.failures_by_check, {})
        self.assertTrue(report.ok)


class ReportTests(unittest.TestCase):
    def test_summary_must_match_records(self):
        record = LinkRecord(q=2, p=1, checks={"mfw": False})
        with self.assertRaises(ValidationError):
            SweepReport(
                parameters=SweepParameters(max_q=2),
                records=[record],
                summary=SweepSummary(links=1, passed=1, failed=0),
            )

    def test_records_must_be_ordered(self):
        records = [LinkRecord(q=3, p=1), LinkRecord(q=2, p=1)]
        with self.assertRaises(ValidationError):
            SweepReport(parameters=SweepParameters(max_q=3), records=records, summary=SweepSummary.tally(records))

    def test_json_round_trip_is_byte_identical(self):
        report = run_sweep(8, checks=["braid", "mfw"], jobs=1)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            write_report(report, path)
            text = path.read_text(encoding="utf-8")
        again = SweepReport.model_validate_json(text).model_dump_json(indent=2) + "\n"
        self.assertEqual(again, text)
        self.assertEqual(json.loads(text)["summary"]["links"], report.summary.links)

    @patch("twobridge.utils.os.replace")
    def test_write_failure_is_reported(self, mock_replace):
        mock_replace.side_effect = OSError("disk full")
        report = run_sweep(3, checks=["contfrac"], jobs=1)
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "report.json"
            with self.assertRaises(ReportIOError):
                write_report(report, path)
            self.assertFalse(path.exists())
            self.assertEqual(list(Path(tmp).iterdir()), [])
