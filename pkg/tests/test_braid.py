import math
import unittest

from twobridge.blocks import canonical_block_form
from twobridge.braid import (
    braid_index,
    braid_index_dl,
    braid_index_preferred,
    cm_index,
    cm_index_blocks,
    preferred_diagram_formula,
)
from twobridge.contfrac import ContFrac, ExactRational
from twobridge.errors import DomainError, NonPreferredDiagramError
from twobridge.link import SignedVector, build_diagram, complement_signed_vector, signed_vector
from twobridge.models import BraidIndexReport

K = (3, 2, 3, 3, -1, -2, -3, 4, -4)
K_PRIME = (-3, -2, -3, 3, 1, 2, 3, 4, 4)


class CromwellMurasugiTests(unittest.TestCase):
    def test_even_form_examples(self):
        cases = {
            (0, 2, -2, 2, -4, 2, -4, -6, 4): 8,
            (0, 2, -2, 4, -2, 2, -4, -2, 2, -4, -4, -4): 10,
            (0, 4, -2, 4, 4, -4, 2, -2, 6, -2, 2, -2): 9,
            (0,): 1,
            (0, 2, -2): 2,
            (0, 4): 3,
            (0, 2, -2, 2): 2,
        }
        for terms, expected in cases.items():
            self.assertEqual(cm_index(ContFrac(terms)), expected, msg=str(terms))

    def test_odd_term_rejected(self):
        with self.assertRaises(DomainError):
            cm_index(ContFrac((0, 2, 3)))

    def test_block_sum(self):
        cf, dec = canonical_block_form(ExactRational.of(1402, 1813))
        self.assertEqual(cm_index_blocks(cf, dec), 8)

    def test_block_sum_rejects_exceptional(self):
        cf, dec = canonical_block_form(ExactRational.of(1, 3))
        with self.assertRaises(DomainError):
            cm_index_blocks(cf, dec)


class PreferredDiagramTests(unittest.TestCase):
    def test_preferred_examples(self):
        self.assertEqual(braid_index_preferred(build_diagram(53, 30)), 5)
        self.assertEqual(braid_index_preferred(build_diagram(17426, 12351)), 10)
        self.assertEqual(braid_index_preferred(build_diagram(17426, 5075)), 9)
        self.assertEqual(braid_index_preferred(build_diagram(1, 0)), 1)

    def test_non_preferred_rejected(self):
        d = build_diagram(53, 23)
        with self.assertRaises(NonPreferredDiagramError):
            braid_index_preferred(d)
        # the raw formula undercounts on this diagram
        self.assertEqual(preferred_diagram_formula(d.terms, d.crossing_signs), 3)


class SignedVectorFormulaTests(unittest.TestCase):
    def test_vectors(self):
        self.assertEqual(braid_index_dl(K, -1), 10)
        self.assertEqual(braid_index_dl(K_PRIME, -1), 9)
        self.assertEqual(braid_index_dl(complement_signed_vector(SignedVector(K, -1))), 10)
        self.assertEqual(braid_index_dl(signed_vector(build_diagram(53, 30), -1)), 5)

    def test_empty_vector(self):
        self.assertEqual(braid_index_dl((), -1), 1)

    def test_both_conventions(self):
        d = build_diagram(17426, 12351)
        self.assertEqual(braid_index_dl(signed_vector(d, 1)), 10)
        self.assertEqual(braid_index_dl(signed_vector(d, -1)), 10)

    def test_negation_keeps_value(self):
        for entries in (K, K_PRIME, (4,), (-1, -2, -1)):
            sv = SignedVector(entries, -1)
            self.assertEqual(braid_index_dl(-sv), braid_index_dl(sv))

    def test_complement_keeps_value(self):
        for q in range(2, 150):
            for p in range(1, q):
                if math.gcd(p, q) != 1 or (p * q) % 2:
                    continue
                for convention in (-1, 1):
                    sv = signed_vector(build_diagram(q, p), convention)
                    self.assertEqual(
                        braid_index_dl(complement_signed_vector(sv)), braid_index_dl(sv), msg=f"b({q},{p}) {sv}"
                    )

    def test_reorientation_changes_value(self):
        self.assertEqual(braid_index_dl(signed_vector(build_diagram(4, 1), -1)), 3)
        self.assertEqual(braid_index_dl(signed_vector(build_diagram(4, 1, preferred=False), -1)), 2)

    def test_bad_convention(self):
        with self.assertRaises(DomainError):
            braid_index_dl((1,), 2)


class BraidIndexTests(unittest.TestCase):
    def test_known_values(self):
        cases = {
            (1813, 1402): 8,
            (17426, 12351): 10,
            (17426, 5075): 9,
            (53, 30): 5,
            (4, 1): 3,
            (4, 3): 2,
            (3, 1): 2,
            (3, 2): 2,
            (5, 2): 3,
            (5, 1): 2,
            (7, 2): 3,
            (7, 3): 3,
            (8, 3): 3,
            (9, 2): 4,
            (1, 0): 1,
        }
        for (q, p), expected in cases.items():
            self.assertEqual(braid_index(q, p).value, expected, msg=f"b({q},{p})")

    def test_report_shape(self):
        report = braid_index(3, 1)
        self.assertIsInstance(report, BraidIndexReport)
        self.assertTrue(report.used_mirror)
        self.assertIn("signed_vector_direct", report.formulas)
        self.assertEqual(set(report.formulas.values()), {2})

        report = braid_index(1813, 1402)
        self.assertFalse(report.used_mirror)
        self.assertEqual(
            sorted(report.formulas),
            ["block_sum", "cromwell_murasugi", "preferred_diagram", "signed_vector", "signed_vector_plus"],
        )

    def test_invalid_pair(self):
        with self.assertRaises(DomainError):
            braid_index(6, 4)

    def test_all_formulas_agree(self):
        for q in range(2, 151):
            for p in range(1, q):
                if math.gcd(p, q) == 1:
                    report = braid_index(q, p)
                    self.assertEqual(len(set(report.formulas.values())), 1, msg=f"b({q},{p})")
