import math
import unittest

import sympy

from twobridge.blocks import canonical_block_form
from twobridge.contfrac import ContFrac, ExactRational, expand_even
from twobridge.errors import DomainError, InvariantViolation, NonPreferredDiagramError
from twobridge.homfly import (
    a_span,
    block_factors,
    conway,
    diagram_factors,
    fib,
    homfly,
    homfly_blocks,
    homfly_even,
    homfly_matrices,
    homfly_pipelines,
    m_matrix,
    m_power,
    mfw_bound,
    mirror_homfly,
    parity_ok,
    subst_a_inverse,
)
from twobridge.link import build_diagram
from twobridge.polynomial import FibPoly, LaurentPoly2, Mat2

P = LaurentPoly2.parse

FIGURE_EIGHT = P("a^-2 - 1 - z^2 + a^2")
TREFOIL = P("2 a^2 + a^2 z^2 - a^4")
HOPF = P("-a z^-1 - a z + a^3 z^-1")


class FibonacciTests(unittest.TestCase):
    def test_matches_sympy(self):
        x = sympy.Symbol("x")
        for n in range(1, 25):
            self.assertEqual(sympy.expand(fib(n).to_sympy(x) - sympy.fibonacci(n, x)), 0, msg=f"F_{n}")

    def test_recurrence(self):
        x = FibPoly.x()
        self.assertEqual(fib(-1), FibPoly((1,)))
        self.assertEqual(fib(0), FibPoly())
        for n in range(0, 40):
            self.assertEqual(fib(n + 1), x * fib(n) + fib(n - 1), msg=f"F_{n + 1}")

    def test_below_minus_one(self):
        with self.assertRaises(DomainError):
            fib(-2)


class MatrixTests(unittest.TestCase):
    def test_m_matrix_against_rational_form(self):
        a, z = sympy.symbols("a z")
        for c in range(-10, 11, 2):
            m = m_matrix(c)
            if c == 0:
                self.assertEqual(m, Mat2.identity())
                continue
            expected = (1 - a ** (-c)) * a * z / (a**2 - 1)
            self.assertEqual(sympy.cancel(expected - m.p11.to_sympy()), 0, msg=f"M({c})")
            self.assertEqual(m.p12, LaurentPoly2.monomial(1, -c, 0))

    def test_small_cases(self):
        self.assertEqual(m_matrix(2), Mat2(P("a^-1 z"), P("a^-2"), 1, 0))
        self.assertEqual(m_matrix(-2), Mat2(P("-a z"), P("a^2"), 1, 0))

    def test_odd_argument(self):
        with self.assertRaises(DomainError):
            m_matrix(3)

    def test_powers(self):
        for s in (1, -1):
            for n in range(0, 13):
                self.assertEqual(m_power(s, n), m_matrix(2 * s) ** n, msg=f"M({2 * s})^{n}")


class PipelineTests(unittest.TestCase):
    def test_desk_examples(self):
        self.assertEqual(homfly(5, 2), (FIGURE_EIGHT, False))
        self.assertEqual(homfly(3, 2), (TREFOIL, False))
        self.assertEqual(homfly(2, 1), (HOPF, False))
        self.assertEqual(homfly(1, 0), (LaurentPoly2.const(1), False))
        self.assertEqual(homfly(3, 1), (subst_a_inverse(TREFOIL), True))
        self.assertEqual(homfly(4, 1)[0], P("-a z - a^3 z^-1 - a^3 z + a^5 z^-1"))
        self.assertEqual(homfly(4, 3)[0], P("-a^3 z^-1 - 3 a^3 z - a^3 z^3 + a^5 z^-1 + a^5 z"))

    def test_figure_eight_text(self):
        self.assertEqual(homfly(5, 2)[0].to_text(), "a^-2 - 1 - z^2 + a^2")

    def test_even_form_product(self):
        self.assertEqual(homfly_even(ContFrac((0, 2, -2))), TREFOIL)
        self.assertEqual(homfly_even(ContFrac((0,))), LaurentPoly2.const(1))
        with self.assertRaises(DomainError):
            homfly_even(ContFrac((0, 2, 3)))

    def test_block_factors(self):
        r = ExactRational.of(3244, 4195)
        cf, dec = canonical_block_form(r)
        self.assertEqual(cf.terms, (0, 1, 3, 2, 2, 3, 5, 3, 3))
        factors = block_factors(cf, dec)
        self.assertEqual(factors, [(-2, 1), (-2, 2), (-4, 1), (-2, 1), (-4, 1), (6, 1), (2, 2), (4, 1)])
        even = homfly_even(expand_even(r))
        self.assertEqual(homfly_blocks(cf, dec), even)
        self.assertEqual(homfly_blocks(cf, dec, sigma1=1), subst_a_inverse(even))

    def test_block_factors_reject_exceptional(self):
        cf, dec = canonical_block_form(ExactRational.of(1, 3))
        with self.assertRaises(DomainError):
            block_factors(cf, dec)

    def test_diagram_pipeline(self):
        self.assertEqual(homfly_matrices(build_diagram(5, 2)), FIGURE_EIGHT)
        self.assertEqual(diagram_factors(build_diagram(1, 0)), [])
        with self.assertRaises(NonPreferredDiagramError):
            diagram_factors(build_diagram(53, 23))

    def test_pipelines_agree(self):
        for q in range(2, 121):
            for p in range(1, q):
                if math.gcd(p, q) != 1 or (p * q) % 2:
                    continue
                values = homfly_pipelines(q, p)
                self.assertEqual(len(set(values.values())), 1, msg=f"b({q},{p})")

    def test_pipelines_need_pq_even(self):
        with self.assertRaises(DomainError):
            homfly_pipelines(5, 1)


class DerivedQuantityTests(unittest.TestCase):
    def test_a_span_and_bound(self):
        self.assertEqual(a_span(FIGURE_EIGHT), (-2, 2))
        self.assertEqual(mfw_bound(FIGURE_EIGHT), 3)
        self.assertEqual(a_span(HOPF), (1, 3))
        self.assertEqual(mfw_bound(HOPF), 2)
        self.assertEqual(mfw_bound(TREFOIL), 2)
        self.assertEqual(mfw_bound(homfly(4, 1)[0]), 3)
        self.assertEqual(mfw_bound(homfly(4, 3)[0]), 2)

    def test_mixed_parity(self):
        with self.assertRaises(InvariantViolation):
            mfw_bound(P("1 + a"))

    def test_conway(self):
        self.assertEqual(conway(FIGURE_EIGHT), P("1 - z^2"))
        self.assertEqual(conway(TREFOIL), P("1 + z^2"))
        self.assertEqual(conway(HOPF), P("-z"))
        self.assertEqual(conway(homfly(4, 3)[0]), P("-2 z - z^3"))
        self.assertEqual(conway(homfly(4, 1)[0]), P("-2 z"))

    def test_parity(self):
        self.assertTrue(parity_ok(FIGURE_EIGHT, 5))
        self.assertTrue(parity_ok(HOPF, 2))
        self.assertFalse(parity_ok(HOPF, 5))
        self.assertFalse(parity_ok(FIGURE_EIGHT, 2))

    def test_mirror_law(self):
        for q in range(2, 80):
            for p in range(1, q):
                if math.gcd(p, q) != 1 or (p * q) % 2:
                    continue
                even = expand_even(ExactRational.of(p, q))
                negated = ContFrac((0,) + tuple(-c for c in even.tail))
                self.assertEqual(homfly_even(negated), mirror_homfly(homfly_even(even)), msg=f"b({q},{p})")

    def test_mirror_of_two_component_link_flips_sign(self):
        mirrored = homfly_even(ContFrac((0, -2)))
        self.assertEqual(mirrored, P("-a^-3 z^-1 + a^-1 z^-1 + a^-1 z"))
        self.assertEqual(mirror_homfly(HOPF), mirrored)
        self.assertEqual(subst_a_inverse(HOPF), -mirrored)

    def test_mirror_of_knot_is_plain_substitution(self):
        self.assertEqual(mirror_homfly(TREFOIL), subst_a_inverse(TREFOIL))
        self.assertEqual(mirror_homfly(mirror_homfly(HOPF)), HOPF)
