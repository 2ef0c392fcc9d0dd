"""
HOMFLY polynomial of rational links.

Responsibilities:
- Twist matrices M(2r) over Z[a^+-1, z^+-1] and their powers via Fibonacci polynomials
- Three independent products: over the all-even form, over primitive blocks,
  and term by term over a preferred diagram
- Mirror substitution a -> -1/a, a-span and the braid-index lower bound it gives

Every product is read as row (1, 0) times the matrices times the column
(1, (a^2 - 1)/(a z)), with the factor of the first term next to the column.
"""

from math import comb
from typing import Dict, Iterable, List, Optional, Tuple

from twobridge.blocks import BlockDecomposition, BlockKind, canonical_block_form, term_rule
from twobridge.contfrac import ContFrac, ExactRational, expand_even, sign
from twobridge.errors import DomainError, FormulaDisagreement, InvariantViolation, NonPreferredDiagramError
from twobridge.link import AnnotatedDiagram, build_diagram, validate_pair
from twobridge.polynomial import FibPoly, LaurentPoly2, Mat2

# (a^2 - 1) / (a z) with the denominator cleared
BOUNDARY = LaurentPoly2({(1, -1): 1, (-1, -1): -1})

Factor = Tuple[int, int]  # (even argument, power)


# ==============================
# Matrices
# ==============================

def fib(n: int) -> FibPoly:
    """F_n(x) = sum_j C(n-1-j, j) x^(n-1-2j), with F_0 = 0 and F_-1 = 1."""
    if n < -1:
        raise DomainError(f"Fibonacci polynomials start at n = -1, got {n}")
    if n == -1:
        return FibPoly((1,))
    if n == 0:
        return FibPoly()
    coefficients = [0] * n
    for j in range((n - 1) // 2 + 1):
        coefficients[n - 1 - 2 * j] = comb(n - 1 - j, j)
    return FibPoly(coefficients)


def m_matrix(c: int) -> Mat2:
    """
    M(2r) = [[(1 - a^-2r) a z / (a^2 - 1), a^-2r], [1, 0]] with the
    geometric sum written out; M(0) is the identity.
    """
    if c % 2:
        raise DomainError(f"twist matrices take even arguments, got {c}")
    if c == 0:
        return Mat2.identity()
    r = c // 2
    top_left = LaurentPoly2()
    if r > 0:
        for k in range(1, r + 1):
            top_left.add_term(1, -(2 * k - 1), 1)
    else:
        for k in range(1, -r + 1):
            top_left.add_term(-1, 2 * k - 1, 1)
    return Mat2(top_left, LaurentPoly2.monomial(1, -c), 1, 0)


def m_power(sign_: int, n: int) -> Mat2:
    """M(2 sign_)^n in closed form through F_{n+1}, F_n, F_{n-1}."""
    if sign_ not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign_}")
    if n < 0:
        raise DomainError(f"power must be non-negative, got {n}")
    s = sign_
    return Mat2(
        fib(n + 1).to_laurent(-s * n, s),
        fib(n).to_laurent(-s * (n + 1), s),
        fib(n).to_laurent(-s * (n - 1), s),
        fib(n - 1).to_laurent(-s * n, s),
    )


def _factor_matrix(argument: int, power: int) -> Mat2:
    if power == 1:
        return m_matrix(argument)
    if abs(argument) != 2:
        return m_matrix(argument) ** power
    return m_power(sign(argument), power)


def _close(factors: Iterable[Mat2]) -> LaurentPoly2:
    """(1, 0) . F1 F2 ... Fk . (1, BOUNDARY), folded as a row vector."""
    left, right = LaurentPoly2.const(1), LaurentPoly2()
    for m in factors:
        left, right = left * m.p11 + right * m.p21, left * m.p12 + right * m.p22
    return left + right * BOUNDARY


# ==============================
# Pipelines
# ==============================

def homfly_even(cf: ContFrac) -> LaurentPoly2:
    if cf.terms[0] != 0:
        raise DomainError(f"expected [0, c1, ..., cn], got {cf}")
    tail = cf.tail
    if any(c == 0 or c % 2 for c in tail):
        raise DomainError(f"{cf} needs nonzero even terms after c0")
    n = len(tail)
    return _close(m_matrix((-1) ** i * tail[i - 1]) for i in range(n, 0, -1))


def block_factors(cf: ContFrac, dec: BlockDecomposition, sigma1: Optional[int] = None) -> List[Factor]:
    """
    Matrix factors of the block product in reading order (first block first,
    c_m first inside a block). The factor sign is constant on a block and
    alternates from sigma1; by default sigma1 = -sign(c1).
    """
    if dec.source != cf:
        raise DomainError("decomposition does not belong to this continued fraction")
    if cf.terms[0] != 0:
        raise DomainError(f"expected [0, c1, ..., cn], got {cf}")
    if dec.has_exceptional:
        raise DomainError(f"{dec} has an exceptional block")
    blocks = [b for b in dec.blocks if b.start > 0]
    if not blocks:
        return []
    if sigma1 is None:
        sigma1 = -sign(blocks[0].terms[0])
    if sigma1 not in (1, -1):
        raise DomainError(f"sigma1 must be +1 or -1, got {sigma1}")

    factors: List[Factor] = []
    sigma = sigma1
    for block in blocks:
        t = [abs(c) for c in block.terms]
        if block.kind is BlockKind.TRIVIAL:
            factors.append((sigma * t[0], 1))
        else:
            k = len(t) // 2
            factors.append((sigma * (t[0] + 1), 1))
            for i in range(1, k + 1):
                factors.append((2 * sigma, t[2 * i - 1] - 1))
                factors.append((sigma * (t[2 * i] + (1 if i == k else 2)), 1))
        sigma = -sigma
    return factors


def homfly_blocks(cf: ContFrac, dec: BlockDecomposition, sigma1: Optional[int] = None) -> LaurentPoly2:
    factors = block_factors(cf, dec, sigma1)
    return _close(_factor_matrix(arg, power) for arg, power in reversed(factors))


def diagram_factors(d: AnnotatedDiagram) -> List[Factor]:
    """
    One factor per term a_i of a preferred diagram, sign -eps(a_i):
    rules 1 and 2 use |a_i| (+1 when odd), rule 3 adds 1 or 2 to reach an
    even argument, rule 4 is M(-2 eps)^(|a_i| - 1).
    """
    if not d.preferred:
        raise NonPreferredDiagramError(f"b({d.q},{d.p}) is not in preferred form")
    if d.is_unknot:
        return []
    s = sign(d.terms[0])
    factors: List[Factor] = []
    for i, (a, e) in enumerate(zip(d.terms, d.crossing_signs), start=1):
        rule = term_rule(d.crossing_signs, i, s)
        m = abs(a)
        odd = m % 2 == 1
        if rule in (1, 2):
            factors.append((-e * (m + 1 if odd else m), 1))
        elif rule == 3:
            factors.append((-e * (m + 1 if odd else m + 2), 1))
        else:
            factors.append((-2 * e, m - 1))
    return factors


def homfly_matrices(d: AnnotatedDiagram) -> LaurentPoly2:
    factors = diagram_factors(d)
    return _close(_factor_matrix(arg, power) for arg, power in reversed(factors))


def homfly(q: int, p: int) -> Tuple[LaurentPoly2, bool]:
    """
    HOMFLY polynomial of b(q, p), preferred orientation when it exists.
    For pq odd the mirror b(q, q - p) is computed and mapped back with a -> -1/a.
    """
    validate_pair(q, p)
    if q == 1:
        return LaurentPoly2.const(1), False
    if (p * q) % 2:
        mirrored, _ = homfly(q, q - p)
        return mirror_homfly(mirrored), True
    return homfly_even(expand_even(ExactRational.of(p, q))), False


def homfly_pipelines(q: int, p: int) -> Dict[str, LaurentPoly2]:
    """All three products for a pq-even link; raises when they differ."""
    validate_pair(q, p)
    if (p * q) % 2:
        raise DomainError(f"b({q},{p}) has pq odd; compute b({q},{q - p}) instead")
    r = ExactRational.of(p, q)
    cf, dec = canonical_block_form(r)
    values = {
        "even_form": homfly_even(expand_even(r)),
        "blocks": homfly_blocks(cf, dec),
        "diagram": homfly_matrices(build_diagram(q, p)),
    }
    distinct = set(values.values())
    if len(distinct) != 1:
        raise FormulaDisagreement(f"HOMFLY pipelines for b({q},{p})", {k: v.to_text() for k, v in values.items()})
    return values


# ==============================
# Derived quantities
# ==============================

def subst_a_inverse(poly: LaurentPoly2) -> LaurentPoly2:
    return poly.subst_a_inverse()


def mirror_homfly(poly: LaurentPoly2) -> LaurentPoly2:
    """
    HOMFLY of the mirror image: a -> -1/a. Knots only carry even
    a-exponents, so for them this is the plain a -> 1/a substitution;
    two-component links pick up an overall sign.
    """
    return poly.subst_minus_a_inverse()


def a_span(poly: LaurentPoly2) -> Tuple[int, int]:
    return poly.a_span()


def mfw_bound(poly: LaurentPoly2) -> int:
    e, E = a_span(poly)
    if (E - e) % 2:
        raise InvariantViolation(f"a-exponents of {poly} have mixed parity")
    return (E - e) // 2 + 1


def conway(poly: LaurentPoly2) -> LaurentPoly2:
    return poly.at_a_one()


def parity_ok(poly: LaurentPoly2, q: int) -> bool:
    """Knots (q odd) have even z-exponents >= 0, two-component links odd ones >= -1."""
    exponents = poly.z_exponents()
    if q % 2:
        return all(j % 2 == 0 and j >= 0 for j in exponents)
    return all(j % 2 == 1 and j >= -1 for j in exponents)
