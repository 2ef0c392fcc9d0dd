"""
Braid index of rational links.

Four independent formulas are kept side by side and must agree:
- the Cromwell-Murasugi count on the all-even form
- half the odd-position block terms plus one
- the crossing-sign formula on a preferred diagram
- the signed-vector formula, in both first-twist-sign conventions
"""

from typing import Dict, Optional, Sequence, Union

from twobridge.blocks import BlockDecomposition, canonical_block_form
from twobridge.contfrac import ContFrac, ExactRational, expand_even, sign
from twobridge.errors import DomainError, FormulaDisagreement, InvariantViolation, NonPreferredDiagramError
from twobridge.link import AnnotatedDiagram, SignedVector, build_diagram, signed_vector, validate_pair
from twobridge.models import BraidIndexReport


def _halve(twice: int, what: str) -> int:
    if twice % 2:
        raise InvariantViolation(f"{what}: odd total {twice} cannot be halved")
    return twice // 2


def cm_index(cf: ContFrac) -> int:
    """sum |d_i| - t + 1 over [2d_0, ..., 2d_n], t the number of sign changes between neighbours."""
    if not cf.is_nonsingular:
        raise DomainError(f"{cf} is singular")
    if any(c % 2 for c in cf.terms):
        raise DomainError(f"{cf} has an odd term; the index needs a preferred (pq even) link")
    d = [c // 2 for c in cf.terms]
    changes = sum(1 for x, y in zip(d, d[1:]) if x * y < 0)
    return sum(abs(x) for x in d) - changes + 1


def cm_index_blocks(cf: ContFrac, dec: BlockDecomposition) -> int:
    if dec.source != cf:
        raise DomainError("decomposition does not belong to this continued fraction")
    if dec.has_exceptional:
        raise DomainError(f"{dec} has an exceptional block (pq odd)")
    total = sum(abs(c) for block in dec.blocks for c in block.terms[0::2])
    return 1 + _halve(total, f"block sum of {dec}")


def preferred_diagram_formula(terms: Sequence[int], signs: Sequence[int]) -> int:
    """
    1 + (sum of |a_i| at odd i with eps = eps(B1) and at even i with
    eps = -eps(B1)) / 2 + c, where c is 0 when the last sign equals eps(B1)
    for odd n (or -eps(B1) for even n) and 1/2 otherwise.

    Only meaningful on a preferred diagram; see braid_index_preferred.
    """
    if not terms:
        return 1
    e1 = signs[0]
    total = sum(
        abs(a)
        for i, (a, e) in enumerate(zip(terms, signs), start=1)
        if (i % 2 == 1 and e == e1) or (i % 2 == 0 and e == -e1)
    )
    n = len(terms)
    closing = e1 if n % 2 else -e1
    correction = 0 if signs[-1] == closing else 1
    return _halve(2 + total + correction, f"crossing-sign formula on {list(terms)}")


def braid_index_preferred(d: AnnotatedDiagram) -> int:
    if not d.preferred:
        raise NonPreferredDiagramError(
            f"b({d.q},{d.p}) is not in preferred form; the crossing-sign formula undercounts there"
        )
    return preferred_diagram_formula(d.terms, d.crossing_signs)


def braid_index_dl(sv: Union[SignedVector, Sequence[int]], convention: Optional[int] = None) -> int:
    if not isinstance(sv, SignedVector):
        sv = SignedVector(tuple(sv), convention if convention is not None else -1)
    convention = sv.convention if convention is None else convention
    if convention not in (1, -1):
        raise DomainError(f"convention must be +1 or -1, got {convention}")
    b = sv.entries
    if not b:
        return 1

    e1, el = sign(b[0]), sign(b[-1])
    even_positions = b[1::2]
    odd_positions = b[0::2]
    if convention == -1:
        four = 6 + e1 + el
        four += 2 * sum(x for x in even_positions if x > 0)
        four += 2 * sum(-x for x in odd_positions if x < 0)
    else:
        four = 6 - e1 - el
        four += 2 * sum(-x for x in even_positions if x < 0)
        four += 2 * sum(x for x in odd_positions if x > 0)
    if four % 4:
        raise InvariantViolation(f"signed-vector formula on {sv}: {four}/4 is not an integer")
    return four // 4


def braid_index(q: int, p: int) -> BraidIndexReport:
    """
    Braid index of b(q, p). pq-even links are computed directly; for pq odd
    the preferred mirror b(q, q - p) is used and the knot's own signed vector
    is added as a further formula.
    """
    validate_pair(q, p)
    if q == 1:
        return BraidIndexReport(value=1, formulas={"unknot": 1}, used_mirror=False)

    used_mirror = (p * q) % 2 == 1
    p_eff = q - p if used_mirror else p
    r = ExactRational.of(p_eff, q)
    cf, dec = canonical_block_form(r)
    d = build_diagram(q, p_eff)

    formulas: Dict[str, int] = {
        "cromwell_murasugi": cm_index(expand_even(r)),
        "block_sum": cm_index_blocks(cf, dec),
        "preferred_diagram": braid_index_preferred(d),
        "signed_vector": braid_index_dl(signed_vector(d, -1), -1),
        "signed_vector_plus": braid_index_dl(signed_vector(d, 1), 1),
    }
    if used_mirror:
        knot = build_diagram(q, p, preferred=False)
        formulas["signed_vector_direct"] = braid_index_dl(signed_vector(knot, -1), -1)

    if len(set(formulas.values())) != 1:
        raise FormulaDisagreement(f"braid index formulas for b({q},{p})", formulas)
    return BraidIndexReport(value=formulas["cromwell_murasugi"], formulas=formulas, used_mirror=used_mirror)
