"""
Oriented rational link diagrams b(q, p).

Responsibilities:
- Standard diagrams from p/q, with twist signs and crossing signs
- Crossing signs of preferred diagrams through a six-state parsing automaton
- Signed vectors, their complements, mirrors and the Schubert test
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from twobridge.blocks import BlockDecomposition, canonical_block_form
from twobridge.contfrac import ContFrac, ExactRational, evaluate, expand_nonalternating, sign
from twobridge.errors import DomainError, InvariantViolation


def validate_pair(q: int, p: int) -> None:
    if (q, p) == (1, 0):
        return
    if not 0 < p < q:
        raise DomainError(f"need 0 < p < q, got q={q}, p={p}")
    if math.gcd(p, q) != 1:
        raise DomainError(f"q={q} and p={p} are not coprime")


# ==============================
# Crossing-sign automaton
# ==============================

class _State(Enum):
    # positive / negative block, and where we are inside it
    POS_BOUNDARY = "pos-boundary"
    POS_MIDDLE = "pos-middle"
    POS_CLOSING = "pos-closing"
    NEG_BOUNDARY = "neg-boundary"
    NEG_MIDDLE = "neg-middle"
    NEG_CLOSING = "neg-closing"


_EMIT = {
    _State.POS_BOUNDARY: 1, _State.POS_MIDDLE: 1, _State.POS_CLOSING: 1,
    _State.NEG_BOUNDARY: -1, _State.NEG_MIDDLE: -1, _State.NEG_CLOSING: -1,
}

# (state, term is odd) -> next state
_TRANSITIONS: Dict[Tuple[_State, bool], _State] = {
    (_State.POS_BOUNDARY, False): _State.NEG_BOUNDARY,
    (_State.POS_BOUNDARY, True): _State.POS_MIDDLE,
    (_State.POS_MIDDLE, False): _State.POS_CLOSING,
    (_State.POS_MIDDLE, True): _State.POS_CLOSING,
    (_State.POS_CLOSING, False): _State.POS_MIDDLE,
    (_State.POS_CLOSING, True): _State.NEG_BOUNDARY,
    (_State.NEG_BOUNDARY, False): _State.POS_BOUNDARY,
    (_State.NEG_BOUNDARY, True): _State.NEG_MIDDLE,
    (_State.NEG_MIDDLE, False): _State.NEG_CLOSING,
    (_State.NEG_MIDDLE, True): _State.NEG_CLOSING,
    (_State.NEG_CLOSING, False): _State.NEG_MIDDLE,
    (_State.NEG_CLOSING, True): _State.POS_BOUNDARY,
}


def crossing_signs(terms: Sequence[int]) -> Tuple[int, ...]:
    """
    Crossing signs of the preferred diagram [0, a1, ..., an], one per term.

    The first block is positive for positive terms; a globally negated
    diagram gets every sign flipped.
    """
    if not terms:
        return ()
    if any(a == 0 for a in terms) or len({sign(a) for a in terms}) != 1:
        raise DomainError(f"terms {list(terms)} must be nonzero with one sign")
    state = _State.POS_BOUNDARY
    signs = []
    for a in terms:
        signs.append(_EMIT[state])
        state = _TRANSITIONS[(state, a % 2 == 1)]
    s = sign(terms[0])
    return tuple(s * e for e in signs)


def block_signs_consistent(cf: ContFrac, dec: BlockDecomposition) -> bool:
    """Signs are constant on every block after c0 and flip between neighbours."""
    if dec.source != cf:
        raise DomainError("decomposition does not belong to this continued fraction")
    signs = crossing_signs(cf.tail)
    previous: Optional[int] = None
    for block in dec.blocks:
        if block.start == 0:
            continue
        block_signs = {signs[i - 1] for i in range(block.start, block.end + 1)}
        if len(block_signs) != 1:
            return False
        (current,) = block_signs
        if previous is not None and current == previous:
            return False
        previous = current
    return True


# ==============================
# Signed vectors
# ==============================

@dataclass(frozen=True)
class SignedVector:
    entries: Tuple[int, ...]
    convention: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(b) for b in self.entries))
        if self.convention not in (1, -1):
            raise DomainError(f"convention must be +1 or -1, got {self.convention}")
        if self.entries and len(self.entries) % 2 == 0:
            raise DomainError(f"signed vector must have odd length, got {self.entries}")
        if any(b == 0 for b in self.entries):
            raise DomainError(f"signed vector entries must be nonzero, got {self.entries}")

    def __len__(self) -> int:
        return len(self.entries)

    def __neg__(self) -> "SignedVector":
        return SignedVector(tuple(-b for b in self.entries), -self.convention)

    def __str__(self) -> str:
        return "(" + ",".join(str(b) for b in self.entries) + ")"


def complement_signed_vector(sv: SignedVector) -> SignedVector:
    """
    Signed vector of b(q, q - p) from the one of b(q, p), same convention.
    The ends lose or absorb a unit depending on whether |b1|, |b_last| exceed 1.
    """
    b = sv.entries
    if not b:
        return sv
    if len(b) == 1:
        e, m = sign(b[0]), abs(b[0])
        if m > 2:
            out = [e, e * (m - 2), e]
        elif m == 2:
            out = [2 * e]
        else:
            out = []
        return SignedVector(tuple(-x for x in out), sv.convention)

    first, last = b[0], b[-1]
    inner = list(b[1:-1])
    head: List[int] = []
    tail: List[int] = []
    if abs(first) > 1:
        head = [sign(first), sign(first) * (abs(first) - 1)]
    else:
        inner[0] = sign(inner[0]) * (abs(inner[0]) + 1)
    if abs(last) > 1:
        tail = [sign(last) * (abs(last) - 1), sign(last)]
    else:
        inner[-1] = sign(inner[-1]) * (abs(inner[-1]) + 1)
    return SignedVector(tuple(-x for x in head + inner + tail), sv.convention)


def _split_odd(magnitudes: Sequence[int], signs: Sequence[int]) -> Tuple[List[int], List[int]]:
    magnitudes, signs = list(magnitudes), list(signs)
    if len(magnitudes) % 2 == 0:
        magnitudes[-1:] = [magnitudes[-1] - 1, 1]
        signs.append(signs[-1])
    return magnitudes, signs


# ==============================
# Diagrams
# ==============================

@dataclass(frozen=True)
class AnnotatedDiagram:
    q: int
    p: int
    terms: Tuple[int, ...]
    twist_signs: Tuple[int, ...]
    crossing_signs: Tuple[int, ...]
    preferred: bool

    def __post_init__(self):
        for name in ("terms", "twist_signs", "crossing_signs"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not len(self.terms) == len(self.twist_signs) == len(self.crossing_signs):
            raise DomainError("terms, twist signs and crossing signs differ in length")
        if self.preferred and self.terms:
            numerator = self.p if self.terms[0] > 0 else self.q - self.p
            if (numerator * self.q) % 2:
                raise DomainError(f"b({self.q},{self.p}) has no preferred form")

    @property
    def is_unknot(self) -> bool:
        return not self.terms

    @property
    def n(self) -> int:
        return len(self.terms)

    @property
    def is_positive(self) -> bool:
        return not self.terms or self.terms[0] > 0

    @property
    def value(self) -> ExactRational:
        return evaluate((0,) + self.terms)

    @property
    def canonical(self) -> Tuple[ContFrac, BlockDecomposition]:
        return canonical_block_form(self.value)

    def __str__(self) -> str:
        marks = [f"{a}^{'+' if e > 0 else '-'}" for a, e in zip(self.terms, self.crossing_signs)]
        return "[" + ",".join(["0"] + marks) + "]"


def _twist_signs(terms: Sequence[int]) -> Tuple[int, ...]:
    return tuple((-1) ** i * sign(a) for i, a in enumerate(terms))


def build_diagram(q: int, p: int, preferred: Optional[bool] = None) -> AnnotatedDiagram:
    """
    Standard diagram of b(q, p) on the Euclid terms of p/q.

    preferred=None picks the preferred orientation whenever it exists
    (pq even). preferred=False gives the knot itself for pq odd, or the
    other orientation of a two-component link.
    """
    validate_pair(q, p)
    if q == 1:
        return AnnotatedDiagram(1, 0, (), (), (), True)

    has_preferred = (p * q) % 2 == 0
    if preferred is None:
        preferred = has_preferred
    if preferred and not has_preferred:
        raise DomainError(f"b({q},{p}) is a knot with pq odd; it has no preferred form")
    if not preferred and has_preferred and q % 2:
        raise DomainError(f"b({q},{p}) is a knot; its preferred form is its only orientation")

    euclid, _ = expand_nonalternating(ExactRational.of(p, q))
    terms = euclid.tail
    if preferred:
        signs = crossing_signs(terms)
    else:
        signs = _reoriented_signs(q, p, terms)
    return AnnotatedDiagram(q, p, terms, _twist_signs(terms), signs, preferred)


def _reoriented_signs(q: int, p: int, terms: Sequence[int]) -> Tuple[int, ...]:
    partner = build_diagram(q, q - p, preferred=True)
    v = complement_signed_vector(signed_vector(partner, -1))
    expected, _ = _split_odd(terms, [1] * len(terms))
    if [abs(b) for b in v.entries] != expected:
        raise InvariantViolation(
            f"complement of b({q},{q - p}) gives {v}, which does not match the terms {list(terms)}"
        )
    # convention -1 on positive terms stores -eps * a
    signs = [-sign(b) for b in v.entries]
    if len(signs) == len(terms) + 1:
        if signs[-1] != signs[-2]:
            raise InvariantViolation(f"split tail of {v} changes sign")
        signs.pop()
    return tuple(signs)


def signed_vector(d: AnnotatedDiagram, convention: int) -> SignedVector:
    """
    (eps(a_i) * a_i) in the standard form whose first twist sign is
    `convention`; an even number of terms is first made odd by splitting
    a_n into a_n - 1, 1. A negated-term diagram (a mirror) gets the
    complement of the vector of its positive mirror.
    """
    if convention not in (1, -1):
        raise DomainError(f"convention must be +1 or -1, got {convention}")
    if d.is_unknot:
        return SignedVector((), convention)
    if not d.is_positive:
        return complement_signed_vector(signed_vector(mirror(d), convention))
    magnitudes, signs = _split_odd(d.terms, d.crossing_signs)
    entries = tuple(convention * e * a for a, e in zip(magnitudes, signs))
    return SignedVector(entries, convention)


def mirror(d: AnnotatedDiagram) -> AnnotatedDiagram:
    if d.is_unknot:
        return d
    return AnnotatedDiagram(
        q=d.q,
        p=d.q - d.p,
        terms=tuple(-a for a in d.terms),
        twist_signs=tuple(-t for t in d.twist_signs),
        crossing_signs=tuple(-e for e in d.crossing_signs),
        preferred=d.preferred,
    )


def schubert_equivalent(q: int, p: int, q2: int, p2: int, oriented: bool) -> bool:
    validate_pair(q, p)
    validate_pair(q2, p2)
    if q != q2:
        return False
    modulus = 2 * q if oriented else q
    if (p - p2) % modulus == 0:
        return True
    try:
        inverse = pow(p, -1, modulus)
    except ValueError:
        return False
    return (inverse - p2) % modulus == 0
