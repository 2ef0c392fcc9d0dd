"""
Primitive block decomposition and conversion to the all-even form.

Responsibilities:
- Split a nonalternating continued fraction into primitive blocks
- Pick the canonical nonalternating form of a rational (the one that decomposes)
- Rewrite blocks into even terms, block by block or term by term with the tau signs
"""

from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

from twobridge.contfrac import ContFrac, ExactRational, expand_nonalternating, sign
from twobridge.errors import DomainError, InvariantViolation


class BlockKind(str, Enum):
    TRIVIAL = "trivial"
    NONTRIVIAL = "nontrivial"
    EXCEPTIONAL = "exceptional"


@dataclass(frozen=True)
class PrimitiveBlock:
    start: int
    terms: Tuple[int, ...]
    kind: BlockKind

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        length = len(self.terms)
        if self.kind is BlockKind.NONTRIVIAL:
            if length < 3 or length % 2 == 0:
                raise DomainError(f"nontrivial block needs odd length >= 3, got {self.terms}")
            if self.terms[0] % 2 == 0 or self.terms[-1] % 2 == 0:
                raise DomainError(f"nontrivial block must start and end odd, got {self.terms}")
            if any(c % 2 for c in self.terms[2:-1:2]):
                raise DomainError(f"inner even-position terms must be even, got {self.terms}")
            if len({sign(c) for c in self.terms}) != 1:
                raise DomainError(f"block terms must share one sign, got {self.terms}")
        elif length != 1:
            raise DomainError(f"{self.kind.value} block must be a single term, got {self.terms}")
        elif self.kind is BlockKind.TRIVIAL and self.terms[0] % 2:
            raise DomainError(f"trivial block must be even, got {self.terms}")

    @property
    def end(self) -> int:
        return self.start + len(self.terms) - 1

    def __str__(self) -> str:
        body = ",".join(str(c) for c in self.terms)
        return body + "!" if self.kind is BlockKind.EXCEPTIONAL else body


@dataclass(frozen=True)
class BlockDecomposition:
    source: ContFrac
    blocks: Tuple[PrimitiveBlock, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        position = 0
        for block in self.blocks:
            if block.start != position:
                raise DomainError(f"blocks are not contiguous at position {position}")
            if tuple(self.source.terms[block.start:block.end + 1]) != block.terms:
                raise DomainError(f"block {block} does not match the source terms")
            position = block.end + 1
        if position != len(self.source.terms):
            raise DomainError("blocks do not cover the continued fraction")
        exceptional = [b for b in self.blocks if b.kind is BlockKind.EXCEPTIONAL]
        if exceptional and exceptional[0] is not self.blocks[-1]:
            raise DomainError("an exceptional block may only close the decomposition")

    @property
    def has_exceptional(self) -> bool:
        return bool(self.blocks) and self.blocks[-1].kind is BlockKind.EXCEPTIONAL

    def __str__(self) -> str:
        return "[" + "; ".join(str(b) for b in self.blocks) + "]"


# ==============================
# Decomposition
# ==============================

def decompose(cf: ContFrac) -> Optional[BlockDecomposition]:
    """
    Greedy left-to-right block split; returns None when the tail cannot be
    closed by a block.

    An even term is a trivial block. An odd term opens a block that ends at
    the first odd term two, four, ... places later. An odd term left alone at
    the end is exceptional, except a unit right after a trivial block, since
    [.., 2d, +-1] is the same rational as [.., 2d +- 1].
    """
    if not cf.is_nonalternating:
        raise DomainError(f"{cf} is not in nonalternating form")

    t = cf.terms
    n = cf.n
    blocks: List[PrimitiveBlock] = []
    i = 0
    while i <= n:
        c = t[i]
        if c % 2 == 0:
            blocks.append(PrimitiveBlock(i, (c,), BlockKind.TRIVIAL))
            i += 1
            continue
        if i == n:
            if abs(c) == 1 and blocks and blocks[-1].kind is BlockKind.TRIVIAL:
                return None
            blocks.append(PrimitiveBlock(i, (c,), BlockKind.EXCEPTIONAL))
            break
        j = i + 2
        while j <= n and t[j] % 2 == 0:
            j += 2
        if j > n:
            return None
        blocks.append(PrimitiveBlock(i, t[i:j + 1], BlockKind.NONTRIVIAL))
        i = j + 1
    return BlockDecomposition(cf, tuple(blocks))


def canonical_block_form(r: ExactRational) -> Tuple[ContFrac, BlockDecomposition]:
    first, second = expand_nonalternating(r)
    if first == second:
        dec = decompose(first)
        if dec is None:
            raise InvariantViolation(f"{first} has no block decomposition")
        return first, dec

    found = [(cf, dec) for cf in (first, second) for dec in (decompose(cf),) if dec is not None]
    if len(found) != 1:
        raise InvariantViolation(
            f"{r}: expected exactly one decomposable nonalternating form, found {len(found)}"
        )
    return found[0]


# ==============================
# Rewriting into even terms
# ==============================

def two_step(cf: ContFrac, i: int, delta: int) -> ContFrac:
    """
    Rewrite c_i, c_{i+1}, c_{i+2} of common sign delta: the middle term turns
    into |c_{i+1}| - 1 alternating twos, the neighbours move by delta and the
    terms after c_{i+1} pick up (-1)^|c_{i+1}|.
    """
    if delta not in (1, -1):
        raise DomainError(f"delta must be +1 or -1, got {delta}")
    t = cf.terms
    if i < 0 or i + 2 > cf.n:
        raise DomainError(f"index {i} leaves no three terms in {cf}")
    if any(sign(c) != delta for c in t[i:i + 3]):
        raise DomainError(f"terms {t[i:i + 3]} do not all have sign {delta}")

    middle = abs(t[i + 1])
    run = tuple(-2 * delta * (-1) ** k for k in range(middle - 1))
    flip = (-1) ** middle
    rewritten = (
        t[:i]
        + (t[i] + delta,)
        + run
        + (flip * (t[i + 2] + delta),)
        + tuple(flip * c for c in t[i + 3:])
    )
    return ContFrac(rewritten)


def block_to_even(block: PrimitiveBlock, delta: int) -> Tuple[Tuple[int, ...], int]:
    """
    Even image of one block with leading sign delta, plus the sign (+1/-1)
    that every later term has to be multiplied by.
    """
    if block.kind is BlockKind.EXCEPTIONAL:
        raise DomainError(f"exceptional block {block} has no even image")
    if delta not in (1, -1):
        raise DomainError(f"delta must be +1 or -1, got {delta}")
    if block.kind is BlockKind.TRIVIAL:
        return (delta * abs(block.terms[0]),), 1

    t = [abs(c) for c in block.terms]
    k = len(t) // 2
    magnitudes = [t[0] + 1]
    for i in range(1, k + 1):
        magnitudes.extend([2] * (t[2 * i - 1] - 1))
        magnitudes.append(t[2 * i] + (1 if i == k else 2))
    even = tuple(delta * (-1) ** idx * m for idx, m in enumerate(magnitudes))
    parity = (-1) ** sum(t[1::2])
    return even, parity


def to_all_even(cf: ContFrac, dec: BlockDecomposition) -> ContFrac:
    if dec.source != cf:
        raise DomainError("decomposition does not belong to this continued fraction")
    if dec.has_exceptional:
        raise DomainError(f"{dec} has an exceptional block; no even form ends in an even term")

    out: List[int] = []
    flip = 1
    for block in dec.blocks:
        delta = flip * (sign(block.terms[0]) or 1)
        even, parity = block_to_even(block, delta)
        out.extend(even)
        flip *= parity
    return ContFrac(tuple(out))


# ==============================
# Term-by-term route
# ==============================

def _check_annotation(terms: Sequence[int], signs: Sequence[int]):
    if len(terms) != len(signs):
        raise DomainError("terms and crossing signs differ in length")
    if any(c == 0 for c in terms) or len({sign(c) for c in terms}) > 1:
        raise DomainError(f"terms {list(terms)} must be nonzero with one sign")
    if any(e not in (1, -1) for e in signs):
        raise DomainError("crossing signs must be +1 or -1")


def term_rule(signs: Sequence[int], i: int, s: int) -> int:
    """
    Which of the four rewriting rules applies to term i (1-based): 1 for the
    first term, 2 when the crossing sign changes, 3 or 4 when it repeats and
    equals (-1)^(i-1) s or (-1)^i s respectively.
    """
    if i == 1:
        return 1
    if signs[i - 1] != signs[i - 2]:
        return 2
    if signs[i - 1] == (-1) ** (i - 1) * s:
        return 3
    return 4


def _tau_table(terms: Sequence[int], signs: Sequence[int]) -> List[Tuple[int, int]]:
    """(rule, tau) for every position 1..n."""
    s = sign(terms[0])
    table = []
    changes = 0
    run_excess = 0
    for i in range(1, len(terms) + 1):
        rule = term_rule(signs, i, s)
        if rule == 2:
            changes += 1
        table.append((rule, i - 1 - changes + run_excess))
        if rule == 4:
            run_excess += abs(terms[i - 1]) - 2
    return table


def tau(terms: Sequence[int], signs: Sequence[int], i: int) -> int:
    _check_annotation(terms, signs)
    if not 1 <= i <= len(terms):
        raise DomainError(f"position {i} out of range 1..{len(terms)}")
    return _tau_table(terms, signs)[i - 1][1]


def to_all_even_by_tau(terms: Sequence[int], signs: Sequence[int]) -> ContFrac:
    """
    Even form of [0, a1, ..., an] computed term by term from the crossing
    signs of a preferred diagram.
    """
    if not terms:
        return ContFrac((0,))
    _check_annotation(terms, signs)
    s = sign(terms[0])
    out = [0]
    for a, (rule, t) in zip(terms, _tau_table(terms, signs)):
        odd = a % 2 == 1
        flip = (-1) ** t
        if rule in (1, 2):
            out.append(flip * (a + s if odd else a))
        elif rule == 3:
            out.append(flip * (a + s if odd else a + 2 * s))
        else:
            out.extend(flip * s * 2 * (-1) ** k for k in range(abs(a) - 1))
    return ContFrac(tuple(out))
