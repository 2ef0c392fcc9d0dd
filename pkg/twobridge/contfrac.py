"""
Exact continued-fraction arithmetic.

Responsibilities:
- Exact rationals with a single point at infinity
- Evaluate [c0, ..., cn] through the 2x2 integer matrices M(c) = [[c, 1], [1, 0]]
- The two nonalternating expansions and the unique all-even expansion
- Elementary rewrites that keep the value (pair insertion, zero absorption, complement)
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Tuple, Union

from twobridge.errors import DomainError

_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_TERMS_RE = re.compile(r"^\s*\[(.*)\]\s*$")


def sign(x: int) -> int:
    return (x > 0) - (x < 0)


# ==============================
# Rationals
# ==============================

@dataclass(frozen=True)
class ExactRational:
    """Reduced p/q with q >= 0; infinity is stored as 1/0."""

    numerator: int
    denominator: int

    def __post_init__(self):
        if self.denominator < 0:
            raise DomainError(f"negative denominator in {self.numerator}/{self.denominator}")
        if self.denominator == 0:
            if self.numerator != 1:
                raise DomainError("infinity must be stored as 1/0; use ExactRational.of")
        elif math.gcd(self.numerator, self.denominator) != 1:
            raise DomainError(f"{self.numerator}/{self.denominator} is not reduced; use ExactRational.of")

    @classmethod
    def of(cls, numerator: int, denominator: int) -> "ExactRational":
        if denominator == 0:
            if numerator == 0:
                raise DomainError("0/0 is undefined")
            return cls(1, 0)
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        g = math.gcd(numerator, denominator)
        return cls(numerator // g, denominator // g)

    @classmethod
    def parse(cls, text: str, require_reduced: bool = False) -> "ExactRational":
        match = _FRACTION_RE.match(text)
        if not match:
            raise DomainError(f"cannot parse fraction {text!r}; expected p/q")
        numerator = int(match.group(1))
        denominator = int(match.group(2)) if match.group(2) is not None else 1
        if require_reduced and math.gcd(numerator, denominator) != 1:
            raise DomainError(f"{text.strip()} is not in lowest terms")
        return cls.of(numerator, denominator)

    @property
    def is_infinite(self) -> bool:
        return self.denominator == 0

    def as_fraction(self) -> Fraction:
        if self.is_infinite:
            raise DomainError("infinity has no Fraction value")
        return Fraction(self.numerator, self.denominator)

    def __neg__(self) -> "ExactRational":
        if self.is_infinite:
            return self
        return ExactRational(-self.numerator, self.denominator)

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


INFINITY = ExactRational(1, 0)


# ==============================
# Continued fractions
# ==============================

@dataclass(frozen=True)
class ContFrac:
    terms: Tuple[int, ...]

    def __post_init__(self):
        terms = tuple(int(c) for c in self.terms)
        if not terms:
            raise DomainError("a continued fraction needs at least one term")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def parse(cls, text: str) -> "ContFrac":
        match = _TERMS_RE.match(text)
        if not match:
            raise DomainError(f"cannot parse continued fraction {text!r}; expected [c0,...,cn]")
        body = [piece.strip() for piece in match.group(1).split(",")]
        try:
            return cls(tuple(int(piece) for piece in body if piece))
        except ValueError as e:
            raise DomainError(f"non-integer term in {text!r}") from e

    @property
    def n(self) -> int:
        return len(self.terms) - 1

    @property
    def tail(self) -> Tuple[int, ...]:
        return self.terms[1:]

    @property
    def is_nonsingular(self) -> bool:
        return all(c != 0 for c in self.tail)

    @property
    def is_nonalternating(self) -> bool:
        if not self.is_nonsingular:
            return False
        if not self.tail:
            return True
        s = sign(self.tail[0])
        if any(sign(c) != s for c in self.tail):
            return False
        return self.terms[0] == 0 or sign(self.terms[0]) == s

    @property
    def is_even_form(self) -> bool:
        return self.is_nonsingular and all(c % 2 == 0 for c in self.terms[:-1])

    @property
    def value(self) -> ExactRational:
        return evaluate(self)

    def negate(self) -> "ContFrac":
        return ContFrac(tuple(-c for c in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __str__(self) -> str:
        return "[" + ",".join(str(c) for c in self.terms) + "]"


def _as_contfrac(cf: Union[ContFrac, Iterable[int]]) -> ContFrac:
    return cf if isinstance(cf, ContFrac) else ContFrac(tuple(cf))


def evaluate(cf: Union[ContFrac, Iterable[int]]) -> ExactRational:
    """
    Value of [c0, ..., cn] as M(c0)...M(cn) applied to (1, 0).

    The product vector is never (0, 0) since every M(c) is invertible.
    """
    cf = _as_contfrac(cf)
    p, q = 1, 0
    for c in reversed(cf.terms):
        p, q = c * p + q, p
    return ExactRational.of(p, q)


def expand_nonalternating(r: ExactRational) -> Tuple[ContFrac, ContFrac]:
    """
    Both nonalternating expansions of r: the Euclid form ending in |cn| > 1
    and the variant ending in cn - sign(cn), sign(cn).
    """
    if r.is_infinite:
        raise DomainError("infinity has no finite continued fraction")
    if r.numerator == 0:
        zero = ContFrac((0,))
        return zero, zero
    if r.numerator < 0:
        first, second = expand_nonalternating(-r)
        return first.negate(), second.negate()

    terms: List[int] = []
    p, q = r.numerator, r.denominator
    while q:
        a, rem = divmod(p, q)
        terms.append(a)
        p, q = q, rem

    last = terms[-1]
    if last > 1:
        other = terms[:-1] + [last - 1, 1]
    else:
        # only r = 1 ends in a unit quotient
        other = [0, 1]
    return ContFrac(tuple(terms)), ContFrac(tuple(other))


def expand_even(r: ExactRational) -> ContFrac:
    """
    The unique even denominator form of r: repeatedly take the even c with
    |x - c| < 1 and continue with 1 / (x - c) until x is an integer.
    """
    if r.is_infinite:
        raise DomainError("infinity has no finite continued fraction")
    x = r.as_fraction()
    terms: List[int] = []
    while x.denominator != 1:
        floor = math.floor(x)
        c = floor if floor % 2 == 0 else floor + 1
        terms.append(c)
        x = 1 / (x - c)
    terms.append(int(x))
    return ContFrac(tuple(terms))


def insert_pair(cf: ContFrac, i: int, delta: int) -> ContFrac:
    """[.., c_i, c_{i+1}, ..] -> [.., c_i + d, -d, d - c_{i+1}, -c_{i+2}, ..]"""
    cf = _as_contfrac(cf)
    if delta not in (1, -1):
        raise DomainError(f"delta must be +1 or -1, got {delta}")
    if not 0 <= i < cf.n:
        raise DomainError(f"index {i} out of range for {cf}")
    t = cf.terms
    rewritten = t[:i] + (t[i] + delta, -delta, delta - t[i + 1]) + tuple(-c for c in t[i + 2:])
    return ContFrac(rewritten)


def absorb_zero(cf: ContFrac, j: int) -> ContFrac:
    cf = _as_contfrac(cf)
    if not 0 < j < cf.n:
        raise DomainError(f"index {j} out of range for {cf}")
    t = cf.terms
    if t[j] != 0:
        raise DomainError(f"term {j} of {cf} is {t[j]}, not 0")
    return ContFrac(t[:j - 1] + (t[j - 1] + t[j + 1],) + t[j + 2:])


def complement(cf: ContFrac) -> ContFrac:
    """
    For cf = [0, c1, ..., cn] returns a continued fraction worth
    sign(c1) - eval(cf), i.e. (q - p)/q for 0 < p/q < 1.

    |c1| > 1 splits off a leading sign(c1); |c1| = 1 merges it back, which
    makes the operation an involution.
    """
    cf = _as_contfrac(cf)
    if cf.terms[0] != 0:
        raise DomainError(f"complement needs c0 = 0, got {cf}")
    if cf.n < 1 or not cf.is_nonsingular:
        raise DomainError(f"complement needs a nonsingular [0, c1, ...], got {cf}")

    t = cf.terms
    c1 = t[1]
    s = sign(c1)
    if abs(c1) > 1:
        return ContFrac((0, s, c1 - s) + t[2:])

    if cf.n == 1:
        return ContFrac((0,))
    merged = t[2] + s
    if merged != 0:
        return ContFrac((0, merged) + t[3:])
    rest = t[3:]
    if not rest:
        return ContFrac((0, 0))
    return absorb_zero(ContFrac((0, 0) + rest), 1)
