"""
Integer Laurent polynomials in a and z, 2x2 matrices over them, and
univariate integer polynomials for the Fibonacci family.

Polynomials are sparse: a dict from (a-exponent, z-exponent) to a nonzero
integer coefficient.
"""

import re
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import sympy

from twobridge.errors import DomainError

Exponents = Tuple[int, int]

_TERM_RE = re.compile(r"\s*([+-])?\s*(\d+)?\s*((?:[az]\s*(?:\^\s*-?\d+)?\s*)*)")
_FACTOR_RE = re.compile(r"([az])\s*(?:\^\s*(-?\d+))?")


class LaurentPoly2:
    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Exponents, int]] = None):
        self.terms: Dict[Exponents, int] = {}
        for (i, j), coeff in (terms or {}).items():
            self.add_term(coeff, i, j)

    def add_term(self, coeff: int, a_exp: int, z_exp: int):
        """Accumulate coeff * a^a_exp * z^z_exp; zero coefficients are never stored."""
        if coeff == 0:
            return
        key = (a_exp, z_exp)
        total = self.terms.get(key, 0) + coeff
        if total:
            self.terms[key] = total
        else:
            del self.terms[key]

    @classmethod
    def const(cls, c: int) -> "LaurentPoly2":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, coeff: int, a_exp: int = 0, z_exp: int = 0) -> "LaurentPoly2":
        return cls({(a_exp, z_exp): coeff})

    @classmethod
    def from_triples(cls, triples: Iterable[Iterable[int]]) -> "LaurentPoly2":
        poly = cls()
        for coeff, i, j in triples:
            poly.add_term(int(coeff), int(i), int(j))
        return poly

    # ----- ring operations -----

    def _coerce(self, other) -> "LaurentPoly2":
        if isinstance(other, LaurentPoly2):
            return other
        if isinstance(other, int):
            return LaurentPoly2.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = LaurentPoly2(self.terms)
        for (i, j), coeff in other.terms.items():
            result.add_term(coeff, i, j)
        return result

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly2":
        return LaurentPoly2({key: -coeff for key, coeff in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        result = LaurentPoly2()
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                result.add_term(c1 * c2, i1 + i2, j1 + j2)
        return result

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ----- invariants-facing helpers -----

    def subst_a_inverse(self) -> "LaurentPoly2":
        return LaurentPoly2({(-i, j): coeff for (i, j), coeff in self.terms.items()})

    def subst_minus_a_inverse(self) -> "LaurentPoly2":
        return LaurentPoly2({(-i, j): coeff * (-1) ** (i % 2) for (i, j), coeff in self.terms.items()})

    def at_a_one(self) -> "LaurentPoly2":
        """Specialize a = 1, leaving a polynomial in z only."""
        result = LaurentPoly2()
        for (_, j), coeff in self.terms.items():
            result.add_term(coeff, 0, j)
        return result

    def a_span(self) -> Tuple[int, int]:
        if not self.terms:
            raise DomainError("the zero polynomial has no a-span")
        exponents = [i for i, _ in self.terms]
        return min(exponents), max(exponents)

    def z_exponents(self) -> List[int]:
        return sorted({j for _, j in self.terms})

    def sorted_terms(self) -> List[Tuple[int, int, int]]:
        return [(coeff, i, j) for (i, j), coeff in sorted(self.terms.items())]

    # ----- serialization -----

    def to_json(self) -> List[List[int]]:
        return [list(t) for t in self.sorted_terms()]

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for coeff, i, j in self.sorted_terms():
            mono = " ".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in (("a", i), ("z", j))
                if e != 0
            )
            magnitude = abs(coeff)
            if not mono:
                body = str(magnitude)
            elif magnitude == 1:
                body = mono
            else:
                body = f"{magnitude} {mono}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(f"+ {body}" if coeff > 0 else f"- {body}")
        return " ".join(pieces)

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly2":
        """Read the term-list syntax written by to_text, e.g. 'a^-2 - 1 - z^2 + a^2'."""
        s = text.replace("*", " ").strip()
        if not s:
            raise DomainError("empty polynomial text")
        poly = cls()
        pos = 0
        first = True
        while pos < len(s):
            m = _TERM_RE.match(s, pos)
            sign_text, digits, mono = m.group(1), m.group(2), m.group(3).strip()
            if m.end() == pos or (digits is None and not mono) or (sign_text is None and not first):
                raise DomainError(f"cannot parse polynomial {text!r} near position {pos}")
            coeff = int(digits) if digits is not None else 1
            if sign_text == "-":
                coeff = -coeff
            a_exp = z_exp = 0
            for name, exponent in _FACTOR_RE.findall(mono):
                e = int(exponent) if exponent else 1
                if name == "a":
                    a_exp += e
                else:
                    z_exp += e
            poly.add_term(coeff, a_exp, z_exp)
            pos = m.end()
            first = False
        return poly

    def to_sympy(self) -> sympy.Expr:
        a, z = sympy.symbols("a z")
        return sympy.Add(*[coeff * a**i * z**j for coeff, i, j in self.sorted_terms()])

    def latex(self) -> str:
        return sympy.latex(self.to_sympy())

    def __repr__(self) -> str:
        return f"LaurentPoly2({self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()


Scalar = Union[LaurentPoly2, int]


class Mat2:
    """[[p11, p12], [p21, p22]] over LaurentPoly2."""

    __slots__ = ("p11", "p12", "p21", "p22")

    def __init__(self, p11: Scalar, p12: Scalar, p21: Scalar, p22: Scalar):
        self.p11, self.p12, self.p21, self.p22 = (
            x if isinstance(x, LaurentPoly2) else LaurentPoly2.const(x) for x in (p11, p12, p21, p22)
        )

    @classmethod
    def identity(cls) -> "Mat2":
        return cls(1, 0, 0, 1)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        return Mat2(
            self.p11 * other.p11 + self.p12 * other.p21,
            self.p11 * other.p12 + self.p12 * other.p22,
            self.p21 * other.p11 + self.p22 * other.p21,
            self.p21 * other.p12 + self.p22 * other.p22,
        )

    def __pow__(self, n: int) -> "Mat2":
        if n < 0:
            raise DomainError("negative matrix powers are not supported")
        result = Mat2.identity()
        for _ in range(n):
            result = result @ self
        return result

    def rows(self) -> Tuple[Tuple[LaurentPoly2, LaurentPoly2], Tuple[LaurentPoly2, LaurentPoly2]]:
        return (self.p11, self.p12), (self.p21, self.p22)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat2):
            return False
        return self.rows() == other.rows()

    def __hash__(self) -> int:
        return hash(self.rows())

    def __repr__(self) -> str:
        return f"Mat2([[{self.p11}, {self.p12}], [{self.p21}, {self.p22}]])"


class FibPoly:
    """Integer polynomial in one variable x; coefficients[k] is the x^k coefficient."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[int] = ()):
        coeffs = [int(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients: Tuple[int, ...] = tuple(coeffs)

    @classmethod
    def x(cls) -> "FibPoly":
        return cls((0, 1))

    def __add__(self, other: "FibPoly") -> "FibPoly":
        size = max(len(self.coefficients), len(other.coefficients))
        padded = [
            (self.coefficients[k] if k < len(self.coefficients) else 0)
            + (other.coefficients[k] if k < len(other.coefficients) else 0)
            for k in range(size)
        ]
        return FibPoly(padded)

    def __mul__(self, other: "FibPoly") -> "FibPoly":
        if not self.coefficients or not other.coefficients:
            return FibPoly()
        out = [0] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, c1 in enumerate(self.coefficients):
            for j, c2 in enumerate(other.coefficients):
                out[i + j] += c1 * c2
        return FibPoly(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, FibPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def to_laurent(self, a_exp: int = 0, z_sign: int = 1) -> LaurentPoly2:
        """a^a_exp * F(z_sign * z)"""
        poly = LaurentPoly2()
        for k, c in enumerate(self.coefficients):
            poly.add_term(c * z_sign**k, a_exp, k)
        return poly

    def to_sympy(self, x: Optional[sympy.Symbol] = None) -> sympy.Expr:
        x = x if x is not None else sympy.Symbol("x")
        return sympy.Add(*[c * x**k for k, c in enumerate(self.coefficients)])

    def __repr__(self) -> str:
        return f"FibPoly({list(self.coefficients)})"
