"""Laurent polynomials in one variable ``A`` with integer coefficients."""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Union

Scalar = Union[int, "LaurentPoly"]

_TERM = re.compile(r"([+-]?\d+)\*A\^(-?\d+)")


class LaurentPoly:
    """Immutable sparse Laurent polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            acc[int(exp)] = acc.get(int(exp), 0) + int(coeff)
        self._terms = {e: c for e, c in sorted(acc.items()) if c != 0}
        self._hash = None

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls({exp: coeff})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    @classmethod
    def from_coefficients(cls, min_exp: int, coeffs: Iterable[int]) -> LaurentPoly:
        return cls({min_exp + i: c for i, c in enumerate(coeffs)})

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def min_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no minimum exponent")
        return next(iter(self._terms))

    def max_exponent(self) -> int:
        if not self._terms:
            raise ValueError("zero polynomial has no maximum exponent")
        return next(reversed(self._terms))

    def coefficient(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def coefficient_list(self) -> list[int]:
        """Dense coefficients from the minimum to the maximum exponent."""
        if not self._terms:
            return []
        lo, hi = self.min_exponent(), self.max_exponent()
        return [self._terms.get(e, 0) for e in range(lo, hi + 1)]

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``A**k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def evaluate(self, a):
        return sum(c * a**e for e, c in self._terms.items())

    @staticmethod
    def _coerce(other: Scalar) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return NotImplemented

    def __add__(self, other: Scalar) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self._terms)
        for e, c in other._terms.items():
            acc[e] = acc.get(e, 0) + c
        return LaurentPoly(acc)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({e: -c for e, c in self._terms.items()})

    def __sub__(self, other: Scalar) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> LaurentPoly:
        return (-self) + other

    def __mul__(self, other: Scalar) -> LaurentPoly:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self._terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({e * n: c ** (-n)})
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def sort_key(self) -> tuple:
        return tuple(self._terms.items())

    def __lt__(self, other: LaurentPoly) -> bool:
        return self.sort_key() < other.sort_key()

    def to_text(self) -> str:
        """Terms ``c*A^e`` in descending exponent order, e.g. ``-1*A^2-1*A^1``."""
        if not self._terms:
            return "0"
        out = []
        for i, (e, c) in enumerate(sorted(self._terms.items(), reverse=True)):
            term = f"{c}*A^{e}"
            if i and c > 0:
                term = "+" + term
            out.append(term)
        return "".join(out)

    @classmethod
    def from_text(cls, text: str) -> LaurentPoly:
        text = text.strip()
        if text == "0":
            return cls()
        pos = 0
        terms = []
        for m in _TERM.finditer(text):
            if m.start() != pos:
                raise ValueError(f"malformed polynomial text: {text!r}")
            terms.append((int(m.group(2)), int(m.group(1))))
            pos = m.end()
        if pos != len(text) or not terms:
            raise ValueError(f"malformed polynomial text: {text!r}")
        return cls(terms)

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_text()!r})"


ZERO = LaurentPoly()
ONE = LaurentPoly.constant(1)
A = LaurentPoly.monomial(1)
#: sigma = A + 1 + A^-1, the value of a one-loop bouquet.
SIGMA = LaurentPoly({1: 1, 0: 1, -1: 1})
#: delta = -A^2 - A^-2, the value of an extra loop in the bracket.
DELTA = LaurentPoly({2: -1, -2: -1})
