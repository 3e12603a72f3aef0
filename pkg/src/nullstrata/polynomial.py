"""Exact integer polynomials in one variable ``t``."""
from __future__ import annotations

from itertools import zip_longest
from typing import Iterable, Sequence


class InexactDivision(ArithmeticError):
    """Raised when a polynomial division leaves a nonzero remainder."""


class IntPolynomial:
    """Immutable polynomial with integer coefficients, lowest degree first.

    >>> t = IntPolynomial.t()
    >>> (t**2 - 1) // (t - 1)
    IntPolynomial([1, 1])
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def t(cls) -> IntPolynomial:
        return cls([0, 1])

    @classmethod
    def const(cls, c: int) -> IntPolynomial:
        return cls([c])

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> IntPolynomial:
        return cls([0] * degree + [coeff])

    @classmethod
    def q_integer(cls, d: int) -> IntPolynomial:
        """1 + t + ... + t^(d-1)."""
        return cls([1] * d)

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def _coerce(self, other) -> IntPolynomial:
        if isinstance(other, IntPolynomial):
            return other
        if isinstance(other, int):
            return IntPolynomial([other])
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return IntPolynomial(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

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
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        result = IntPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Long division over Z; the divisor's leading coefficient must divide
        every intermediate leading term, otherwise InexactDivision is raised."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        dd = divisor.degree
        lead = divisor.leading()
        quot = [0] * max(len(rem) - dd, 0)
        for i in range(len(rem) - dd - 1, -1, -1):
            c = rem[i + dd]
            if c == 0:
                continue
            if c % lead:
                raise InexactDivision(f"{self} / {divisor}: non-integral quotient")
            q = c // lead
            quot[i] = q
            for j, b in enumerate(divisor.coeffs):
                rem[i + j] -= q * b
        return IntPolynomial(quot), IntPolynomial(rem)

    def exact_div(self, divisor: IntPolynomial) -> IntPolynomial:
        q, r = self.divmod(divisor)
        if not r.is_zero():
            raise InexactDivision(f"{self} / {divisor}: remainder {r}")
        return q

    def __floordiv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.exact_div(other)

    def __eq__(self, other):
        if isinstance(other, int):
            other = IntPolynomial([other])
        if not isinstance(other, IntPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            mag = abs(c)
            if d == 0:
                body = str(mag)
            else:
                var = "t" if d == 1 else f"t^{d}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def tolist(self) -> list[int]:
        return list(self.coeffs)


def poly_sum(polys: Sequence[IntPolynomial]) -> IntPolynomial:
    total = IntPolynomial()
    for p in polys:
        total = total + p
    return total
