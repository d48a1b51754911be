"""Univariate polynomials in ``q`` with exact rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class Polynomial:
    """Immutable polynomial; ``coeffs[i]`` is the coefficient of ``q**i``.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and equal polynomials have equal coefficient tuples.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c: Scalar) -> Polynomial:
        return cls([c])

    @classmethod
    def q(cls) -> Polynomial:
        return cls([0, 1])

    @classmethod
    def monomial(cls, degree: int, c: Scalar = 1) -> Polynomial:
        return cls([0] * degree + [c])

    @classmethod
    def binomial(cls, j: int) -> Polynomial:
        """``C(q, j) = q (q-1) ... (q-j+1) / j!`` expanded in the monomial basis."""
        return falling_factorial(j) * Fraction(1, math.factorial(j))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Polynomial([other]).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __add__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        n = max(len(self.coeffs), len(other.coeffs))
        return Polynomial(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> Polynomial:
        return Polynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> Polynomial:
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> Polynomial:
        return (-self) + other

    def __mul__(self, other) -> Polynomial:
        if isinstance(other, (int, Fraction)):
            return Polynomial(c * other for c in self.coeffs)
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial([1])
        for _ in range(k):
            result = result * self
        return result

    def compose_negative(self) -> Polynomial:
        """``p(-q)``."""
        return Polynomial(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs))

    def derivative(self, m: int = 1) -> Polynomial:
        if m < 0:
            raise ValueError("derivative order must be non-negative")
        cs = list(self.coeffs)
        for _ in range(m):
            cs = [i * c for i, c in enumerate(cs)][1:]
        return Polynomial(cs)

    def is_nonnegative(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"coeffs": [fraction_str(c) for c in self.coeffs], "basis": "monomial"}

    @classmethod
    def from_json(cls, data: dict) -> Polynomial:
        return cls(Fraction(c) for c in data["coeffs"])

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def _coerce(x) -> Polynomial | None:
    if isinstance(x, Polynomial):
        return x
    if isinstance(x, (int, Fraction)):
        return Polynomial([x])
    return None


def falling_factorial(j: int) -> Polynomial:
    """``q (q-1) ... (q-j+1)``."""
    result = Polynomial([1])
    for i in range(j):
        result = result * Polynomial([-i, 1])
    return result


def fraction_str(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_polynomial(p: Polynomial, var: str = "q") -> str:
    """Human form, highest degree first: ``q^3 + 3q^2 + 2q``."""
    if not p.coeffs:
        return "0"
    terms = []
    for i in range(p.degree, -1, -1):
        c = p.coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if i == 0:
            body = fraction_str(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = f"{mag.numerator}{mono}"
            else:
                body = f"({fraction_str(mag)}){mono}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
