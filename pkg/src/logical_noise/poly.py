"""Exact univariate polynomials over the rationals, monomial basis."""
from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Iterable, Union

Scalar = Union[int, Fraction]


class Poly:
    """Polynomial in one variable with exact Fraction coefficients.

    Coefficients are stored lowest degree first and normalized (no trailing
    zeros).  Arithmetic never touches floating point.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def zero(cls) -> "Poly":
        return cls()

    @classmethod
    def one(cls) -> "Poly":
        return cls((1,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == Poly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return Poly(tuple(c * other for c in self.coeffs))
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1 or 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative exponent")
        result = Poly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __call__(self, p):
        """Evaluate by Horner; exact for Fraction input, float otherwise."""
        acc = Fraction(0) if isinstance(p, Fraction) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * p + (c if isinstance(p, Fraction) else float(c))
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "Poly(0)"
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            elif k == 1:
                terms.append(f"{c}*p" if c != 1 else "p")
            else:
                terms.append(f"{c}*p^{k}" if c != 1 else f"p^{k}")
        return "Poly(" + " + ".join(terms) + ")"


def monomial(c: Scalar, k: int) -> Poly:
    return Poly((0,) * k + (Fraction(c),))


def paper_term(c: Scalar, k: int, f: Scalar, m: int) -> Poly:
    """c * p^k * (1 - f*p)^m expanded into the monomial basis.

    Mixed-basis expressions (p^k times powers of a no-error factor) are the
    common way channel weights are quoted; tests expand them through here
    before exact comparison.
    """
    c, f = Fraction(c), Fraction(f)
    out = [Fraction(0)] * (k + m + 1)
    for j in range(m + 1):
        out[k + j] = c * comb(m, j) * (-f) ** j
    return Poly(out)
