"""Exact real scalars of the form sum_r q_r * sqrt(r), r squarefree."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence


def squarefree_split(m: int) -> tuple[int, int]:
    """Return (a, r) with m == a*a*r and r squarefree (m >= 1)."""
    if m < 1:
        raise ValueError("squarefree_split needs m >= 1")
    a, r, d = 1, 1, 2
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        a *= d ** (e // 2)
        if e % 2:
            r *= d
        d += 1
    return a, r * m


class ExactScalar:
    """Element of Q(sqrt 2, sqrt 3, ...) held as {squarefree radicand: rational}.

    Square roots of distinct squarefree integers are linearly independent over
    Q, so the dictionary (with zero coefficients dropped) is a normal form.
    """

    __slots__ = ("terms",)

    def __init__(self, value=0, radicand: int = 1):
        if isinstance(value, ExactScalar):
            self.terms = dict(value.terms)
            return
        value = Fraction(value)
        if value == 0:
            self.terms = {}
            return
        a, r = squarefree_split(radicand)
        self.terms = {r: value * a}

    @classmethod
    def _from_terms(cls, terms):
        out = cls.__new__(cls)
        out.terms = {r: q for r, q in terms.items() if q != 0}
        return out

    @classmethod
    def sqrt(cls, q) -> "ExactScalar":
        """Square root of a non-negative rational."""
        q = Fraction(q)
        if q < 0:
            raise ValueError("negative radicand")
        if q == 0:
            return cls(0)
        a, r = squarefree_split(q.numerator * q.denominator)
        return cls._from_terms({r: Fraction(a, q.denominator)})

    @classmethod
    def from_half_exponents(cls, n: Sequence[int], h: Sequence[int]) -> "ExactScalar":
        """prod n_i ** (h_i / 2) for integer (possibly negative) h."""
        q = Fraction(1)
        for ni, hi in zip(n, h):
            q *= Fraction(ni) ** hi
        return cls.sqrt(q)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        other = _coerce(other)
        terms = dict(self.terms)
        for r, q in other.terms.items():
            terms[r] = terms.get(r, 0) + q
        return ExactScalar._from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar._from_terms({r: -q for r, q in self.terms.items()})

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        other = _coerce(other)
        terms = {}
        for r1, q1 in self.terms.items():
            for r2, q2 in other.terms.items():
                g = math.gcd(r1, r2)
                r = (r1 // g) * (r2 // g)
                terms[r] = terms.get(r, 0) + q1 * q2 * g
        return ExactScalar._from_terms(terms)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sort_key(self):
        return tuple(sorted(self.terms.items()))

    def __float__(self):
        return float(sum(float(q) * math.sqrt(r) for r, q in self.terms.items()))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for r, q in sorted(self.terms.items()):
            if r == 1:
                parts.append(str(q))
            elif q == 1:
                parts.append(f"sqrt({r})")
            else:
                parts.append(f"{q}*sqrt({r})")
        return " + ".join(parts)

    def __repr__(self):
        return f"ExactScalar({self})"


def _coerce(x) -> ExactScalar:
    if isinstance(x, ExactScalar):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactScalar(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact scalar")


ONE = ExactScalar(1)
ZERO = ExactScalar(0)
