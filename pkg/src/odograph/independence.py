"""Multiplicative independence of alphabet sizes, with integer certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import OdographError
from .kgraph import KGraphSpec, Word, npow

TRIAL_DIVISION_LIMIT = 10**6


class NonPositive(OdographError):
    pass


class FactorizationLimit(OdographError):
    pass


def factorize_integer(m: int, limit: int = TRIAL_DIVISION_LIMIT) -> dict[int, int]:
    """Prime factorization of m >= 1 by trial division up to ``limit``."""
    if m < 1:
        raise NonPositive(f"cannot factorize {m}")
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        if d > limit:
            raise FactorizationLimit(f"cofactor {m} needs trial division beyond {limit}")
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


@dataclass(frozen=True)
class ExponentMatrix:
    primes: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, n: Sequence[int]) -> "ExponentMatrix":
        facts = [factorize_integer(v) for v in n]
        primes = tuple(sorted({p for f in facts for p in f}))
        rows = tuple(tuple(f.get(p, 0) for p in primes) for f in facts)
        out = cls(primes, rows)
        for v, row in zip(n, rows):
            assert math.prod(p**e for p, e in zip(primes, row)) == v
        return out


@dataclass(frozen=True)
class DependenceCertificate:
    """Degrees p != q with npow(p) == npow(q)."""

    p: tuple[int, ...]
    q: tuple[int, ...]

    def verify(self, n: Sequence[int]) -> bool:
        return self.p != self.q and npow(n, self.p) == npow(n, self.q)


def integer_kernel_vector(rows: Sequence[Sequence[int]]) -> tuple[int, ...] | None:
    """A primitive nonzero integer v with sum v_i * rows[i] == 0, or None.

    Gaussian elimination over the rationals on the transposed system; the
    solution is cleared of denominators, divided by its content, and signed so
    its first nonzero entry is positive.
    """
    k = len(rows)
    width = len(rows[0]) if rows else 0
    # columns are the rows of the exponent matrix
    a = [[Fraction(rows[c][r]) for c in range(k)] for r in range(width)]
    pivots = []
    r = 0
    for c in range(k):
        piv = next((i for i in range(r, width) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(width):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == width:
            break
    free = [c for c in range(k) if c not in pivots]
    if not free:
        return None
    f = free[0]
    v = [Fraction(0)] * k
    v[f] = Fraction(1)
    for row, c in enumerate(pivots):
        v[c] = -a[row][f]
    den = math.lcm(*(x.denominator for x in v))
    ints = [int(x * den) for x in v]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    if first < 0:
        ints = [-x for x in ints]
    return tuple(ints)


def multiplicative_dependence(n: Sequence[int]) -> DependenceCertificate | None:
    """Certificate that {ln n_i} is rationally dependent, or None if independent."""
    n = tuple(n)
    if any(v < 1 for v in n):
        raise NonPositive(f"alphabet sizes must be positive: {n}")
    k = len(n)
    unit = lambda i: tuple(1 if c == i else 0 for c in range(k))
    zero = (0,) * k
    cert = None
    for i, v in enumerate(n):
        if v == 1:
            cert = DependenceCertificate(unit(i), zero)
            break
    if cert is None:
        for i in range(k):
            for j in range(i + 1, k):
                if n[i] == n[j]:
                    cert = DependenceCertificate(unit(i), unit(j))
                    break
            if cert is not None:
                break
    if cert is None:
        v = integer_kernel_vector(ExponentMatrix.build(n).rows)
        if v is None:
            return None
        cert = DependenceCertificate(
            tuple(max(x, 0) for x in v), tuple(max(-x, 0) for x in v)
        )
    if not cert.verify(n):
        raise AssertionError(f"certificate {cert} failed verification")
    return cert


def exponent_rank(n: Sequence[int]) -> int:
    rows = ExponentMatrix.build(n).rows
    if not rows or not rows[0]:
        return 0
    a = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    for c in range(len(a[0])):
        piv = next((i for i in range(rank, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(rank + 1, len(a)):
            f = a[i][c] / a[rank][c]
            a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool
    certificate: DependenceCertificate | None = None
    kernel_witness: tuple[Word, Word] | None = None

    def to_json(self) -> dict:
        if self.simple:
            return {"simple": True}
        return {
            "simple": False,
            "p": list(self.certificate.p),
            "q": list(self.certificate.q),
            "kernel_witness": [str(w) for w in self.kernel_witness],
        }


def witness_words(spec: KGraphSpec, cert: DependenceCertificate) -> tuple[Word, Word]:
    """The words prod (x^i_0)^{p_i} and prod (x^i_0)^{q_i}."""
    mk = lambda d: Word(spec, tuple((i, 0) for i, e in enumerate(d) for _ in range(e)))
    return mk(cert.p), mk(cert.q)


def is_simple(spec: KGraphSpec) -> SimplicityVerdict:
    spec.require_standard()
    cert = multiplicative_dependence(spec.n)
    if cert is None:
        return SimplicityVerdict(True)
    return SimplicityVerdict(False, cert, witness_words(spec, cert))
