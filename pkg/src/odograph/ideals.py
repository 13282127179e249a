"""Constructible right ideals of a standard-product F_theta^+.

Every nonempty constructible right ideal is a finite disjoint union of
principal ideals alpha F_theta^+ with all alpha of one degree D.  We store
such an ideal as (D, {code(alpha)}); a word w lies in it iff d(w) >= D and
code(w) mod npow(D) is one of the codes.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .errors import OdographError, SpecMismatch
from .kgraph import (
    KGraphSpec,
    Word,
    decode,
    deg_join,
    deg_leq,
    deg_sub,
    encode,
    multiply,
    normal_form,
)

EXHAUSTIVE_BOUND = 10**6


class NoCommonMultiple(OdographError):
    pass


class MultipleMinimal(OdographError):
    def __init__(self, count):
        self.count = count
        super().__init__(f"{count} minimal common extensions; no unique right LCM")


class ExtensionPair(NamedTuple):
    alpha: Word
    beta: Word


def _crt_pair(a, m1, b, m2):
    """Smallest c >= 0 with c = a (mod m1), c = b (mod m2), or None."""
    g = math.gcd(m1, m2)
    if (b - a) % g:
        return None, None
    l = m1 // g * m2
    step = pow(m1 // g, -1, m2 // g) if m2 // g > 1 else 0
    t = ((b - a) // g * step) % (m2 // g)
    return (a + m1 * t) % l, l


def min_common_extensions(mu: Word, nu: Word) -> list[ExtensionPair]:
    """All (alpha, beta) with mu alpha = nu beta of degree d(mu) v d(nu)."""
    if mu.spec != nu.spec:
        raise SpecMismatch("words come from different specs")
    spec = mu.spec
    spec.require_standard()
    p, a = encode(mu)
    q, b = encode(nu)
    D = deg_join(p, q)
    big, mp, mq = spec.npow(D), spec.npow(p), spec.npow(q)
    c0, l = _crt_pair(a, mp, b, mq)
    if c0 is None:
        return []
    out = []
    for c in range(c0, big, l):
        out.append(ExtensionPair(
            decode(spec, deg_sub(D, p), (c - a) // mp),
            decode(spec, deg_sub(D, q), (c - b) // mq),
        ))
    return out


def right_lcm(mu: Word, nu: Word) -> Word:
    exts = min_common_extensions(mu, nu)
    if not exts:
        raise NoCommonMultiple(f"{mu} and {nu} have no common right multiple")
    if len(exts) > 1:
        raise MultipleMinimal(len(exts))
    return multiply(mu, exts[0].alpha)


@dataclass(frozen=True)
class LcmVerdict:
    is_lcm: bool
    pair: tuple[int, int] | None = None
    gcd: int | None = None
    relations: tuple = ()

    def to_json(self):
        out = {"right_lcm": self.is_lcm}
        if not self.is_lcm:
            out.update(
                pair=[self.pair[0] + 1, self.pair[1] + 1],
                gcd=self.gcd,
                relations=[[str(l), str(r)] for l, r in self.relations],
            )
        return out


def is_right_lcm_monoid(spec: KGraphSpec) -> LcmVerdict:
    """Right LCM iff the alphabet sizes are pairwise coprime.

    For a non-coprime pair the two relations x^i_0 x^j_{n_j/l} = x^j_0 x^i_{n_i/l}
    and x^i_0 x^j_0 = x^j_0 x^i_0 are returned after checking them by rewriting.
    """
    spec.require_standard()
    n = spec.n
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            l = math.gcd(n[i], n[j])
            if l > 1:
                rels = (
                    (Word(spec, ((i, 0), (j, n[j] // l))), Word(spec, ((j, 0), (i, n[i] // l)))),
                    (Word(spec, ((i, 0), (j, 0))), Word(spec, ((j, 0), (i, 0)))),
                )
                for lhs, rhs in rels:
                    if normal_form(lhs).letters != normal_form(rhs).letters:
                        raise AssertionError(f"witness relation {lhs} = {rhs} failed")
                return LcmVerdict(False, (i, j), l, rels)
    return LcmVerdict(True)


@dataclass(frozen=True, eq=False)
class ConstructibleIdeal:
    spec: KGraphSpec
    degree: tuple
    codes: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "degree", tuple(self.degree))
        object.__setattr__(self, "codes", frozenset(int(c) for c in self.codes))
        big = self.spec.npow(self.degree)
        bad = [c for c in self.codes if not 0 <= c < big]
        if bad:
            raise ValueError(f"codes {bad} outside [0, {big})")

    @classmethod
    def full(cls, spec):
        return cls(spec, spec.zero(), frozenset({0}))

    @classmethod
    def empty(cls, spec):
        return cls(spec, spec.zero(), frozenset())

    @classmethod
    def principal(cls, w: Word):
        d, c = encode(w)
        return cls(w.spec, d, frozenset({c}))

    @classmethod
    def from_words(cls, words: Iterable[Word]):
        """Ideal generated by same-degree words."""
        words = list(words)
        if not words:
            raise ValueError("need at least one word; use ConstructibleIdeal.empty")
        degrees = {w.degree for w in words}
        spec = words[0].spec
        D = tuple(max(ds) for ds in zip(*degrees))
        return cls(spec, D, frozenset()).union(*(cls.principal(w) for w in words))

    def is_empty(self) -> bool:
        return not self.codes

    def generators(self) -> list[Word]:
        return [decode(self.spec, self.degree, c) for c in sorted(self.codes)]

    def inflate(self, degree) -> "ConstructibleIdeal":
        """Same ideal written at a larger degree."""
        degree = tuple(degree)
        if not deg_leq(self.degree, degree):
            raise ValueError(f"cannot inflate {self.degree} to {degree}")
        m, big = self.spec.npow(self.degree), self.spec.npow(degree)
        codes = frozenset(c + m * t for c in self.codes for t in range(big // m))
        return ConstructibleIdeal(self.spec, degree, codes)

    def union(self, *others) -> "ConstructibleIdeal":
        D = self.degree
        for o in others:
            if not o.is_empty():
                D = deg_join(D, o.degree)
        codes = set(self.inflate(D).codes) if not self.is_empty() else set()
        for o in others:
            if not o.is_empty():
                codes |= o.inflate(D).codes
        if not codes:
            return ConstructibleIdeal.empty(self.spec)
        return ConstructibleIdeal(self.spec, D, frozenset(codes))

    def contains(self, w: Word) -> bool:
        if self.is_empty() or not deg_leq(self.degree, w.degree):
            return False
        _, c = encode(w)
        return c % self.spec.npow(self.degree) in self.codes

    def __eq__(self, other):
        if not isinstance(other, ConstructibleIdeal):
            return NotImplemented
        if self.spec != other.spec:
            return False
        if self.is_empty() or other.is_empty():
            return self.is_empty() and other.is_empty()
        D = deg_join(self.degree, other.degree)
        return self.inflate(D).codes == other.inflate(D).codes

    __hash__ = None

    def to_json(self) -> dict:
        return {"degree": list(self.degree), "codes": [str(c) for c in sorted(self.codes)]}

    @classmethod
    def from_json(cls, spec, doc) -> "ConstructibleIdeal":
        return cls(spec, tuple(doc["degree"]), frozenset(int(c) for c in doc["codes"]))

    def __str__(self):
        if self.is_empty():
            return "{}"
        return " u ".join(f"({w})F" if len(w) else "F" for w in self.generators())


def canonical_form(X: ConstructibleIdeal) -> ConstructibleIdeal:
    if X.is_empty():
        return ConstructibleIdeal.empty(X.spec)
    return ConstructibleIdeal(X.spec, X.degree, frozenset(X.codes))


def chain_ideal(pairs: Sequence[tuple[Word, Word]]) -> ConstructibleIdeal:
    """mu_n^{-1} nu_n ... mu_1^{-1} nu_1 F for pairs [(mu_1, nu_1), ..., (mu_n, nu_n)]."""
    if not pairs:
        raise ValueError("empty chain")
    spec = pairs[0][0].spec
    mu, nu = pairs[0]
    current = {e.alpha for e in min_common_extensions(mu, nu)}
    for mu, nu in pairs[1:]:
        nxt = set()
        for alpha in current:
            nxt |= {e.alpha for e in min_common_extensions(mu, multiply(nu, alpha))}
        current = nxt
    if not current:
        return ConstructibleIdeal.empty(spec)
    return canonical_form(ConstructibleIdeal.from_words(current))


def intersect(X: ConstructibleIdeal, Y: ConstructibleIdeal) -> ConstructibleIdeal:
    """Union over generator pairs of alpha_i mu F with (mu, nu) minimal extensions."""
    if X.spec != Y.spec:
        raise SpecMismatch("ideals come from different specs")
    words = []
    for a in X.generators():
        for b in Y.generators():
            for e in min_common_extensions(a, b):
                words.append(multiply(a, e.alpha))
    if not words:
        return ConstructibleIdeal.empty(X.spec)
    return canonical_form(ConstructibleIdeal.from_words(words))


def is_exhaustive(words: Iterable[Word], bound: int = EXHAUSTIVE_BOUND) -> bool:
    """Does every word have a common extension with some member of ``words``?

    Checked on all codes at the join degree of the family.
    """
    words = list(words)
    if not words:
        return False
    spec = words[0].spec
    D = words[0].degree
    for w in words[1:]:
        D = deg_join(D, w.degree)
    big = spec.npow(D)
    if big > bound:
        warnings.warn(f"exhaustiveness test enumerates {big} codes", RuntimeWarning)
    classes = {(spec.npow(w.degree), encode(w)[1]) for w in words}
    return all(any(c % m == r for m, r in classes) for c in range(big))


def exhaustive_gap(words: Iterable[Word]) -> int | None:
    """Smallest code at the join degree missed by every member, if any."""
    words = list(words)
    spec = words[0].spec
    D = words[0].degree
    for w in words[1:]:
        D = deg_join(D, w.degree)
    classes = {(spec.npow(w.degree), encode(w)[1]) for w in words}
    for c in range(spec.npow(D)):
        if not any(c % m == r for m, r in classes):
            return c
    return None


def ideal_projection(X: ConstructibleIdeal):
    """The operator term sum_alpha g_alpha g_alpha^* of a canonical ideal."""
    from .oper import OpTerm

    total = OpTerm.zero()
    for alpha in X.generators():
        g = OpTerm.word_isometry(alpha)
        total = total + g * g.adjoint()
    return total
