"""Slow reference implementations used to cross-check the fast algorithms.

None of these use word codes or congruence solving; they work by rewriting,
prefix factorization and plain enumeration.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from .kgraph import (
    KGraphSpec,
    Word,
    deg_join,
    deg_leq,
    deg_sub,
    factorize,
    multiply,
    npow,
    words_of_degree,
)


def has_prefix(w: Word, mu: Word) -> Word | None:
    """The tail beta with w = mu beta, or None."""
    if not deg_leq(mu.degree, w.degree):
        return None
    head, tail = factorize(w, mu.degree)
    return tail if head == mu else None


def chain_member(w: Word, pairs: Sequence[tuple[Word, Word]]) -> bool:
    """Is w in mu_n^{-1} nu_n ... mu_1^{-1} nu_1 F?  Peels one pair at a time."""
    if not pairs:
        return True
    mu, nu = pairs[-1]
    tail = has_prefix(multiply(mu, w), nu)
    return tail is not None and chain_member(tail, pairs[:-1])


def ideal_members(ideal, degrees) -> set:
    return {w for d in degrees for w in words_of_degree(ideal.spec, d) if ideal.contains(w)}


def chain_members(spec: KGraphSpec, pairs, degrees) -> set:
    return {w for d in degrees for w in words_of_degree(spec, d) if chain_member(w, pairs)}


def min_extensions(mu: Word, nu: Word) -> set[tuple[Word, Word]]:
    """(alpha, beta) of minimal degree with mu alpha = nu beta, by enumerating alpha."""
    D = deg_join(mu.degree, nu.degree)
    out = set()
    for alpha in words_of_degree(mu.spec, deg_sub(D, mu.degree)):
        beta = has_prefix(multiply(mu, alpha), nu)
        if beta is not None:
            out.add((alpha, beta))
    return out


def exhaustive(words: Sequence[Word]) -> bool:
    """Every word of the join degree has some member as a prefix."""
    spec = words[0].spec
    D = words[0].degree
    for w in words[1:]:
        D = deg_join(D, w.degree)
    return all(any(has_prefix(w, m) is not None for m in words) for w in words_of_degree(spec, D))


def exponent_bound(n: Sequence[int]) -> int:
    """Search radius large enough to see a dependence among n, if one exists.

    Prime exponents of the entries are at most e = floor(log2 max n).  A
    minimal dependence is proportional to a vector of (k-1)-minors of the
    exponent matrix; for k <= 3 these are at most e^(k-1) (a 2x2 minor of
    non-negative entries is a difference of two products each <= e^2).  For
    larger k we fall back on Hadamard's bound.
    """
    k = len(n)
    e = max(1, max(n).bit_length() - 1)
    if k <= 3:
        return max(1, e ** (k - 1))
    return math.isqrt(k - 1) ** (k - 1) * e ** (k - 1) + 1


def exponent_search(n: Sequence[int], bound: int | None = None) -> tuple[tuple, tuple] | None:
    """Find p != q with entries <= bound and npow(p) == npow(q), by collision search."""
    n = tuple(n)
    if bound is None:
        bound = exponent_bound(n)
    seen = {}
    for p in itertools.product(range(bound + 1), repeat=len(n)):
        v = npow(n, p)
        if v in seen:
            q = seen[v]
            # cancel the common part
            m = tuple(min(a, b) for a, b in zip(p, q))
            return tuple(a - c for a, c in zip(q, m)), tuple(a - c for a, c in zip(p, m))
        seen[v] = p
    return None
