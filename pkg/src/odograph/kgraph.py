"""Single-vertex k-graph monoids presented by commutation tables.

Colours are stored zero-based internally (colour ``i`` is printed as ``x{i+1}``);
letters are zero-based, so colour ``i`` has letters ``0 .. n[i]-1``.

A word is a sequence of ``(colour, letter)`` pairs.  Two words are equal when
their normal forms agree, the normal form listing all colour-0 letters first,
then colour 1, and so on.
"""

from __future__ import annotations

import itertools
import json
import math
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegreeOutOfRange,
    NotBijective,
    ParseError,
    SpecMismatch,
    UnsupportedFlavor,
)

STANDARD = "standard"
EXPLICIT = "explicit"


# -- degrees -----------------------------------------------------------------

def zero_degree(k: int) -> tuple[int, ...]:
    return (0,) * k


def unit_degree(k: int, i: int) -> tuple[int, ...]:
    return tuple(1 if c == i else 0 for c in range(k))


def deg_add(p, q):
    return tuple(a + b for a, b in zip(p, q))


def deg_sub(p, q):
    return tuple(a - b for a, b in zip(p, q))


def deg_join(p, q):
    return tuple(max(a, b) for a, b in zip(p, q))


def deg_meet(p, q):
    return tuple(min(a, b) for a, b in zip(p, q))


def deg_leq(p, q) -> bool:
    return all(a <= b for a, b in zip(p, q))


def npow(n: Sequence[int], p: Sequence[int]) -> int:
    """Return prod(n_i ** p_i) as an exact integer."""
    return math.prod(ni**pi for ni, pi in zip(n, p))


def degrees_upto(bound: Sequence[int]):
    """All degrees p with 0 <= p <= bound componentwise."""
    return itertools.product(*(range(b + 1) for b in bound))


def degrees_of_length(k: int, length: int):
    """All degrees in N^k with total length ``length``."""
    for cut in itertools.combinations(range(length + k - 1), k - 1):
        prev, out = -1, []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(length + k - 2 - prev)
        yield tuple(out)


# -- the monoid ----------------------------------------------------------------

def standard_theta(ni: int, nj: int, s: int, t: int) -> tuple[int, int]:
    """(t', s') with s + t*ni == t' + s'*nj."""
    v = s + t * ni
    return v % nj, v // nj


class KGraphSpec:
    """Rank, alphabet sizes and commutation tables of a monoid F_theta^+.

    ``tables[(i, j)]`` (``i < j``) maps ``(s, t)`` to ``(t', s')``, meaning
    ``x^i_s x^j_t = x^j_t' x^i_s'``.
    """

    def __init__(self, n: Sequence[int], tables=None, flavor: str = STANDARD,
                 validate: bool = True):
        n = tuple(int(v) for v in n)
        if not n or any(v < 1 for v in n):
            raise ValueError(f"alphabet sizes must be positive, got {n}")
        if flavor not in (STANDARD, EXPLICIT):
            raise ValueError(f"unknown flavor {flavor!r}")
        self.n = n
        self.k = len(n)
        self.flavor = flavor
        if flavor == STANDARD:
            tables = {
                (i, j): {
                    (s, t): standard_theta(n[i], n[j], s, t)
                    for s in range(n[i]) for t in range(n[j])
                }
                for i in range(self.k) for j in range(i + 1, self.k)
            }
        elif tables is None:
            raise ValueError("explicit flavor needs tables")
        self.tables = {key: dict(tab) for key, tab in tables.items()}
        self._inverse = None
        if validate:
            validate_theta(self)

    @classmethod
    def standard(cls, n: Sequence[int]) -> "KGraphSpec":
        return cls(n, flavor=STANDARD)

    @classmethod
    def explicit(cls, n, tables, validate=True) -> "KGraphSpec":
        return cls(n, tables, flavor=EXPLICIT, validate=validate)

    @classmethod
    def swap_tables(cls, n: int, k: int) -> "KGraphSpec":
        """Identical alphabets with x^i_s x^j_t = x^j_s x^i_t for all i < j."""
        tables = {
            (i, j): {(s, t): (s, t) for s in range(n) for t in range(n)}
            for i in range(k) for j in range(i + 1, k)
        }
        return cls((n,) * k, tables, flavor=EXPLICIT)

    # identity ------------------------------------------------------------
    @cached_property
    def _key(self):
        tabs = tuple(
            (key, tuple(sorted(self.tables[key].items())))
            for key in sorted(self.tables)
        )
        return self.n, tabs

    def __eq__(self, other):
        return isinstance(other, KGraphSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"KGraphSpec(n={self.n}, flavor={self.flavor!r})"

    # tables ---------------------------------------------------------------
    def theta(self, i: int, j: int, s: int, t: int) -> tuple[int, int]:
        return self.tables[(i, j)][(s, t)]

    def theta_inv(self, i: int, j: int, t2: int, s2: int) -> tuple[int, int]:
        if self._inverse is None:
            self._inverse = {
                key: {v: u for u, v in tab.items()} for key, tab in self.tables.items()
            }
        return self._inverse[(i, j)][(t2, s2)]

    @cached_property
    def is_standard(self) -> bool:
        """True when every table is the standard-product rule."""
        if self.flavor == STANDARD:
            return True
        n = self.n
        return all(
            tab[(s, t)] == standard_theta(n[i], n[j], s, t)
            for (i, j), tab in self.tables.items()
            for s in range(n[i]) for t in range(n[j])
        )

    def require_standard(self):
        if not self.is_standard:
            raise UnsupportedFlavor(
                "operation needs the standard-product theta; this spec uses explicit tables"
            )

    def npow(self, p) -> int:
        return npow(self.n, p)

    def zero(self):
        return zero_degree(self.k)

    def unit(self, i: int):
        return unit_degree(self.k, i)

    # serialisation --------------------------------------------------------
    def to_json(self) -> dict:
        if self.flavor == STANDARD:
            return {"n": list(self.n), "theta": "standard"}
        theta = {}
        for (i, j), tab in sorted(self.tables.items()):
            theta[f"({i + 1},{j + 1})"] = [
                [f"{tab[(s, t)][0]},{tab[(s, t)][1]}" for t in range(self.n[j])]
                for s in range(self.n[i])
            ]
        return {"n": list(self.n), "theta": theta}

    @classmethod
    def from_json(cls, doc) -> "KGraphSpec":
        if isinstance(doc, str):
            doc = json.loads(doc)
        n = tuple(doc["n"])
        theta = doc.get("theta", "standard")
        if theta == "standard":
            return cls.standard(n)
        tables = {}
        for key, rows in theta.items():
            m = re.fullmatch(r"\(\s*(\d+)\s*,\s*(\d+)\s*\)", key)
            if not m:
                raise ParseError(f"bad theta key {key!r}")
            i, j = int(m.group(1)) - 1, int(m.group(2)) - 1
            if not 0 <= i < j < len(n):
                raise ParseError(f"theta key {key!r} out of range")
            tab = {}
            for s, row in enumerate(rows):
                for t, cell in enumerate(row):
                    if isinstance(cell, str):
                        a, b = (int(x) for x in cell.split(","))
                    else:
                        a, b = cell
                    tab[(s, t)] = (a, b)
            tables[(i, j)] = tab
        return cls.explicit(n, tables)


def validate_theta(spec: KGraphSpec) -> dict:
    """Check each table is a bijection [n_i]x[n_j] -> [n_j]x[n_i].

    Raises NotBijective on the first failing pair.
    """
    n = spec.n
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            tab = spec.tables.get((i, j))
            if tab is None:
                raise NotBijective(i, j, ["missing table"])
            domain = {(s, t) for s in range(n[i]) for t in range(n[j])}
            if set(tab) != domain:
                raise NotBijective(i, j, ["table does not cover [n_i]x[n_j]"])
            seen = {}
            collisions = []
            for key in sorted(tab):
                out = tab[key]
                if not (0 <= out[0] < n[j] and 0 <= out[1] < n[i]):
                    collisions.append((key, out))
                elif out in seen:
                    collisions.append((seen[out], key))
                else:
                    seen[out] = key
            if collisions:
                raise NotBijective(i, j, collisions)
    report = {"valid": True, "flavor": spec.flavor, "pairs": spec.k * (spec.k - 1) // 2}
    if spec.flavor == STANDARD:
        report["matches_formula"] = all(
            spec.theta(i, j, s, t) == standard_theta(n[i], n[j], s, t)
            for (i, j) in spec.tables for s in range(n[i]) for t in range(n[j])
        )
    return report


# -- words ---------------------------------------------------------------------

def _swap(spec: KGraphSpec, a, b):
    """Rewrite an adjacent pair of different colours into the other order."""
    (i, s), (j, t) = a, b
    if i < j:
        t2, s2 = spec.theta(i, j, s, t)
        return (j, t2), (i, s2)
    # x^i_s x^j_t with j < i is the right side of theta_{ji}
    lo, hi = spec.theta_inv(j, i, s, t)
    return (j, lo), (i, hi)


def _normalize(spec: KGraphSpec, letters, rng=None):
    letters = list(letters)
    while True:
        inversions = [p for p in range(len(letters) - 1) if letters[p][0] > letters[p + 1][0]]
        if not inversions:
            return tuple(letters)
        p = rng.choice(inversions) if rng is not None else inversions[0]
        letters[p], letters[p + 1] = _swap(spec, letters[p], letters[p + 1])


def _arrange(spec: KGraphSpec, letters, colours):
    """Rewrite ``letters`` into the colour sequence ``colours`` by adjacent swaps."""
    letters = list(letters)
    for pos, want in enumerate(colours):
        q = pos
        while letters[q][0] != want:
            q += 1
        while q > pos:
            letters[q - 1], letters[q] = _swap(spec, letters[q - 1], letters[q])
            q -= 1
    return tuple(letters)


@dataclass(frozen=True, eq=False)
class Word:
    spec: KGraphSpec
    letters: tuple

    def __post_init__(self):
        for i, s in self.letters:
            if not 0 <= i < self.spec.k:
                raise ParseError(f"colour {i + 1} out of range for k={self.spec.k}")
            if not 0 <= s < self.spec.n[i]:
                raise ParseError(f"letter {s} out of range for colour {i + 1}")

    @classmethod
    def empty(cls, spec):
        return cls(spec, ())

    @classmethod
    def letter(cls, spec, i, s):
        return cls(spec, ((i, s),))

    @classmethod
    def parse(cls, spec: KGraphSpec, text: str) -> "Word":
        """Parse ``"x1:0 x2:1"`` (1-based colour, 0-based letter)."""
        text = text.strip()
        if text in ("", "1", "e", "empty"):
            return cls(spec, ())
        letters = []
        for tok in text.split():
            m = re.fullmatch(r"x(\d+):(\d+)", tok)
            if not m:
                raise ParseError(f"bad letter token {tok!r}")
            letters.append((int(m.group(1)) - 1, int(m.group(2))))
        return cls(spec, tuple(letters))

    def __str__(self):
        return " ".join(f"x{i + 1}:{s}" for i, s in self.letters)

    def __repr__(self):
        return f"Word({str(self)!r})"

    def __len__(self):
        return len(self.letters)

    @cached_property
    def degree(self) -> tuple[int, ...]:
        d = [0] * self.spec.k
        for i, _ in self.letters:
            d[i] += 1
        return tuple(d)

    @cached_property
    def normal_letters(self) -> tuple:
        return _normalize(self.spec, self.letters)

    @property
    def is_normal(self) -> bool:
        return all(a[0] <= b[0] for a, b in zip(self.letters, self.letters[1:]))

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.spec == other.spec and self.normal_letters == other.normal_letters

    def __hash__(self):
        return hash(self.normal_letters)

    def __mul__(self, other):
        return multiply(self, other)


def normal_form(w: Word, rng: random.Random | None = None) -> Word:
    """Normal form of ``w``; with ``rng`` the swap schedule is randomised."""
    if rng is None:
        return Word(w.spec, w.normal_letters)
    return Word(w.spec, _normalize(w.spec, w.letters, rng))


def encode(w: Word) -> tuple[tuple[int, ...], int]:
    """(degree, code) of a word over a standard-product spec.

    The code of a single letter is the letter itself and
    code(uv) = code(u) + npow(d(u)) * code(v).
    """
    spec = w.spec
    spec.require_standard()
    code, scale = 0, 1
    for i, s in w.letters:
        code += s * scale
        scale *= spec.n[i]
    return w.degree, code


def decode(spec: KGraphSpec, degree, code: int) -> Word:
    spec.require_standard()
    degree = tuple(degree)
    if len(degree) != spec.k or any(p < 0 for p in degree):
        raise DegreeOutOfRange(f"bad degree {degree} for k={spec.k}")
    if not 0 <= code < spec.npow(degree):
        raise DegreeOutOfRange(f"code {code} outside [0, {spec.npow(degree)})")
    letters = []
    for i, p in enumerate(degree):
        for _ in range(p):
            code, s = divmod(code, spec.n[i])
            letters.append((i, s))
    return Word(spec, tuple(letters))


def words_of_degree(spec: KGraphSpec, degree):
    """Every element of the given degree, as normal-form words."""
    degree = tuple(degree)
    blocks = [
        itertools.product(range(spec.n[i]), repeat=p) for i, p in enumerate(degree)
    ]
    for choice in itertools.product(*(list(b) for b in blocks)):
        letters = tuple((i, s) for i, blk in enumerate(choice) for s in blk)
        yield Word(spec, letters)


def words_upto_length(spec: KGraphSpec, max_len: int):
    for length in range(max_len + 1):
        for d in degrees_of_length(spec.k, length):
            yield from words_of_degree(spec, d)


def multiply(w1: Word, w2: Word) -> Word:
    if w1.spec != w2.spec:
        raise SpecMismatch("words come from different specs")
    return normal_form(Word(w1.spec, w1.letters + w2.letters))


def factorize(w: Word, front) -> tuple[Word, Word]:
    """The unique (a, b) with w = ab and d(a) = front."""
    front = tuple(front)
    if len(front) != w.spec.k or any(f < 0 for f in front) or not deg_leq(front, w.degree):
        raise DegreeOutOfRange(f"front {front} not <= degree {w.degree}")
    spec = w.spec
    back = deg_sub(w.degree, front)
    colours = [i for i in range(spec.k) for _ in range(front[i])]
    colours += [i for i in range(spec.k) for _ in range(back[i])]
    arranged = _arrange(spec, w.normal_letters, colours)
    cut = sum(front)
    return normal_form(Word(spec, arranged[:cut])), normal_form(Word(spec, arranged[cut:]))


def cubic_check(spec: KGraphSpec) -> dict:
    """Compare the two ways of reversing x^i_s x^j_t x^l_u for all i<j<l.

    Returns ``{"passed": True, "triples": count}`` or the first failing
    triple with both factorizations.
    """
    checked = 0
    n = spec.n
    for i, j, l in itertools.combinations(range(spec.k), 3):
        for s in range(n[i]):
            for t in range(n[j]):
                for u in range(n[l]):
                    checked += 1
                    a, b, c = (i, s), (j, t), (l, u)
                    # swap (i,j) first: ijl -> jil -> jli -> lji
                    b1, a1 = _swap(spec, a, b)
                    c1, a2 = _swap(spec, a1, c)
                    c2, b2 = _swap(spec, b1, c1)
                    route1 = (c2, b2, a2)
                    # swap (j,l) first: ijl -> ilj -> lij -> lji
                    c3, b3 = _swap(spec, b, c)
                    c4, a3 = _swap(spec, a, c3)
                    b4, a4 = _swap(spec, a3, b3)
                    route2 = (c4, b4, a4)
                    if route1 != route2:
                        fmt = lambda r: " ".join(f"x{x + 1}:{y}" for x, y in r)
                        return {
                            "passed": False,
                            "triple": [f"x{i + 1}:{s}", f"x{j + 1}:{t}", f"x{l + 1}:{u}"],
                            "route_ij_first": fmt(route1),
                            "route_jl_first": fmt(route2),
                            "checked": checked,
                        }
    return {"passed": True, "checked": checked}


def random_word(spec: KGraphSpec, rng: random.Random, length: int) -> Word:
    letters = []
    for _ in range(length):
        i = rng.randrange(spec.k)
        letters.append((i, rng.randrange(spec.n[i])))
    return Word(spec, tuple(letters))


def all_letter_sequences(spec: KGraphSpec, max_len: int) -> Iterable[Word]:
    """Every sequence of letters (not just normal forms) up to ``max_len``."""
    alphabet = [(i, s) for i in range(spec.k) for s in range(spec.n[i])]
    for length in range(max_len + 1):
        for seq in itertools.product(alphabet, repeat=length):
            yield Word(spec, seq)
