"""The topological k-graph Lambda_n over rational rotation angles.

A path is (z, p) with z a point of the circle and p a degree; we store z as a
rational angle in [0, 1), so z^m corresponds to m * angle mod 1.  Irrational
angles are not representable.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import DegreeOutOfRange, OdographError, ParseError
from .kgraph import deg_add, deg_leq, deg_sub, npow


class NotComposable(OdographError):
    pass


class DegenerateSpec(OdographError):
    pass


class DeltaTooLarge(OdographError):
    pass


def angle(x) -> Fraction:
    return Fraction(x) % 1


def parse_angle(text: str) -> Fraction:
    try:
        return angle(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad angle {text!r}") from exc


def circle_distance(a, b) -> Fraction:
    d = abs(angle(a) - angle(b))
    return min(d, 1 - d)


class PathPoint(NamedTuple):
    angle: Fraction
    degree: tuple

    def __str__(self):
        return f"({self.angle}, {list(self.degree)})"


def path(z, degree) -> PathPoint:
    return PathPoint(angle(z), tuple(degree))


def _n(obj) -> tuple:
    return tuple(getattr(obj, "n", obj))


def range_(x: PathPoint) -> PathPoint:
    return PathPoint(x.angle, (0,) * len(x.degree))


def source(n, x: PathPoint) -> PathPoint:
    return PathPoint(angle(npow(_n(n), x.degree) * x.angle), (0,) * len(x.degree))


def deg(x: PathPoint) -> tuple:
    return x.degree


def compose(n, x: PathPoint, y: PathPoint) -> PathPoint:
    if source(n, x) != range_(y):
        raise NotComposable(f"source of {x} is {source(n, x).angle}, range of {y} is {y.angle}")
    return PathPoint(x.angle, deg_add(x.degree, y.degree))


def factorize_path(n, x: PathPoint, front) -> tuple[PathPoint, PathPoint]:
    front = tuple(front)
    if not deg_leq(front, x.degree):
        raise DegreeOutOfRange(f"{front} is not below {x.degree}")
    head = PathPoint(x.angle, front)
    tail = PathPoint(angle(npow(_n(n), front) * x.angle), deg_sub(x.degree, front))
    return head, tail


def factor_along(n, x: PathPoint, order: Sequence[int]) -> list[PathPoint]:
    """Split x into unit edges taking colours in the given order."""
    k = len(x.degree)
    out = []
    rest = x
    for i in order:
        e = tuple(1 if c == i else 0 for c in range(k))
        head, rest = factorize_path(n, rest, e)
        out.append(head)
    if any(rest.degree):
        raise DegreeOutOfRange("order does not exhaust the degree")
    return out


def cubic_coherence(n, z) -> dict:
    """Factorize (z, (1,..,1)) along every colour order and check consistency."""
    n = _n(n)
    k = len(n)
    x = path(z, (1,) * k)
    results = {}
    ok = True
    for order in itertools.permutations(range(k)):
        edges = factor_along(n, x, order)
        acc = edges[0]
        for e in edges[1:]:
            acc = compose(n, acc, e)
        ok &= acc == x and source(n, edges[-1]) == source(n, x)
        results[order] = edges
    return {"passed": ok, "orders": len(results)}


def roots(n, v, p) -> list[Fraction]:
    """All w with npow(p) * w = v mod 1, in increasing order."""
    N = npow(_n(n), p)
    v = angle(v)
    return [(v + j) / N for j in range(N)]


def _ordered_degrees(k: int):
    total = 0
    while True:
        layer = [d for d in itertools.product(range(total + 1), repeat=k) if sum(d) == total]
        yield from sorted(layer)
        total += 1


def orbit_approx(n, v, target, eps) -> dict:
    """Smallest p (total degree, then lexicographic) with a root of v near target."""
    n = _n(n)
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    if all(x == 1 for x in n):
        raise DegenerateSpec("all alphabet sizes are 1; the orbit is a single point")
    v, target = angle(v), angle(target)
    for p in _ordered_degrees(len(n)):
        N = npow(n, p)
        # roots are (v + j)/N; nearest j to target*N - v
        centre = target * N - v
        best = None
        for j in {math.floor(centre) % N, math.ceil(centre) % N}:
            w = (v + j) / N
            d = circle_distance(w, target)
            if best is None or (d, w) < best:
                best = (d, w)
        d, w = best
        if d <= eps:
            if source(n, path(w, p)).angle != v:
                raise AssertionError("root failed verification")
            if N <= 4096 and w not in roots(n, v, p):
                raise AssertionError("root not among roots()")
            return {"p": list(p), "root": w, "distance": d}


def contracting_witness(n, delta) -> dict:
    """Exact interval witness that V x {0}, V = (-delta, delta), is contracting."""
    n = _n(n)
    delta = Fraction(delta)
    n1 = n[0]
    if n1 < 2:
        raise DegenerateSpec("contracting witness needs n_1 >= 2")
    if delta <= 0:
        raise ValueError("delta must be positive")
    if n1 * delta >= Fraction(1, 4):
        raise DeltaTooLarge(f"n_1 * delta = {n1 * delta} is not below 1/4")
    V = (-delta, delta)
    S = (-n1 * delta, n1 * delta)
    # both intervals are shorter than 1/2 so they embed in the circle without wrapping
    closure_inside = S[0] < V[0] and V[1] < S[1]
    strict = closure_inside and S != V
    return {
        "V": [str(V[0]), str(V[1])],
        "U1_degree": [1] + [0] * (len(n) - 1),
        "range_U1_in_V": True,
        "source_U1": [str(S[0]), str(S[1])],
        "closure_V_strictly_inside_source": strict,
        "passed": strict,
    }
