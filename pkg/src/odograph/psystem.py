"""Monomials gamma_l of the product system over Lambda_n and the map psi into l^2 operators."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import OdographError, SpecMismatch
from .kgraph import KGraphSpec, deg_add, npow
from .oper import F, G, OpTerm, f_pow, op_diff, semantics
from .scalar import ExactScalar


class DegreeMismatch(OdographError):
    pass


@dataclass(frozen=True)
class Monomial:
    """gamma_l(z, p) = z^l on the degree-p fibre."""

    degree: tuple
    exponent: int

    def __str__(self):
        return f"gamma_{self.exponent}{list(self.degree)}"


@dataclass(frozen=True)
class LaurentScalar:
    """coefficient * iota^power, or zero (power None)."""

    coefficient: ExactScalar
    power: int | None

    @classmethod
    def zero(cls):
        return cls(ExactScalar(0), None)

    def is_zero(self):
        return self.power is None

    def __str__(self):
        return "0" if self.is_zero() else f"{self.coefficient}*iota^{self.power}"


def diamond(spec: KGraphSpec, x: Monomial, y: Monomial) -> Monomial:
    if len(x.degree) != spec.k or len(y.degree) != spec.k:
        raise SpecMismatch("monomial degree has the wrong rank")
    return Monomial(deg_add(x.degree, y.degree), x.exponent + npow(spec.n, x.degree) * y.exponent)


def inner(spec: KGraphSpec, x: Monomial, y: Monomial) -> LaurentScalar:
    if x.degree != y.degree:
        raise DegreeMismatch(f"{x} and {y} have different degrees")
    N = npow(spec.n, x.degree)
    q, r = divmod(y.exponent - x.exponent, N)
    if r:
        return LaurentScalar.zero()
    return LaurentScalar(ExactScalar(N), q)


def left_act(j: int, x: Monomial) -> Monomial:
    return Monomial(x.degree, x.exponent + j)


def psi0(c: LaurentScalar) -> OpTerm:
    if c.is_zero():
        return OpTerm.zero()
    return f_pow(c.power).scale(c.coefficient)


def psi(spec: KGraphSpec, x: Monomial) -> OpTerm:
    """Operator term of a monomial; degree 0 goes to f^l."""
    p = x.degree
    if not any(p):
        return f_pow(x.exponent)
    i0 = next(i for i, e in enumerate(p) if e)
    l, s = divmod(x.exponent, spec.n[i0])
    coeff = ExactScalar.from_half_exponents(spec.n, p)
    word = OpTerm.gen(G(i0, s)) * f_pow(l) * (OpTerm.gen(G(i0, 0)) ** (p[i0] - 1))
    for i in range(i0 + 1, spec.k):
        word = word * (OpTerm.gen(G(i, 0)) ** p[i])
    return word.scale(coeff)


def default_degrees(spec: KGraphSpec) -> list[tuple]:
    k = spec.k
    units = [tuple(1 if c == i else 0 for c in range(k)) for i in range(k)]
    return units + [(1,) * k] if k > 1 else units


class _Report:
    def __init__(self, spec):
        self.spec = spec
        self.checked = 0
        self.failures = []

    def check(self, name, lhs: OpTerm, rhs: OpTerm):
        self.checked += 1
        a, b = semantics(lhs, self.spec), semantics(rhs, self.spec)
        if a != b:
            self.failures.append({"instance": name, "witness": op_diff(a, b)})

    def done(self):
        return {"passed": not self.failures, "checked": self.checked, "failures": self.failures[:20]}


def verify_psi_isometry(spec, degrees: Sequence[tuple] | None = None, exp_range=(-6, 6)) -> dict:
    """psi(x)* psi(y) == psi0(<x, y>) over the grid."""
    spec.require_standard()
    rep = _Report(spec)
    lo, hi = exp_range
    for p in degrees or default_degrees(spec):
        for a in range(lo, hi + 1):
            x = Monomial(tuple(p), a)
            px = psi(spec, x).adjoint()
            for b in range(lo, hi + 1):
                y = Monomial(tuple(p), b)
                rep.check(f"<{x},{y}>", px * psi(spec, y), psi0(inner(spec, x, y)))
    return rep.done()


def verify_psi_multiplicative(spec, degrees: Sequence[tuple] | None = None, exp_range=(-6, 6)) -> dict:
    """psi(x) psi(y) == psi(x <> y), including the degree-0 right factor."""
    spec.require_standard()
    rep = _Report(spec)
    lo, hi = exp_range
    degs = [tuple(d) for d in (degrees or default_degrees(spec))]
    zero = spec.zero()
    for p in degs:
        for q in degs + [zero]:
            for a in range(lo, hi + 1):
                x = Monomial(p, a)
                px = psi(spec, x)
                for b in range(lo, hi + 1):
                    y = Monomial(q, b)
                    rep.check(f"{x}*{y}", px * psi(spec, y), psi(spec, diamond(spec, x, y)))
    return rep.done()


def verify_left_action(spec, degrees: Sequence[tuple] | None = None, exp_range=(-6, 6),
                       shifts: Iterable[int] = range(-3, 4)) -> dict:
    """psi(iota^j . x) == f^j psi(x)."""
    spec.require_standard()
    rep = _Report(spec)
    lo, hi = exp_range
    for p in degrees or default_degrees(spec):
        for a in range(lo, hi + 1):
            x = Monomial(tuple(p), a)
            for j in shifts:
                rep.check(f"iota^{j}.{x}", psi(spec, left_act(j, x)), f_pow(j) * psi(spec, x))
    return rep.done()


def verify_cp_covariance(spec, i: int) -> dict:
    """sum_s (1/n_i) psi(gamma_{s+1}) psi(gamma_s)* == f at degree e_i (i zero-based)."""
    spec.require_standard()
    if not 0 <= i < spec.k:
        raise ValueError(f"colour {i + 1} out of range")
    n = spec.n[i]
    e = tuple(1 if c == i else 0 for c in range(spec.k))
    total = OpTerm.zero()
    for s in range(n):
        term = psi(spec, Monomial(e, s + 1)) * psi(spec, Monomial(e, s)).adjoint()
        total = total + term.scale(ExactScalar(Fraction(1, n)))
    rep = _Report(spec)
    rep.check(f"colour {i + 1}", total, OpTerm.gen(F()))
    return rep.done()


def verify_all(spec, degrees=None, exp_range=(-6, 6)) -> dict:
    parts = {
        "isometry": verify_psi_isometry(spec, degrees, exp_range),
        "multiplicative": verify_psi_multiplicative(spec, degrees, exp_range),
        "left_action": verify_left_action(spec, degrees, exp_range),
    }
    for i in range(spec.k):
        parts[f"cp_covariance_{i + 1}"] = verify_cp_covariance(spec, i)
    return {"passed": all(r["passed"] for r in parts.values()), "parts": parts}
