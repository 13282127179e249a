"""Exact operator semantics on l^2(Z).

Every generator acts on basis vectors delta_m by an affine map m -> a*m + b
defined on a residue class m = r (mod M).  Such partial maps are closed under
composition, adjoints and sums, so an operator word becomes a finite sum of
weighted partial maps.  Grouping the summands by residue class modulo a common
modulus and shrinking that modulus to its minimal period gives a normal form,
which decides equality of operators in this representation.

Two models share the calculus:

* ``"qfz"``: f (delta_m -> delta_{m+1}) and g(i,s) (delta_m -> delta_{s + n_i m});
* ``"qn"``: u (delta_m -> delta_{m+1}) and s(n) (delta_m -> delta_{n m}).
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import ParseError
from .independence import DependenceCertificate, factorize_integer, witness_words
from .kgraph import KGraphSpec, Word, npow
from .scalar import ONE, ExactScalar

QFZ = "qfz"
QN = "qn"
MODEL_KINDS = {QFZ: {"f", "g"}, QN: {"u", "s"}}


class InvalidCertificate(ValueError):
    pass


@dataclass(frozen=True, order=True)
class Generator:
    kind: str
    index: tuple = ()
    adjoint: bool = False

    def star(self) -> "Generator":
        return Generator(self.kind, self.index, not self.adjoint)

    def __str__(self):
        if self.kind == "g":
            body = f"g({self.index[0] + 1},{self.index[1]})"
        elif self.kind == "s":
            body = f"s({self.index[0]})"
        else:
            body = self.kind
        return body + ("*" if self.adjoint else "")


def F(adjoint=False):
    return Generator("f", (), adjoint)


def G(i, s, adjoint=False):
    return Generator("g", (i, s), adjoint)


def U(adjoint=False):
    return Generator("u", (), adjoint)


def S(n, adjoint=False):
    return Generator("s", (n,), adjoint)


_TOKEN = re.compile(
    r"(?P<f>f)|(?P<u>u)|g\((?P<gi>\d+),(?P<gs>\d+)\)|s\((?P<sn>\d+)\)"
)


class OpTerm:
    """Finite formal sum of scalar-weighted words in the generators.

    Words compose right to left: in ``f g(1,0)`` the isometry acts first.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = tuple((ExactScalar(c) if not isinstance(c, ExactScalar) else c, tuple(w))
                           for c, w in terms)

    @classmethod
    def zero(cls):
        return cls(())

    @classmethod
    def one(cls):
        return cls(((ONE, ()),))

    @classmethod
    def gen(cls, g: Generator):
        return cls(((ONE, (g,)),))

    @classmethod
    def word(cls, gens: Sequence[Generator], coeff=ONE):
        return cls(((coeff, tuple(gens)),))

    @classmethod
    def power(cls, g: Generator, e: int):
        """g^e, with negative e meaning (g*)^|e| (for unitaries)."""
        if e < 0:
            g, e = g.star(), -e
        return cls.word([g] * e)

    @classmethod
    def word_isometry(cls, w: Word):
        """g_w = g_{x_1} ... g_{x_L} along the letters of w."""
        return cls.word([G(i, s) for i, s in w.letters])

    def __add__(self, other):
        return OpTerm(self.terms + other.terms)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if isinstance(other, OpTerm):
            return OpTerm((a * b, wa + wb) for a, wa in self.terms for b, wb in other.terms)
        return self.scale(other)

    def scale(self, c):
        return OpTerm((c * a, w) for a, w in self.terms)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, e: int):
        out = OpTerm.one()
        for _ in range(e):
            out = out * self
        return out

    def adjoint(self) -> "OpTerm":
        return OpTerm((c, tuple(g.star() for g in reversed(w))) for c, w in self.terms)

    def generators(self):
        return {g for _, w in self.terms for g in w}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for c, w in self.terms:
            body = " ".join(str(g) for g in w) or "1"
            parts.append(body if c == ONE else f"[{c}] {body}")
        return " + ".join(parts)

    def __repr__(self):
        return f"OpTerm({str(self)!r})"

    @classmethod
    def parse(cls, text: str) -> "OpTerm":
        """Parse e.g. ``"f* g(1,0) g(1,0)*"`` or ``"1/2 u s(2) + f^-3"``.

        Colours inside g(i,s) are 1-based.  ``^k`` repeats a factor (negative k
        takes the adjoint).  A leading rational is a coefficient.
        """
        text = text.strip()
        if not text:
            raise ParseError("empty operator term")
        total = cls.zero()
        for chunk in text.split("+"):
            toks = chunk.split()
            if not toks:
                raise ParseError(f"empty summand in {text!r}")
            coeff = ONE
            if re.fullmatch(r"-?\d+(/\d+)?", toks[0]):
                coeff = ExactScalar(Fraction(toks[0]))
                toks = toks[1:]
            word = []
            for tok in toks:
                m = re.fullmatch(r"(.+?)(\*)?(?:\^(-?\d+))?", tok)
                base, star, exp = m.group(1), m.group(2), m.group(3)
                if base == "1":
                    continue
                mt = _TOKEN.fullmatch(base)
                if not mt:
                    raise ParseError(f"bad generator {tok!r}")
                if mt.group("f"):
                    g = F()
                elif mt.group("u"):
                    g = U()
                elif mt.group("gi"):
                    g = G(int(mt.group("gi")) - 1, int(mt.group("gs")))
                else:
                    g = S(int(mt.group("sn")))
                if star:
                    g = g.star()
                e = int(exp) if exp is not None else 1
                if e < 0:
                    g, e = g.star(), -e
                word.extend([g] * e)
            total = total + cls.word(word, coeff)
        return total


# -- affine partial maps -----------------------------------------------------------

class PartialMap(NamedTuple):
    """m -> a*m + b on the residue class m = r (mod M)."""

    M: int
    r: int
    a: Fraction
    b: Fraction

    def inverse(self) -> "PartialMap":
        M2 = self.a * self.M
        r2 = self.a * self.r + self.b
        assert M2.denominator == 1 and r2.denominator == 1
        M2 = int(M2)
        return PartialMap(M2, int(r2) % M2, 1 / self.a, -self.b / self.a)

    def __call__(self, m: int):
        if (m - self.r) % self.M:
            return None
        y = self.a * m + self.b
        assert y.denominator == 1
        return int(y)


IDENTITY = PartialMap(1, 0, Fraction(1), Fraction(0))


def compose(outer: PartialMap, inner: PartialMap) -> PartialMap | None:
    """outer after inner, or None when the image misses outer's domain."""
    y0 = inner.a * inner.r + inner.b
    d = inner.a * inner.M
    assert y0.denominator == 1 and d.denominator == 1
    y0, d = int(y0), int(d)
    M2 = outer.M
    g = math.gcd(d, M2)
    rhs = outer.r - y0
    if rhs % g:
        return None
    mod = M2 // g
    t0 = (rhs // g) * pow(d // g, -1, mod) % mod if mod > 1 else 0
    M = inner.M * mod
    r = (inner.r + inner.M * t0) % M
    return PartialMap(M, r, outer.a * inner.a, outer.a * inner.b + outer.b)


def generator_map(gen: Generator, spec: KGraphSpec | None = None, overrides=None) -> PartialMap:
    base = Generator(gen.kind, gen.index)
    if overrides and base in overrides:
        pm = overrides[base]
    elif gen.kind in ("f", "u"):
        pm = PartialMap(1, 0, Fraction(1), Fraction(1))
    elif gen.kind == "g":
        i, s = gen.index
        if spec is None:
            raise ValueError("g generators need a k-graph spec")
        if not (0 <= i < spec.k and 0 <= s < spec.n[i]):
            raise ParseError(f"generator {gen} outside the alphabet of {spec.n}")
        pm = PartialMap(1, 0, Fraction(spec.n[i]), Fraction(s))
    elif gen.kind == "s":
        (n,) = gen.index
        if n < 1:
            raise ParseError("s(n) needs n >= 1")
        pm = PartialMap(1, 0, Fraction(n), Fraction(0))
    else:
        raise ParseError(f"unknown generator kind {gen.kind!r}")
    return pm.inverse() if gen.adjoint else pm


def _check_model(term: OpTerm, model):
    if model is None:
        return
    allowed = MODEL_KINDS[model]
    bad = {str(g) for g in term.generators() if g.kind not in allowed}
    if bad:
        raise ParseError(f"generators {sorted(bad)} not in the {model} model")


# -- canonical operators ----------------------------------------------------------------

class CanonicalOp:
    """Normal form: minimal modulus L and, per residue class mod L, sorted
    ((a, b), weight) entries with nonzero weights."""

    __slots__ = ("modulus", "classes")

    def __init__(self, modulus: int, classes):
        self.modulus = modulus
        self.classes = tuple(classes)

    @classmethod
    def from_maps(cls, weighted: Sequence[tuple[ExactScalar, PartialMap]]) -> "CanonicalOp":
        L = 1
        for _, pm in weighted:
            L = math.lcm(L, pm.M)
        table = [dict() for _ in range(L)]
        for w, pm in weighted:
            key = (pm.a, pm.b)
            for r in range(pm.r % pm.M, L, pm.M):
                cell = table[r]
                cell[key] = cell.get(key, 0) + w
        rows = [
            tuple(sorted(((k, v) for k, v in cell.items() if not v.is_zero()), key=lambda kv: kv[0]))
            for cell in table
        ]
        return cls._shrink(L, rows)

    @staticmethod
    def _shrink(L, rows):
        for p in sorted(factorize_integer(L)):
            while L % p == 0:
                L2 = L // p
                if all(rows[r] == rows[r % L2] for r in range(L)):
                    L = L2
                    rows = rows[:L]
                else:
                    break
        return CanonicalOp(L, rows)

    def refine(self, factor: int) -> "CanonicalOp":
        """The same operator written at modulus factor * L (not shrunk)."""
        return CanonicalOp(self.modulus * factor, self.classes * factor)

    def recanonicalize(self) -> "CanonicalOp":
        return CanonicalOp._shrink(self.modulus, list(self.classes))

    def __eq__(self, other):
        if not isinstance(other, CanonicalOp):
            return NotImplemented
        return self.modulus == other.modulus and self.classes == other.classes

    def __hash__(self):
        return hash((self.modulus, self.classes))

    def is_zero(self):
        return all(not row for row in self.classes)

    def apply(self, m: int) -> list[tuple[ExactScalar, int]]:
        out = {}
        for (a, b), w in self.classes[m % self.modulus]:
            y = a * m + b
            assert y.denominator == 1
            y = int(y)
            out[y] = out.get(y, 0) + w
        return sorted(((w, y) for y, w in out.items() if not w.is_zero()), key=lambda t: t[1])

    def describe_class(self, r: int) -> str:
        row = self.classes[r % self.modulus]
        if not row:
            return "0"
        return " + ".join(f"[{w}] m->{_affine(a, b)}" for (a, b), w in row)

    def __str__(self):
        lines = [f"m = {r} (mod {self.modulus}): {self.describe_class(r)}"
                 for r in range(self.modulus) if self.classes[r]]
        return "\n".join(lines) if lines else "0"


def _affine(a: Fraction, b: Fraction) -> str:
    head = "m" if a == 1 else f"{a}*m"
    if b == 0:
        return head
    return f"{head}{'+' if b > 0 else '-'}{abs(b)}"


def semantics(term: OpTerm, spec: KGraphSpec | None = None, model: str | None = QFZ,
              overrides=None) -> CanonicalOp:
    """Canonical l^2(Z) operator of a formal term."""
    _check_model(term, model)
    weighted = []
    cache = {}
    for coeff, word in term.terms:
        if coeff.is_zero():
            continue
        pm = IDENTITY
        for gen in reversed(word):
            gm = cache.get(gen)
            if gm is None:
                gm = cache[gen] = generator_map(gen, spec, overrides)
            pm = compose(gm, pm)
            if pm is None:
                break
        if pm is not None:
            weighted.append((coeff, pm))
    return CanonicalOp.from_maps(weighted)


def op_equal(t1: OpTerm, t2: OpTerm, spec=None, model=QFZ, overrides=None) -> bool:
    return semantics(t1, spec, model, overrides) == semantics(t2, spec, model, overrides)


def op_diff(a: CanonicalOp, b: CanonicalOp) -> dict | None:
    """First residue class where two canonical operators differ."""
    L = math.lcm(a.modulus, b.modulus)
    for r in range(L):
        if a.classes[r % a.modulus] != b.classes[r % b.modulus]:
            return {"residue": r, "modulus": L, "lhs": a.describe_class(r), "rhs": b.describe_class(r)}
    return None


def eval_term(term: OpTerm, m: int, spec: KGraphSpec | None = None) -> list[tuple[ExactScalar, int]]:
    """Image of delta_m, computed by applying generators to basis vectors directly."""
    out: dict[int, ExactScalar] = {}
    for coeff, word in term.terms:
        idx = m
        for gen in reversed(word):
            idx = _apply_generator(gen, idx, spec)
            if idx is None:
                break
        if idx is not None:
            out[idx] = out.get(idx, 0) + coeff
    return sorted(((w, y) for y, w in out.items() if not w.is_zero()), key=lambda t: t[1])


def _apply_generator(gen: Generator, m: int, spec):
    if gen.kind in ("f", "u"):
        return m - 1 if gen.adjoint else m + 1
    if gen.kind == "g":
        i, s = gen.index
        n = spec.n[i]
        if gen.adjoint:
            q, rem = divmod(m - s, n)
            return q if rem == 0 else None
        return s + n * m
    if gen.kind == "s":
        (n,) = gen.index
        if gen.adjoint:
            q, rem = divmod(m, n)
            return q if rem == 0 else None
        return n * m
    raise ParseError(f"unknown generator {gen}")


def random_term(rng: random.Random, spec: KGraphSpec, model=QFZ, max_terms=3, max_len=5,
                ns=(2, 3)) -> OpTerm:
    if model == QFZ:
        pool = [F(), F(True)] + [
            G(i, s, adj) for i in range(spec.k) for s in range(spec.n[i]) for adj in (False, True)
        ]
    else:
        pool = [U(), U(True)] + [S(n, adj) for n in ns for adj in (False, True)]
    total = OpTerm.zero()
    for _ in range(rng.randint(1, max_terms)):
        word = [rng.choice(pool) for _ in range(rng.randint(0, max_len))]
        total = total + OpTerm.word(word, ExactScalar(rng.randint(-3, 3) or 1))
    return total


# -- relation suites -------------------------------------------------------------------

class _Suite:
    def __init__(self, spec, model=QFZ, overrides=None):
        self.spec, self.model, self.overrides = spec, model, overrides
        self.families: dict[str, dict] = {}
        self.failures: list[dict] = []

    def check(self, family: str, name: str, lhs: OpTerm, rhs: OpTerm, model=None):
        model = model or self.model
        a = semantics(lhs, self.spec, model, self.overrides)
        b = semantics(rhs, self.spec, model, self.overrides)
        fam = self.families.setdefault(family, {"checked": 0, "failed": 0})
        fam["checked"] += 1
        if a != b:
            fam["failed"] += 1
            self.failures.append({"family": family, "relation": name, "witness": op_diff(a, b)})

    def report(self) -> dict:
        return {
            "passed": not self.failures,
            "checked": sum(f["checked"] for f in self.families.values()),
            "families": self.families,
            "failures": self.failures[:20],
        }


def g(i, s):
    return OpTerm.gen(G(i, s))


def f_pow(e: int) -> OpTerm:
    return OpTerm.power(F(), e)


def u_pow(e: int) -> OpTerm:
    return OpTerm.power(U(), e)


def verify_universal_relations(spec: KGraphSpec, overrides=None) -> dict:
    """Defining relations of the unitary f and isometries g(i,s) in the l^2 model."""
    spec.require_standard()
    su = _Suite(spec, QFZ, overrides)
    one = OpTerm.one()
    n = spec.n
    su.check("unitary", "f f* = 1", f_pow(1) * f_pow(-1), one)
    su.check("unitary", "f* f = 1", f_pow(-1) * f_pow(1), one)
    for i in range(spec.k):
        for s in range(n[i]):
            su.check("isometry", f"g({i + 1},{s})* g({i + 1},{s}) = 1", g(i, s).adjoint() * g(i, s), one)
        total = OpTerm.zero()
        for s in range(n[i]):
            total = total + g(i, s) * g(i, s).adjoint()
        su.check("(i) sum g g* = 1", f"colour {i + 1}", total, one)
        for s in range(n[i]):
            rhs = g(i, s + 1) if s < n[i] - 1 else g(i, 0) * f_pow(1)
            su.check("(ii) f g", f"f g({i + 1},{s})", f_pow(1) * g(i, s), rhs)
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            for s in range(n[i]):
                for t in range(n[j]):
                    t2, s2 = spec.theta(i, j, s, t)
                    su.check("(iii) commutation",
                             f"g({i + 1},{s}) g({j + 1},{t}) = g({j + 1},{t2}) g({i + 1},{s2})",
                             g(i, s) * g(j, t), g(j, t2) * g(i, s2))
    return su.report()


def verify_properties(spec: KGraphSpec, l_max: int = 3, n_max: int = 5) -> dict:
    """Consequences: g_{i,0} commute, f^s g_{i,0} = g_{i,s}, f^{n_i^l N} g_{i,0}^l = g_{i,0}^l f^N."""
    spec.require_standard()
    su = _Suite(spec)
    n = spec.n
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            su.check("g0 commute", f"({i + 1},{j + 1})", g(i, 0) * g(j, 0), g(j, 0) * g(i, 0))
        for s in range(n[i]):
            su.check("f^s g0 = g_s", f"({i + 1},{s})", f_pow(s) * g(i, 0), g(i, s))
        for l in range(l_max + 1):
            gl = g(i, 0) ** l
            for N in range(-n_max, n_max + 1):
                su.check("f^(n^l N) g0^l = g0^l f^N", f"i={i + 1} l={l} N={N}",
                         f_pow(n[i] ** l * N) * gl, gl * f_pow(N))
    return su.report()


def rho_for(spec: KGraphSpec):
    """Substitution f -> u, g(i,s) -> u^s s(n_i) as a map on terms."""

    def image(gen: Generator) -> OpTerm:
        if gen.kind == "f":
            base = OpTerm.gen(U())
        elif gen.kind == "g":
            i, s = gen.index
            base = u_pow(s) * OpTerm.gen(S(spec.n[i]))
        else:
            base = OpTerm.gen(Generator(gen.kind, gen.index))
        return base.adjoint() if gen.adjoint else base

    def apply(term: OpTerm) -> OpTerm:
        total = OpTerm.zero()
        for c, word in term.terms:
            piece = OpTerm.one().scale(c)
            for gen in word:
                piece = piece * image(gen)
            total = total + piece
        return total

    return apply


def verify_qn_homomorphism(spec: KGraphSpec) -> dict:
    """Cuntz's Q_N relations in the l^2 model and the map f -> u, g(i,s) -> u^s s(n_i)."""
    spec.require_standard()
    su = _Suite(spec, QN)
    one = OpTerm.one()
    base = sorted(set(spec.n) | {1})
    values = sorted(set(base) | {a * b for a in base for b in base})
    sn = lambda m: OpTerm.gen(S(m))
    for a in values:
        for b in values:
            su.check("s_n s_m = s_nm", f"n={a} m={b}", sn(a) * sn(b), sn(a * b))
        su.check("u^n s_n = s_n u", f"n={a}", u_pow(a) * sn(a), sn(a) * u_pow(1))
        total = OpTerm.zero()
        for t in range(a):
            total = total + u_pow(t) * sn(a) * sn(a).adjoint() * u_pow(-t)
        su.check("sum u^t s_n s_n* u^-t = 1", f"n={a}", total, one)

    r = rho_for(spec)
    n = spec.n
    for i in range(spec.k):
        for s in range(n[i]):
            a = semantics(r(g(i, s)), spec, QN)
            b = semantics(g(i, s), spec, QFZ)
            fam = su.families.setdefault("rho(g) = G on l^2", {"checked": 0, "failed": 0})
            fam["checked"] += 1
            if a != b:
                fam["failed"] += 1
                su.failures.append({"family": "rho(g) = G on l^2", "relation": f"({i + 1},{s})",
                                    "witness": op_diff(a, b)})
    su.check("rho(f) = F on l^2", "f", r(f_pow(1)), OpTerm.gen(U()))
    # relations (i)-(iii) after substitution
    for i in range(spec.k):
        for s in range(n[i]):
            su.check("rho isometry", f"({i + 1},{s})", r(g(i, s).adjoint() * g(i, s)), one)
        total = OpTerm.zero()
        for s in range(n[i]):
            total = total + r(g(i, s) * g(i, s).adjoint())
        su.check("rho (i)", f"colour {i + 1}", total, one)
        for s in range(n[i]):
            rhs = g(i, s + 1) if s < n[i] - 1 else g(i, 0) * f_pow(1)
            su.check("rho (ii)", f"({i + 1},{s})", r(f_pow(1) * g(i, s)), r(rhs))
    for i in range(spec.k):
        for j in range(i + 1, spec.k):
            for s in range(n[i]):
                for t in range(n[j]):
                    t2, s2 = spec.theta(i, j, s, t)
                    su.check("rho (iii)", f"({i + 1},{s})({j + 1},{t})",
                             r(g(i, s) * g(j, t)), r(g(j, t2) * g(i, s2)))
    if spec.k == 1:
        m = n[0]
        s_ = OpTerm.gen(S(m))
        total = OpTerm.zero()
        for t in range(m):
            total = total + (u_pow(t) * s_) * (u_pow(t) * s_).adjoint()
        su.check("Q_n presentation", "sum u^i s (u^i s)* = 1", total, one)
        su.check("Q_n presentation", "u^n s = s u", u_pow(m) * s_, s_ * u_pow(1))
        for t in range(m):
            su.check("Q_n assignment", f"pi(g_{t}) = u^{t} s", r(g(0, t)), u_pow(t) * s_)
    return su.report()


def kernel_witness(spec: KGraphSpec, cert: DependenceCertificate) -> dict:
    """Distinct words prod (x^i_0)^{p_i}, prod (x^i_0)^{q_i} whose isometries agree on l^2."""
    spec.require_standard()
    p, q = tuple(cert.p), tuple(cert.q)
    if len(p) != spec.k or len(q) != spec.k or p == q or npow(spec.n, p) != npow(spec.n, q):
        raise InvalidCertificate(f"({p}, {q}) is not a dependence certificate for n={spec.n}")
    w1, w2 = witness_words(spec, cert)
    a = semantics(OpTerm.word_isometry(w1), spec)
    b = semantics(OpTerm.word_isometry(w2), spec)
    scale = npow(spec.n, p)
    expected = CanonicalOp(1, [(((Fraction(scale), Fraction(0)), ONE),)])
    return {
        "words": [str(w1), str(w2)],
        "words_distinct": w1 != w2,
        "semantics_equal": a == b,
        "map": f"m -> {scale}*m",
        "matches_scaling": a == expected,
        "passed": (w1 != w2) and a == b == expected,
    }
