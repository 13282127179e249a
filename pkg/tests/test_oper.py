import random
from fractions import Fraction

import pytest

from odograph.errors import ParseError
from odograph.independence import DependenceCertificate, multiplicative_dependence
from odograph.kgraph import KGraphSpec
from odograph.oper import (
    CanonicalOp,
    F,
    G,
    Generator,
    InvalidCertificate,
    OpTerm,
    PartialMap,
    QFZ,
    QN,
    S,
    U,
    compose,
    eval_term,
    kernel_witness,
    op_equal,
    random_term,
    semantics,
    verify_properties,
    verify_qn_homomorphism,
    verify_universal_relations,
)
from odograph.scalar import ExactScalar

P = OpTerm.parse


def test_parse_and_print():
    t = P("f* g(1,0) g(1,0)*")
    assert str(t) == "f* g(1,0) g(1,0)*"
    assert P("f^-2").terms[0][1] == (F(True), F(True))
    t = P("1/2 u s(2) + -3 f")
    assert len(t.terms) == 2 and t.terms[0][0] == ExactScalar(Fraction(1, 2))
    with pytest.raises(ParseError):
        P("h(1)")


def test_semantics_examples(s23):
    s2 = KGraphSpec.standard((2,))
    op = semantics(P("g(1,0)"), s2)
    assert op == CanonicalOp(1, [(((Fraction(2), Fraction(0)), ExactScalar(1)),)])
    assert op_equal(P("g(1,0)* g(1,0)"), OpTerm.one(), s2)
    proj = semantics(P("g(1,0) g(1,0)*"), s2)
    assert proj.modulus == 2 and proj.apply(4) == [(1, 4)] and proj.apply(3) == []


def test_op_equal_examples(s24):
    s2 = KGraphSpec.standard((2,))
    assert op_equal(P("f g(1,1)"), P("g(1,0) f"), s2)
    assert not op_equal(P("f"), P("f*"), s2)
    assert op_equal(P("g(1,0) g(1,0)"), P("g(2,0)"), s24)


def test_eval_examples():
    s2 = KGraphSpec.standard((2,))
    assert eval_term(P("f"), 0, s2) == [(1, 1)]
    assert eval_term(P("g(1,0)*"), 3, s2) == []
    assert eval_term(P("g(1,0)"), 3, s2) == [(1, 6)]


def test_compose_matches_pointwise():
    rng = random.Random(2)
    for _ in range(300):
        def rand_map():
            M = rng.randint(1, 6)
            a = Fraction(rng.choice([1, 2, 3]))
            return PartialMap(M, rng.randrange(M), a, Fraction(rng.randint(-4, 4)))
        inner = rand_map()
        outer = rand_map()
        c = compose(outer, inner)
        for m in range(-40, 40):
            y = inner(m)
            expect = outer(y) if y is not None else None
            got = c(m) if c is not None else None
            assert got == expect


def test_sums_cancel_to_zero(s23):
    assert semantics(P("g(1,0) + -1 g(1,0)"), s23).is_zero()
    assert semantics(OpTerm.zero(), s23).is_zero()


def test_refinement_invariance(s23):
    rng = random.Random(5)
    for _ in range(50):
        op = semantics(random_term(rng, s23), s23)
        for c in (2, 3, 6):
            assert op.refine(c).recanonicalize() == op


def test_semantics_is_star_homomorphism(s23):
    rng = random.Random(6)
    for _ in range(60):
        a, b = random_term(rng, s23), random_term(rng, s23)
        ab = semantics(a * b, s23)
        for m in range(-30, 31):
            # apply b then a through the canonical forms
            expect = {}
            for w, y in semantics(b, s23).apply(m):
                for w2, z in semantics(a, s23).apply(y):
                    expect[z] = expect.get(z, 0) + w * w2
            expect = sorted(((w, z) for z, w in expect.items() if not w.is_zero()), key=lambda t: t[1])
            assert ab.apply(m) == expect
        star = semantics(a.adjoint(), s23)
        op = semantics(a, s23)
        # <a delta_m, delta_y> == <delta_m, a* delta_y>
        for m in range(-20, 21):
            for w, y in op.apply(m):
                back = {x: v for v, x in star.apply(y)}
                assert back.get(m) == w


def test_window_oracle_random_terms():
    rng = random.Random(9)
    specs = [KGraphSpec.standard((2, 3)), KGraphSpec.standard((2, 4)), KGraphSpec.standard((3, 5, 2))]
    for t in range(60):
        spec = specs[t % 3]
        model = QFZ if t % 2 else QN
        term = random_term(rng, spec, model)
        op = semantics(term, spec, model)
        for m in range(-200, 201):
            assert op.apply(m) == eval_term(term, m, spec)


def test_model_guard(s23):
    with pytest.raises(ParseError):
        semantics(P("u"), s23, QFZ)
    with pytest.raises(ParseError):
        semantics(P("g(1,0)"), s23, QN)
    with pytest.raises(ParseError):
        semantics(P("g(1,2)"), s23)


@pytest.mark.parametrize("n", [(2, 3), (2, 4), (2, 3, 5), (3,)])
def test_universal_relations_pass(n):
    spec = KGraphSpec.standard(n)
    rep = verify_universal_relations(spec)
    assert rep["passed"] and rep["checked"] > 0


def test_corrupted_generator_fails_relation_i(s23):
    bad = {Generator("g", (0, 1)): PartialMap(1, 0, Fraction(2), Fraction(0))}
    rep = verify_universal_relations(s23, overrides=bad)
    assert not rep["passed"]
    first = next(f for f in rep["failures"] if f["family"].startswith("(i)"))
    assert first["witness"]["residue"] == 0


@pytest.mark.parametrize("n", [(2, 3), (2, 4)])
def test_properties_pass(n):
    rep = verify_properties(KGraphSpec.standard(n), l_max=3, n_max=5)
    assert rep["passed"]
    assert rep["families"]["f^s g0 = g_s"]["checked"] == sum(n)


def test_property_example():
    s2 = KGraphSpec.standard((2,))
    assert op_equal(P("f g(1,0)"), P("g(1,1)"), s2)


@pytest.mark.parametrize("n", [(2, 3), (2, 4), (2,), (3,)])
def test_qn_homomorphism(n):
    rep = verify_qn_homomorphism(KGraphSpec.standard(n))
    assert rep["passed"]
    if len(n) == 1:
        assert rep["families"]["Q_n presentation"]["checked"] == 2


def test_rho_example(s23):
    op = semantics(P("u s(2)"), s23, QN)
    assert op == semantics(P("g(1,1)"), s23)
    assert op.apply(5) == [(1, 11)]
    assert op_equal(P("s(1)"), OpTerm.one(), s23, QN)


def test_kernel_witness_examples(s24):
    rep = kernel_witness(s24, multiplicative_dependence((2, 4)))
    assert rep["words"] == ["x1:0 x1:0", "x2:0"] and rep["passed"] and rep["map"] == "m -> 4*m"
    s33 = KGraphSpec.standard((3, 3))
    rep = kernel_witness(s33, DependenceCertificate((1, 0), (0, 1)))
    assert rep["passed"] and rep["words"] == ["x1:0", "x2:0"]
    with pytest.raises(InvalidCertificate):
        kernel_witness(s24, DependenceCertificate((1, 0), (0, 1)))


def test_generators_print():
    assert [str(g) for g in (F(), F(True), G(0, 1), G(1, 0, True), U(), S(3, True))] == [
        "f", "f*", "g(1,1)", "g(2,0)*", "u", "s(3)*"]
