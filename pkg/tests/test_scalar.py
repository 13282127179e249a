from fractions import Fraction

from hypothesis import given, strategies as st

from odograph.scalar import ONE, ZERO, ExactScalar, squarefree_split


def test_squarefree_split():
    assert squarefree_split(72) == (6, 2)
    assert squarefree_split(1) == (1, 1)
    assert squarefree_split(97) == (1, 97)


def test_sqrt_normal_form():
    assert ExactScalar.sqrt(8) == ExactScalar(2, 2)
    assert ExactScalar.sqrt(Fraction(1, 2)) == ExactScalar(Fraction(1, 2), 2)
    assert ExactScalar.sqrt(6) * ExactScalar.sqrt(6) == ExactScalar(6)
    assert ExactScalar.sqrt(2) * ExactScalar.sqrt(3) == ExactScalar.sqrt(6)
    assert str(ExactScalar.sqrt(12)) == "2*sqrt(3)"


def test_half_exponents():
    assert ExactScalar.from_half_exponents((2, 3), (1, 1)) == ExactScalar.sqrt(6)
    assert ExactScalar.from_half_exponents((2, 3), (2, 0)) == ExactScalar(2)
    assert ExactScalar.from_half_exponents((2,), (-1,)) * ExactScalar.sqrt(2) == ONE


def test_zero_and_sums():
    x = ExactScalar.sqrt(2) + ExactScalar(3)
    assert x - x == ZERO and (x - x).is_zero()
    assert abs(float(x) - (2 ** 0.5 + 3)) < 1e-12


rad = st.builds(ExactScalar.sqrt, st.fractions(min_value=0, max_value=50, max_denominator=12))
scal = st.builds(lambda a, b, c: a * b + c, rad, st.fractions(max_denominator=9).map(ExactScalar), rad)


@given(scal, scal, scal)
def test_field_laws(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert hash(a * b) == hash(b * a)
