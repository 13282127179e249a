import itertools

import pytest
from hypothesis import given, settings, strategies as st

from odograph import brute
from odograph.independence import (
    DependenceCertificate,
    ExponentMatrix,
    FactorizationLimit,
    NonPositive,
    exponent_rank,
    factorize_integer,
    integer_kernel_vector,
    is_simple,
    multiplicative_dependence,
)
from odograph.kgraph import KGraphSpec


def test_factorize_examples():
    assert factorize_integer(12) == {2: 2, 3: 1}
    assert factorize_integer(1) == {}
    assert factorize_integer(97) == {97: 1}
    with pytest.raises(NonPositive):
        factorize_integer(0)
    with pytest.raises(FactorizationLimit):
        factorize_integer(1000003 * 1000033, limit=10**6)


def test_exponent_matrix():
    m = ExponentMatrix.build((6, 10, 15, 1))
    assert m.primes == (2, 3, 5)
    assert m.rows == ((1, 1, 0), (1, 0, 1), (0, 1, 1), (0, 0, 0))


def test_dependence_examples():
    assert multiplicative_dependence((2, 4)) == DependenceCertificate((2, 0), (0, 1))
    assert multiplicative_dependence((7, 7)) == DependenceCertificate((1, 0), (0, 1))
    assert multiplicative_dependence((6, 10, 15)) is None
    assert multiplicative_dependence((2, 3)) is None
    assert multiplicative_dependence((3, 1)) == DependenceCertificate((0, 1), (0, 0))
    cert = multiplicative_dependence((3, 16, 18))
    assert cert.verify((3, 16, 18))


def test_kernel_vector_primitive():
    assert integer_kernel_vector([[1], [2]]) == (2, -1)
    assert integer_kernel_vector([[1, 0], [0, 1]]) is None


def test_rank():
    assert exponent_rank((6, 10, 15)) == 3
    assert exponent_rank((2, 4, 8)) == 1


def test_is_simple_examples():
    assert is_simple(KGraphSpec.standard((2, 3))).simple
    v = is_simple(KGraphSpec.standard((2, 4)))
    assert v.to_json() == {"simple": False, "p": [2, 0], "q": [0, 1], "kernel_witness": ["x1:0 x1:0", "x2:0"]}
    assert is_simple(KGraphSpec.standard((3,))).simple


def test_small_search_radius_is_not_enough():
    # a radius of 6 misses this dependence; 3^8 * 16 = 18^4
    assert brute.exponent_search((3, 16, 18), bound=6) is None
    assert brute.exponent_search((3, 16, 18)) is not None
    assert brute.exponent_bound((3, 16, 18)) >= 8


def test_agrees_with_search_k2_entries_30():
    for n in itertools.combinations_with_replacement(range(1, 31), 2):
        assert (multiplicative_dependence(n) is None) == (brute.exponent_search(n) is None)


@given(st.lists(st.integers(1, 40), min_size=1, max_size=4))
@settings(max_examples=200, deadline=None)
def test_certificates_sound(n):
    cert = multiplicative_dependence(n)
    if cert is None:
        assert exponent_rank(n) == len(n)
    else:
        assert cert.verify(n)
        assert all(a == 0 or b == 0 for a, b in zip(cert.p, cert.q))
