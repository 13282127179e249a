import random

import pytest
from hypothesis import given, settings, strategies as st

from odograph.errors import DegreeOutOfRange, NotBijective, ParseError, SpecMismatch, UnsupportedFlavor
from odograph.kgraph import (
    KGraphSpec,
    Word,
    _swap,
    cubic_check,
    decode,
    encode,
    factorize,
    multiply,
    normal_form,
    npow,
    random_word,
    validate_theta,
    words_of_degree,
)

from conftest import W


def test_standard_tables_are_valid(s23):
    assert validate_theta(s23)
    assert s23.theta(0, 1, 1, 2) == (2, 1)  # 1 + 2*2 = 5 = 2 + 1*3


def test_identity_pairing_tables_valid():
    spec = KGraphSpec.swap_tables(2, 2)
    assert spec.theta(0, 1, 0, 1) == (0, 1)
    # with equal alphabets this pairing is exactly the standard rule
    assert spec.is_standard


def transpose_tables(m):
    tab = {(s, t): (t, s) for s in range(m) for t in range(m)}
    return KGraphSpec.explicit((m, m), {(0, 1): tab})


def test_transpose_pairing_is_not_standard():
    spec = transpose_tables(3)
    assert not spec.is_standard
    assert str(Word.parse(spec, "x2:0 x1:2").normal_letters) == "((0, 2), (1, 0))"  # letters commute


def test_collision_rejected():
    tables = {(0, 1): {(0, 0): (0, 0), (0, 1): (0, 0), (1, 0): (1, 0), (1, 1): (1, 1)}}
    with pytest.raises(NotBijective) as exc:
        KGraphSpec.explicit((2, 2), tables)
    assert exc.value.i == 0 and exc.value.j == 1


def test_cubic_check_examples(s235):
    rep = cubic_check(s235)
    assert rep == {"passed": True, "checked": 30}
    assert cubic_check(KGraphSpec.swap_tables(2, 3))["passed"]
    assert cubic_check(KGraphSpec.standard((2, 3)))["checked"] == 0


def test_cubic_check_perturbed_theta13():
    base = KGraphSpec.swap_tables(2, 3)
    tables = {key: dict(tab) for key, tab in base.tables.items()}
    t = tables[(0, 2)]
    t[(0, 0)], t[(0, 1)] = t[(0, 1)], t[(0, 0)]
    rep = cubic_check(KGraphSpec.explicit((2, 2, 2), tables))
    assert not rep["passed"]
    assert rep["route_ij_first"] != rep["route_jl_first"]


def test_normal_form_examples(s23):
    assert str(normal_form(W(s23, "x2:1 x1:0"))) == "x1:1 x2:0"
    assert normal_form(W(s23, "")).letters == ()
    w = W(s23, "x1:1 x2:2")
    assert normal_form(w).letters == w.letters
    assert str(normal_form(W(s23, "x2:2 x1:1"))) == "x1:1 x2:2"


def test_encode_decode_examples(s23):
    assert encode(W(s23, "x1:1 x2:0")) == ((1, 1), 1)
    assert encode(W(s23, "")) == ((0, 0), 0)
    assert str(decode(s23, (1, 1), 5)) == "x1:1 x2:2"
    with pytest.raises(DegreeOutOfRange):
        decode(s23, (1, 1), 6)


def test_encode_needs_standard():
    with pytest.raises(UnsupportedFlavor):
        encode(Word.parse(transpose_tables(3), "x1:0"))


def test_multiply_examples(s23):
    w = multiply(W(s23, "x1:0"), W(s23, "x2:1"))
    assert encode(w) == ((1, 1), 2)
    assert multiply(W(s23, "x1:1 x2:1"), W(s23, "")) == W(s23, "x1:1 x2:1")
    assert encode(multiply(W(s23, "x1:1"), W(s23, "x1:1"))) == ((2, 0), 3)
    with pytest.raises(SpecMismatch):
        multiply(W(s23, "x1:0"), Word.parse(KGraphSpec.standard((2, 4)), "x1:0"))


def test_factorize_examples(s23):
    w = decode(s23, (1, 1), 5)
    a, b = factorize(w, (1, 0))
    assert (str(a), str(b)) == ("x1:1", "x2:2")
    a, b = factorize(w, (0, 0))
    assert a.letters == () and b == w
    a, b = factorize(w, (1, 1))
    assert a == w and b.letters == ()
    with pytest.raises(DegreeOutOfRange):
        factorize(w, (2, 0))


def test_factorize_explicit_tables():
    spec = KGraphSpec.swap_tables(2, 2)
    w = Word.parse(spec, "x2:1 x1:0")
    a, b = factorize(w, (1, 0))
    assert str(a) == "x1:1" and str(b) == "x2:0"


def test_parse_errors(s23):
    with pytest.raises(ParseError):
        Word.parse(s23, "x1:2")
    with pytest.raises(ParseError):
        Word.parse(s23, "y1:0")


def test_json_roundtrip():
    spec = KGraphSpec.swap_tables(2, 3)
    again = KGraphSpec.from_json(spec.to_json())
    assert again == spec
    std = KGraphSpec.from_json({"n": [2, 3], "theta": "standard"})
    assert std == KGraphSpec.standard((2, 3))


def test_code_is_invariant_under_single_rewrites(s235):
    rng = random.Random(1)
    for _ in range(300):
        w = random_word(s235, rng, rng.randint(2, 6))
        p = rng.randrange(len(w.letters) - 1)
        a, b = w.letters[p], w.letters[p + 1]
        if a[0] == b[0]:
            continue
        c, d = _swap(s235, a, b)
        w2 = Word(s235, w.letters[:p] + (c, d) + w.letters[p + 2:])
        assert encode(w2) == encode(w)


def test_npow_exact():
    assert npow((2, 3, 5), (40, 30, 20)) == 2**40 * 3**30 * 5**20


words_235 = st.lists(
    st.sampled_from([(i, s) for i, m in enumerate((2, 3, 5)) for s in range(m)]), max_size=8
)


@given(words_235, st.integers(0, 2**32))
@settings(max_examples=200, deadline=None)
def test_random_schedules_agree(letters, seed):
    spec = KGraphSpec.standard((2, 3, 5))
    w = Word(spec, tuple(letters))
    assert normal_form(w, random.Random(seed)).letters == normal_form(w).letters


@given(words_235, words_235, words_235)
@settings(max_examples=100, deadline=None)
def test_multiply_associative_and_factorize_inverts(a, b, c):
    spec = KGraphSpec.standard((2, 3, 5))
    x, y, z = (Word(spec, tuple(l)) for l in (a, b, c))
    assert multiply(multiply(x, y), z) == multiply(x, multiply(y, z))
    head, tail = factorize(multiply(x, y), x.degree)
    assert head == x and tail == y


def test_words_of_degree_count(s23):
    ws = list(words_of_degree(s23, (2, 1)))
    assert len(ws) == 12 == len(set(ws))
