import pytest

from odograph.kgraph import KGraphSpec, Word


@pytest.fixture
def s23():
    return KGraphSpec.standard((2, 3))


@pytest.fixture
def s24():
    return KGraphSpec.standard((2, 4))


@pytest.fixture
def s235():
    return KGraphSpec.standard((2, 3, 5))


def W(spec, text):
    return Word.parse(spec, text)
