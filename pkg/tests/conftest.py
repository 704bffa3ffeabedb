import pytest

from qcharid import gen_lowres, gen_reference, glyph_set


@pytest.fixture(scope="session")
def refset():
    return gen_reference(glyph_set(), 4)


@pytest.fixture(scope="session")
def lowset(refset):
    return gen_lowres(refset, 2)
