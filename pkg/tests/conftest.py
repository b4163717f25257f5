import pytest
import hypothesis.strategies as st

from qschubert import preset, make_reduced_word
from qschubert.coeff import LaurentScalar, RatScalar
from qschubert.pbw import PBWFrame


@pytest.fixture(scope="session")
def a2():
    return preset("A2")


@pytest.fixture(scope="session")
def a3():
    return preset("A3")


@pytest.fixture(scope="session")
def b2():
    return preset("B2")


@pytest.fixture(scope="session")
def c2():
    return preset("C2")


@pytest.fixture(scope="session")
def a2_frame(a2):
    return PBWFrame(make_reduced_word(a2, [0, 1, 0]))


@pytest.fixture(scope="session")
def b2_frame(b2):
    return PBWFrame(make_reduced_word(b2, [0, 1, 0, 1]))


def frame_of(datum, letters_1idx):
    return PBWFrame(make_reduced_word(datum, [i - 1 for i in letters_1idx]))


# hypothesis strategies for exact scalars

laurents = st.dictionaries(
    st.integers(min_value=-6, max_value=6),
    st.integers(min_value=-9, max_value=9).filter(lambda c: c != 0),
    max_size=5,
).map(LaurentScalar)

nonzero_laurents = laurents.filter(lambda p: not p.is_zero())

rationals = st.tuples(laurents, nonzero_laurents).map(
    lambda t: RatScalar(t[0], t[1]))

nonzero_rationals = rationals.filter(lambda r: not r.is_zero())
