import pytest
from hypothesis import given
import hypothesis.strategies as st

from qschubert.coeff import LaurentScalar
from qschubert.errors import InvalidArgument, NotReduced
from qschubert.rootdata import (PRESET_NAMES, RootDatum, length_additive,
                                make_reduced_word, preset)

small_weights = st.lists(st.integers(min_value=0, max_value=3), min_size=2,
                         max_size=2).map(tuple)


@pytest.mark.parametrize("name", PRESET_NAMES)
def test_preset_sanity(name):
    d = preset(name)
    for i in range(d.rank):
        assert d.gcm[i][i] == 2
        assert d.symmetrizers[i] >= 1
        for j in range(d.rank):
            if i != j:
                assert d.gcm[i][j] <= 0
            # symmetrizability: d_i a_ij = d_j a_ji
            assert (d.symmetrizers[i] * d.gcm[i][j]
                    == d.symmetrizers[j] * d.gcm[j][i])
            assert d.pairing(d.alpha(i), d.alpha(j)) == d.symmetrizers[i] * d.gcm[i][j]


def test_preset_matrices():
    b2 = preset("B2")
    assert b2.gcm[0][1] == -1 and b2.gcm[1][0] == -2
    assert tuple(b2.symmetrizers) == (2, 1)
    c2 = preset("C2")
    assert c2.gcm[0][1] == -2 and c2.gcm[1][0] == -1
    assert tuple(c2.symmetrizers) == (1, 2)
    g2 = preset("G2")
    assert g2.gcm[0][1] == -3 and g2.gcm[1][0] == -1
    with pytest.raises(InvalidArgument):
        preset("E8")


@pytest.mark.parametrize("name", ["A2", "B2", "C2", "G2"])
@given(g1=small_weights, g2=small_weights)
def test_mu_is_multiplicative_up_to_pairing(name, g1, g2):
    # mu(g1+g2) = mu(g1) mu(g2) q^((g1,g2)/2), with q^(1/2) = v
    d = preset(name)
    lhs = d.mu(d.add(g1, g2))
    rhs = d.mu(g1) * d.mu(g2) * LaurentScalar.v_power(d.pairing(g1, g2))
    assert lhs == rhs


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
@given(g=small_weights, i=st.integers(min_value=0, max_value=1))
def test_reflect_involutive_and_isometric(name, g, i):
    d = preset(name)
    assert d.reflect(i, d.reflect(i, g)) == g
    assert d.pairing(d.reflect(i, g), d.reflect(i, g)) == d.pairing(g, g)


def test_sgn_and_eta():
    d = preset("B2")
    g = (1, 2)
    assert d.eta(g) == 1 * 2 + 2 * 1
    assert d.sgn(g) == (-1) ** d.height(g)


def test_reduced_word_roots_a2():
    d = preset("A2")
    w = make_reduced_word(d, [0, 1, 0])
    assert w.roots == ((1, 0), (1, 1), (0, 1))
    assert w.degree((1, 1, 1)) == (2, 2)
    assert w.degree((1, 0, 2)) == (1, 2)


def test_non_reduced_word_rejected():
    d = preset("A2")
    with pytest.raises(NotReduced):
        make_reduced_word(d, [0, 0])
    with pytest.raises(NotReduced):
        make_reduced_word(d, [0, 1, 0, 1])  # braid length exceeded in A2
    with pytest.raises(InvalidArgument):
        make_reduced_word(d, [5])


def test_b2_longest_word():
    d = preset("B2")
    w = make_reduced_word(d, [0, 1, 0, 1])
    # four positive roots, each exactly once
    assert sorted(w.roots) == sorted([(1, 0), (0, 1), (1, 1), (1, 2)])


@pytest.mark.parametrize("name", ["A2", "B2", "C2"])
@given(g=small_weights)
def test_word_action_inverse(name, g):
    d = preset(name)
    w = make_reduced_word(d, [0, 1])
    assert w.inverse_action(w.action(g)) == g


def test_length_additive():
    d = preset("A3")
    w1 = make_reduced_word(d, [1])
    w2 = make_reduced_word(d, [0, 2, 1])
    assert length_additive(w1, w2)
    assert not length_additive(w2, make_reduced_word(d, [1]))


def test_json_roundtrip():
    d = preset("C2")
    d2 = RootDatum.from_json(d.to_json())
    assert d2.gcm == d.gcm and tuple(d2.symmetrizers) == tuple(d.symmetrizers)


def test_custom_gcm():
    # a symmetrizable non-preset matrix (rank 2 affine A1)
    d = RootDatum([[2, -2], [-2, 2]], [1, 1], name="A1~")
    assert d.pairing(d.alpha(0), d.alpha(1)) == -2
    w = make_reduced_word(d, [0, 1, 0, 1, 0])  # infinite Weyl group: any alternation is reduced
    assert len(w) == 5
