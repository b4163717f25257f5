import pytest

from qschubert import bi_schubert, lusztig_solve, make_reduced_word, preset
from qschubert.braid import T_inv
from qschubert.errors import DomainViolation
from qschubert.freealg import is_zero
from qschubert.golden import (MonomialDescription, build_element,
                              build_named_elements, description_for,
                              load_golden)
from qschubert.pbw import PBWFrame

from conftest import frame_of


@pytest.fixture(scope="module")
def a3_data():
    return load_golden("a3")


@pytest.fixture(scope="module")
def c2_data():
    return load_golden("c2")


@pytest.fixture(scope="module")
def a3_named(a3, a3_data):
    return build_named_elements(a3, a3_data)


def named_for(datum, data):
    return build_named_elements(datum, data)


def coords_set(frame, elements):
    return {tuple(sorted(vec.coords.items())) for vec in elements}


def check_description(datum, data, section_name, height):
    desc, section = description_for(datum, data, section_name)
    words = section["words"] if "words" in section else [section["word"]]
    frame = frame_of(datum, words[0])
    factor_coords = {name: frame.pbw_expand(desc.named[name])
                     for name in desc.order}
    for gamma in frame.degrees_up_to_height(height):
        if "words" in section:
            w1 = make_reduced_word(datum, [i - 1 for i in words[0]])
            w2 = make_reduced_word(datum, [i - 1 for i in words[1]])
            computed = [el.pbw_coords for el in bi_schubert(w1, w2, gamma)]
        else:
            computed = [el.pbw_coords
                        for el in lusztig_solve(frame, gamma).values()]
        described = [desc.monomial_coords(frame, factor_coords, m)
                     for m in desc.exponents_of_degree(gamma)]
        assert coords_set(frame, computed) == coords_set(frame, described), \
            f"{section_name} differs at degree {gamma}"


# ---------------------------------------------------------------- A3 elements


def test_a3_alternative_definitions(a3, a3_data, a3_named):
    for name, spec in a3_data["elements"].items():
        if "alt_braid_inv" in spec:
            alt = build_element(a3, a3_data["elements"],
                                {"braid_inv": spec["alt_braid_inv"],
                                 "gen": spec["alt_gen"]})
            assert is_zero(a3_named[name] - alt), name
        if "star_of" in spec:
            assert is_zero(a3_named[name] - a3_named[spec["star_of"]].star()), name


def test_a3_element_2132_combo_matches_y(a3, a3_data, a3_named):
    # the combo recipe (E_2 E_213 - q^-1 E_21 E_23) and the quadratic Y
    # element of the (2,1,3,2) frame must agree
    spec = a3_data["elements"]["2132"]
    combo = build_element(a3, a3_data["elements"], {"combo": spec["combo"]})
    y = build_element(a3, a3_data["elements"], {"y_word": spec["y_word"]})
    assert is_zero(combo - y)


def test_a3_degrees(a3, a3_named):
    expect = {"1": (1, 0, 0), "12": (1, 1, 0), "132": (1, 1, 1),
              "213": (1, 1, 1), "2132": (1, 2, 1), "321": (1, 1, 1)}
    for name, deg in expect.items():
        assert a3_named[name].degree() == deg


def test_a3_tinv_table(a3, a3_data, a3_named):
    table = a3_data["tinv_table"]
    cols = table["columns"]
    for row, entries in table["rows"].items():
        i = int(row) - 1
        for col, entry in zip(cols, entries):
            if entry is None:
                with pytest.raises(DomainViolation):
                    T_inv(i, a3_named[col])
            else:
                assert is_zero(T_inv(i, a3_named[col]) - a3_named[entry]), \
                    (row, col)


def test_a3_quantum_matrix_relations(a3, a3_named):
    from qschubert.coeff import RatScalar
    E2, E21, E23, E213 = (a3_named[k] for k in ("2", "21", "23", "213"))
    q = RatScalar.v_power(2)
    q_inv = RatScalar.v_power(-2)
    assert is_zero(E2 * E21 - (E21 * E2).scale(q_inv))
    assert is_zero(E2 * E23 - (E23 * E2).scale(q_inv))
    assert is_zero(E21 * E23 - E23 * E21)
    assert is_zero(E21 * E213 - (E213 * E21).scale(q_inv))
    assert is_zero(E23 * E213 - (E213 * E23).scale(q_inv))
    assert is_zero(E2 * E213 - E213 * E2 - (E21 * E23).scale(q_inv - q))


# ---------------------------------------------------------------- descriptions


def test_a3_quantum_matrix_description(a3, a3_data):
    check_description(a3, a3_data, "s2s1s3s2", 4)


def test_a3_s1w0_description(a3, a3_data):
    check_description(a3, a3_data, "s1w0", 3)


def test_a3_s2w0_description(a3, a3_data):
    check_description(a3, a3_data, "s2w0", 3)


def test_a3_bup_description(a3, a3_data):
    check_description(a3, a3_data, "bup", 3)


def test_c2_bup_description_small(c2, c2_data):
    check_description(c2, c2_data, "bup", 4)


@pytest.mark.parametrize("section", ["s1w0_s1w0", "s1w0_s2w0", "s1w0_s3w0",
                                     "s2w0_s2w0"])
def test_a3_bischubert_descriptions(a3, a3_data, section):
    check_description(a3, a3_data, section, 3)


def test_c2_named_degrees(c2, c2_data):
    named = build_named_elements(c2, c2_data)
    assert named["12"].degree() == (1, 1)
    assert named["112"].degree() == (2, 1)
    assert named["121"].degree() == (2, 1)
    assert named["2112"].degree() == (2, 2)
