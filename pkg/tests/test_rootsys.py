from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from rootfacets.errors import IllegalRank, NotARoot
from rootfacets.rootsys import (RootSystemSpec, format_root, identify_type, pairing, reflect,
                                reflect_vector, reflection_closure, root_system, std_leq, std_lt)

SMALL = ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "D5", "G2", "F4", "E6"]


def expected_positive(name: str) -> int:
    fam, n = name[0], int(name[1:])
    return {"A": n * (n + 1) // 2, "B": n * n, "C": n * n, "D": n * (n - 1)}.get(
        fam, {"E6": 36, "E7": 63, "E8": 120, "F4": 24, "G2": 6}.get(name))


@pytest.mark.parametrize("name", SMALL + ["E7", "E8", "B7", "D7"])
def test_positive_root_count(name):
    assert len(root_system(name).positive_roots) == expected_positive(name)


@pytest.mark.parametrize("name", SMALL)
def test_string_construction_matches_reflection_closure(name):
    rs = root_system(name)
    assert sorted(r.coeffs for r in rs.roots) == reflection_closure(rs)


@pytest.mark.parametrize("name, marks", [
    ("A3", (1, 1, 1)), ("B4", (1, 2, 2, 2)), ("C4", (2, 2, 2, 1)), ("D5", (1, 2, 2, 1, 1)),
    ("G2", (3, 2)), ("F4", (2, 3, 4, 2)), ("E6", (1, 2, 2, 3, 2, 1)),
    ("E7", (2, 2, 3, 4, 3, 2, 1)), ("E8", (2, 3, 4, 6, 5, 4, 3, 2)),
])
def test_highest_root_marks(name, marks):
    assert root_system(name).marks == marks


@pytest.mark.parametrize("name", SMALL)
def test_cartan_diagonal_and_type(name):
    rs = root_system(name)
    assert all(rs.cartan[i][i] == 2 for i in range(rs.n))
    fam, rank, _ = identify_type(rs.cartan)
    assert (fam, rank) == (rs.spec.family, rs.n)


@pytest.mark.parametrize("bad", ["A0", "B1", "C2", "D3", "E5", "E9", "F3", "G3", "X2", "A"])
def test_illegal_names(bad):
    with pytest.raises(IllegalRank):
        root_system(bad)


def test_spec_parse_accepts_underscore():
    assert RootSystemSpec.parse("e_7").name == "E7"


def test_format_root():
    assert format_root((1, 0, 2)) == "a1+2a3"
    assert format_root((0, -1, -1)) == "-a2-a3"
    assert format_root((0, 0)) == "0"


def test_pairing_rejects_non_roots():
    rs = root_system("A2")
    with pytest.raises(NotARoot):
        pairing(rs, (2, 0), (1, 0))


def test_g2_pairings():
    rs = root_system("G2")
    assert pairing(rs, (1, 0), (0, 1)) == -1
    assert pairing(rs, (0, 1), (1, 0)) == -3


@pytest.mark.parametrize("name", ["B3", "C3", "G2", "F4"])
def test_reflections_permute_roots(name):
    rs = root_system(name)
    keys = {r.coeffs for r in rs.roots}
    for b in rs.positive_roots:
        assert {reflect(rs, b, x).coeffs for x in rs.roots} == keys


@given(st.sampled_from(SMALL), st.data())
def test_reflection_is_an_involution_on_vectors(name, data):
    rs = root_system(name)
    beta = data.draw(st.sampled_from(rs.roots))
    x = tuple(Fraction(v) for v in data.draw(st.lists(st.integers(-5, 5), min_size=rs.n, max_size=rs.n)))
    y = reflect_vector(rs, beta, x)
    assert reflect_vector(rs, beta, y) == x
    assert rs.inner(y, y) == rs.inner(x, x)


@given(st.sampled_from(SMALL), st.data())
def test_standard_order_is_a_partial_order(name, data):
    rs = root_system(name)
    a, b = data.draw(st.sampled_from(rs.positive_roots)), data.draw(st.sampled_from(rs.positive_roots))
    assert std_leq(a, a)
    if std_leq(a, b) and std_leq(b, a):
        assert a == b
    assert std_lt(a, b) == (std_leq(a, b) and a != b)
    assert std_leq(a, rs.theta)


def test_root_lengths():
    rs = root_system("B3")
    assert rs.is_long((1, 0, 0)) and not rs.is_long((0, 0, 1))
    rs = root_system("C3")
    assert not rs.is_long((1, 0, 0)) and rs.is_long((0, 0, 1))
