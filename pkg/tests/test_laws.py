from __future__ import annotations

import pytest

from rootfacets.ideals import enumerate_abelian_ideals, facet_ideals
from rootfacets.laws import (LawReport, check_cartan_table, check_crossing_laws,
                             check_ideal_lemmas, check_three_sums)
from rootfacets.rootsys import root_system, vadd


@pytest.mark.parametrize("name", ["A3", "B3", "C3", "G2", "F4"])
def test_root_laws(name):
    rs = root_system(name)
    for rep in (check_three_sums(rs), check_cartan_table(rs)):
        assert rep.passed and rep.checked > 0


@pytest.mark.parametrize("name", ["A4", "B4", "C4", "D4", "G2"])
def test_crossing_laws_on_every_abelian_ideal(name):
    rs = root_system(name)
    for I in enumerate_abelian_ideals(rs):
        assert check_crossing_laws(rs, I).passed


def test_short_plus_negative_long_is_excluded_from_the_lemma():
    # a1+a2 is short in B2, -a1 is long, and their sum a2 is a root
    rs = root_system("B2")
    assert not rs.is_long((1, 1)) and rs.is_long((-1, 0)) and rs.is_root(vadd((1, 1), (-1, 0)))
    I = next(I for I in facet_ideals(rs))
    assert check_ideal_lemmas(rs, I.members).passed


def test_report_merge_and_dict():
    a = LawReport("x", 2, ["f"])
    a.merge(LawReport("y", 3, []))
    assert a.checked == 5 and not a.passed
    assert a.to_dict() == {"law": "x", "checked": 5, "failures": ["f"], "failure_count": 1}


def test_crossing_law_detects_corrupted_relation():
    rs = root_system("A3")
    from rootfacets.crossing import SimGraph
    I = facet_ideals(rs)[1]
    g = SimGraph(rs, I)
    g.lesssim = {}  # forget the only relation
    assert not check_crossing_laws(rs, I.ideal, g).passed
