from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from rootfacets.crossing import (CrossingRelation, SimGraph, crossing_relations, is_sim_closed,
                                 relation, sim_graph)
from rootfacets.errors import NotAbelian, NotMembers
from rootfacets.ideals import enumerate_abelian_ideals, facet_ideal, facet_ideals
from rootfacets.rootsys import root_system, std_lt, vadd


def brute_lesssim(I):
    """``b1 ≲ b2`` straight from the definition, over all member quadruples."""
    mem = [m.coeffs for m in I]
    out = set()
    for b1 in mem:
        for b2 in mem:
            if not std_lt(b1, b2):
                continue
            s = vadd(b1, b2)
            if any(vadd(g1, g2) == s and all(std_lt(b1, g) and std_lt(g, b2) for g in (g1, g2))
                   for g1 in mem for g2 in mem):
                out.add((b1, b2))
    return out


@pytest.mark.parametrize("name", ["A3", "A4", "B3", "C3", "D4", "G2"])
def test_lesssim_matches_definition_on_all_abelian_ideals(name):
    rs = root_system(name)
    for I in enumerate_abelian_ideals(rs):
        g = SimGraph(rs, I)
        got = {(g.members[i].coeffs, g.members[j].coeffs) for i, j in g.lesssim}
        assert got == brute_lesssim(I)


@pytest.mark.parametrize("name", ["E6", "F4", "B5", "C5", "D6"])
def test_lesssim_matches_definition_on_facets(name):
    rs = root_system(name)
    for I in facet_ideals(rs):
        g = SimGraph(rs, I)
        assert {(g.members[i].coeffs, g.members[j].coeffs) for i, j in g.lesssim} == brute_lesssim(I.ideal)


def test_a3_single_edge():
    rs = root_system("A3")
    g = sim_graph(rs, facet_ideal(rs, 2))
    edges = [(g.members[i].coeffs, g.members[j].coeffs) for i, j in g.sim_edges()]
    assert edges == [((0, 1, 0), (1, 1, 1))]
    rel = relation(rs, facet_ideal(rs, 2), (0, 1, 0), (1, 1, 1))
    assert rel.kind == "lesssim" and set(rel.witness) == {(1, 1, 0), (0, 1, 1)}
    assert relation(rs, facet_ideal(rs, 2), (1, 1, 1), (0, 1, 0)).kind == "gtrsim"
    assert relation(rs, facet_ideal(rs, 2), (1, 1, 0), (0, 1, 1)).kind == "none"
    (lo, hi, mid), = g.to_dict()["edges"]
    assert (lo, hi) == (rs.index((0, 1, 0)), rs.index((1, 1, 1)))
    assert sorted(mid) == sorted([rs.index((1, 1, 0)), rs.index((0, 1, 1))])


def test_crossing_relations_have_equal_sums():
    rs = root_system("C3")
    rels = crossing_relations(rs, facet_ideal(rs, 3))
    assert rels
    for r in rels:
        assert vadd(*r.pair1) == vadd(*r.pair2)
    with pytest.raises(ValueError):
        CrossingRelation(((1, 0), (0, 1)), ((1, 0), (0, 1)))


def test_non_abelian_and_non_members_rejected():
    rs = root_system("A2")
    with pytest.raises(NotAbelian):
        SimGraph(rs, rs.positive_roots)
    with pytest.raises(NotMembers):
        relation(rs, facet_ideal(root_system("A3"), 2), (0, 1, 0), (0, 0, 1))


def test_sim_closed_examples():
    rs = root_system("A3")
    I = facet_ideal(rs, 2)
    assert is_sim_closed(rs, I, [(0, 1, 0), (1, 1, 0), (0, 1, 1), (1, 1, 1)]) == (True, None)
    ok, bad = is_sim_closed(rs, I, [(0, 1, 0), (1, 1, 1)])
    assert not ok and bad == ((0, 1, 0), (1, 1, 1))
    assert is_sim_closed(rs, I, [(0, 1, 0), (1, 1, 0)])[0]


def test_via_counts_pairs_through_a_member():
    rs = root_system("A3")
    g = SimGraph(rs, facet_ideal(rs, 2))
    S = [g.index((0, 1, 0)), g.index((1, 1, 1))]
    assert g.sim_closed_counterexample(S) is not None
    assert g.sim_closed_counterexample(S, via=[g.index((1, 1, 0))]) is None


@given(st.sampled_from(["B4", "C4", "D5", "F4", "E6"]), st.data())
def test_reduced_sets_have_no_edges(name, data):
    rs = root_system(name)
    I = data.draw(st.sampled_from(facet_ideals(rs)))
    g = SimGraph(rs, I)
    S = data.draw(st.sets(st.sampled_from(range(len(g.members))), max_size=6))
    brute = not any((g.members[a].coeffs, g.members[b].coeffs) in brute_lesssim(I.ideal)
                    or (g.members[b].coeffs, g.members[a].coeffs) in brute_lesssim(I.ideal)
                    for a, b in combinations(S, 2))
    assert g.is_reduced(S) == brute
    for i in S:
        assert all(not g.sim(i, j) for j in g.red(i))
