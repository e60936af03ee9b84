from __future__ import annotations

from itertools import combinations

import pytest

from rootfacets.crossing import SimGraph
from rootfacets.errors import CertificationFailure, SingularSet
from rootfacets.geometry.linalg import det
from rootfacets.geometry.placing import oracle_volume
from rootfacets.ideals import facet_ideal, facet_ideals
from rootfacets.rootsys import root_system
from rootfacets.triangulate import (certified_order, maximal_reduced_subsets, simplex_det,
                                    triangulation_order, verify_order, verify_triangulation)
from rootfacets.triangulate.orders import corrupted, lemma_hyperplane, search_order
from rootfacets.triangulate.simplices import ReducedSet, pair_schedule

SMALL_FACETS = [("A4", 2), ("A5", 3), ("B3", 1), ("B3", 3), ("C3", 3), ("C4", 4), ("D4", 1),
                ("B4", 1), ("G2", 1), ("F4", 4)]


def brute_maximal_reduced(rs, I):
    """Maximal ∼-free subsets by checking every subset against the definition."""
    g = SimGraph(rs, I)
    N = len(g.members)
    reduced = [set(S) for k in range(N + 1) for S in combinations(range(N), k) if g.is_reduced(S)]
    return sorted(tuple(sorted(S)) for S in reduced if not any(S < T for T in reduced))


@pytest.mark.parametrize("name, alpha", SMALL_FACETS)
def test_bron_kerbosch_matches_brute_force(name, alpha):
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    got = sorted(R.indices for R in maximal_reduced_subsets(rs, I))
    assert got == brute_maximal_reduced(rs, I)


def coordinates_det(rs, I, R):
    """|det| from the root coordinates and the lattice index, a second route."""
    rows = [list(r.coeffs) for r in R.roots]
    return det(rows) / I.mark


@pytest.mark.parametrize("name, alpha", SMALL_FACETS + [("E6", 1), ("D5", 5)])
def test_unimodular_and_covering(name, alpha):
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    simplices = maximal_reduced_subsets(rs, I)
    for R in simplices:
        d = simplex_det(rs, I, R)
        assert abs(d) == 1 and d == coordinates_det(rs, I, R)
    assert len(simplices) == oracle_volume([m.coeffs for m in I.members], I.lattice_basis())


def test_a3_instance():
    rs = root_system("A3")
    I = facet_ideal(rs, 2)
    simplices = {frozenset(r.coeffs for r in R.roots) for R in maximal_reduced_subsets(rs, I)}
    assert simplices == {frozenset({(0, 1, 0), (1, 1, 0), (0, 1, 1)}),
                         frozenset({(1, 1, 1), (1, 1, 0), (0, 1, 1)})}
    rep = verify_triangulation(rs, I)
    assert rep.passed and rep.simplex_count == 2 and rep.oracle_volume == 2
    assert rep.pairs_checked == rep.pairs_total == 1


def test_singular_set_rejected():
    rs = root_system("A3")
    I = facet_ideal(rs, 2)
    bad = ReducedSet((0, 1, 2), tuple(rs.as_root(v) for v in [(0, 1, 0), (1, 1, 0), (1, 1, 0)]))
    with pytest.raises(SingularSet):
        simplex_det(rs, I, bad)


def test_pair_schedule():
    pairs, total = pair_schedule(5, 6, 3)
    assert total == 10 and len(pairs) == 10
    pairs, total = pair_schedule(5, 7, 3)
    assert total == 10 and pairs == [(0, 1), (0, 2), (0, 3)]


def test_report_is_json_ready():
    rs = root_system("C3")
    d = verify_triangulation(rs, 3).to_dict()
    assert d["verdict"] == "pass" and d["dets"] and "seconds" not in d


STRICT = [(n, a) for n in ["A2", "A3", "A4", "A5", "A6", "B3", "B4", "B5", "B6", "C3", "C4", "C5",
                           "C6", "D4", "D5", "D6", "E6", "F4", "G2", "E8"]
          for a in [I.alpha for I in facet_ideals(root_system(n))]] + [("E7", 2)]


@pytest.mark.parametrize("name, alpha", STRICT)
def test_orders_pass_strictly(name, alpha):
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    cert = certified_order(rs, I)
    assert sorted(r.coeffs for r in cert.order) == sorted(m.coeffs for m in I.members)
    assert verify_order(rs, I, cert).passed


@pytest.mark.parametrize("name, alpha", [("E7", 7), ("D7", 7), ("D7", 6), ("B7", 7)])
def test_rank_seven_orders_pass_relaxed_only(name, alpha):
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    cert = certified_order(rs, I)
    assert verify_order(rs, I, cert, strict=False).passed
    verdict = verify_order(rs, I, cert)
    assert not verdict.passed
    assert all("sim_closed" in f for f in verdict.failures)


def test_e7_unwitnessed_relation_through_beta():
    rs = root_system("E7")
    g = SimGraph(rs, facet_ideal(rs, 7))
    lo, hi = g.index((0, 0, 0, 1, 1, 1, 1)), g.index((0, 1, 1, 1, 1, 1, 1))
    mids = g.lesssim[(lo, hi)]
    beta = g.index((0, 0, 1, 1, 1, 1, 1))
    assert mids == [tuple(sorted((g.index((0, 1, 0, 1, 1, 1, 1)), beta)))]


@pytest.mark.parametrize("name, alpha", [("A4", 2), ("C4", 4), ("D5", 1), ("E6", 1), ("F4", 4)])
def test_corrupted_certificate_fails(name, alpha):
    rs = root_system(name)
    I = facet_ideal(rs, alpha)
    cert = certified_order(rs, I)
    assert not verify_order(rs, I, corrupted(cert, rs)).passed


def test_explicit_construction_cases():
    rs = root_system("A5")
    assert triangulation_order(rs, facet_ideal(rs, 3)).case == "A_{5,3}"
    rs = root_system("C5")
    assert triangulation_order(rs, facet_ideal(rs, 5)).case == "C_{5,5}"
    rs = root_system("E6")
    assert triangulation_order(rs, facet_ideal(rs, 6)).case.startswith("E_{6")


def test_search_order_finds_a_certificate():
    rs = root_system("D5")
    I = facet_ideal(rs, 5)
    cert = search_order(rs, I)
    assert cert is not None and cert.case == "searched" and verify_order(rs, I, cert).passed


def test_lemma_hyperplane_needs_long_root():
    rs = root_system("C3")
    I = facet_ideal(rs, 3)
    with pytest.raises(CertificationFailure):
        lemma_hyperplane(rs, I, (0, 1, 1))
    h = lemma_hyperplane(rs, I, (0, 0, 1))
    assert h.offset == 0
