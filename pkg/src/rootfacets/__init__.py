"""Facets of root polytopes, abelian ideals and unimodular triangulations."""

from rootfacets.crossing import SimGraph, crossing_relations, is_sim_closed, relation, sim_graph
from rootfacets.errors import (CertificationFailure, DegenerateInput, IllegalRank, NotAbelian,
                               NotARoot, NotMembers, NotPositive, OrbitGuardExceeded, RankViolation,
                               RootFacetsError, SingularSet, UnknownType)
from rootfacets.ideals import (FacetIdeal, RootIdeal, enumerate_abelian_ideals, face_ideal,
                               facet_ideal, facet_ideals, order_involution)
from rootfacets.rootsys import Root, RootSystem, RootSystemSpec, root_system
from rootfacets.weyl import OrbitRecord, boundary_inventory, orbit_size

__version__ = "0.1.0"
