"""Maximal reduced subsets as unimodular simplices, and triangulation orders."""

from rootfacets.triangulate.orders import (TriangulationOrderCert, certified_order,
                                           triangulation_order, verify_order)
from rootfacets.triangulate.simplices import (ReducedSet, TriangulationReport,
                                              maximal_reduced_subsets, simplex_det,
                                              verify_triangulation)
