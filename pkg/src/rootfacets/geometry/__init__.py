"""Exact rational linear algebra, LP feasibility and the volume oracle."""

from rootfacets.geometry.linalg import det, int_det, inverse, rank, solve
from rootfacets.geometry.lp import (Hyperplane, cone_membership, feasible_point,
                                    separating_functional, separating_hyperplane)
from rootfacets.geometry.placing import oracle_volume, placing_triangulation
