"""Weyl-group orbits of facets and the boundary inventory of the root polytope.

The facets of the root polytope fall into Weyl orbits, one per facet root
``alpha``, and the orbit of the facet ``F_alpha`` is in bijection with the
orbit of its normal ``w_alpha`` (the fundamental coweight).  Orbits are
computed by breadth-first search under the simple reflections without ever
materializing the group.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from rootfacets.errors import CertificationFailure, DegenerateInput, OrbitGuardExceeded
from rootfacets.geometry.linalg import det, inverse
from rootfacets.ideals import FacetIdeal, facet_ideals
from rootfacets.rootsys import RootSystem
from rootfacets.triangulate.simplices import maximal_reduced_subsets

ORBIT_GUARD = 10 ** 6

# degrees of the basic invariants; |W| is their product
_DEGREES = {
    "E6": (2, 5, 6, 8, 9, 12),
    "E7": (2, 6, 8, 10, 12, 14, 18),
    "E8": (2, 8, 12, 14, 18, 20, 24, 30),
    "F4": (2, 6, 8, 12),
    "G2": (2, 6),
}


def weyl_order(rs: RootSystem) -> int:
    """``|W|`` as the product of the degrees."""
    fam, n = rs.spec.family, rs.n
    if fam == "A":
        degs = range(2, n + 2)
    elif fam in "BC":
        degs = range(2, 2 * n + 1, 2)
    elif fam == "D":
        degs = list(range(2, 2 * n - 1, 2)) + [n]
    else:
        degs = _DEGREES[rs.name]
    return math.prod(degs)


def reflect_coords(rs: RootSystem, i: int, x: Sequence) -> Tuple:
    """``s_i(x)`` for ``x`` in simple-root coordinates (``i`` is 0-based)."""
    pair = sum(x[j] * rs.cartan[i][j] for j in range(rs.n))
    out = list(x)
    out[i] = out[i] - pair
    return tuple(out)


def _orbit(rs: RootSystem, v: Sequence, guard: int) -> Dict[Tuple, Tuple[int, ...]]:
    """Orbit of ``v`` with a BFS-tree word for every element (word applied
    right to left: the last letter acts first)."""
    start = tuple(Fraction(a) for a in v)
    if all(a == 0 for a in start):
        raise DegenerateInput("orbit of the zero vector")
    words: Dict[Tuple, Tuple[int, ...]] = {start: ()}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in range(rs.n):
            y = reflect_coords(rs, i, x)
            if y not in words:
                words[y] = (i,) + words[x]
                if len(words) > guard:
                    raise OrbitGuardExceeded(f"orbit exceeds {guard} elements")
                queue.append(y)
    return words


def orbit(rs: RootSystem, v: Sequence, guard: int = ORBIT_GUARD) -> List[Tuple]:
    """The orbit of ``v`` (simple-root coordinates), sorted."""
    return sorted(_orbit(rs, v, guard))


def orbit_size(rs: RootSystem, v: Sequence, guard: int = ORBIT_GUARD) -> int:
    return len(_orbit(rs, v, guard))


def coweight(rs: RootSystem, alpha: int) -> Tuple[Fraction, ...]:
    """``w_alpha`` in simple-root coordinates."""
    return tuple(Fraction(row[alpha - 1]) for row in rs.coweights)


def is_w_invariant(rs: RootSystem, points: Sequence[Sequence]) -> bool:
    """Every simple reflection permutes ``points``."""
    S = {tuple(Fraction(a) for a in p) for p in points}
    return all({reflect_coords(rs, i, p) for p in S} == S for i in range(rs.n))


def apply_word(rs: RootSystem, word: Sequence[int], x: Sequence) -> Tuple:
    for i in reversed(word):
        x = reflect_coords(rs, i, x)
    return tuple(x)


def gram_det(rs: RootSystem, basis: Sequence[Sequence[int]]) -> Fraction:
    """Determinant of the Gram matrix of ``basis`` under the invariant form."""
    return det([[rs.inner(a, b) for b in basis] for a in basis])


@dataclass
class OrbitRecord:
    facet: FacetIdeal
    orbit_size: int
    simplices_per_facet: int
    lattice: List[Tuple[int, ...]]
    gram_det: Fraction
    facet_gram_det: Fraction

    @property
    def simplex_total(self) -> int:
        return self.orbit_size * self.simplices_per_facet

    @property
    def approximate_measure(self) -> float:
        """Euclidean (n-1)-volume of the orbit's facets, as a float.

        A unimodular facet simplex has volume ``sqrt(facet_gram_det)/(n-1)!``
        where ``facet_gram_det`` is the Gram determinant of ``Pi - alpha``.
        """
        n = len(self.lattice)
        return self.simplex_total * math.sqrt(self.facet_gram_det) / math.factorial(n - 1)

    def to_dict(self) -> dict:
        return {
            "alpha": self.facet.alpha,
            "type": str(self.facet.nilradical_type),
            "orbit_size": self.orbit_size,
            "simplices_per_facet": self.simplices_per_facet,
            "simplex_total": self.simplex_total,
            "lattice": [list(b) for b in self.lattice],
            "gram_det": str(self.gram_det),
            "facet_gram_det": str(self.facet_gram_det),
            "approximate_measure": {"value": self.approximate_measure, "tag": "approximate"},
        }


def boundary_inventory(rs: RootSystem, guard: int = ORBIT_GUARD) -> List[OrbitRecord]:
    """One record per Weyl orbit of facets."""
    out = []
    for I in facet_ideals(rs):
        size = orbit_size(rs, coweight(rs, I.alpha), guard)
        if rs.n <= 6 and weyl_order(rs) % size:
            raise CertificationFailure(f"orbit size {size} does not divide |W|")
        count = len(maximal_reduced_subsets(rs, I))
        basis = I.lattice_basis()
        face_basis = [b for i, b in enumerate(basis) if i != I.alpha - 1]
        out.append(OrbitRecord(I, size, count, basis, gram_det(rs, basis),
                               gram_det(rs, face_basis) if face_basis else Fraction(1)))
    return out


def check_orbit_invariance(rs: RootSystem, alpha: int, guard: int = ORBIT_GUARD) -> bool:
    """The orbit of the facet normal is permuted by every simple reflection."""
    return is_w_invariant(rs, orbit(rs, coweight(rs, alpha), guard))


def check_transport(rs: RootSystem, I: FacetIdeal, limit: Optional[int] = None,
                    guard: int = ORBIT_GUARD) -> Tuple[bool, int]:
    """Transport one simplex of ``I`` by each BFS-tree word of the facet
    orbit and recompute its determinant in the transported lattice basis.

    Returns ``(all |det| == 1, number of orbit elements checked)``.  The
    transported facet must also have the transported normal: each image
    vertex lies on ``(x, w) = m`` for the image ``w`` of the coweight.
    """
    words = _orbit(rs, coweight(rs, I.alpha), guard)
    simplex = maximal_reduced_subsets(rs, I)[0].roots
    basis = I.lattice_basis()
    checked = 0
    for w_vec, word in sorted(words.items()):
        if limit is not None and checked >= limit:
            break
        verts = [apply_word(rs, word, r.coeffs) for r in simplex]
        lat = [apply_word(rs, word, b) for b in basis]
        form_w = rs.form_vector(w_vec)
        if any(sum(a * b for a, b in zip(form_w, v)) != I.mark for v in verts):
            return False, checked
        # coordinates of the vertices in the transported basis
        M = [[lat[j][i] for j in range(rs.n)] for i in range(rs.n)]
        inv = inverse(M)
        rows = [[sum(inv[i][k] * v[k] for k in range(rs.n)) for i in range(rs.n)] for v in verts]
        if abs(det(rows)) != 1:
            return False, checked
        checked += 1
    return True, checked
