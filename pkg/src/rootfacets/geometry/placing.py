"""Normalized volume of a lattice polytope from an exact placing triangulation.

This module knows nothing about roots.  It is the independent witness used to
check that the simplices produced elsewhere cover a facet exactly once: the
placing (beneath-beyond) triangulation is built by inserting points in
lexicographic order, and its total volume is confirmed by a second, pulling
triangulation coned from the lexicographically least vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from rootfacets.errors import CertificationFailure, DegenerateInput
from rootfacets.geometry.linalg import coordinates, det, dot, nullspace_vector, rank

Point = Tuple[Fraction, ...]


def _diffs(points: Sequence[Sequence], idx: Sequence[int]) -> List[List[Fraction]]:
    base = points[idx[0]]
    return [[Fraction(a) - b for a, b in zip(points[i], base)] for i in idx[1:]]


def affine_dimension(points: Sequence[Sequence]) -> int:
    if len(points) <= 1:
        return 0
    return rank(_diffs(points, list(range(len(points)))))


def _project(points: Sequence[Sequence]) -> Tuple[List[Point], int]:
    """Drop coordinates so the points become full-dimensional.

    Coordinate projection is injective on the affine hull as long as the kept
    columns carry the full rank of the difference vectors.
    """
    dim = affine_dimension(points)
    if dim == 0:
        return [tuple() for _ in points], 0
    D = _diffs(points, list(range(len(points))))
    keep: List[int] = []
    for c in range(len(points[0])):
        trial = keep + [c]
        if rank([[row[k] for k in trial] for row in D]) == len(trial):
            keep = trial
        if len(keep) == dim:
            break
    return [tuple(Fraction(p[k]) for k in keep) for p in points], dim


@dataclass
class _Facet:
    verts: Tuple[int, ...]
    normal: List[Fraction]
    offset: Fraction

    def beyond(self, p: Sequence) -> bool:
        return dot(self.normal, p) > self.offset


def _make_facet(points, verts: Tuple[int, ...], inside: int) -> _Facet:
    dim = len(points[0])
    if dim == 1:
        normal = [Fraction(1)]
    else:
        normal = nullspace_vector(_diffs(points, verts), dim)
        if normal is None:
            raise CertificationFailure("degenerate boundary facet")
    offset = dot(normal, points[verts[0]])
    if dot(normal, points[inside]) > offset:
        normal = [-a for a in normal]
        offset = -offset
    return _Facet(tuple(sorted(verts)), normal, offset)


def placing_triangulation(points: Sequence[Sequence]) -> Tuple[List[Tuple[int, ...]], List[_Facet]]:
    """Placing triangulation of full-dimensional ``points``.

    Returns the simplices (as index tuples) and the boundary facets of the
    hull.  Points are inserted in lexicographic order; the first simplex is
    the lexicographically earliest affinely independent set.
    """
    pts = [tuple(Fraction(a) for a in p) for p in points]
    dim = len(pts[0]) if pts else 0
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    if affine_dimension(pts) != dim:
        raise DegenerateInput("points are not full-dimensional")
    start: List[int] = []
    for i in order:
        if not start or rank(_diffs(pts, start + [i])) == len(start):
            start.append(i)
        if len(start) == dim + 1:
            break
    simplices = [tuple(sorted(start))]
    facets: List[_Facet] = []
    for k in range(dim + 1):
        verts = tuple(start[:k] + start[k + 1:])
        facets.append(_make_facet(pts, verts, start[k]))
    placed = set(start)
    for i in order:
        if i in placed:
            continue
        placed.add(i)
        visible = [f for f in facets if f.beyond(pts[i])]
        if not visible:
            continue
        # ridge -> visible facets containing it; a ridge seen once is on the horizon
        ridge_count: Dict[Tuple[int, ...], List[_Facet]] = {}
        for f in visible:
            simplices.append(tuple(sorted(f.verts + (i,))))
            for k in range(len(f.verts)):
                ridge = f.verts[:k] + f.verts[k + 1:]
                ridge_count.setdefault(ridge, []).append(f)
        visible_ids = {id(f) for f in visible}
        kept = [f for f in facets if id(f) not in visible_ids]
        for ridge, owners in ridge_count.items():
            if len(owners) != 1:
                continue
            f = owners[0]
            inside = next(v for v in f.verts if v not in ridge)
            kept.append(_make_facet(pts, ridge + (i,), inside))
        facets = kept
    return simplices, facets


def _simplex_volume(points, simplex: Sequence[int]) -> Fraction:
    return abs(det(_diffs(points, list(simplex))))


def _hull_facet_groups(pts: Sequence[Point], indices: Sequence[int]) -> List[List[int]]:
    """Facets of ``conv(pts[indices])`` as lists of the points lying on them."""
    sub = [pts[i] for i in indices]
    proj, dim = _project(sub)
    if dim == 0:
        return []
    _, facets = placing_triangulation(proj)
    groups: Dict[Tuple, List[int]] = {}
    for f in facets:
        scale = next(a for a in f.normal if a != 0)
        key = tuple(a / abs(scale) for a in f.normal) + (f.offset / abs(scale),)
        if key in groups:
            continue
        groups[key] = [indices[k] for k, p in enumerate(proj) if dot(f.normal, p) == f.offset]
    return [groups[k] for k in sorted(groups)]


def pulling_triangulation(points: Sequence[Sequence], indices: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
    """Pulling triangulation: cone from the lexicographically least point over
    a recursive triangulation of every facet not containing it."""
    pts = [tuple(Fraction(a) for a in p) for p in points]
    if indices is None:
        indices = list(range(len(pts)))
    indices = sorted(set(indices), key=lambda i: pts[i])
    dim = affine_dimension([pts[i] for i in indices])
    if len(indices) == dim + 1:
        return [tuple(sorted(indices))]
    apex = indices[0]
    out = []
    for group in _hull_facet_groups(pts, indices):
        if apex in group:
            continue
        for s in pulling_triangulation(pts, group):
            out.append(tuple(sorted(s + (apex,))))
    return out


def _primitive(v: Sequence[Fraction]) -> List[int]:
    den = 1
    for a in v:
        den = den * Fraction(a).denominator // gcd(den, Fraction(a).denominator)
    ints = [int(a * den) for a in v]
    g = 0
    for a in ints:
        g = gcd(g, a)
    return [a // g for a in ints]


def oracle_volume(points: Sequence[Sequence], lattice_basis: Optional[Sequence[Sequence]] = None):
    """Normalized lattice volume of ``conv(points)``.

    ``points`` must affinely span either the whole space or a hyperplane of
    it.  Volumes are measured against the lattice spanned by
    ``lattice_basis`` (the standard lattice if omitted); for a hyperplane the
    reference lattice is that lattice intersected with the hyperplane's
    direction.  Returns an ``int`` when the volume is integral.
    """
    if not points:
        raise DegenerateInput("no points")
    d = len(points[0])
    if lattice_basis is not None:
        coords = []
        for p in points:
            c = coordinates(lattice_basis, p)
            if c is None:
                raise DegenerateInput("point outside the span of the lattice basis")
            coords.append(tuple(c))
        if len(lattice_basis) != d:
            d = len(lattice_basis)
    else:
        coords = [tuple(Fraction(a) for a in p) for p in points]
    pts = sorted(set(coords))
    dim = affine_dimension(pts)
    divisor = 1
    if dim == d:
        work = pts
    elif dim == d - 1:
        normal = nullspace_vector(_diffs(pts, list(range(len(pts)))), d)
        ell = _primitive(normal)
        k = min((i for i in range(d) if ell[i] != 0), key=lambda i: (abs(ell[i]), i))
        divisor = abs(ell[k])
        work = [p[:k] + p[k + 1:] for p in pts]
    else:
        raise DegenerateInput(f"points span dimension {dim} in ambient dimension {d}")

    if dim == 0:
        # a single point spans a 0-simplex of normalized volume 1
        return 1
    simplices, _ = placing_triangulation(work)
    total = Fraction(0)
    for s in simplices:
        v = _simplex_volume(work, s)
        if v <= 0:
            raise CertificationFailure("placing triangulation produced a flat simplex")
        total += v
    second = sum((_simplex_volume(work, s) for s in pulling_triangulation(work)), Fraction(0))
    if second != total:
        raise CertificationFailure(f"placing volume {total} != pulling volume {second}")
    vol = total / divisor
    return int(vol) if vol.denominator == 1 else vol
