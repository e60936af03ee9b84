"""Simplices of a facet from the maximal reduced subsets of its ideal.

A subset of a facet ideal is reduced when no two of its members are
∼-related.  Its maximal reduced subsets are the maximal cliques of the
complement of the ∼ graph; each must have exactly ``n`` members and spans a
unimodular simplex of the facet.  :func:`verify_triangulation` checks this
and then confirms, by an independent volume computation and pairwise
separating hyperplanes, that the simplices tile the facet.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Dict, List, Optional, Sequence, Tuple

from rootfacets.crossing import SimGraph
from rootfacets.errors import RankViolation, SingularSet
from rootfacets.geometry.linalg import det, inverse
from rootfacets.geometry.lp import separating_functional, separating_hyperplane
from rootfacets.geometry.placing import oracle_volume
from rootfacets.ideals import FacetIdeal, facet_ideal
from rootfacets.rootsys import Root, RootSystem

FULL_PAIR_RANK = 6
DEFAULT_MAX_PAIRS = 10000


@dataclass(frozen=True)
class ReducedSet:
    """A maximal reduced subset, as member indices and roots."""

    indices: Tuple[int, ...]
    roots: Tuple[Root, ...]

    def to_dict(self) -> dict:
        return {"roots": [list(r.coeffs) for r in self.roots]}


def _graph(rs: RootSystem, I, graph: Optional[SimGraph]) -> SimGraph:
    return graph if graph is not None else SimGraph(rs, I)


def _degeneracy_order(nbrs: List[int], nodes: int) -> List[int]:
    """Repeatedly remove a vertex of least degree (lowest index on ties)."""
    alive = (1 << nodes) - 1
    order = []
    while alive:
        best = min((v for v in range(nodes) if alive >> v & 1),
                   key=lambda v: (bin(nbrs[v] & alive).count("1"), v))
        order.append(best)
        alive &= ~(1 << best)
    return order


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def maximal_reduced_subsets(rs: RootSystem, I, graph: Optional[SimGraph] = None) -> List[ReducedSet]:
    """All maximal reduced subsets of ``I``, sorted by member indices.

    Bron–Kerbosch with pivoting and a degeneracy ordering on the complement
    of the ∼ graph.  Raises :class:`RankViolation` if one of them does not
    have exactly ``rank`` members.
    """
    g = _graph(rs, I, graph)
    N = len(g.members)
    full = (1 << N) - 1
    # complement adjacency as bitmasks
    nbrs = []
    for v in range(N):
        sim = 0
        for u in g.adjacent[v]:
            sim |= 1 << u
        nbrs.append(full & ~sim & ~(1 << v))

    found: List[Tuple[int, ...]] = []

    def expand(R: int, P: int, X: int) -> None:
        if not P and not X:
            found.append(tuple(_bits(R)))
            return
        pivot = max(_bits(P | X), key=lambda u: (bin(P & nbrs[u]).count("1"), -u))
        for v in _bits(P & ~nbrs[pivot]):
            expand(R | 1 << v, P & nbrs[v], X & nbrs[v])
            P &= ~(1 << v)
            X |= 1 << v

    P, X = full, 0
    for v in _degeneracy_order(nbrs, N):
        expand(1 << v, P & nbrs[v], X & nbrs[v])
        P &= ~(1 << v)
        X |= 1 << v

    n = rs.n
    out = []
    for idx in sorted(found):
        if len(idx) != n:
            raise RankViolation(f"maximal reduced subset of size {len(idx)} != {n} in {rs.name}")
        out.append(ReducedSet(idx, tuple(g.members[i] for i in idx)))
    return out


def _lattice_coordinates(I: FacetIdeal, beta: Sequence[int]) -> List[Fraction]:
    """Coordinates over ``(Pi - alpha) ∪ {m alpha}``: the alpha entry is
    divided by the mark, the others are unchanged."""
    a = I.alpha - 1
    return [Fraction(c, I.mark) if i == a else Fraction(c) for i, c in enumerate(beta)]


def simplex_det(rs: RootSystem, I: FacetIdeal, R) -> int:
    """Determinant of the members of ``R`` in the lattice basis of ``I``.

    Rows follow the order of ``R``.  Raises :class:`SingularSet` for a
    dependent set.
    """
    roots = [rs.as_root(r).coeffs for r in getattr(R, "roots", R)]
    if len(roots) != rs.n:
        raise SingularSet(f"{len(roots)} vectors in rank {rs.n}")
    d = det([_lattice_coordinates(I, r) for r in roots])
    if d == 0:
        raise SingularSet("linearly dependent set")
    return int(d) if d.denominator == 1 else d


def pair_schedule(count: int, rank: int, max_pairs: int) -> Tuple[List[Tuple[int, int]], int]:
    """Simplex pairs to test: all of them up to ``FULL_PAIR_RANK``, otherwise
    the first ``max_pairs`` in lexicographic order.  Returns the pairs and
    the total number of pairs."""
    total = count * (count - 1) // 2
    pairs = combinations(range(count), 2)
    if rank <= FULL_PAIR_RANK:
        return list(pairs), total
    return list(islice(pairs, max_pairs)), total


def pair_separated(R1: Sequence[Sequence[int]], R2: Sequence[Sequence[int]], inv1=None) -> bool:
    """Whether a hyperplane through ``R1 ∩ R2`` strictly separates the rest.

    The linear search in the basis ``R1`` is tried first; the general affine
    LP decides when it fails.
    """
    if separating_functional(R1, R2, inv1) is not None:
        return True
    return separating_hyperplane(R1, R2) is not None


@dataclass
class TriangulationReport:
    system: str
    alpha: int
    type: str
    simplex_count: int
    dets: Dict[str, int]
    oracle_volume: object
    pairs_checked: int
    pairs_total: int
    pairs_failed: int
    order_cert: Optional[str]
    verdict: str
    seconds: float = 0.0
    simplices: List[ReducedSet] = field(default_factory=list, repr=False)
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        vol = self.oracle_volume
        return {
            "system": self.system,
            "alpha": self.alpha,
            "type": self.type,
            "simplex_count": self.simplex_count,
            "dets": self.dets,
            "oracle_volume": vol if isinstance(vol, int) else str(vol),
            "pairs_checked": self.pairs_checked,
            "pairs_total": self.pairs_total,
            "pairs_failed": self.pairs_failed,
            "order_cert": self.order_cert,
            "verdict": self.verdict,
            "failures": self.failures[:20],
        }


def verify_triangulation(rs: RootSystem, I, max_pairs: int = DEFAULT_MAX_PAIRS,
                         graph: Optional[SimGraph] = None, check_order: bool = True,
                         check_pairs: bool = True) -> TriangulationReport:
    """Certify that the maximal reduced subsets of facet ideal ``I`` form a
    unimodular triangulation of the facet."""
    start = time.perf_counter()
    if isinstance(I, int):
        I = facet_ideal(rs, I)
    g = _graph(rs, I, graph)
    simplices = maximal_reduced_subsets(rs, I, g)
    failures: List[str] = []

    dets: Dict[str, int] = {}
    for R in simplices:
        d = simplex_det(rs, I, R)
        dets[str(d)] = dets.get(str(d), 0) + 1
        if abs(d) != 1:
            failures.append(f"det {d} for {[str(r) for r in R.roots]}")

    vol = oracle_volume([m.coeffs for m in I.members], I.lattice_basis())
    if vol != len(simplices):
        failures.append(f"oracle volume {vol} != {len(simplices)} unimodular simplices")

    pairs, total = pair_schedule(len(simplices), rs.n, max_pairs)
    if not check_pairs:
        pairs = []
    vecs = [[r.coeffs for r in R.roots] for R in simplices]
    inverses: Dict[int, list] = {}
    failed = 0
    for i, j in pairs:
        if i not in inverses:
            inverses[i] = inverse([list(c) for c in zip(*vecs[i])])
        if not pair_separated(vecs[i], vecs[j], inverses[i]):
            failed += 1
            failures.append(f"simplices {i} and {j} are not separated")

    order_cert = None
    if check_order:
        from rootfacets.triangulate.orders import certified_order, verify_order
        verdict = verify_order(rs, I, certified_order(rs, I, g), g)
        order_cert = "pass" if verdict.passed else "fail"
        if not verdict.passed:
            failures.extend(verdict.failures)

    return TriangulationReport(
        system=rs.name, alpha=I.alpha, type=str(I.nilradical_type),
        simplex_count=len(simplices), dets=dict(sorted(dets.items())), oracle_volume=vol,
        pairs_checked=len(pairs), pairs_total=total, pairs_failed=failed,
        order_cert=order_cert, verdict="fail" if failures else "pass",
        seconds=time.perf_counter() - start, simplices=simplices, failures=failures)
