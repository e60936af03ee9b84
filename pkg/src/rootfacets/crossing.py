"""Crossing pairs inside an abelian ideal and the relations they induce.

Two pairs ``{b1, b2}`` and ``{g1, g2}`` of roots cross when they are distinct
and ``b1 + b2 = g1 + g2``; one side may repeat a root.  ``b1 ≲ b2`` when
some crossing pair lies strictly between them in the standard order (a
middle pair), and ``∼`` is the symmetrization.

Every root strictly above a member of an ideal is again a member, so all
middle pairs between two members already lie inside the ideal; searching
the ideal is therefore the same as searching all of ``Phi+``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, Iterable, List, Optional, Set, Tuple

from rootfacets.errors import CertificationFailure, NotAbelian, NotMembers
from rootfacets.ideals import RootIdeal, is_abelian_set
from rootfacets.rootsys import Root, RootSystem, Vec, std_lt, vadd, vsub

Pair = Tuple[int, int]


def _as_ideal(rs: RootSystem, I) -> RootIdeal:
    ideal = getattr(I, "ideal", I)
    if not isinstance(ideal, RootIdeal):
        ideal = RootIdeal(rs, ideal)
    return ideal


def _require_abelian(rs: RootSystem, ideal: RootIdeal) -> None:
    if not is_abelian_set(rs, ideal.members):
        raise NotAbelian("crossing relations are only defined inside an abelian ideal")


@dataclass(frozen=True)
class CrossingRelation:
    """``pair1`` and ``pair2`` are sorted coefficient tuples with equal sums."""

    pair1: Tuple[Vec, Vec]
    pair2: Tuple[Vec, Vec]

    def __post_init__(self):
        if vadd(*self.pair1) != vadd(*self.pair2):
            raise ValueError("crossing pairs must have equal sums")
        if set(self.pair1) & set(self.pair2):
            raise ValueError("crossing pairs must be elementwise distinct")

    def to_dict(self) -> dict:
        return {"pair1": [list(v) for v in self.pair1], "pair2": [list(v) for v in self.pair2]}


def _pairs_by_sum(members: Tuple[Root, ...]) -> Dict[Vec, List[Pair]]:
    out: Dict[Vec, List[Pair]] = {}
    for i in range(len(members)):
        for j in range(i, len(members)):
            out.setdefault(vadd(members[i].coeffs, members[j].coeffs), []).append((i, j))
    return out


def crossing_relations(rs: RootSystem, I) -> List[CrossingRelation]:
    """All crossing relations among members of the abelian ideal ``I``."""
    ideal = _as_ideal(rs, I)
    _require_abelian(rs, ideal)
    mem = ideal.members
    out = []
    for s, pairs in sorted(_pairs_by_sum(mem).items()):
        for p, q in combinations(pairs, 2):
            out.append(CrossingRelation(
                (mem[p[0]].coeffs, mem[p[1]].coeffs), (mem[q[0]].coeffs, mem[q[1]].coeffs)))
    return out


@dataclass(frozen=True)
class Relation:
    """Outcome of comparing two members: ``kind`` is ``"none"``, ``"lesssim"``
    (first ≲ second) or ``"gtrsim"`` (second ≲ first)."""

    kind: str
    witness: Optional[Tuple[Vec, Vec]] = None

    @property
    def related(self) -> bool:
        return self.kind != "none"


class SimGraph:
    """The ≲ and ∼ relations on the members of an abelian ideal.

    ``lesssim[(i, j)]`` lists every middle pair between ``members[i]`` and
    ``members[j]`` (indices into ``members``), sorted, when
    ``members[i] ≲ members[j]``.
    """

    def __init__(self, rs: RootSystem, I):
        ideal = _as_ideal(rs, I)
        _require_abelian(rs, ideal)
        self.rs = rs
        self.ideal = ideal
        self.members: Tuple[Root, ...] = ideal.members
        self.position: Dict[Vec, int] = {m.coeffs: i for i, m in enumerate(self.members)}
        mem = self.members
        lesssim: Dict[Pair, List[Pair]] = {}
        for pairs in _pairs_by_sum(mem).values():
            if len(pairs) < 2:
                continue
            for (a, b) in pairs:
                lo, hi = (a, b) if std_lt(mem[a], mem[b]) else (b, a)
                if not std_lt(mem[lo], mem[hi]):
                    continue
                for (c, d) in pairs:
                    if (c, d) == (a, b):
                        continue
                    if all(std_lt(mem[lo], mem[g]) and std_lt(mem[g], mem[hi]) for g in (c, d)):
                        lesssim.setdefault((lo, hi), []).append((c, d))
        for k in lesssim:
            lesssim[k].sort()
        self.lesssim: Dict[Pair, List[Pair]] = dict(sorted(lesssim.items()))
        self.adjacent: List[Set[int]] = [set() for _ in mem]
        for (i, j) in self.lesssim:
            self.adjacent[i].add(j)
            self.adjacent[j].add(i)

    # -- queries ------------------------------------------------------------
    def index(self, beta) -> int:
        key = beta.coeffs if isinstance(beta, Root) else tuple(beta)
        try:
            return self.position[key]
        except KeyError:
            raise NotMembers(f"{key} is not a member of the ideal") from None

    def witness(self, i: int, j: int) -> Optional[Pair]:
        """Lexicographically least middle pair for ``members[i] ≲ members[j]``."""
        w = self.lesssim.get((i, j))
        return w[0] if w else None

    def sim(self, i: int, j: int) -> bool:
        return j in self.adjacent[i]

    def sim_edges(self) -> List[Pair]:
        return sorted(self.lesssim)

    def red(self, i: int, within: Optional[Iterable[int]] = None) -> Set[int]:
        """Indices of members ``≠ i`` not ∼-related to member ``i``."""
        pool = range(len(self.members)) if within is None else within
        return {j for j in pool if j != i and j not in self.adjacent[i]}

    def is_reduced(self, S: Iterable[int]) -> bool:
        S = list(S)
        return not any(self.sim(a, b) for a, b in combinations(S, 2))

    def sim_closed_counterexample(self, S: Iterable[int], via: Iterable[int] = ()) -> Optional[Pair]:
        """A ≲ pair inside ``S`` none of whose middle pairs lies in ``S``.

        A middle pair containing a member listed in ``via`` also counts as a
        witness.
        """
        S = set(S)
        via = set(via)
        for (i, j), mids in self.lesssim.items():
            if i in S and j in S and not any(
                    (c in S and d in S) or c in via or d in via for c, d in mids):
                return (i, j)
        return None

    def to_dict(self) -> dict:
        idx = self.rs.index
        return {
            "nodes": [idx(m) for m in self.members],
            "edges": [[idx(self.members[i]), idx(self.members[j]),
                       [idx(self.members[c]), idx(self.members[d])]]
                      for (i, j) in self.sim_edges()
                      for (c, d) in [self.witness(i, j)]],
        }


def sim_graph(rs: RootSystem, I) -> SimGraph:
    return SimGraph(rs, I)


def relation(rs: RootSystem, I, beta1, beta2, graph: Optional[SimGraph] = None) -> Relation:
    """Classify the pair ``(beta1, beta2)`` of distinct members of ``I``.

    The answer is cross-checked against the characterisation of when a
    ≲-related difference fails to be a root, which must agree.
    """
    g = graph if graph is not None else SimGraph(rs, I)
    i, j = g.index(beta1), g.index(beta2)
    if i == j:
        raise NotMembers("relation() needs two distinct members")
    mem = g.members
    if (i, j) in g.lesssim:
        lo, hi, kind, w = i, j, "lesssim", g.witness(i, j)
    elif (j, i) in g.lesssim:
        lo, hi, kind, w = j, i, "gtrsim", g.witness(j, i)
    else:
        lo = hi = None
        kind, w = "none", None
    # comparable members with a non-root difference must be related
    for a, b in ((i, j), (j, i)):
        if std_lt(mem[a], mem[b]) and not rs.is_root(vsub(mem[b].coeffs, mem[a].coeffs)):
            if (a, b) not in g.lesssim:
                raise CertificationFailure(f"{mem[a]} < {mem[b]} with non-root difference but not ≲")
    if lo is not None:
        b1, b2 = mem[lo], mem[hi]
        nonroot = not rs.is_root(vsub(b2.coeffs, b1.coeffs))
        some_long = rs.is_long(b1) or rs.is_long(b2)
        short_mid = (not some_long) and any(
            not rs.is_long(mem[c]) and not rs.is_long(mem[d]) for c, d in g.lesssim[(lo, hi)])
        if nonroot != (some_long or short_mid):
            raise CertificationFailure(f"difference criterion disagrees for {b1}, {b2}")
    witness = None if w is None else (mem[w[0]].coeffs, mem[w[1]].coeffs)
    return Relation(kind, witness)


def is_sim_closed(rs: RootSystem, I, S: Iterable, graph: Optional[SimGraph] = None):
    """``(True, None)`` or ``(False, (b1, b2))`` with ``b1 ≲ b2`` unwitnessed in ``S``."""
    g = graph if graph is not None else SimGraph(rs, I)
    idx = [g.index(b) for b in S]
    bad = g.sim_closed_counterexample(idx)
    if bad is None:
        return True, None
    return False, (g.members[bad[0]].coeffs, g.members[bad[1]].coeffs)
