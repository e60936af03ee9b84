"""Ad-nilpotent and abelian ideals of a positive system, standard parabolic
faces, facet ideals and the order involution.

Simple roots are addressed by their 1-based Bourbaki index throughout the
public API.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from rootfacets.errors import (
    CertificationFailure,
    EmptyS,
    NotPositive,
    RankGuardExceeded,
)
from rootfacets.geometry.linalg import dot, rank
from rootfacets.rootsys import (
    Root,
    RootSystem,
    Subsystem,
    Vec,
    connected_components,
    extended_diagram,
    cartan_of,
    format_root,
    identify_type,
    std_leq,
    subsystem_from_roots,
    subsystem_of,
    type_labelings,
    vneg,
)

ABELIAN_RANK_GUARD = 7


def _key(x) -> Vec:
    return x.coeffs if isinstance(x, Root) else tuple(x)


@dataclass(frozen=True)
class IdealFlags:
    ad_nilpotent: bool
    abelian: bool
    nilradical: bool


class RootIdeal:
    """A set of positive roots of ``rs``, kept in the system's root order."""

    def __init__(self, rs: RootSystem, members: Iterable):
        self.rs = rs
        keys = {_key(m) for m in members}
        for k in keys:
            r = rs.as_root(k)
            if not r.is_positive():
                raise NotPositive(f"{format_root(k)} is not a positive root")
        self.members: Tuple[Root, ...] = tuple(
            sorted((rs.as_root(k) for k in keys), key=rs.index)
        )
        self._keys: FrozenSet[Vec] = frozenset(keys)
        self._flags: Optional[IdealFlags] = None

    def __contains__(self, beta) -> bool:
        return _key(beta) in self._keys

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __eq__(self, other) -> bool:
        return isinstance(other, RootIdeal) and self._keys == other._keys

    def __hash__(self) -> int:
        return hash(self._keys)

    def __repr__(self) -> str:
        return "RootIdeal{" + ", ".join(str(m) for m in self.members) + "}"

    @property
    def keys(self) -> FrozenSet[Vec]:
        return self._keys

    @property
    def flags(self) -> IdealFlags:
        if self._flags is None:
            self._flags = classify_ideal(self.rs, self.members)
        return self._flags

    def minimal_elements(self) -> List[Root]:
        return [b for b in self.members
                if not any(g != b and std_leq(g, b) for g in self.members)]

    def maximal_elements(self) -> List[Root]:
        return [b for b in self.members
                if not any(g != b and std_leq(b, g) for g in self.members)]

    def rank(self) -> int:
        return root_rank(self.members)


def root_rank(roots: Iterable) -> int:
    rows = [list(_key(r)) for r in roots]
    return rank(rows) if rows else 0


def upper_cone(rs: RootSystem, beta) -> List[Root]:
    b = _key(beta)
    return [g for g in rs.positive_roots if std_leq(b, g.coeffs)]


def principal_ideal(rs: RootSystem, beta) -> RootIdeal:
    """``(beta^<=)``: every positive root above ``beta``."""
    b = rs.as_root(_key(beta))
    if not b.is_positive():
        raise NotPositive(f"{b} is not positive")
    return RootIdeal(rs, upper_cone(rs, b))


def is_abelian_set(rs: RootSystem, roots: Iterable) -> bool:
    keys = [_key(r) for r in roots]
    for i, a in enumerate(keys):
        for b in keys[i:]:
            if rs.is_root(tuple(x + y for x, y in zip(a, b))):
                return False
    return True


def is_upward_closed(rs: RootSystem, roots: Iterable) -> bool:
    keys = {_key(r) for r in roots}
    return all(g.coeffs in keys for k in keys for g in upper_cone(rs, k))


def classify_ideal(rs: RootSystem, roots: Iterable) -> IdealFlags:
    """Definition checks for ad-nilpotent, abelian and abelian nilradical."""
    keys = {_key(r) for r in roots}
    for k in keys:
        if not rs.as_root(k).is_positive():
            raise NotPositive(format_root(k))
    ad = is_upward_closed(rs, keys)
    ab = ad and is_abelian_set(rs, keys)
    nil = False
    if not keys:
        nil = True
    elif ad:
        for i, s in enumerate(rs.simple_roots):
            if rs.marks[i] == 1 and keys == {g.coeffs for g in upper_cone(rs, s)}:
                nil = True
    return IdealFlags(ad, ab, nil)


def saturation(within: Iterable, J: Iterable) -> List:
    """``[J] = {x in within : y <= x <= z for some y, z in J}``."""
    Jk = [_key(j) for j in J]
    out = []
    for x in within:
        xk = _key(x)
        if any(std_leq(y, xk) for y in Jk) and any(std_leq(xk, z) for z in Jk):
            out.append(x)
    return out


def is_saturated(within: Iterable, J: Iterable) -> bool:
    Jk = {_key(j) for j in J}
    return {_key(x) for x in saturation(within, Jk)} == Jk


# ---------------------------------------------------------------------------
# Exhaustive enumeration of abelian ideals
# ---------------------------------------------------------------------------

def _masks(rs: RootSystem):
    pos = rs.positive_roots
    index = {r.coeffs: i for i, r in enumerate(pos)}
    up = []
    summable = []
    for r in pos:
        m = 0
        for g in upper_cone(rs, r):
            m |= 1 << index[g.coeffs]
        up.append(m)
        s = 0
        for j, g in enumerate(pos):
            if rs.is_root(tuple(a + b for a, b in zip(r.coeffs, g.coeffs))):
                s |= 1 << j
        summable.append(s)
    return pos, up, summable


def _abelian_mask(mask: int, summable: Sequence[int]) -> bool:
    m = mask
    while m:
        low = m & -m
        i = low.bit_length() - 1
        if summable[i] & mask:
            return False
        m ^= low
    return True


def _ideals_from_antichains(rs: RootSystem) -> List[int]:
    pos, up, summable = _masks(rs)
    N = len(pos)
    found: List[int] = []

    def extend(chosen: List[int], mask: int, start: int) -> None:
        found.append(mask)
        for j in range(start, N):
            if mask >> j & 1:
                continue
            if any(up[j] >> a & 1 for a in chosen):
                continue  # j lies below an antichain element
            new = mask | up[j]
            if _abelian_mask(new, summable):
                extend(chosen + [j], new, j + 1)

    extend([], 0, 0)
    return found


def _ideals_from_filters(rs: RootSystem) -> List[int]:
    pos, up, summable = _masks(rs)
    N = len(pos)
    seen = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for mask in frontier:
            for j in range(N):
                bit = 1 << j
                if mask & bit:
                    continue
                if (up[j] & ~bit) & ~mask:
                    continue  # some root strictly above j is missing
                new = mask | bit
                if new not in seen and _abelian_mask(new, summable):
                    seen.add(new)
                    nxt.append(new)
        frontier = nxt
    return list(seen)


def enumerate_abelian_ideals(rs: RootSystem, strategy: str = "antichain") -> List[RootIdeal]:
    """Every abelian ideal of ``rs``'s positive system.

    ``strategy`` selects the antichain search or the filter-growth search;
    ``"both"`` runs the two and insists they agree.
    """
    if rs.n > ABELIAN_RANK_GUARD:
        raise RankGuardExceeded(f"abelian ideal enumeration is limited to rank {ABELIAN_RANK_GUARD}")
    if strategy == "antichain":
        masks = _ideals_from_antichains(rs)
    elif strategy == "filter":
        masks = _ideals_from_filters(rs)
    elif strategy == "both":
        masks = _ideals_from_antichains(rs)
        other = _ideals_from_filters(rs)
        if sorted(masks) != sorted(other) or len(set(masks)) != len(masks):
            raise CertificationFailure("abelian ideal enumerations disagree")
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    pos = rs.positive_roots
    out = []
    for mask in sorted(set(masks), key=lambda m: (bin(m).count("1"), m)):
        out.append(RootIdeal(rs, [pos[i] for i in range(len(pos)) if mask >> i & 1]))
    return out


# ---------------------------------------------------------------------------
# Standard parabolic faces
# ---------------------------------------------------------------------------

def _check_simple_indices(rs: RootSystem, S: Iterable[int]) -> Tuple[int, ...]:
    S = tuple(sorted(set(S)))
    if not S:
        raise EmptyS("S must be a nonempty set of simple roots")
    for a in S:
        if not 1 <= a <= rs.n:
            raise ValueError(f"simple root index {a} out of range 1..{rs.n}")
    return S


@dataclass(frozen=True)
class FaceData:
    S: Tuple[int, ...]
    ideal: RootIdeal
    mu: Root
    dim: int


def theta_component(rs: RootSystem, S: Iterable[int]) -> Tuple[int, ...]:
    """``(Pi - S)_theta``: simple roots in the component of theta in the
    diagram on ``{theta} ∪ -(Pi - S)``."""
    S = set(S)
    rest = [i for i in range(1, rs.n + 1) if i not in S]
    nodes = [rs.theta.coeffs] + [vneg(rs.simple_roots[i - 1].coeffs) for i in rest]
    comp = next(c for c in connected_components(nodes, rs) if 0 in c)
    return tuple(rest[k - 1] for k in comp if k != 0)


def face_ideal(rs: RootSystem, S: Iterable[int]) -> FaceData:
    S = _check_simple_indices(rs, S)
    members = [b for b in rs.positive_roots
               if all(b.coeffs[a - 1] == rs.marks[a - 1] for a in S)]
    ideal = RootIdeal(rs, members)
    mins = ideal.minimal_elements()
    if len(mins) != 1:
        raise CertificationFailure(f"face ideal for S={S} has {len(mins)} minimal elements")
    return FaceData(S, ideal, mins[0], len(theta_component(rs, S)))


def _w0_matrix(rs: RootSystem, parabolic: Sequence[int]) -> Tuple[List[List[int]], Tuple[int, ...]]:
    """Longest element of the parabolic subgroup, as an integer matrix on
    simple-root coordinates, together with the reduced word found.

    Greedy descent: right-multiply by the smallest-index ``s_a`` with
    ``w(alpha_a) > 0`` until none is left.
    """
    n = rs.n
    W = [[int(i == j) for j in range(n)] for i in range(n)]
    word: List[int] = []

    def refl(a: int) -> List[List[int]]:
        # column j of s_a is s_a(alpha_j)
        M = [[int(i == j) for j in range(n)] for i in range(n)]
        for j in range(n):
            M[a][j] -= rs.cartan[a][j]
        return M

    while True:
        step = None
        for a in sorted(parabolic):
            col = [W[i][a - 1] for i in range(n)]
            if all(c >= 0 for c in col):
                step = a
                break
        if step is None:
            break
        R = refl(step - 1)
        W = [[sum(W[i][k] * R[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        word.append(step)
    return W, tuple(word)


def apply_matrix(W: Sequence[Sequence[int]], x: Sequence) -> Tuple:
    return tuple(sum(W[i][j] * x[j] for j in range(len(x))) for i in range(len(W)))


@dataclass(frozen=True)
class InvolutionMap:
    domain: FaceData
    mapping: Dict[Vec, Vec]
    word: Tuple[int, ...]
    matrix: Tuple[Tuple[int, ...], ...]

    def __call__(self, beta) -> Vec:
        return self.mapping[_key(beta)]

    def apply(self, x: Sequence) -> Tuple:
        return apply_matrix(self.matrix, x)


def order_involution(rs: RootSystem, S: Iterable[int]) -> InvolutionMap:
    """The face involution ``w_0(Pi - S)`` restricted to the face ideal, with
    its defining properties certified."""
    face = face_ideal(rs, S)
    parabolic = [i for i in range(1, rs.n + 1) if i not in face.S]
    W, word = _w0_matrix(rs, parabolic)
    mapping: Dict[Vec, Vec] = {}
    for b in face.ideal:
        img = apply_matrix(W, b.coeffs)
        if img not in face.ideal:
            raise CertificationFailure(f"involution maps {b} outside the face ideal")
        mapping[b.coeffs] = img
    for b, img in mapping.items():
        if mapping[img] != b:
            raise CertificationFailure("order involution is not involutive")
    for b1 in mapping:
        for b2 in mapping:
            if std_leq(b1, b2) != std_leq(mapping[b2], mapping[b1]):
                raise CertificationFailure("order involution does not reverse the order")
    if mapping[face.mu.coeffs] != rs.theta.coeffs:
        raise CertificationFailure("order involution does not exchange theta and mu")
    return InvolutionMap(face, mapping, word, tuple(tuple(r) for r in W))


# ---------------------------------------------------------------------------
# Facet ideals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NilradicalType:
    family: str
    rank: int
    k: int

    def __str__(self) -> str:
        return f"{self.family}_{{{self.rank},{self.k}}}"

    def to_dict(self) -> dict:
        return {"family": self.family, "rank": self.rank, "k": self.k}


def type_orbit(family: str, rank: int, k: int) -> FrozenSet[int]:
    """Nodes identified with node ``k`` by diagram automorphisms."""
    if family == "A":
        return frozenset({k, rank + 1 - k})
    if family == "D":
        if rank == 4 and k in (1, 3, 4):
            return frozenset({1, 3, 4})
        if k in (rank - 1, rank):
            return frozenset({rank - 1, rank})
    if family == "E" and rank == 6:
        return frozenset({k, {1: 6, 6: 1, 3: 5, 5: 3}.get(k, k)})
    return frozenset({k})


def canonical_k(family: str, rank: int, orbit: Iterable[int]) -> int:
    """Representative of an automorphism orbit of nodes.

    The smallest index, except that the D-fork pair is written ``D_{n,n}``
    (for n >= 5) to match the customary notation.
    """
    orbit = set(orbit)
    if family == "D" and rank >= 5 and orbit == {rank - 1, rank}:
        return rank
    return min(orbit)


def same_type(t1: NilradicalType, t2: NilradicalType) -> bool:
    """Equality up to the diagram-automorphism identifications."""
    return ((t1.family, t1.rank) == (t2.family, t2.rank)
            and t2.k in type_orbit(t1.family, t1.rank, t1.k))


@dataclass(frozen=True)
class FacetIdeal:
    rs: RootSystem
    alpha: int
    ideal: RootIdeal
    mu: Root
    equal_rank_subsystem: Subsystem
    nilradical_type: NilradicalType
    labelings: Tuple[Tuple[Root, ...], ...]

    @property
    def members(self) -> Tuple[Root, ...]:
        return self.ideal.members

    @property
    def mark(self) -> int:
        return self.rs.marks[self.alpha - 1]

    @property
    def simple_system(self) -> Tuple[Root, ...]:
        """``{mu} ∪ (Pi - {alpha})`` in ambient order."""
        return (self.mu,) + tuple(s for i, s in enumerate(self.rs.simple_roots) if i != self.alpha - 1)

    def labeling_with_k(self, ks: Iterable[int]) -> Tuple[Tuple[Root, ...], int]:
        """A Bourbaki labeling of the simple system putting ``mu`` at one of ``ks``."""
        for k in ks:
            for lab in self.labelings:
                if lab[k - 1] == self.mu:
                    return lab, k
        raise CertificationFailure("no labeling places mu at the requested node")

    def lattice_basis(self) -> List[Vec]:
        """``(Pi - {alpha}) ∪ {m_alpha alpha}`` in simple-root order."""
        out = []
        for i, s in enumerate(self.rs.simple_roots):
            out.append(tuple(self.mark * c for c in s.coeffs) if i == self.alpha - 1 else s.coeffs)
        return out

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "mu": list(self.mu.coeffs),
            "members": [list(m.coeffs) for m in self.members],
            "type": self.nilradical_type.to_dict(),
        }


def _identify(rs: RootSystem, nodes: Sequence[Vec], special: Vec):
    cart = cartan_of(rs, nodes)
    fam, r, _ = identify_type(cart)
    labs = type_labelings(cart, fam, r)
    pos = nodes.index(special)
    ks = sorted({lab.index(pos) + 1 for lab in labs})
    return fam, r, labs, ks


def facet_ideal(rs: RootSystem, alpha: int) -> FacetIdeal:
    """The facet ideal of ``F_alpha``; ``alpha`` must define a facet."""
    if alpha - 1 not in extended_diagram(rs).facet_roots:
        raise ValueError(f"alpha_{alpha} does not define a facet of {rs.name}")
    face = face_ideal(rs, [alpha])
    if face.dim != rs.n - 1:
        raise CertificationFailure(f"facet F_{alpha} has dimension {face.dim}")
    mu = face.mu
    rest = [s.coeffs for i, s in enumerate(rs.simple_roots) if i != alpha - 1]
    psi = subsystem_of(rs, [rs.theta.coeffs] + [vneg(v) for v in rest])
    if len(psi.components) != 1:
        raise CertificationFailure("equal-rank subsystem of a facet is reducible")
    simple = {s.coeffs for s in psi.simple_system}
    if simple != {mu.coeffs} | set(rest):
        raise CertificationFailure("simple system of the equal-rank subsystem is not {mu} ∪ (Pi - alpha)")

    # route 1: position of mu in the simple system {mu} ∪ (Pi - alpha)
    nodes = [mu.coeffs] + rest
    fam, r, labs, ks = _identify(rs, nodes, mu.coeffs)
    # route 2: position of -theta in the diagram (Pi - alpha) ∪ {-theta}
    nodes2 = rest + [vneg(rs.theta.coeffs)]
    fam2, r2, _, ks2 = _identify(rs, nodes2, vneg(rs.theta.coeffs))
    if (fam, r, ks) != (fam2, r2, ks2):
        raise CertificationFailure("nilradical type differs between the two diagrams")
    if set(ks) != type_orbit(fam, r, ks[0]):
        raise CertificationFailure(f"unexpected automorphism orbit {ks} in {fam}{r}")
    ntype = NilradicalType(fam, r, canonical_k(fam, r, ks))

    # the ideal is the principal ideal of mu in Psi+, and mu has multiplicity 1
    coeff_mu = {b.coeffs: psi.simple_coordinates(b)[psi.simple_system.index(mu)]
                for b in psi.positive_roots}
    if max(coeff_mu.values()) != 1:
        raise CertificationFailure("mu does not have multiplicity 1 in the equal-rank subsystem")
    if {k for k, c in coeff_mu.items() if c == 1} != face.ideal.keys:
        raise CertificationFailure("facet ideal differs from the nilradical of mu")

    labelings = tuple(tuple(rs.as_root(nodes[i]) for i in lab) for lab in labs)
    return FacetIdeal(rs, alpha, face.ideal, mu, psi, ntype, labelings)


@lru_cache(maxsize=None)
def facet_ideals(rs: RootSystem) -> Tuple[FacetIdeal, ...]:
    return tuple(facet_ideal(rs, i + 1) for i in extended_diagram(rs).facet_roots)


def abelian_nilradicals(rs: RootSystem) -> List[RootIdeal]:
    """Nonempty abelian nilradicals: ``(alpha^<=)`` with ``m_alpha = 1``."""
    return [principal_ideal(rs, s) for i, s in enumerate(rs.simple_roots) if rs.marks[i] == 1]


# ---------------------------------------------------------------------------
# Intersections with hyperplanes through the origin
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComponentNilradical:
    simple_roots: Tuple[Root, ...]
    identified_type: Tuple[str, int]
    positive_roots: Tuple[Root, ...]
    ideal: RootIdeal
    generator: Optional[Root]


def ambient_roots(I) -> List[Root]:
    """Positive roots of the system in which ``I`` is an abelian nilradical."""
    if isinstance(I, FacetIdeal):
        return list(I.equal_rank_subsystem.positive_roots)
    return list(I.rs.positive_roots)


def intersect_with_hyperplane(rs: RootSystem, I, normal: Sequence) -> List[ComponentNilradical]:
    """Decompose ``Psi ∩ H`` and certify that ``I ∩ H`` is an abelian
    nilradical in every irreducible component.

    ``I`` is a :class:`FacetIdeal` (living in its equal-rank subsystem) or an
    abelian nilradical :class:`RootIdeal` of ``rs``.  ``normal`` is a linear
    functional on simple-root coordinates, or a ``Hyperplane`` through 0.
    """
    nu = getattr(normal, "normal", normal)
    if getattr(normal, "offset", 0) != 0:
        raise ValueError("hyperplane must pass through the origin")
    ideal = I.ideal if isinstance(I, FacetIdeal) else I
    in_h = [b for b in ambient_roots(I) if dot(nu, b.coeffs) == 0]
    if not in_h:
        if any(dot(nu, b.coeffs) == 0 for b in ideal):
            raise CertificationFailure("ideal meets H outside the ambient system")
        return []
    psi = subsystem_from_roots(rs, in_h)
    out = []
    for k, comp in enumerate(psi.components):
        simple = psi.component_simple_roots(k)
        pos = psi.component_positive_roots(k)
        members = [b for b in pos if b in ideal]
        gens = [s for s in simple if s in ideal]
        if len(gens) > 1:
            raise CertificationFailure("component meets the ideal in two simple roots")
        gen = gens[0] if gens else None
        if gen is None:
            if members:
                raise CertificationFailure("ideal meets a component without a simple generator")
        else:
            if psi.multiplicity(gen) != 1:
                raise CertificationFailure("generator has multiplicity > 1 in its component")
            i = psi.simple_system.index(gen)
            expected = {b.coeffs for b in pos if psi.simple_coordinates(b)[i] == 1}
            if expected != {b.coeffs for b in members}:
                raise CertificationFailure("intersection is not the nilradical of its generator")
        out.append(ComponentNilradical(tuple(simple), psi.identified_type[k], tuple(pos),
                                       RootIdeal(rs, members), gen))
    return out
