"""Irreducible crystallographic root systems built exactly from Cartan data.

Roots are integer coefficient vectors over the simple roots, numbered as in
Bourbaki.  The symmetric bilinear form is ``D * cartan`` with ``D`` the
diagonal of minimal positive integers making it symmetric, so short roots
have squared length 2 and every inner product is an integer.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
import re
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from rootfacets.errors import IllegalRank, NotARoot
from rootfacets.geometry.linalg import coordinates, inverse

Vec = Tuple[int, ...]

FAMILIES = "ABCDEFG"
_MIN_RANK = {"A": 1, "B": 2, "C": 3, "D": 4}


def vadd(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a + b for a, b in zip(x, y))


def vsub(x: Sequence[int], y: Sequence[int]) -> Vec:
    return tuple(a - b for a, b in zip(x, y))


def vneg(x: Sequence[int]) -> Vec:
    return tuple(-a for a in x)


def vscale(k: int, x: Sequence[int]) -> Vec:
    return tuple(k * a for a in x)


@dataclass(frozen=True)
class RootSystemSpec:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in FAMILIES or not isinstance(self.rank, int):
            raise IllegalRank(f"unknown root system {self.family}{self.rank}")
        ok = {
            "E": self.rank in (6, 7, 8),
            "F": self.rank == 4,
            "G": self.rank == 2,
        }.get(self.family, self.rank >= _MIN_RANK.get(self.family, 1))
        if not ok:
            raise IllegalRank(f"rank {self.rank} is not legal for type {self.family}")

    @classmethod
    def parse(cls, name: str) -> "RootSystemSpec":
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?(\d+)\s*", name)
        if not m:
            raise IllegalRank(f"cannot parse root system name {name!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name


def is_legal(family: str, rank: int) -> bool:
    try:
        RootSystemSpec(family, rank)
    except IllegalRank:
        return False
    return True


def dynkin_data(family: str, rank: int) -> Tuple[List[int], List[Tuple[int, int]]]:
    """Half squared lengths and edges (0-based) in Bourbaki numbering."""
    n = rank
    chain = [(i, i + 1) for i in range(n - 1)]
    if family == "A":
        return [1] * n, chain
    if family == "B":
        return [2] * (n - 1) + [1], chain
    if family == "C":
        return [1] * (n - 1) + [2], chain
    if family == "D":
        return [1] * n, [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        edges = [(0, 2), (1, 3)] + [(i, i + 1) for i in range(2, n - 1)]
        return [1] * n, edges
    if family == "F":
        return [2, 2, 1, 1], chain
    if family == "G":
        return [1, 3], chain
    raise IllegalRank(family)


def _form_from_dynkin(family: str, rank: int) -> List[List[int]]:
    d, edges = dynkin_data(family, rank)
    B = [[0] * rank for _ in range(rank)]
    for i in range(rank):
        B[i][i] = 2 * d[i]
    for i, j in edges:
        B[i][j] = B[j][i] = -max(d[i], d[j])
    return B


@lru_cache(maxsize=None)
def bourbaki_cartan(family: str, rank: int) -> Tuple[Tuple[int, ...], ...]:
    """Cartan matrix with ``cartan[i][j] = <alpha_j, alpha_i^vee>``."""
    B = _form_from_dynkin(family, rank)
    return tuple(tuple(2 * B[i][j] // B[i][i] for j in range(rank)) for i in range(rank))


@dataclass(frozen=True, order=True)
class Root:
    coeffs: Vec
    len2: int

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs)

    def __neg__(self) -> "Root":
        return Root(vneg(self.coeffs), self.len2)

    def __str__(self) -> str:
        return format_root(self.coeffs)


def format_root(coeffs: Sequence[int]) -> str:
    terms = []
    for i, c in enumerate(coeffs, start=1):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        terms.append((sign, f"{mag}a{i}"))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, t in terms[1:]:
        out += sign + t
    return out


class RootSystem:
    """A root system together with its positive system, highest root, marks
    and fundamental coweights.

    Instances are immutable after construction and are cached per spec by
    :func:`build_root_system`.
    """

    def __init__(self, spec: RootSystemSpec, form: List[List[int]], positive: List[Vec]):
        n = spec.rank
        self.spec = spec
        self.n = n
        self.form: Tuple[Tuple[int, ...], ...] = tuple(tuple(r) for r in form)
        self.cartan = tuple(
            tuple(2 * form[i][j] // form[i][i] for j in range(n)) for i in range(n)
        )
        self.positive_roots: Tuple[Root, ...] = tuple(
            Root(v, self.inner(v, v)) for v in positive
        )
        self.roots: Tuple[Root, ...] = self.positive_roots + tuple(
            -r for r in self.positive_roots
        )
        self._index: Dict[Vec, int] = {r.coeffs: i for i, r in enumerate(self.roots)}
        self.simple_roots: Tuple[Root, ...] = tuple(
            self.positive_roots[self._index[tuple(int(i == j) for j in range(n))]]
            for i in range(n)
        )
        self.theta: Root = max(self.positive_roots, key=lambda r: (r.height, r.coeffs))
        self.marks: Vec = self.theta.coeffs
        inv = inverse(self.form)
        # column j of B^{-1} is omega_j in simple-root coordinates
        self.coweights: Tuple[Tuple[Fraction, ...], ...] = tuple(
            tuple(inv[i][j] for i in range(n)) for j in range(n)
        )
        self.long_len2 = max(r.len2 for r in self.positive_roots)
        self.short_len2 = min(r.len2 for r in self.positive_roots)

    # -- lookup -----------------------------------------------------------
    def __repr__(self) -> str:
        return f"RootSystem({self.spec.name})"

    def __reduce__(self):
        return (build_root_system, (self.spec,))

    @property
    def name(self) -> str:
        return self.spec.name

    def root(self, coeffs: Sequence[int]) -> Optional[Root]:
        i = self._index.get(tuple(coeffs))
        return None if i is None else self.roots[i]

    def is_root(self, coeffs: Sequence[int]) -> bool:
        return tuple(coeffs) in self._index

    def index(self, beta: "Root | Sequence[int]") -> int:
        key = beta.coeffs if isinstance(beta, Root) else tuple(beta)
        try:
            return self._index[key]
        except KeyError:
            raise NotARoot(f"{format_root(key)} is not a root of {self.name}") from None

    def as_root(self, beta: "Root | Sequence[int]") -> Root:
        return self.roots[self.index(beta)]

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    # -- geometry ---------------------------------------------------------
    def inner(self, x: Sequence, y: Sequence):
        B = self.form
        return sum(x[i] * sum(B[i][j] * y[j] for j in range(self.n)) for i in range(self.n))

    def form_vector(self, x: Sequence) -> Tuple:
        """``B x``: the values ``(x, alpha_i)`` for every simple root."""
        return tuple(sum(self.form[i][j] * x[j] for j in range(self.n)) for i in range(self.n))

    def coroot_functional(self, beta: "Root | Sequence[int]") -> Tuple[Fraction, ...]:
        """``beta^vee`` as a functional on simple-root coordinates.

        Evaluating it on the coefficient vector of ``x`` gives ``<x, beta^vee>``.
        """
        b = beta.coeffs if isinstance(beta, Root) else tuple(beta)
        l2 = self.inner(b, b)
        return tuple(Fraction(2 * v, l2) for v in self.form_vector(b))

    def is_long(self, beta: "Root | Sequence[int]") -> bool:
        b = beta.coeffs if isinstance(beta, Root) else tuple(beta)
        return self.inner(b, b) == self.long_len2

    def to_dict(self) -> dict:
        return {
            "family": self.spec.family,
            "rank": self.n,
            "cartan": [list(r) for r in self.cartan],
            "positive_roots": [list(r.coeffs) for r in self.positive_roots],
            "theta": list(self.theta.coeffs),
            "marks": list(self.marks),
        }


def _positive_roots_by_strings(cartan: Sequence[Sequence[int]]) -> List[Vec]:
    n = len(cartan)
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simple)
    level = list(simple)
    out = list(simple)
    while level:
        nxt = set()
        for beta in level:
            for i in range(n):
                if beta == simple[i]:
                    continue
                p = 0
                probe = beta
                while True:
                    probe = vsub(probe, simple[i])
                    if probe in found:
                        p += 1
                    else:
                        break
                q = p - sum(beta[j] * cartan[i][j] for j in range(n))
                if q > 0:
                    nxt.add(vadd(beta, simple[i]))
        level = sorted(nxt)
        found.update(level)
        out.extend(level)
    return sorted(out, key=lambda v: (sum(v), v))


@lru_cache(maxsize=None)
def build_root_system(spec: RootSystemSpec) -> RootSystem:
    """Construct the root system of ``spec`` by height-by-height root strings."""
    if not isinstance(spec, RootSystemSpec):
        spec = RootSystemSpec.parse(str(spec))
    form = _form_from_dynkin(spec.family, spec.rank)
    cartan = [[2 * form[i][j] // form[i][i] for j in range(spec.rank)] for i in range(spec.rank)]
    return RootSystem(spec, form, _positive_roots_by_strings(cartan))


def root_system(name: str) -> RootSystem:
    return build_root_system(RootSystemSpec.parse(name))


def reflection_closure(rs: RootSystem) -> List[Vec]:
    """All roots, obtained by closing ``+-Pi`` under the simple reflections.

    Independent of the root-string construction; used to cross-check it.
    """
    n = rs.n
    start = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    seen = set(start) | {vneg(s) for s in start}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for i in range(n):
            k = sum(x[j] * rs.cartan[i][j] for j in range(n))
            y = tuple(x[j] - k * (j == i) for j in range(n))
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return sorted(seen)


def _coeffs(x) -> Vec:
    return x.coeffs if isinstance(x, Root) else tuple(x)


def pairing(rs: RootSystem, beta, gamma) -> int:
    """Cartan integer ``<beta, gamma^vee> = 2 (beta, gamma) / (gamma, gamma)``."""
    b, g = _coeffs(beta), _coeffs(gamma)
    if not rs.is_root(b):
        raise NotARoot(format_root(b))
    if not rs.is_root(g):
        raise NotARoot(format_root(g))
    num = 2 * rs.inner(b, g)
    den = rs.inner(g, g)
    if num % den:
        raise NotARoot("non-integral Cartan pairing")
    return num // den


def reflect(rs: RootSystem, beta, x) -> Root:
    """``s_beta(x) = x - <x, beta^vee> beta`` for a root ``x``."""
    b, v = _coeffs(beta), _coeffs(x)
    if not rs.is_root(b):
        raise NotARoot(format_root(b))
    k = pairing(rs, v, b)
    return rs.as_root(vsub(v, vscale(k, b)))


def reflect_vector(rs: RootSystem, beta, x: Sequence) -> Tuple:
    """Reflection of an arbitrary (rational) coefficient vector."""
    b = _coeffs(beta)
    k = Fraction(2 * rs.inner(x, b), rs.inner(b, b))
    if k.denominator == 1:
        k = int(k)
    return tuple(xi - k * bi for xi, bi in zip(x, b))


def std_leq(beta1, beta2) -> bool:
    """Standard partial order: ``beta2 - beta1`` is a nonnegative combination of Pi."""
    return all(a <= b for a, b in zip(_coeffs(beta1), _coeffs(beta2)))


def std_lt(beta1, beta2) -> bool:
    a, b = _coeffs(beta1), _coeffs(beta2)
    return a != b and std_leq(a, b)


# ---------------------------------------------------------------------------
# Dynkin diagram type identification
# ---------------------------------------------------------------------------

def _candidate_types(rank: int) -> Iterator[Tuple[str, int]]:
    for fam in FAMILIES:
        if is_legal(fam, rank):
            yield fam, rank


def type_labelings(cartan: Sequence[Sequence[int]], family: str, rank: int) -> List[Tuple[int, ...]]:
    """All node maps identifying ``cartan`` with the Bourbaki type.

    A labeling ``lab`` satisfies ``cartan[lab[p]][lab[q]] == ref[p][q]`` where
    ``ref`` is the Bourbaki Cartan matrix; ``lab[p]`` is the node carrying
    Bourbaki label ``p + 1``.
    """
    n = len(cartan)
    if n != rank or not is_legal(family, rank):
        return []
    ref = bourbaki_cartan(family, rank)

    def signature(C, i):
        return (
            tuple(sorted(C[i][j] for j in range(n) if j != i and C[i][j])),
            tuple(sorted(C[j][i] for j in range(n) if j != i and C[j][i])),
        )

    node_sig = [signature(cartan, i) for i in range(n)]
    ref_sig = [signature(ref, p) for p in range(n)]
    found: List[Tuple[int, ...]] = []
    lab: List[int] = []
    used = [False] * n

    def extend(p: int) -> None:
        if p == n:
            found.append(tuple(lab))
            return
        for v in range(n):
            if used[v] or node_sig[v] != ref_sig[p]:
                continue
            if all(cartan[v][lab[q]] == ref[p][q] and cartan[lab[q]][v] == ref[q][p]
                   for q in range(p)):
                used[v] = True
                lab.append(v)
                extend(p + 1)
                lab.pop()
                used[v] = False

    extend(0)
    return found


def identify_type(cartan: Sequence[Sequence[int]]) -> Tuple[str, int, Tuple[int, ...]]:
    """Bourbaki type of an irreducible Cartan matrix with one labeling.

    Ties (B2 = C2, A3 = D3) resolve to the lower family letter.
    """
    rank = len(cartan)
    for fam, r in _candidate_types(rank):
        labs = type_labelings(cartan, fam, r)
        if labs:
            return fam, r, labs[0]
    raise NotARoot("Cartan matrix matches no irreducible type")


def cartan_of(rs: RootSystem, vectors: Sequence[Sequence[int]]) -> List[List[int]]:
    """Cartan matrix ``<v_j, v_i^vee>`` of a list of root vectors."""
    l2 = [rs.inner(v, v) for v in vectors]
    return [[2 * rs.inner(vi, vj) // l2[i] for vj in vectors] for i, vi in enumerate(vectors)]


def connected_components(nodes: Sequence[Sequence[int]], rs: RootSystem) -> List[List[int]]:
    """Components of the graph joining non-orthogonal vectors (indices)."""
    n = len(nodes)
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        comp = []
        stack = [s]
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for v in range(n):
                if not seen[v] and rs.inner(nodes[u], nodes[v]) != 0:
                    seen[v] = True
                    stack.append(v)
        comps.append(sorted(comp))
    return comps


# ---------------------------------------------------------------------------
# Subsystems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Subsystem:
    """A root subsystem with its standard positive system ``Psi ∩ Phi+``."""

    parent: RootSystem
    roots: Tuple[Root, ...]
    simple_system: Tuple[Root, ...]
    components: Tuple[Tuple[int, ...], ...]
    identified_type: Tuple[Tuple[str, int], ...]
    labelings: Tuple[Tuple[int, ...], ...]

    @property
    def positive_roots(self) -> Tuple[Root, ...]:
        return tuple(r for r in self.roots if r.is_positive())

    @property
    def rank(self) -> int:
        return len(self.simple_system)

    def contains(self, beta) -> bool:
        return _coeffs(beta) in {r.coeffs for r in self.roots}

    def simple_coordinates(self, beta) -> Tuple[int, ...]:
        c = coordinates([s.coeffs for s in self.simple_system], _coeffs(beta))
        if c is None:
            raise NotARoot(f"{format_root(_coeffs(beta))} not in subsystem span")
        return tuple(int(x) for x in c)

    def component_of(self, beta) -> int:
        c = self.simple_coordinates(beta)
        for k, comp in enumerate(self.components):
            if any(c[i] for i in comp):
                return k
        raise NotARoot("zero vector")

    def component_positive_roots(self, k: int) -> List[Root]:
        return [r for r in self.positive_roots if self.component_of(r) == k]

    def highest_root(self, k: int) -> Root:
        return max(self.component_positive_roots(k),
                   key=lambda r: (sum(self.simple_coordinates(r)), r.coeffs))

    def component_simple_roots(self, k: int) -> List[Root]:
        return [self.simple_system[i] for i in self.components[k]]

    def multiplicity(self, simple: Root) -> int:
        """Coefficient of ``simple`` in the highest root of its component."""
        i = self.simple_system.index(simple)
        k = next(k for k, comp in enumerate(self.components) if i in comp)
        return self.simple_coordinates(self.highest_root(k))[i]


def simple_system_of(rs: RootSystem, positive: Iterable[Root]) -> List[Root]:
    """Indecomposable elements of a positive system ``Psi+``."""
    pos = list(positive)
    keys = {r.coeffs for r in pos}
    simple = []
    for b in pos:
        if not any(vsub(b.coeffs, g.coeffs) in keys for g in pos if g != b):
            simple.append(b)
    return sorted(simple, key=lambda r: (r.height, r.coeffs))


def _subsystem_from_set(rs: RootSystem, keys: Iterable[Vec]) -> Subsystem:
    roots = tuple(sorted((rs.as_root(k) for k in set(keys)),
                         key=lambda r: rs.index(r)))
    simple = simple_system_of(rs, (r for r in roots if r.is_positive()))
    comps = connected_components([s.coeffs for s in simple], rs)
    types = []
    labs = []
    for comp in comps:
        fam, r, lab = identify_type(cartan_of(rs, [simple[i].coeffs for i in comp]))
        types.append((fam, r))
        labs.append(tuple(comp[p] for p in lab))
    return Subsystem(rs, roots, tuple(simple), tuple(tuple(c) for c in comps),
                     tuple(types), tuple(labs))


def closure(rs: RootSystem, generators: Iterable) -> set:
    """``Phi(S)``: orbit of ``+-S`` under the reflections ``s_beta``, ``beta in S``."""
    gens = [_coeffs(g) for g in generators]
    for g in gens:
        if not rs.is_root(g):
            raise NotARoot(format_root(g))
    seen = set(gens) | {vneg(g) for g in gens}
    queue = deque(seen)
    while queue:
        x = queue.popleft()
        for g in gens:
            y = reflect(rs, g, x).coeffs
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def subsystem_of(rs: RootSystem, generators: Iterable) -> Subsystem:
    """The minimal root subsystem containing ``generators``, decomposed and typed."""
    return _subsystem_from_set(rs, closure(rs, generators))


def subsystem_from_roots(rs: RootSystem, roots: Iterable) -> Subsystem:
    """Wrap a set of roots that is already a root subsystem (e.g. ``Phi ∩ H``)."""
    keys = {_coeffs(r) for r in roots}
    keys |= {vneg(k) for k in keys}
    return _subsystem_from_set(rs, keys)


# ---------------------------------------------------------------------------
# Extended Dynkin diagram
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtendedDiagram:
    """Nodes ``alpha_1..alpha_n, -theta`` with bond multiplicities."""

    nodes: Tuple[Vec, ...]
    edges: Tuple[Tuple[int, int, int], ...]
    facet_roots: Tuple[int, ...]

    def neighbours(self, i: int) -> List[int]:
        return [b if a == i else a for a, b, _ in self.edges if i in (a, b)]

    def connected_without(self, removed: int) -> bool:
        keep = [i for i in range(len(self.nodes)) if i != removed]
        seen = {keep[0]}
        stack = [keep[0]]
        while stack:
            u = stack.pop()
            for v in self.neighbours(u):
                if v != removed and v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == len(keep)


@lru_cache(maxsize=None)
def extended_diagram(rs: RootSystem) -> ExtendedDiagram:
    nodes = tuple(s.coeffs for s in rs.simple_roots) + (vneg(rs.theta.coeffs),)
    edges = []
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            a = pairing(rs, nodes[i], nodes[j])
            b = pairing(rs, nodes[j], nodes[i])
            if a:
                edges.append((i, j, a * b))
    diagram = ExtendedDiagram(nodes, tuple(edges), ())
    facets = tuple(i for i in range(rs.n) if diagram.connected_without(i))
    return ExtendedDiagram(nodes, tuple(edges), facets)
