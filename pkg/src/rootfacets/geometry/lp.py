"""Exact rational LP feasibility by the two-phase simplex method.

Only feasibility is ever needed here, so the solver runs phase I and stops.
Pivoting follows Bland's rule, which guarantees termination.  Every answer
carries a certificate that is re-checked by substitution before it is
returned: an explicit solution when the system is feasible, a Farkas
multiplier vector when it is not.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from rootfacets.errors import CertificationFailure, DegenerateInput
from rootfacets.geometry.linalg import dot, inverse, mat_vec, nullspace_vector, solve

Row = Sequence["int | Fraction"]


@dataclass
class LPResult:
    """Outcome of a feasibility problem ``E x = e, G x >= g``.

    ``solution`` is set when feasible.  Otherwise ``farkas = (u, v)`` with
    ``v >= 0``, ``u E + v G = 0`` and ``u.e + v.g > 0``.
    """

    feasible: bool
    solution: Optional[List[Fraction]] = None
    farkas: Optional[Tuple[List[Fraction], List[Fraction]]] = None
    pivots: int = 0


def check_solution(E, e, G, g, x, nonnegative=False) -> bool:
    if nonnegative and any(xi < 0 for xi in x):
        return False
    return (all(dot(row, x) == rhs for row, rhs in zip(E, e))
            and all(dot(row, x) >= rhs for row, rhs in zip(G, g)))


def check_farkas(E, e, G, g, u, v, nvars, nonnegative=False) -> bool:
    """Verify an infeasibility certificate by direct substitution."""
    if any(vi < 0 for vi in v):
        return False
    combo = [sum(u[i] * E[i][j] for i in range(len(E))) + sum(v[i] * G[i][j] for i in range(len(G)))
             for j in range(nvars)]
    if nonnegative:
        # x >= 0 lets the combination be <= 0 rather than exactly 0
        if any(c > 0 for c in combo):
            return False
    elif any(c != 0 for c in combo):
        return False
    return dot(u, e) + dot(v, g) > 0


def feasible_point(E: Sequence[Row], e: Sequence, G: Sequence[Row], g: Sequence,
                   nvars: int, nonnegative: bool = False) -> LPResult:
    """Decide feasibility of ``E x = e, G x >= g`` exactly.

    Variables are free unless ``nonnegative`` is set.
    """
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    nx = nvars if nonnegative else 2 * nvars
    nslack = len(G)

    def expand(row):
        r = [Fraction(a) for a in row]
        return r if nonnegative else r + [-a for a in r]

    for row, b in zip(E, e):
        rows.append(expand(row) + [Fraction(0)] * nslack)
        rhs.append(Fraction(b))
    for k, (row, b) in enumerate(zip(G, g)):
        slack = [Fraction(0)] * nslack
        slack[k] = Fraction(-1)
        rows.append(expand(row) + slack)
        rhs.append(Fraction(b))

    m = len(rows)
    ncols = nx + nslack
    sign = [1] * m
    for i in range(m):
        if rhs[i] < 0:
            sign[i] = -1
            rows[i] = [-a for a in rows[i]]
            rhs[i] = -rhs[i]

    # tableau: structural columns, artificial columns, rhs
    T = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [ncols + i for i in range(m)]
    width = ncols + m
    red = [-sum((T[i][j] for i in range(m)), Fraction(0)) for j in range(ncols)] + [Fraction(0)] * m
    obj = -sum(rhs, Fraction(0))
    pivots = 0
    while True:
        enter = next((j for j in range(width) if red[j] < 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][width] / a
                key = (ratio, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            # unbounded below is impossible in phase I (objective >= 0)
            raise CertificationFailure("phase I reported unbounded")
        r = best[1]
        piv = T[r][enter]
        T[r] = [a / piv for a in T[r]]
        for i in range(m):
            if i != r and T[i][enter] != 0:
                f = T[i][enter]
                Ti, Tr = T[i], T[r]
                T[i] = [a - f * b for a, b in zip(Ti, Tr)]
        f = red[enter]
        red = [a - f * b for a, b in zip(red, T[r][:width])]
        obj -= f * T[r][width]
        basis[r] = enter
        pivots += 1

    infeasibility = -obj
    if infeasibility == 0:
        z = [Fraction(0)] * ncols
        for i, bj in enumerate(basis):
            if bj < ncols:
                z[bj] = T[i][width]
        x = z[:nvars] if nonnegative else [z[j] - z[nvars + j] for j in range(nvars)]
        if not check_solution(E, e, G, g, x, nonnegative):
            raise CertificationFailure("LP solution failed substitution check")
        return LPResult(True, solution=x, pivots=pivots)

    y = [1 - red[ncols + i] for i in range(m)]
    mult = [sign[i] * y[i] for i in range(m)]
    u = mult[: len(E)]
    v = mult[len(E):]
    if not check_farkas(E, e, G, g, u, v, nvars, nonnegative):
        raise CertificationFailure("Farkas certificate failed substitution check")
    return LPResult(False, farkas=(u, v), pivots=pivots)


@dataclass(frozen=True)
class Hyperplane:
    """The affine hyperplane ``{x : (normal, x) = offset}``."""

    normal: Tuple[Fraction, ...]
    offset: Fraction = Fraction(0)
    label: str = field(default="", compare=False)

    def __post_init__(self):
        if all(a == 0 for a in self.normal):
            raise DegenerateInput("hyperplane normal must be nonzero")

    def value(self, x: Sequence) -> Fraction:
        return dot(self.normal, x) - self.offset

    def side(self, x: Sequence) -> int:
        v = self.value(x)
        return (v > 0) - (v < 0)

    def contains(self, x: Sequence) -> bool:
        return self.value(x) == 0

    def to_dict(self) -> dict:
        return {"normal": [str(a) for a in self.normal], "offset": str(self.offset),
                "label": self.label}


def separating_hyperplane(R1: Sequence[Sequence], R2: Sequence[Sequence]) -> Optional[Hyperplane]:
    """A hyperplane through ``R1 ∩ R2`` strictly separating the rest.

    Points of ``R1 - R2`` get value ``<= c - 1`` and points of ``R2 - R1``
    value ``>= c + 1``; the margin is harmless because the problem is
    invariant under positive scaling.  Returns ``None`` when no such
    hyperplane exists (the LP's Farkas certificate has been checked).
    """
    P1 = {tuple(p) for p in R1}
    P2 = {tuple(p) for p in R2}
    pts = P1 | P2
    if not pts:
        raise DegenerateInput("no points")
    d = len(next(iter(pts)))
    common = sorted(P1 & P2)
    only1 = sorted(P1 - P2)
    only2 = sorted(P2 - P1)

    if not only1 and not only2:
        z = nullspace_vector([list(p) + [-1] for p in common], d + 1)
        if z is None or all(a == 0 for a in z[:d]):
            return None
        return Hyperplane(tuple(z[:d]), z[d])
    if not common and (not only1 or not only2):
        side = only2 or only1
        normal = tuple(Fraction(int(i == 0)) for i in range(d))
        if only2:
            return Hyperplane(normal, min(Fraction(p[0]) for p in side) - 1)
        return Hyperplane(normal, max(Fraction(p[0]) for p in side) + 1)

    # unknowns (nu_1..nu_d, c)
    E = [list(p) + [-1] for p in common]
    e = [0] * len(E)
    G = [[-a for a in p] + [1] for p in only1] + [list(p) + [-1] for p in only2]
    g = [1] * len(G)
    res = feasible_point(E, e, G, g, d + 1)
    if not res.feasible:
        return None
    nu = tuple(res.solution[:d])
    h = Hyperplane(nu, res.solution[d])
    assert all(h.value(p) == 0 for p in common)
    assert all(h.value(p) <= -1 for p in only1) and all(h.value(p) >= 1 for p in only2)
    return h


def separating_functional(R1: Sequence[Sequence], R2: Sequence[Sequence],
                          inverse_R1: Optional[Sequence[Sequence]] = None) -> Optional[Hyperplane]:
    """A linear hyperplane (offset 0) with the contract of
    :func:`separating_hyperplane`, found in the coordinates of the basis ``R1``.

    ``R1`` must be a basis of the ambient space.  A linear functional is
    fixed by its values ``t`` on ``R1``: ``t = 0`` on the common points and
    ``t <= -1`` on the rest, leaving a nonnegative LP with one unknown per
    point of ``R1 - R2``.  ``inverse_R1`` (the inverse of the matrix whose
    columns are ``R1``) may be passed to avoid recomputing it.

    ``None`` only means no *linear* separator exists; callers needing the
    affine answer fall back to :func:`separating_hyperplane`.
    """
    R1 = [tuple(p) for p in R1]
    P1 = set(R1)
    only2 = sorted({tuple(p) for p in R2} - P1)
    free = [i for i, r in enumerate(R1) if r not in {tuple(p) for p in R2}]
    Minv = inverse_R1 if inverse_R1 is not None else inverse([list(c) for c in zip(*R1)])
    coords = [mat_vec(Minv, s) for s in only2]
    # t_r = -1 - u_r with u >= 0
    G = [[-a[i] for i in free] for a in coords]
    g = [1 + sum((a[i] for i in free), Fraction(0)) for a in coords]
    res = feasible_point([], [], G, g, len(free), nonnegative=True)
    if not res.feasible:
        return None
    t = [Fraction(0)] * len(R1)
    for i, u in zip(free, res.solution):
        t[i] = -1 - u
    nu = solve(R1, t)
    if nu is None:
        raise CertificationFailure("separating functional: R1 is not a basis")
    h = Hyperplane(tuple(nu), Fraction(0))
    P2 = {tuple(p) for p in R2}
    for p in P1 | P2:
        v = h.value(p)
        if (p in P1 and p in P2 and v != 0) or (p in P1 and p not in P2 and v > -1) \
                or (p in P2 and p not in P1 and v < 1):
            raise CertificationFailure("separating functional failed substitution check")
    return h


def cone_membership(x: Sequence, J: Sequence[Sequence], certificate: bool = False):
    """Whether ``x`` is a nonnegative combination of the generators ``J``.

    With ``certificate=True`` the full :class:`LPResult` is returned.
    """
    d = len(x)
    if not J:
        res = LPResult(all(a == 0 for a in x), solution=[] if all(a == 0 for a in x) else None)
        if not res.feasible:
            # Farkas: the single nonzero coordinate itself
            k = next(i for i, a in enumerate(x) if a != 0)
            u = [Fraction(0)] * d
            u[k] = Fraction(1 if x[k] > 0 else -1)
            res.farkas = (u, [])
        return res if certificate else res.feasible
    E = [[g[i] for g in J] for i in range(d)]
    res = feasible_point(E, list(x), [], [], len(J), nonnegative=True)
    return res if certificate else res.feasible
