"""Exhaustive checks of the structural laws for roots and crossing pairs.

Each ``check_*`` function walks every instance in its scope and returns a
:class:`LawReport` listing counterexamples; an empty list means the law held
on every instance examined.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import List, Optional

from rootfacets.crossing import SimGraph
from rootfacets.rootsys import RootSystem, pairing, std_leq, std_lt, vadd, vneg, vsub


@dataclass
class LawReport:
    name: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def merge(self, other: "LawReport") -> None:
        self.checked += other.checked
        self.failures.extend(other.failures)

    def to_dict(self) -> dict:
        return {"law": self.name, "checked": self.checked,
                "failures": self.failures[:20], "failure_count": len(self.failures)}


def check_three_sums(rs: RootSystem) -> LawReport:
    """If ``b1 + b2 + b3`` is a root and no two are opposite, at least two
    of the pairwise sums are roots."""
    rep = LawReport("three-sums")
    roots = [r.coeffs for r in rs.roots]
    for b1, b2, b3 in combinations_with_replacement(roots, 3):
        trio = (b1, b2, b3)
        if any(x == vneg(y) for x in trio for y in trio):
            continue
        if not rs.is_root(vadd(vadd(b1, b2), b3)):
            continue
        rep.checked += 1
        sums = sum(rs.is_root(vadd(x, y)) for x, y in ((b1, b2), (b1, b3), (b2, b3)))
        if sums < 2:
            rep.failures.append(f"{rs.name}: {b1} {b2} {b3}")
    return rep


def check_cartan_table(rs: RootSystem) -> LawReport:
    """Cartan integers of summable pairs fall into the three length cases."""
    rep = LawReport("cartan-table")
    roots = [r.coeffs for r in rs.roots]
    for b in roots:
        for g in roots:
            s = vadd(b, g)
            if not rs.is_root(s):
                continue
            rep.checked += 1
            lb, lg, ls = rs.inner(b, b), rs.inner(g, g), rs.inner(s, s)
            bg = pairing(rs, b, g)
            gb = pairing(rs, g, b)
            ok = True
            if lb == lg == ls:
                ok = bg == -1
            elif lb == lg:
                ratio = Fraction(ls, lb)
                ok = (ratio == 2 and bg == 0) or (ratio == 3 and bg == 1)
                ok = ok and lb < ls
            elif lb < lg:
                ok = ls == lb and gb == -Fraction(lg, lb) and gb in (-2, -3) and bg == -1
            else:
                ok = ls == lg and bg == -Fraction(lb, lg) and gb == -1
            if (rs.inner(b, g) >= 0) != (lb == lg < ls):
                ok = False
            if not ok:
                rep.failures.append(f"{rs.name}: {b} + {g}")
    return rep


def check_ideal_lemmas(rs: RootSystem, members) -> LawReport:
    """For an abelian ideal: a short member plus a positive root is a root
    only for short roots, and members whose difference is a root pair
    positively.

    The first law is restricted to positive roots: a short member plus a
    negative long root can be a root (``a1+a2`` and ``-a1`` in B2).
    """
    rep = LawReport("abelian-ideal-lemmas")
    mem = [m.coeffs for m in members]
    roots = [r.coeffs for r in rs.positive_roots]
    for b in mem:
        if not rs.is_long(b):
            for x in roots:
                if rs.is_root(vadd(b, x)):
                    rep.checked += 1
                    if rs.is_long(x):
                        rep.failures.append(f"short {b} + long {x}")
        for g in mem:
            if b != g and rs.is_root(vsub(b, g)):
                rep.checked += 1
                if rs.inner(b, g) <= 0:
                    rep.failures.append(f"({b},{g}) <= 0 with root difference")
    return rep


def check_crossing_laws(rs: RootSystem, ideal, graph: Optional[SimGraph] = None) -> LawReport:
    """Every law about crossing pairs and ≲ inside one abelian ideal."""
    g = graph if graph is not None else SimGraph(rs, ideal)
    mem = [m.coeffs for m in g.members]
    rep = LawReport("crossing-laws")
    rep.merge(check_ideal_lemmas(rs, g.members))
    long = [rs.is_long(v) for v in mem]

    by_sum = {}
    for i in range(len(mem)):
        for j in range(i, len(mem)):
            by_sum.setdefault(vadd(mem[i], mem[j]), []).append((i, j))
    for pairs in by_sum.values():
        for p, q in combinations(pairs, 2):
            quad = [mem[t] for t in p + q]
            for bp, gp in ((p, q), (q, p)):
                if bp[0] == bp[1]:
                    continue
                rep.checked += 1
                b1, b2 = mem[bp[0]], mem[bp[1]]
                # positivity of cross inner products
                for bi in (b1, b2):
                    for gj in (mem[gp[0]], mem[gp[1]]):
                        if rs.inner(bi, gj) <= 0 or not rs.is_root(vsub(bi, gj)):
                            rep.failures.append(f"cross product {bi},{gj}")
                # orthogonality unless short with mixed-length partners
                if rs.inner(b1, b2) != 0:
                    mixed = long[gp[0]] != long[gp[1]]
                    if long[bp[0]] or long[bp[1]] or not mixed:
                        rep.failures.append(f"({b1},{b2}) != 0")
            # one pair is {min, max} of the quadruple
            found = False
            for pair in (p, q):
                lo, hi = mem[pair[0]], mem[pair[1]]
                for a, b in ((lo, hi), (hi, lo)):
                    if all(std_leq(a, x) and std_leq(x, b) for x in quad):
                        found = True
            rep.checked += 1
            if not found:
                rep.failures.append(f"no min/max pair in {quad}")

    for (i, j), mids in g.lesssim.items():
        b1, b2 = mem[i], mem[j]
        # at most one incomparable middle pair; distinct middle pairs differ by roots
        incomparable = [m for m in mids
                        if not std_leq(mem[m[0]], mem[m[1]]) and not std_leq(mem[m[1]], mem[m[0]])]
        rep.checked += 1
        if len(incomparable) > 1:
            rep.failures.append(f"{len(incomparable)} incomparable middle pairs between {b1},{b2}")
        for m1, m2 in combinations(mids, 2):
            for x in m1:
                for y in m2:
                    if mem[x] != mem[y] and not rs.is_root(vsub(mem[x], mem[y])):
                        rep.failures.append(f"middle pairs {m1},{m2} between {b1},{b2}")
        # length constraints on the crossing square
        for c, d in mids:
            g1, g2 = mem[c], mem[d]
            x, y = vsub(b2, g1), vsub(b2, g2)
            rep.checked += 1
            four_long = [long[i], long[j], long[c], long[d]]
            if rs.is_long(x):
                if not (rs.is_long(y) and all(four_long)):
                    rep.failures.append(f"long difference with short member: {b1},{b2},{g1},{g2}")
            if not all(four_long) or not rs.is_long(x) or not rs.is_long(y):
                if rs.is_long(x) or rs.is_long(y):
                    rep.failures.append(f"short configuration with long difference: {b1},{b2}")
                if c == d:
                    if long[c] or not (long[i] and long[j]):
                        rep.failures.append(f"repeated middle root lengths: {b1},{b2}")
                elif sum(four_long) > 1:
                    rep.failures.append(f"two long roots in short configuration: {b1},{b2}")
        # short pair with a mixed middle pair has a short root difference
        if not long[i] and not long[j]:
            for c, d in mids:
                if long[c] != long[d]:
                    diff = vsub(b2, b1)
                    rep.checked += 1
                    if not (rs.is_root(diff) and not rs.is_long(diff)):
                        rep.failures.append(f"mixed middle pair but difference not short: {b1},{b2}")
        # when a non-root difference happens
        nonroot = not rs.is_root(vsub(b2, b1))
        all_short_mid = any(not long[c] and not long[d] for c, d in mids)
        crit = long[i] or long[j] or (not long[i] and not long[j] and all_short_mid)
        rep.checked += 1
        if nonroot != crit:
            rep.failures.append(f"difference criterion fails for {b1},{b2}")

    # comparable with non-root difference implies ≲
    for i in range(len(mem)):
        for j in range(len(mem)):
            if std_lt(mem[i], mem[j]) and not rs.is_root(vsub(mem[j], mem[i])):
                rep.checked += 1
                if (i, j) not in g.lesssim:
                    rep.failures.append(f"{mem[i]} < {mem[j]} not ≲")
    return rep
