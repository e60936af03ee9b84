from __future__ import annotations

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import assume, given, strategies as st

from rootfacets.errors import DegenerateInput
from rootfacets.geometry.linalg import (coordinates, det, int_det, inverse, mat_vec, nullspace_basis,
                                        rank, solve)
from rootfacets.geometry.lp import (Hyperplane, check_farkas, check_solution, cone_membership,
                                    feasible_point, separating_functional, separating_hyperplane)
from rootfacets.geometry.placing import affine_dimension, oracle_volume, placing_triangulation


def cofactor_det(M):
    if len(M) == 1:
        return Fraction(M[0][0])
    return sum((-1) ** j * M[0][j] * cofactor_det([row[:j] + row[j + 1:] for row in M[1:]])
               for j in range(len(M)))


def leibniz_sign(p):
    s, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        s *= (-1) ** (length - 1)
    return s


matrices = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=n, max_size=n))


@given(matrices)
def test_det_matches_cofactor_expansion(M):
    assert det(M) == cofactor_det(M)
    assert int_det(M) == cofactor_det(M)


@given(matrices)
def test_inverse_and_solve(M):
    assume(det(M) != 0)
    n = len(M)
    inv = inverse(M)
    ident = [[sum(M[i][k] * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    assert ident == [[int(i == j) for j in range(n)] for i in range(n)]
    b = list(range(1, n + 1))
    x = solve(M, b)
    assert mat_vec(M, x) == b


def test_small_dets():
    M = [[2, 0, 1], [1, 3, 2], [1, 1, 1]]
    assert det(M) == sum(leibniz_sign(p) * M[0][p[0]] * M[1][p[1]] * M[2][p[2]]
                         for p in permutations(range(3)))
    assert rank([[1, 2], [2, 4]]) == 1
    assert solve([[1, 2], [2, 4]], [1, 1]) is None


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
def test_nullspace_basis(rows):
    basis = nullspace_basis(rows, 4)
    assert len(basis) == 4 - rank(rows)
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)


def test_coordinates():
    assert coordinates([(1, 0), (1, 1)], (3, 2)) == [1, 2]
    assert coordinates([(1, 0, 0)], (0, 1, 0)) is None


@given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=5),
       st.lists(st.integers(-3, 3), min_size=5, max_size=5))
def test_lp_certificates_check_out(G, g):
    g = g[:len(G)]
    res = feasible_point([], [], G, g, 3)
    if res.feasible:
        assert check_solution([], [], G, g, res.solution)
    else:
        u, v = res.farkas
        assert check_farkas([], [], G, g, u, v, 3)


def test_lp_known_cases():
    assert feasible_point([[1, 1]], [1], [[1, 0], [0, 1]], [0, 0], 2).feasible
    res = feasible_point([], [], [[1], [-1]], [1, 0], 1)  # x >= 1 and x <= 0
    assert not res.feasible
    res = feasible_point([[1, 1]], [-1], [], [], 2, nonnegative=True)
    assert not res.feasible


def test_separating_hyperplanes():
    R1 = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    R2 = [(1, 0, 0), (0, 1, 0), (1, 1, -1)]
    h = separating_hyperplane(R1, R2)
    assert h is not None and h.contains((1, 0, 0)) and h.contains((0, 1, 0))
    assert h.side((0, 0, 1)) == -1 and h.side((1, 1, -1)) == 1
    f = separating_functional(R1, R2)
    assert f is not None and f.offset == 0
    # overlapping triangles: a point of R2 inside conv(R1) prevents separation
    R2 = [(1, 0, 0), (0, 1, 0), (Fraction(1, 4), Fraction(1, 4), Fraction(1, 2))]
    assert separating_hyperplane(R1, R2) is None


def test_hyperplane_rejects_zero_normal():
    with pytest.raises(DegenerateInput):
        Hyperplane((0, 0))


def test_cone_membership():
    assert cone_membership((1, 1), [(1, 0), (0, 1)])
    assert not cone_membership((-1, 1), [(1, 0), (0, 1)])


@pytest.mark.parametrize("points, vol", [
    ([(0, 0), (1, 0), (0, 1)], 1),
    ([(0, 0), (1, 0), (0, 1), (1, 1)], 2),
    ([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 0), (1, 0, 1), (0, 1, 1), (1, 1, 1)], 6),
    ([(1, 0, 0), (0, 1, 0), (0, 0, 1)], 1),
    ([(2, 0, 0), (0, 2, 0), (0, 0, 2)], 4),
])
def test_oracle_volume_examples(points, vol):
    assert oracle_volume(points) == vol


def test_oracle_volume_with_lattice():
    # the square of side 2 measured in the lattice 2Z x Z has volume 2*2/2 * 2 = 4
    assert oracle_volume([(0, 0), (2, 0), (0, 2), (2, 2)], [(2, 0), (0, 1)]) == 4


def shoelace2(poly):
    s = 0
    for (x1, y1), (x2, y2) in zip(poly, poly[1:] + poly[:1]):
        s += x1 * y2 - x2 * y1
    return abs(s)


@given(st.sets(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=3, max_size=9))
def test_oracle_volume_matches_shoelace(pts):
    pts = sorted(pts)
    assume(affine_dimension(pts) == 2)

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    assert oracle_volume(pts) == shoelace2(hull)


def test_placing_triangulation_of_square():
    simplices, _ = placing_triangulation([(0, 0), (0, 1), (1, 0), (1, 1)])
    assert len(simplices) == 2


def test_oracle_volume_rejects_low_dimension():
    with pytest.raises(DegenerateInput):
        oracle_volume([(0, 0, 0), (1, 0, 0), (2, 0, 0)])


def test_single_point_on_a_line_has_volume_one():
    assert oracle_volume([(1,)], [(1,)]) == 1
