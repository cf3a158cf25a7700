import itertools
import random

import numpy as np
import pytest

from pgarcs.geometry import (
    GeometryError,
    PlaneParams,
    all_points,
    collinear,
    coords_of,
    index_from_point,
    line_through,
    normalize,
    on_line,
    point_from_index,
    points_on_line,
    points_on_line_array,
)


def test_plane_counts():
    p = PlaneParams(3)
    assert p.n_points == p.n_lines == 13
    assert PlaneParams(46337).n_points == 46337**2 + 46337 + 1


@pytest.mark.parametrize("bad", [1, 4, 9, 100])
def test_plane_rejects_nonprime(bad):
    with pytest.raises(GeometryError):
        PlaneParams(bad)


@pytest.mark.parametrize("i,expected", [(0, (1, 0, 0)), (12, (0, 0, 1)), (4, (1, 1, 1))])
def test_point_from_index_q3(i, expected):
    assert point_from_index(PlaneParams(3), i) == expected


def test_point_from_index_range():
    p = PlaneParams(3)
    for i in (-1, 13):
        with pytest.raises(GeometryError):
            point_from_index(p, i)


@pytest.mark.parametrize(
    "q,t,expected", [(3, (2, 0, 0), 0), (3, (0, 2, 1), 11), (5, (1, 4, 3), 23)]
)
def test_index_from_point_examples(q, t, expected):
    assert index_from_point(PlaneParams(q), t) == expected


def test_zero_triple_rejected():
    p = PlaneParams(5)
    with pytest.raises(GeometryError):
        index_from_point(p, (0, 0, 0))
    with pytest.raises(GeometryError):
        normalize(5, (5, 10, 0))
    with pytest.raises(GeometryError):
        points_on_line(p, (0, 0, 0))
    with pytest.raises(GeometryError):
        collinear(p, (0, 0, 0), (1, 0, 0), (0, 1, 0))


@pytest.mark.parametrize("q", [2, 3, 5, 7, 13, 101])
def test_index_bijection_exhaustive(q):
    p = PlaneParams(q)
    seen = set()
    for i in range(p.n_points):
        t = point_from_index(p, i)
        assert normalize(q, t) == t
        assert index_from_point(p, t) == i
        seen.add(t)
    assert len(seen) == p.n_points


@pytest.mark.parametrize("q", [1009, 46337])
def test_index_bijection_sampled(q):
    p = PlaneParams(q)
    rng = random.Random(q)
    for _ in range(5000):
        i = rng.randrange(p.n_points)
        t = point_from_index(p, i)
        s = rng.randrange(1, q)
        assert index_from_point(p, tuple(c * s for c in t)) == i


def test_vectorised_coords_match():
    p = PlaneParams(7)
    xyz = all_points(p)
    assert [tuple(r) for r in xyz.tolist()] == [point_from_index(p, i) for i in range(p.n_points)]
    idx = np.array([0, 5, 49, 55, 56])
    assert coords_of(p, idx).tolist() == [list(point_from_index(p, i)) for i in idx]


def test_line_through_examples():
    p3 = PlaneParams(3)
    assert line_through(p3, (1, 0, 0), (0, 1, 0)) == (0, 0, 1)
    assert line_through(p3, (1, 0, 0), (0, 0, 1)) == (0, 1, 0)
    assert line_through(p3, (1, 0, 1), (1, 1, 0)) == (1, 2, 2)


def test_line_through_same_point():
    p = PlaneParams(5)
    with pytest.raises(GeometryError):
        line_through(p, (1, 2, 3), (2, 4, 6))


def brute_points_on_line(p, L):
    return sorted(i for i in range(p.n_points) if on_line(p, L, point_from_index(p, i)))


def test_points_on_line_examples():
    p = PlaneParams(3)
    idx = lambda ts: sorted(index_from_point(p, t) for t in ts)
    assert sorted(points_on_line(p, (0, 0, 1))) == idx([(1, 0, 0), (1, 1, 0), (1, 2, 0), (0, 1, 0)])
    assert sorted(points_on_line(p, (1, 2, 2))) == idx([(1, 0, 1), (1, 1, 0), (1, 2, 2), (0, 1, 2)])
    p13 = PlaneParams(13)
    rng = random.Random(0)
    for _ in range(20):
        L = normalize(13, (rng.randrange(13), rng.randrange(13), rng.randrange(1, 13)))
        assert len(set(points_on_line(p13, L))) == 14


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13])
def test_incidence_double_count(q):
    p = PlaneParams(q)
    total = 0
    per_point = np.zeros(p.n_points, dtype=int)
    for j in range(p.n_lines):
        L = point_from_index(p, j)  # lines share the point parametrisation
        pts = points_on_line(p, L)
        assert len(set(pts)) == q + 1
        assert sorted(pts) == brute_points_on_line(p, L)
        assert list(points_on_line_array(p, L)) == pts
        per_point[pts] += 1
        total += len(pts)
    assert total == p.n_points * (q + 1)
    assert (per_point == q + 1).all()


def test_collinear_examples():
    p = PlaneParams(3)
    assert collinear(p, (1, 0, 0), (0, 1, 0), (1, 1, 0))
    assert not collinear(p, (1, 0, 0), (0, 1, 0), (0, 0, 1))
    assert collinear(p, (1, 0, 1), (1, 1, 0), (1, 2, 2))


@pytest.mark.parametrize("q", [3, 5, 7])
def test_collinear_symmetries(q):
    p = PlaneParams(q)
    rng = random.Random(q)
    for _ in range(300):
        P, Q, R = (point_from_index(p, rng.randrange(p.n_points)) for _ in range(3))
        base = collinear(p, P, Q, R)
        for perm in itertools.permutations((P, Q, R)):
            assert collinear(p, *perm) == base
        s = rng.randrange(1, q)
        assert collinear(p, tuple(c * s for c in P), Q, R) == base


@pytest.mark.parametrize("q", [3, 5, 7, 101])
def test_collinear_iff_on_joining_line(q):
    p = PlaneParams(q)
    rng = random.Random(1000 + q)
    for _ in range(10_000):
        a, b = rng.sample(range(p.n_points), 2)
        P, Q = point_from_index(p, a), point_from_index(p, b)
        R = point_from_index(p, rng.randrange(p.n_points))
        L = line_through(p, P, Q)
        assert on_line(p, L, P) and on_line(p, L, Q)
        assert collinear(p, P, Q, R) == on_line(p, L, R)
