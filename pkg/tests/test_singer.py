import numpy as np
import pytest

from pgarcs.arc import verify_arc, verify_complete
from pgarcs.constructors import Algorithm, fop_complete
from pgarcs.field import ONE, X, ext_mul, ext_pow, find_primitive_cubic
from pgarcs.geometry import PlaneParams, index_from_point, normalize, point_from_index
from pgarcs.singer import singer_is_collineation_sample, singer_point_order


def slow_singer(q):
    """Direct generation: index of the triple of x^i for each i."""
    f = find_primitive_cubic(q)
    plane = PlaneParams(q)
    g = ONE
    out = []
    for _ in range(plane.n_points):
        out.append(index_from_point(plane, g))
        g = ext_mul(f, g, X)
    return out


@pytest.mark.parametrize("q", [2, 3, 5, 7, 13])
def test_singer_matches_direct_generation(q):
    so = singer_point_order(PlaneParams(q))
    assert so.permutation.tolist() == slow_singer(q)
    assert len(set(so.permutation.tolist())) == q * q + q + 1


def test_singer_q2_fano():
    so = singer_point_order(PlaneParams(2))
    assert sorted(so.permutation.tolist()) == list(range(7))
    assert so.permutation[0] == index_from_point(PlaneParams(2), (1, 0, 0))


def test_singer_entry_zero():
    for q in (3, 11, 101):
        assert singer_point_order(PlaneParams(q)).permutation[0] == 0


@pytest.mark.parametrize("q", [3, 5, 7, 11, 101, 541])
def test_orbit_closes_at_scalar(q):
    f = find_primitive_cubic(q)
    g = ext_pow(f, X, q * q + q + 1)
    assert g[1] == g[2] == 0 and g[0] != 0
    assert normalize(q, g) == (1, 0, 0)


def test_consecutive_entries_related_by_x():
    q = 11
    plane = PlaneParams(q)
    so = singer_point_order(plane)
    f = so.poly
    perm = so.permutation.tolist()
    for i in range(len(perm)):
        lifted = point_from_index(plane, perm[i])
        nxt = index_from_point(plane, ext_mul(f, lifted, X))
        assert nxt == perm[(i + 1) % len(perm)]


@pytest.mark.parametrize("q", [3, 7, 13])
def test_collineation_sample(q):
    assert singer_is_collineation_sample(singer_point_order(PlaneParams(q)), 100)


def test_collineation_degenerate_triple():
    so = singer_point_order(PlaneParams(3))
    assert singer_is_collineation_sample(so, 1, triples=[(0, 0, 5)])


def test_collineation_detects_broken_order():
    so = singer_point_order(PlaneParams(7))
    rng = np.random.default_rng(0)
    from dataclasses import replace

    broken = replace(so, permutation=rng.permutation(so.permutation))
    assert not singer_is_collineation_sample(broken, 200)


def test_collineation_trials_positive():
    with pytest.raises(ValueError):
        singer_is_collineation_sample(singer_point_order(PlaneParams(3)), 0)


@pytest.mark.parametrize("q", [2, 3, 5, 7, 11, 13, 53, 101])
def test_fop_singer_complete(q):
    p = PlaneParams(q)
    res = fop_complete(p, singer_point_order(p).as_point_order())
    assert res.algorithm == Algorithm.FOP_SINGER
    assert verify_arc(p, res.points) and verify_complete(p, res.points)
