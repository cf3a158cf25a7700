from collections import Counter

import numpy as np
import pytest

from pgarcs.arc import verify_arc, verify_complete
from pgarcs.constructors import (
    Algorithm,
    OrderKind,
    PointOrder,
    exhaustive_min,
    fop_complete,
    make_lex_order,
    random_complete,
)
from pgarcs.geometry import GeometryError, PlaneParams, point_from_index

from oracles import brute_complete_arc_sizes


def test_every_complete_arc_in_pg23_has_four_points():
    assert brute_complete_arc_sizes(3) == {4}


@pytest.mark.parametrize("seed", range(10))
def test_random_q3_size4(seed):
    res = random_complete(PlaneParams(3), seed)
    assert res.size == 4
    assert res.algorithm == Algorithm.RANDOM and res.seed == seed


@pytest.mark.parametrize("q", [7, 13, 101])
def test_random_reproducible(q):
    p = PlaneParams(q)
    assert random_complete(p, 12345).points == random_complete(p, 12345).points


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41])
def test_random_results_verified(q):
    p = PlaneParams(q)
    for seed in range(5):
        for strategy in ("rejection", "uncovered"):
            r = random_complete(p, seed, strategy=strategy)
            assert verify_arc(p, r.points) and verify_complete(p, r.points)
            assert 4 <= r.size <= (q + 1 if q % 2 else q + 2)


def test_random_q2():
    p = PlaneParams(2)
    for seed in range(10):
        r = random_complete(p, seed)
        assert r.size == 4  # every complete arc of the Fano plane is a hyperoval


def test_random_bad_strategy():
    with pytest.raises(ValueError):
        random_complete(PlaneParams(3), 0, strategy="greedy")


def test_random_tail_switch_engages():
    # q = 31 has 993 points, so the explicit uncovered list is used near the end
    p = PlaneParams(31)
    sizes = {random_complete(p, s).size for s in range(20)}
    assert all(10 <= n <= 32 for n in sizes)


def test_rejection_and_uncovered_strategies_same_distribution():
    p = PlaneParams(13)
    a = Counter(random_complete(p, s, strategy="rejection", verify=False).size for s in range(500))
    b = Counter(random_complete(p, 10_000 + s, strategy="uncovered", verify=False).size for s in range(500))
    sizes = set(a) | set(b)
    tv = 0.5 * sum(abs(a[k] / 500 - b[k] / 500) for k in sizes)
    assert tv < 0.15


def test_fop_lex_q3_trace():
    p = PlaneParams(3)
    res = fop_complete(p, make_lex_order(p))
    assert res.algorithm == Algorithm.FOP_LEX
    assert [point_from_index(p, i) for i in res.points] == [(1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)]


def hand_fop(plane, order):
    """One-pass greedy with the determinant test, no coverage bitmap."""
    from pgarcs.geometry import det3

    arc = []
    for i in order:
        R = point_from_index(plane, int(i))
        coords = [point_from_index(plane, a) for a in arc]
        if i in arc:
            continue
        ok = all(det3(plane.q, coords[x], coords[y], R) != 0 for x in range(len(arc)) for y in range(x))
        if ok:
            arc.append(int(i))
    return tuple(arc)


@pytest.mark.parametrize("q", [3, 5, 7, 11, 13])
def test_fop_matches_determinant_greedy(q):
    p = PlaneParams(q)
    rng = np.random.default_rng(q)
    for order in (make_lex_order(p), PointOrder(OrderKind.LEXICOGRAPHIC, rng.permutation(p.n_points))):
        assert fop_complete(p, order).points == hand_fop(p, order.permutation)


def test_fop_deterministic_and_prng_free():
    p = PlaneParams(101)
    a = fop_complete(p, make_lex_order(p))
    np.random.seed(1)
    np.random.random(100)
    b = fop_complete(p, make_lex_order(p))
    assert a.points == b.points and a.seed is None


def test_fop_rejects_wrong_length():
    p = PlaneParams(5)
    with pytest.raises(GeometryError):
        fop_complete(p, make_lex_order(PlaneParams(3)))


def test_make_lex_order():
    p3 = PlaneParams(3)
    assert make_lex_order(p3).permutation.tolist() == list(range(13))
    o5 = make_lex_order(PlaneParams(5))
    assert len(o5.permutation) == 31 and point_from_index(PlaneParams(5), int(o5.permutation[0])) == (1, 0, 0)
    assert make_lex_order(PlaneParams(7)).is_bijection(57)
    assert not PointOrder(OrderKind.LEXICOGRAPHIC, np.array([0, 0, 1])).is_bijection()


@pytest.mark.parametrize("q,expected", [(2, 4), (3, 4), (5, 6), (7, 6)])
def test_exhaustive_min(q, expected):
    p = PlaneParams(q)
    res = exhaustive_min(p)
    assert res.size == expected
    assert verify_arc(p, res.witness) and verify_complete(p, res.witness)


@pytest.mark.parametrize("q", [2, 3, 5])
def test_exhaustive_min_against_full_enumeration(q):
    assert exhaustive_min(PlaneParams(q)).size == min(brute_complete_arc_sizes(q))


def test_exhaustive_min_guard_and_cap():
    with pytest.raises(GeometryError):
        exhaustive_min(PlaneParams(13))
    res = exhaustive_min(PlaneParams(5), size_cap=5)
    assert not res.found and res.size is None


def test_pg25_complete_arcs_all_size6():
    assert brute_complete_arc_sizes(5) == {6}
