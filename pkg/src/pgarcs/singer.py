"""Singer point order of PG(2,q).

With ``f`` the smallest primitive cubic over GF(q) and ``g = x``, the
powers ``g^0 .. g^(q^2+q)`` read as coordinate triples in the basis
``{1, x, x^2}`` hit every projective point exactly once.  Multiplication
by ``g`` is GF(q)-linear, so stepping along the order is a collineation.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from . import kernel
from .constructors import OrderKind, PointOrder
from .field import CubicPolynomial, find_primitive_cubic
from .geometry import PlaneParams, collinear, line_through, point_from_index, points_on_line


@dataclass(frozen=True, eq=False)
class SingerOrder:
    q: int
    poly: CubicPolynomial
    permutation: np.ndarray = field(repr=False)

    def as_point_order(self) -> PointOrder:
        return PointOrder(OrderKind.SINGER, self.permutation)

    def positions(self) -> np.ndarray:
        pos = np.empty_like(self.permutation)
        pos[self.permutation] = np.arange(len(self.permutation))
        return pos


def singer_point_order(plane: PlaneParams, backend=None) -> SingerOrder:
    f = find_primitive_cubic(plane.q)
    k = backend or kernel
    perm = k.singer_sequence(plane.q, f.c0, f.c1, f.c2, plane.inv)
    return SingerOrder(plane.q, f, np.asarray(perm, dtype=np.int64))


def singer_is_collineation_sample(
    order: SingerOrder,
    trials: int,
    seed: int = 0,
    triples: Optional[Iterable[tuple[int, int, int]]] = None,
) -> bool:
    """Check that the successor map along the order keeps collinear triples collinear.

    Random collinear triples are drawn unless ``triples`` (point indices)
    are given; the third point of a random triple may repeat one of the first two.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    plane = PlaneParams(order.q)
    perm = order.permutation
    pos = order.positions()
    n = len(perm)

    def succ(i):
        return int(perm[(pos[i] + 1) % n])

    if triples is None:
        rng = np.random.default_rng(seed)
        triples = []
        for _ in range(trials):
            a, b = (int(x) for x in rng.choice(n, size=2, replace=False))
            line = points_on_line(plane, line_through(plane, point_from_index(plane, a), point_from_index(plane, b)))
            triples.append((a, b, line[int(rng.integers(len(line)))]))

    for a, b, c in triples:
        P, Q, R = (point_from_index(plane, i) for i in (a, b, c))
        if not collinear(plane, P, Q, R):
            continue
        sP, sQ, sR = (point_from_index(plane, succ(i)) for i in (a, b, c))
        if not collinear(plane, sP, sQ, sR):
            return False
    return True
